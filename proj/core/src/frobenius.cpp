#include "bvperiod/frobenius.hpp"

#include <algorithm>

namespace bvperiod {

namespace {

// u = sum_c a^c rep_c + Q(Lambda) by division against the critical ideal of S.
struct QDivision {
  std::vector<Scalar> a;
  Poly lambda;
  Poly obstruction;
};

class QDivider {
 public:
  explicit QDivider(const Cohomology& coh) : coh_(coh) {
    const auto& reps = coh.basis().reps;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      auto div = coh.potential_ideal().divide(reps[c]);
      if (div.remainder.is_zero()) throw DeformationError("basis element is Q-exact");
      nf_.push_back(div.remainder);
      lam_.push_back(coh.bv().eta_combination(div.quotients));
    }
  }

  QDivision divide(const Poly& u, bool allow_classes) const {
    const auto div = coh_.potential_ideal().divide(u);
    QDivision out;
    out.a.assign(nf_.size(), Scalar(0));
    out.lambda = coh_.bv().eta_combination(div.quotients);
    Poly rem = div.remainder;
    while (allow_classes && !rem.is_zero()) {
      const Term lead = rem.leading();
      std::size_t c = 0;
      while (c < nf_.size() && !(nf_[c].leading().mono == lead.mono)) ++c;
      if (c == nf_.size()) break;
      const Scalar f = lead.coeff / nf_[c].leading().coeff;
      out.a[c] += f;
      rem -= nf_[c] * f;
      out.lambda -= lam_[c] * f;
    }
    out.obstruction = rem;
    return out;
  }

 private:
  const Cohomology& coh_;
  std::vector<Poly> nf_;
  std::vector<Poly> lam_;
};

PolySeries degree_part(const PolySeries& s, int j) { return s.homogeneous_part(j); }

PolySeries apply_Q_gamma(const BVComplex& bv, const PolySeries& gamma, const PolySeries& x) {
  return apply_Q(bv, x) + l2_series(bv, gamma, x);
}

[[noreturn]] void obstruction(const std::string& what, int a, int b, int j, const Poly& rem,
                              const BVComplex& bv) {
  throw DeformationError("obstruction in " + what + " for (" + std::to_string(a) + "," +
                         std::to_string(b) + ") at t-order " + std::to_string(j) + ": " +
                         bv.str(rem));
}

}  // namespace

SpecialSolution special_quantum_solution(const Cohomology& coh, int N) {
  const auto& bv = coh.bv();
  if (!bv.is_hypersurface() || bv.hyper().c_X != 0)
    throw DeformationError("special quantum solution needs a Calabi-Yau hypersurface (c_X = 0)");
  const auto& basis = coh.basis();
  const int r = static_cast<int>(basis.size());
  if (basis.reps.empty() || !(basis.reps[0] == Poly(Scalar(1))))
    throw DeformationError("basis index 0 must be the unit");
  const QDivider qd(coh);

  SpecialSolution sol;
  sol.order = N;
  sol.gamma = build_linear_gamma(coh, N + 2);
  sol.gamma.provenance = Provenance::special_quantum;
  PolySeries& G = sol.gamma.gamma;

  Tensor3 A(r, std::vector<std::vector<ScalarSeries>>(r, std::vector<ScalarSeries>(r, ScalarSeries(r, N))));
  auto& chain = sol.chain;
  chain.assign(r, std::vector<std::vector<PolySeries>>(r));
  for (auto& row : chain)
    for (auto& c : row) c = {PolySeries(r, N), PolySeries(r, N)};
  const int max_levels = 64;

  for (int j = 0; j <= N; ++j) {
    const PolySeries Gj = G.truncated(N);
    std::vector<PolySeries> dG;
    for (int c = 0; c < r; ++c) dG.push_back(G.derivative(c).truncated(N));
    std::vector<std::vector<PolySeries>> D(r, std::vector<PolySeries>(r, PolySeries(r, N)));
    for (int a = 0; a < r; ++a) {
      for (int b = a; b < r; ++b) {
        auto& L = chain[a][b];
        // First master equation at order j.
        const PolySeries u = degree_part(dG[a] * dG[b], j);
        PolySeries known = l2_series(bv, Gj, L[0]);
        for (int c = 0; c < r; ++c) known += A[a][b][c] * dG[c];
        for (const auto& mu : multi_indices(r, j)) {
          const Poly rho = u.at(mu) - known.at(mu);
          if (rho.is_zero()) continue;
          const auto qdv = qd.divide(rho, true);
          if (!qdv.obstruction.is_zero()) obstruction("first master equation", a, b, j, qdv.obstruction, bv);
          for (int c = 0; c < r; ++c) A[a][b][c].add(mu, qdv.a[c]);
          L[0].add(mu, qdv.lambda);
        }
        // Known part of the second master equation at order j.
        D[a][b] = degree_part(apply_Delta(bv, L[0]) - l2_series(bv, Gj, L[1]), j);
        if (a != b) {
          for (int c = 0; c < r; ++c) A[b][a][c] = A[a][b][c];
          D[b][a] = D[a][b];
        }
      }
    }
    // Gamma_{j+2} = sum t^a t^b D_ab / ((j+1)(j+2)).
    const int m = j + 2;
    if (m <= G.order()) {
      const Scalar w = Scalar(1, (m - 1) * m);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
          for (const auto& [mu, p] : D[a][b].coeffs()) {
            MultiIndex nu = mu;
            ++nu[a];
            ++nu[b];
            G.add(nu, p * w);
          }
    }
    for (int a = 0; a < r; ++a) {
      for (int b = a; b < r; ++b) {
        auto& L = chain[a][b];
        const PolySeries ddG = degree_part(G.derivative(a).derivative(b), j);
        const PolySeries E = D[a][b] - ddG;
        for (const auto& [mu, p] : E.coeffs()) {
          const auto qdv = qd.divide(p, false);
          if (!qdv.obstruction.is_zero()) obstruction("second master equation", a, b, j, qdv.obstruction, bv);
          L[1].add(mu, qdv.lambda);
        }
        // Chain Delta Lk = Q_Gamma L(k+1).
        for (std::size_t k = 1;; ++k) {
          if (k + 1 >= L.size()) {
            const PolySeries rhs = degree_part(apply_Delta(bv, L[k]), j);
            if (rhs.is_zero()) break;
            L.emplace_back(r, N);
          }
          const PolySeries rhs =
              degree_part(apply_Delta(bv, L[k]) - l2_series(bv, Gj, L[k + 1]), j);
          for (const auto& [mu, p] : rhs.coeffs()) {
            const auto qdv = qd.divide(p, false);
            if (!qdv.obstruction.is_zero()) obstruction("homotopy chain", a, b, j, qdv.obstruction, bv);
            L[k + 1].add(mu, qdv.lambda);
          }
          if (static_cast<int>(k) > max_levels) throw DeformationError("homotopy chain does not terminate");
        }
        while (L.size() > 2 && L.back().is_zero()) L.pop_back();
        if (a != b) chain[b][a] = L;
      }
    }
  }

  std::vector<Poly> frame(basis.reps.begin(), basis.reps.end());
  sol.A.order = N;
  sol.A.dim = r;
  sol.A.A = A;
  sol.A.frame = make_frame(coh, frame);
  sol.A.ledger.assign(r, std::vector<PolySeries>(r, PolySeries(r, N)));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      const auto& L = chain[a][b];
      for (std::size_t k = 0; k < L.size(); ++k)
        sol.A.ledger[a][b] += k % 2 ? -L[k] : L[k];
      int len = 0;
      for (std::size_t k = 0; k < L.size(); ++k)
        if (!L[k].is_zero()) len = static_cast<int>(k) + 1;
      sol.max_chain_length = std::max(sol.max_chain_length, len);
    }
  const auto gram = coh.gram_matrix();
  sol.metric = gram;
  return sol;
}

MasterResiduals master_residuals(const Cohomology& coh, const PolySeries& gamma, const Tensor3& A,
                                 const std::vector<std::vector<std::vector<PolySeries>>>& chain,
                                 int N) {
  const auto& bv = coh.bv();
  const int r = gamma.nvars();
  MasterResiduals res;
  const PolySeries GN = gamma.truncated(N);
  std::vector<PolySeries> dG;
  for (int c = 0; c < r; ++c) dG.push_back(gamma.derivative(c).truncated(N));
  const auto fail = [&](const std::string& which, int a, int b, int k) {
    res.ok = false;
    res.witness = {a, b, k};
    res.message = which + " master equation residual nonzero for (" + std::to_string(a) + "," +
                  std::to_string(b) + ")";
  };
  for (int a = 0; a < r && res.ok; ++a)
    for (int b = 0; b < r && res.ok; ++b) {
      const auto& L = chain[a][b];
      const PolySeries zero(r, N);
      const auto level = [&](std::size_t k) -> const PolySeries& { return k < L.size() ? L[k] : zero; };
      PolySeries e1 = (dG[a] * dG[b]).truncated(N) - apply_Q_gamma(bv, GN, level(0));
      for (int c = 0; c < r; ++c) e1 -= A[a][b][c] * dG[c];
      if (!e1.is_zero()) {
        fail("first", a, b, 0);
        break;
      }
      const PolySeries e2 = gamma.derivative(a).derivative(b).truncated(N) -
                            apply_Delta(bv, level(0)) + apply_Q_gamma(bv, GN, level(1));
      if (!e2.is_zero()) {
        fail("second", a, b, 1);
        break;
      }
      for (std::size_t k = 1; k < L.size(); ++k) {
        const PolySeries e3 = apply_Delta(bv, level(k)) - apply_Q_gamma(bv, GN, level(k + 1));
        if (!e3.is_zero()) {
          fail("chain", a, b, static_cast<int>(k));
          break;
        }
      }
    }
  if (res.ok) res.message = "all master equation residuals vanish to order " + std::to_string(N);
  return res;
}

Tensor3 classical_structure_constants(const Cohomology& coh, const PolySeries& gamma, int N) {
  const auto& bv = coh.bv();
  const int r = gamma.nvars();
  if (gamma.order() < N + 1) throw DeformationError("Gamma must be known to order N + 1");
  const QDivider qd(coh);
  const PolySeries GN = gamma.truncated(N);
  std::vector<PolySeries> dG;
  for (int c = 0; c < r; ++c) dG.push_back(gamma.derivative(c).truncated(N));
  std::vector<Poly> fv;
  for (int c = 0; c < r; ++c) fv.push_back(dG[c].at_zero());
  const Frame frame = make_frame(coh, fv);
  Tensor3 A(r, std::vector<std::vector<ScalarSeries>>(r, std::vector<ScalarSeries>(r, ScalarSeries(r, N))));
  for (int a = 0; a < r; ++a)
    for (int b = a; b < r; ++b) {
      PolySeries lam(r, N);
      const PolySeries u = (dG[a] * dG[b]).truncated(N);
      for (int j = 0; j <= N; ++j) {
        PolySeries known = l2_series(bv, GN, lam);
        for (int c = 0; c < r; ++c) known += A[a][b][c] * dG[c];
        for (const auto& mu : multi_indices(r, j)) {
          const Poly rho = u.at(mu) - known.at(mu);
          if (rho.is_zero()) continue;
          const auto qdv = qd.divide(rho, true);
          if (!qdv.obstruction.is_zero())
            obstruction("classical structure constants", a, b, j, qdv.obstruction, bv);
          // Classes found on the basis; transport to the frame d Gamma(0).
          for (int c = 0; c < r; ++c) {
            Scalar v = 0;
            for (int e = 0; e < r; ++e) v += qdv.a[e] * frame.L_inv[e][c];
            A[a][b][c].add(mu, v);
          }
          Poly l = qdv.lambda;
          lam.add(mu, l);
        }
      }
      for (int c = 0; c < r; ++c) A[b][a][c] = A[a][b][c];
    }
  return A;
}

bool AxiomReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.ok; });
}

AxiomReport metric_and_axioms(const Cohomology& coh, const PolySeries& gamma, const Tensor3& A,
                              int N, int unit_index) {
  const int r = gamma.nvars();
  const auto& basis = coh.basis();
  const int n = coh.bv().hyper().n;
  AxiomReport rep;
  std::vector<PolySeries> dG;
  for (int c = 0; c < r; ++c) dG.push_back(gamma.derivative(c).truncated(N));
  rep.metric_series.assign(r, std::vector<ScalarSeries>(r));
  std::vector<std::vector<Scalar>> g(r, std::vector<Scalar>(r));
  CheckReport flat;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      rep.metric_series[a][b] =
          functional((dG[a] * dG[b]).truncated(N), [&](const Poly& p) { return coh.residue(p); });
      g[a][b] = rep.metric_series[a][b].at_zero();
      ScalarSeries hi = rep.metric_series[a][b];
      hi.set(MultiIndex(r, 0), Scalar(0));
      if (!hi.is_zero() && flat.ok) {
        flat.ok = false;
        flat.witness = {a, b};
        flat.message = "metric depends on t";
      }
    }
  if (flat.ok) flat.message = "metric is t-independent to order " + std::to_string(N);
  rep.checks["metric_flat"] = flat;

  CheckReport nondeg;
  try {
    (void)invert(g);
    nondeg.message = "metric is nondegenerate";
  } catch (const std::exception&) {
    nondeg.ok = false;
    nondeg.message = "metric is degenerate";
  }
  rep.checks["metric_nondegenerate"] = nondeg;

  CheckReport blocks;
  for (int a = 0; a < r && blocks.ok; ++a)
    for (int b = 0; b < r; ++b)
      if (basis.block[a] + basis.block[b] != n - 1 && g[a][b] != 0) {
        blocks.ok = false;
        blocks.witness = {a, b};
        blocks.message = "metric pairs blocks outside k + l = n - 1";
        break;
      }
  if (blocks.ok) blocks.message = "metric pairs block k with block n-1-k";
  rep.checks["metric_block_antidiagonal"] = blocks;

  rep.checks["identity"] = identity_row_check(A, unit_index);
  rep.checks["commutativity"] = symmetry_check(A);

  const auto first_failure = [&](CheckReport& c, const ScalarSeries& s,
                                 std::vector<int> witness, const std::string& what) {
    if (!c.ok || s.is_zero()) return;
    c.ok = false;
    c.witness = std::move(witness);
    int lo = -1;
    for (const auto& [mu, v] : s.coeffs())
      if (lo < 0 || total_degree(mu) < lo) lo = total_degree(mu);
    c.order = lo;
    c.message = what + " fails at t-order " + std::to_string(lo);
  };

  CheckReport inv, pot, assoc;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        ScalarSeries s(r, N);
        for (int p = 0; p < r; ++p) {
          s += A[a][b][p] * g[p][c];
          s -= A[b][c][p] * g[p][a];
        }
        first_failure(inv, s, {a, b, c}, "invariance");
        for (int sg = 0; sg < r; ++sg) {
          const ScalarSeries d = A[b][c][sg].derivative(a).truncated(N - 1) -
                                 A[a][c][sg].derivative(b).truncated(N - 1);
          first_failure(pot, d, {a, b, c, sg}, "potentiality");
          ScalarSeries w(r, N);
          for (int p = 0; p < r; ++p) {
            w += scalar_product(A[a][b][p], A[p][c][sg]);
            w -= scalar_product(A[b][c][p], A[a][p][sg]);
          }
          first_failure(assoc, w, {a, b, c, sg}, "associativity");
        }
      }
  if (inv.ok) inv.message = "sum A_ab^p g_pc = sum A_bc^p g_pa";
  if (pot.ok) pot.message = "d_a A_bc^s = d_b A_ac^s to order " + std::to_string(N - 1);
  if (assoc.ok) assoc.message = "associativity (WDVV) holds to order " + std::to_string(N);
  rep.checks["invariance"] = inv;
  rep.checks["potentiality"] = pot;
  rep.checks["associativity"] = assoc;

  // Phi with d_a d_b d_c Phi = A_abc = sum_p A_ab^p g_pc.
  const int top = N + 3;
  rep.potential = ScalarSeries(r, top);
  std::vector<std::vector<std::vector<ScalarSeries>>> low(
      r, std::vector<std::vector<ScalarSeries>>(r, std::vector<ScalarSeries>(r, ScalarSeries(r, N))));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (int p = 0; p < r; ++p) low[a][b][c] += A[a][b][p] * g[p][c];
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (const auto& [mu, v] : low[a][b][c].coeffs()) {
          const int m = total_degree(mu) + 3;
          MultiIndex nu = mu;
          ++nu[a];
          ++nu[b];
          ++nu[c];
          rep.potential.add(nu, v / Scalar(m * (m - 1) * (m - 2)));
        }
  CheckReport phi;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        const ScalarSeries d3 =
            rep.potential.derivative(a).derivative(b).derivative(c).truncated(N) - low[a][b][c];
        first_failure(phi, d3, {a, b, c}, "potential integrability");
      }
  if (phi.ok) phi.message = "Phi integrates A_abc to order " + std::to_string(top);
  rep.checks["potential"] = phi;
  return rep;
}

}  // namespace bvperiod
