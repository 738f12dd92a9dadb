#include "bvperiod/deformation.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

namespace bvperiod {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::linear: return "linear";
    case Provenance::geometric: return "geometric";
    case Provenance::special_quantum: return "special_quantum";
    case Provenance::gauge: return "gauge";
  }
  return "unknown";
}

namespace {

MultiIndex unit_index(int nvars, int a) {
  MultiIndex mu(nvars, 0);
  mu[a] = 1;
  return mu;
}

// Parsed family F(T) = sum_mu T^mu F_mu(x).
struct Family {
  std::map<MultiIndex, Poly> coeffs;
  std::vector<int> directions;
};

Family parse_family(const Cohomology& coh, std::string_view text, int target_block) {
  const auto& bv = coh.bv();
  const auto& h = bv.hyper();
  const auto& basis = coh.basis();
  const int r = static_cast<int>(basis.size());
  const int nx = h.n + 1;
  if (nx + r > static_cast<int>(kMaxVars) - 1)
    throw DeformationError("too many deformation symbols for the variable table");
  std::string s(text);
  if (std::regex_search(s, std::regex("T(?![0-9])"))) {
    const auto& blk = basis.blocks.at(target_block);
    if (blk.size() != 1)
      throw DeformationError("bare T is ambiguous: block " + std::to_string(target_block) +
                             " has " + std::to_string(blk.size()) + " directions");
    s = std::regex_replace(s, std::regex("T(?![0-9])"), "T" + std::to_string(blk.front()));
  }
  std::vector<std::string> names;
  for (int i = 0; i < nx; ++i) names.push_back("x" + std::to_string(i));
  for (int a = 0; a < r; ++a) names.push_back("T" + std::to_string(a));
  const auto table = VariableTable::generic(names);
  const Poly F = parse_polynomial(s, table);
  if (!F.is_even()) throw DeformationError("family must not contain odd variables");
  Family fam;
  std::vector<bool> used(r, false);
  for (const auto& t : F.terms()) {
    MultiIndex mu(r, 0);
    Monomial xm;
    for (int i = 0; i < nx; ++i) xm.exp[i + 1] = t.mono.exp[i + 1];
    for (int a = 0; a < r; ++a) {
      mu[a] = static_cast<std::uint8_t>(t.mono.exp[nx + 1 + a]);
      if (mu[a]) used[a] = true;
    }
    if (total_degree(mu) == 0) throw DeformationError("family must vanish at T = 0");
    if (xm.degree() != static_cast<unsigned>(h.d))
      throw DeformationError("degree mismatch: x-coefficient of degree " +
                             std::to_string(xm.degree()) + " instead of " + std::to_string(h.d));
    auto [it, inserted] = fam.coeffs.try_emplace(mu, Poly(xm, t.coeff));
    if (!inserted) it->second += Poly(xm, t.coeff);
  }
  for (int a = 0; a < r; ++a) {
    if (!used[a]) continue;
    if (basis.block[a] != target_block)
      throw DeformationError("direction T" + std::to_string(a) + " is not in block " +
                             std::to_string(target_block));
    fam.directions.push_back(a);
  }
  if (fam.directions.empty()) throw DeformationError("family has no deformation symbols");
  return fam;
}

Poly y_power(unsigned k) {
  Monomial m;
  m.exp[0] = static_cast<std::uint16_t>(k);
  return Poly(m, 1);
}

PolySeries family_series(const Family& fam, int nvars, int order, const Poly& factor) {
  PolySeries s(nvars, order);
  for (const auto& [mu, p] : fam.coeffs) s.add(mu, factor * p);
  return s;
}

}  // namespace

GammaFamily build_linear_gamma(const Cohomology& coh, int order) {
  const auto& basis = coh.basis();
  const int r = static_cast<int>(basis.size());
  GammaFamily g;
  g.gamma = PolySeries(r, order);
  for (int a = 0; a < r; ++a) g.gamma.add(unit_index(r, a), basis.reps[a]);
  g.provenance = Provenance::linear;
  return g;
}

GammaFamily build_geometric_gamma(const Cohomology& coh, std::string_view family, int order) {
  const auto& bv = coh.bv();
  if (!bv.is_hypersurface()) throw DeformationError("geometric families need hypersurface mode");
  if (bv.hyper().c_X != 0)
    throw DeformationError("geometric family of a non Calabi-Yau hypersurface is not versal; "
                           "use the twisted path");
  if (bv.hyper().n < 2) throw DeformationError("no block 1 directions");
  const Family fam = parse_family(coh, family, 1);
  const int r = static_cast<int>(coh.basis().size());
  GammaFamily g;
  g.gamma = family_series(fam, r, order, y_power(1));
  for (int a = 0; a < r; ++a)
    if (!std::binary_search(fam.directions.begin(), fam.directions.end(), a))
      g.gamma.add(unit_index(r, a), coh.basis().reps[a]);
  g.provenance = Provenance::geometric;
  g.geometric_directions = fam.directions;
  return g;
}

PolySeries apply_K(const BVComplex& bv, const PolySeries& s) {
  return s.map([&](const Poly& p) { return bv.K(p); });
}
PolySeries apply_Q(const BVComplex& bv, const PolySeries& s) {
  return s.map([&](const Poly& p) { return bv.Q(p); });
}
PolySeries apply_Delta(const BVComplex& bv, const PolySeries& s) {
  return s.map([&](const Poly& p) { return bv.Delta(p); });
}

PolySeries l2_series(const BVComplex& bv, const PolySeries& a, const PolySeries& b) {
  PolySeries out(a.nvars(), std::min(a.order(), b.order()));
  MultiIndex mu(a.nvars());
  for (const auto& [ma, pa] : a.coeffs()) {
    const int da = total_degree(ma);
    for (const auto& [mb, pb] : b.coeffs()) {
      if (da + total_degree(mb) > out.order()) continue;
      for (int i = 0; i < a.nvars(); ++i) mu[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
      out.add(mu, bv.l2(pa, pb));
    }
  }
  return out;
}

PolySeries apply_K_gamma(const BVComplex& bv, const PolySeries& gamma, const PolySeries& x) {
  return apply_K(bv, x) + l2_series(bv, gamma, x);
}

Frame make_frame(const Cohomology& coh, const std::vector<Poly>& vectors) {
  Frame f;
  f.vectors = vectors;
  for (const auto& v : vectors) {
    auto cert = coh.k_reduce(v);
    f.L.push_back(std::move(cert.coefficients));
    f.sigma.push_back(std::move(cert.certificate));
  }
  try {
    f.L_inv = invert(f.L);
  } catch (const std::exception&) {
    throw DeformationError("frame d Gamma(0) does not span the cohomology (family not versal)");
  }
  return f;
}

FrameReduction reduce_in_frame(const Cohomology& coh, const Frame& frame, const Poly& rho) {
  const auto cert = coh.k_reduce(rho);
  const std::size_t r = frame.L.size();
  FrameReduction out;
  out.a.assign(r, Scalar(0));
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t a = 0; a < r; ++a)
      if (cert.coefficients[a] != 0) out.a[c] += cert.coefficients[a] * frame.L_inv[a][c];
  out.lambda = cert.certificate;
  for (std::size_t c = 0; c < r; ++c)
    if (out.a[c] != 0) out.lambda -= frame.sigma[c] * out.a[c];
  return out;
}

namespace {

void require_order(const GammaFamily& g, int needed) {
  if (g.gamma.order() < needed)
    throw DeformationError("Gamma is truncated at order " + std::to_string(g.gamma.order()) +
                           " but order " + std::to_string(needed) + " is required");
}

std::vector<PolySeries> first_derivatives(const PolySeries& gamma, int N) {
  std::vector<PolySeries> d;
  for (int c = 0; c < gamma.nvars(); ++c) d.push_back(gamma.derivative(c).truncated(N));
  return d;
}

}  // namespace

ConnectionTensor a_tensor(const Cohomology& coh, const GammaFamily& family, int N) {
  require_order(family, N + 2);
  const auto& bv = coh.bv();
  const PolySeries& gamma = family.gamma;
  const int r = gamma.nvars();
  if (r != static_cast<int>(coh.basis().size()))
    throw DeformationError("Gamma has the wrong number of deformation parameters");
  const PolySeries gN = gamma.truncated(N);
  const auto dG = first_derivatives(gamma, N);
  std::vector<Poly> frame_vectors;
  for (int c = 0; c < r; ++c) frame_vectors.push_back(dG[c].at_zero());

  ConnectionTensor out;
  out.order = N;
  out.dim = r;
  out.frame = make_frame(coh, frame_vectors);
  out.A.assign(r, std::vector<std::vector<ScalarSeries>>(r, std::vector<ScalarSeries>(
                                                               r, ScalarSeries(r, N))));
  out.ledger.assign(r, std::vector<PolySeries>(r, PolySeries(r, N)));

  for (int a = 0; a < r; ++a) {
    for (int b = a; b < r; ++b) {
      const PolySeries u =
          (gamma.derivative(a).derivative(b).truncated(N) + dG[a] * dG[b]).truncated(N);
      auto& Aab = out.A[a][b];
      PolySeries& lam = out.ledger[a][b];
      for (int j = 0; j <= N; ++j) {
        PolySeries known = l2_series(bv, gN, lam);
        for (int c = 0; c < r; ++c) known += Aab[c] * dG[c];
        for (const auto& mu : multi_indices(r, j)) {
          const Poly rho = u.at(mu) - known.at(mu);
          if (rho.is_zero()) continue;
          const auto red = reduce_in_frame(coh, out.frame, rho);
          for (int c = 0; c < r; ++c) Aab[c].add(mu, red.a[c]);
          lam.add(mu, red.lambda);
        }
      }
      if (a != b) {
        out.A[b][a] = Aab;
        out.ledger[b][a] = lam;
      }
    }
  }
  return out;
}

bool verify_ledger(const Cohomology& coh, const GammaFamily& family, const ConnectionTensor& A) {
  const int N = A.order;
  const int r = A.dim;
  const auto& bv = coh.bv();
  PolySeries E = exp_minus_one(family.gamma);
  E.add(MultiIndex(r, 0), Poly(Scalar(1)));
  std::vector<PolySeries> dE;
  for (int c = 0; c < r; ++c) dE.push_back(E.derivative(c).truncated(N));
  const PolySeries EN = E.truncated(N);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      PolySeries lhs = E.derivative(a).derivative(b).truncated(N);
      for (int c = 0; c < r; ++c) lhs -= A.A[a][b][c] * dE[c];
      lhs -= apply_K(bv, A.ledger[a][b] * EN);
      if (!lhs.is_zero()) return false;
    }
  }
  return true;
}

OneTensor t_tensor_direct(const Cohomology& coh, const GammaFamily& family, int N) {
  require_order(family, N);
  const int r = family.gamma.nvars();
  const PolySeries E = exp_minus_one(family.gamma.truncated(N));
  OneTensor out;
  out.order = N;
  out.T.assign(r, ScalarSeries(r, N));
  out.certificate = PolySeries(r, N);
  for (const auto& [mu, p] : E.coeffs()) {
    const auto cert = coh.k_reduce(p);
    for (int c = 0; c < r; ++c) out.T[c].add(mu, cert.coefficients[c]);
    out.certificate.add(mu, cert.certificate);
  }
  return out;
}

bool verify_one_tensor(const Cohomology& coh, const GammaFamily& family, const OneTensor& T) {
  const int N = T.order;
  const int r = family.gamma.nvars();
  PolySeries rest = exp_minus_one(family.gamma.truncated(N));
  for (int c = 0; c < r; ++c) rest -= T.T[c] * coh.basis().reps[c];
  rest -= apply_K(coh.bv(), T.certificate);
  return rest.is_zero();
}

OneTensor t_tensor_from_A(const ConnectionTensor& A, int N) {
  if (N > A.order + 2)
    throw DeformationError("t_tensor_from_A needs A to order " + std::to_string(N - 2));
  const int r = A.dim;
  std::map<std::vector<int>, std::vector<Scalar>> M;
  for (int a = 0; a < r; ++a) M[{a}] = A.frame.L[a];
  // Multisets of size n as sorted vectors.
  std::vector<std::vector<int>> layer;
  for (int a = 0; a < r; ++a) layer.push_back({a});
  for (int n = 2; n <= N; ++n) {
    std::vector<std::vector<int>> next;
    for (const auto& v : layer)
      for (int a = v.back(); a < r; ++a) {
        auto w = v;
        w.push_back(a);
        next.push_back(std::move(w));
      }
    for (const auto& v : next) {
      std::vector<Scalar> val(r, Scalar(0));
      const int x = v[n - 2], y = v[n - 1];
      const int rest = n - 2;
      for (unsigned S = 0; S < (1u << rest); ++S) {
        MultiIndex nu(r, 0);
        std::vector<int> remaining;
        for (int k = 0; k < rest; ++k) {
          if (S & (1u << k)) ++nu[v[k]];
          else remaining.push_back(v[k]);
        }
        const Scalar nf = multi_factorial(nu);
        for (int c = 0; c < r; ++c) {
          const Scalar m = A.A[x][y][c].at(nu);
          if (m == 0) continue;
          auto key = remaining;
          key.insert(std::upper_bound(key.begin(), key.end(), c), c);
          const auto& inner = M.at(key);
          for (int s = 0; s < r; ++s) val[s] += m * nf * inner[s];
        }
      }
      M[v] = std::move(val);
    }
    layer = std::move(next);
  }
  OneTensor out;
  out.order = N;
  out.T.assign(r, ScalarSeries(r, N));
  for (const auto& [v, val] : M) {
    MultiIndex mu(r, 0);
    for (int a : v) ++mu[a];
    const Scalar inv = Scalar(1) / multi_factorial(mu);
    for (int s = 0; s < r; ++s) out.T[s].add(mu, val[s] * inv);
  }
  return out;
}

ScalarMatrix period_jacobian(const std::vector<ScalarSeries>& T) {
  const int r = static_cast<int>(T.size());
  ScalarMatrix G(r, std::vector<ScalarSeries>(r));
  for (int b = 0; b < r; ++b)
    for (int s = 0; s < r; ++s) G[b][s] = T[s].derivative(b).truncated(T[s].order() - 1);
  return G;
}

ScalarSeries restrict_to(const ScalarSeries& s, const std::vector<int>& keep) {
  ScalarSeries out(s.nvars(), s.order());
  for (const auto& [mu, v] : s.coeffs()) {
    bool ok = true;
    for (int a = 0; a < s.nvars(); ++a)
      if (mu[a] && !std::count(keep.begin(), keep.end(), a)) ok = false;
    if (ok) out.add(mu, v);
  }
  return out;
}

ScalarMatrix deformed_period_matrix(const std::vector<ScalarSeries>& T,
                                    const std::vector<int>& directions) {
  auto G = period_jacobian(T);
  for (auto& row : G)
    for (auto& e : row) e = restrict_to(e, directions);
  return G;
}

namespace {

std::string order_note(int j) { return " at t-order " + std::to_string(j); }

int lowest_order(const ScalarSeries& s) {
  int best = -1;
  for (const auto& [mu, v] : s.coeffs()) {
    const int d = total_degree(mu);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

}  // namespace

CheckReport onediff_check(const ConnectionTensor& A, const std::vector<ScalarSeries>& T, int N) {
  const int r = A.dim;
  CheckReport rep;
  if (T.empty() || T[0].order() < N + 2)
    throw DeformationError("onediff check needs T to order N + 2");
  auto G = period_jacobian(T);
  const auto Ginv = invert(G);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int s = 0; s < r; ++s) {
        ScalarSeries rhs(r, N);
        for (int p = 0; p < r; ++p)
          rhs += scalar_product(G[b][p].derivative(a).truncated(N), Ginv[p][s].truncated(N));
        const ScalarSeries diff = rhs.truncated(N) - A.A[a][b][s].truncated(N);
        if (!diff.is_zero()) {
          rep.ok = false;
          rep.witness = {a, b, s};
          rep.order = lowest_order(diff);
          rep.message = "A differs from (dG) G^-1" + order_note(rep.order);
          return rep;
        }
      }
  rep.message = "A = (dG) G^-1 to order " + std::to_string(N);
  return rep;
}

CheckReport flatness_check(const Tensor3& A, int N) {
  const int r = static_cast<int>(A.size());
  CheckReport rep;
  const int M = N - 1;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (int s = 0; s < r; ++s) {
          ScalarSeries f = A[b][c][s].derivative(a).truncated(M) -
                           A[a][c][s].derivative(b).truncated(M);
          for (int p = 0; p < r; ++p) {
            f += scalar_product(A[b][c][p].truncated(M), A[a][p][s].truncated(M));
            f -= scalar_product(A[a][c][p].truncated(M), A[b][p][s].truncated(M));
          }
          if (!f.is_zero()) {
            rep.ok = false;
            rep.witness = {a, b, c, s};
            rep.order = lowest_order(f);
            rep.message = "curvature nonzero" + order_note(rep.order);
            return rep;
          }
        }
  rep.message = "dA + A^2 = 0 to order " + std::to_string(M);
  return rep;
}

CheckReport symmetry_check(const Tensor3& A) {
  const int r = static_cast<int>(A.size());
  CheckReport rep;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        if (!(A[a][b][c] == A[b][a][c])) {
          rep.ok = false;
          rep.witness = {a, b, c};
          rep.message = "A is not symmetric in its lower indices";
          return rep;
        }
  rep.message = "A_ab^c = A_ba^c";
  return rep;
}

CheckReport identity_row_check(const Tensor3& A, int unit_index) {
  const int r = static_cast<int>(A.size());
  CheckReport rep;
  for (int b = 0; b < r; ++b)
    for (int c = 0; c < r; ++c) {
      const auto& s = A[unit_index][b][c];
      ScalarSeries expect(s.nvars(), s.order());
      if (b == c) expect.add(MultiIndex(s.nvars(), 0), Scalar(1));
      if (!(s == expect)) {
        rep.ok = false;
        rep.witness = {unit_index, b, c};
        rep.message = "identity row violated";
        return rep;
      }
    }
  rep.message = "A_0b^c = delta_b^c";
  return rep;
}

std::vector<std::vector<ScalarSeries>> restrict_one_parameter(const Tensor3& A, int direction) {
  const int r = static_cast<int>(A.size());
  std::vector<std::vector<ScalarSeries>> out(r, std::vector<ScalarSeries>(r));
  for (int b = 0; b < r; ++b)
    for (int c = 0; c < r; ++c) {
      const auto& s = A[direction][b][c];
      ScalarSeries one(1, s.order());
      for (const auto& [mu, v] : s.coeffs()) {
        if (total_degree(mu) != mu[direction]) continue;
        one.add(MultiIndex{mu[direction]}, -v);
      }
      out[b][c] = std::move(one);
    }
  return out;
}

GammaFamily gauge_transform(const Cohomology& coh, const GammaFamily& family,
                            const std::vector<Poly>& sigma) {
  const int r = family.gamma.nvars();
  if (static_cast<int>(sigma.size()) != r) throw DeformationError("one sigma per direction");
  PolySeries xi(r, family.gamma.order());
  for (int a = 0; a < r; ++a) {
    if (!sigma[a].is_zero() && parity(sigma[a]) != 1)
      throw DeformationError("gauge parameters must have odd ghost number");
    xi.add(unit_index(r, a), sigma[a]);
  }
  GammaFamily out = family;
  out.gamma = family.gamma + log_one_plus(apply_K_gamma(coh.bv(), family.gamma, xi));
  out.provenance = Provenance::gauge;
  return out;
}

TwistResult non_cy_twist(const Cohomology& coh, const std::optional<std::string>& family, int N) {
  const auto& bv = coh.bv();
  if (!bv.is_hypersurface()) throw DeformationError("twist needs hypersurface mode");
  const auto& basis = coh.basis();
  const int r = static_cast<int>(basis.size());
  TwistResult tw;
  int lowest = -1;
  for (std::size_t k = 0; k < basis.blocks.size(); ++k)
    if (!basis.blocks[k].empty()) {
      lowest = static_cast<int>(k);
      break;
    }
  if (lowest < 0 || lowest + 1 >= static_cast<int>(basis.blocks.size()) ||
      basis.blocks[lowest + 1].empty())
    throw DeformationError("no admissible twist g at the searched degrees");
  tw.i = lowest;
  Monomial gm = basis.reps[basis.blocks[lowest].back()].leading().mono;
  gm.exp[0] = 0;
  tw.g = Poly(gm, 1);

  Family fam;
  if (family) {
    fam = parse_family(coh, *family, lowest + 1);
  } else {
    for (int a : basis.blocks[lowest + 1]) {
      Monomial m = basis.reps[a].leading().mono;
      m.exp[0] = 0;
      if (!divides_even(gm, m)) continue;
      Monomial q = m;
      for (std::size_t s = 0; s < kMaxVars; ++s) q.exp[s] = m.exp[s] - gm.exp[s];
      fam.coeffs[unit_index(r, a)] = Poly(q, 1);
      fam.directions.push_back(a);
    }
    if (fam.directions.empty()) throw DeformationError("no block directions divisible by g");
  }
  tw.directions = fam.directions;

  const Poly ig = y_power(static_cast<unsigned>(tw.i)) * tw.g;
  std::vector<Poly> frame(basis.reps.begin(), basis.reps.end());
  for (int a : fam.directions) {
    const auto it = fam.coeffs.find(unit_index(r, a));
    if (it == fam.coeffs.end())
      throw DeformationError("family has no linear term in T" + std::to_string(a));
    frame[a] = ig * y_power(1) * it->second;
  }
  tw.frame = make_frame(coh, frame);

  const PolySeries yF = family_series(fam, r, N, y_power(1));
  tw.twisted = exp_minus_one(yF).map([&](const Poly& p) { return ig * p; });
  tw.T_frame.assign(r, ScalarSeries(r, N));
  tw.T_basis.assign(r, ScalarSeries(r, N));
  tw.certificate = PolySeries(r, N);
  for (const auto& [mu, p] : tw.twisted.coeffs()) {
    const auto cert = coh.k_reduce(p);
    for (int c = 0; c < r; ++c) tw.T_basis[c].add(mu, cert.coefficients[c]);
    const auto red = reduce_in_frame(coh, tw.frame, p);
    for (int c = 0; c < r; ++c) tw.T_frame[c].add(mu, red.a[c]);
    tw.certificate.add(mu, red.lambda);
  }
  tw.period_matrix = deformed_period_matrix(tw.T_frame, tw.directions);
  return tw;
}

bool verify_twist(const Cohomology& coh, const TwistResult& tw) {
  PolySeries rest = tw.twisted;
  for (std::size_t c = 0; c < tw.T_frame.size(); ++c) rest -= tw.T_frame[c] * tw.frame.vectors[c];
  rest -= apply_K(coh.bv(), tw.certificate);
  return rest.is_zero();
}

std::string series_key(const MultiIndex& mu) {
  std::string s = "[";
  for (std::size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + std::to_string(mu[i]);
  return s + "]";
}

std::string canonical_ledger_text(const ConnectionTensor& A, const VariableTable& vars) {
  std::ostringstream os;
  os << "order " << A.order << " dim " << A.dim << "\n";
  for (int a = 0; a < A.dim; ++a)
    for (int b = 0; b < A.dim; ++b) {
      for (int c = 0; c < A.dim; ++c)
        for (const auto& [mu, v] : A.A[a][b][c].coeffs())
          os << "A " << a << " " << b << " " << c << " " << series_key(mu) << " "
             << to_string(v) << "\n";
      for (const auto& [mu, p] : A.ledger[a][b].coeffs())
        os << "L " << a << " " << b << " " << series_key(mu) << " " << to_string(p, vars)
           << "\n";
    }
  return os.str();
}

}  // namespace bvperiod
