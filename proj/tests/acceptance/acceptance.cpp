#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bvperiod/frobenius.hpp"
#include "bvperiod/random.hpp"
#include "bvperiod_cli/cli.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bvperiod;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  bool known = false;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.ok) {
    o.ok = false;
    o.detail = what;
  }
}

Outcome from_assertions(const std::vector<cli::Assertion>& list) {
  Outcome o;
  for (const auto& a : list) require(o, a.ok, a.name + (a.detail.empty() ? "" : " (" + a.detail + ")"));
  if (o.ok) o.detail = std::to_string(list.size()) + " assertions";
  return o;
}

bool same_tensor(const Tensor3& a, const Tensor3& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t k = 0; k < a.size(); ++k)
        if (!(a[i][j][k] == b[i][j][k])) return false;
  return true;
}

Outcome gaussian_toy() {
  Outcome o;
  const Cohomology c(support::toy("-1/2*x^2"));
  const Poly x = c.bv().parse("x");
  for (unsigned k = 0; k <= 8; ++k) {
    const auto even = c.k_reduce(pow(x, 2 * k));
    const auto odd = c.k_reduce(pow(x, 2 * k + 1));
    require(o, even.coefficients == std::vector<Scalar>{double_factorial(static_cast<int>(2 * k) - 1)},
            "x^" + std::to_string(2 * k));
    require(o, odd.coefficients == std::vector<Scalar>{0}, "x^" + std::to_string(2 * k + 1));
  }
  if (o.ok) o.detail = "(2k-1)!! for k <= 8, odd powers 0";
  return o;
}

Outcome quartic_toy() {
  Outcome o;
  const Cohomology c(support::toy("-x^4"));
  const auto& bv = c.bv();
  const int M = 8;
  const auto A = a_tensor(c, build_linear_gamma(c, M), M - 2);
  const auto T = t_tensor_from_A(A, M);
  std::vector<double> quad;
  for (int m = 0; m <= M; ++m) quad.push_back(numeric_moment_oracle(bv.S(), 1, m));
  const auto predicted = [&](int m) {
    MultiIndex mu(3, 0);
    mu[1] = static_cast<std::uint8_t>(m);
    double v = 0;
    for (int a = 0; a < 3; ++a) {
      Scalar coeff = T.T[a].at(mu) * factorial(static_cast<unsigned>(m));
      if (m == 0 && a == 0) coeff += 1;
      v += coeff.get_d() * quad[a];
    }
    return v;
  };
  double worst = 0;
  for (const auto& [num, den] : std::vector<std::pair<int, int>>{{4, 0}, {6, 2}, {8, 0}, {8, 4}}) {
    const double ratio = predicted(num) / predicted(den);
    const double err = std::abs(ratio - quad[num] / quad[den]) / std::abs(ratio);
    worst = std::max(worst, err);
    require(o, err <= 1e-8, "m" + std::to_string(num) + "/m" + std::to_string(den));
  }
  require(o, std::abs(predicted(4) / predicted(0) - 0.25) <= 1e-12, "m4/m0 = 1/4");
  require(o, std::abs(predicted(6) / predicted(2) - 0.75) <= 1e-12, "m6/m2 = 3/4");
  if (o.ok) {
    std::ostringstream os;
    os << "m4/m0 = 1/4, m6/m2 = 3/4; worst relative error " << worst;
    o.detail = os.str();
  }
  return o;
}

Outcome cohomology_dimensions() {
  Outcome o;
  const Cohomology cubic(support::cubic());
  const Cohomology quartic(support::quartic());
  require(o, cubic.basis().block_dims() == std::vector<std::size_t>{1, 1}, "cubic blocks");
  require(o, quartic.basis().block_dims() == std::vector<std::size_t>{3, 3}, "quartic blocks");
  for (const auto* c : {&cubic, &quartic}) {
    const auto& h = c->bv().hyper();
    std::vector<Poly> jac;
    for (int i = 0; i <= h.n; ++i) jac.push_back(diff_even(h.G, i + 1));
    std::vector<int> slots;
    for (int i = 0; i <= h.n; ++i) slots.push_back(i + 1);
    const auto dims = c->basis().block_dims();
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const int D = h.d * static_cast<int>(k + 1) - (h.n + 1);
      require(o, D >= 0 && oracle::quotient_dimension(jac, slots, static_cast<unsigned>(D)) == dims[k],
              "Jacobian ring oracle, block " + std::to_string(k));
    }
  }
  for (int m = 1; m <= 5; ++m) {
    const Cohomology c(support::toy("-x^" + std::to_string(m + 1) + "+x"));
    require(o, c.basis().size() == static_cast<std::size_t>(m), "one-variable deg G' = " + std::to_string(m));
  }
  if (o.ok) o.detail = "cubic (1,1), quartic (3,3), one-variable dims 1..5";
  return o;
}

Outcome certificate_soundness() {
  Outcome o;
  Rng rng(2024);
  int certs = 0;
  for (const auto& bv : {support::cubic(), support::quartic(), support::toy("-x^4"), support::toy("-x^5+x^2")}) {
    const Cohomology c(bv);
    for (int trial = 0; trial < 40; ++trial) {
      Poly u;
      if (bv.is_hypersurface()) {
        const int k = 1 + trial % 4;
        Grading g{0, bv.hyper().c_X + (trial % 3) - 1, k - 1};
        u = random_homogeneous(rng, bv, g, 5);
      } else {
        u = random_even_degree(rng, {1}, static_cast<unsigned>(trial % 12), 3);
      }
      if (u.is_zero()) continue;
      const auto r = c.k_reduce(u);
      require(o, c.verify(u, r), "k_reduce certificate of " + bv.str(u));
      ++certs;
    }
  }
  const Cohomology cubic(support::cubic());
  std::vector<GammaFamily> families = {build_linear_gamma(cubic, 5),
                                       build_geometric_gamma(cubic, "-3*T*x0*x1*x2+T^2*x0^3", 5)};
  for (int s = 0; s < 3; ++s) {
    std::vector<Poly> sigma(2);
    sigma[s % 2] = random_homogeneous(rng, cubic.bv(), Grading{-1, 0, s % 2}, 3);
    families.push_back(gauge_transform(cubic, families[0], sigma));
  }
  for (const auto& g : families) {
    const auto A = a_tensor(cubic, g, 3);
    require(o, verify_ledger(cubic, g, A), "cubic ledger, " + provenance_name(g.provenance));
    require(o, verify_one_tensor(cubic, g, t_tensor_direct(cubic, g, 3)), "cubic one-tensor");
    ++certs;
  }
  for (const char* pot : {"-x^4", "-x^5+x^2"}) {
    const Cohomology toy(support::toy(pot));
    const auto g = build_linear_gamma(toy, 5);
    require(o, verify_ledger(toy, g, a_tensor(toy, g, 3)), std::string("toy ledger ") + pot);
    ++certs;
  }
  const Cohomology quartic(support::quartic());
  const auto gq = build_linear_gamma(quartic, 4);
  require(o, verify_ledger(quartic, gq, a_tensor(quartic, gq, 2)), "quartic ledger");
  ++certs;
  if (o.ok) o.detail = std::to_string(certs) + " certificates and ledgers re-expanded";
  return o;
}

Outcome connection_suite() {
  Outcome o;
  const Cohomology cubic(support::cubic());
  const int N = 3;
  const auto g = build_linear_gamma(cubic, N + 2);
  const auto A = a_tensor(cubic, g, N);
  const auto T = t_tensor_from_A(A, N + 2);
  for (const auto& c : {symmetry_check(A.A), identity_row_check(A.A, 0), flatness_check(A.A, N),
                        onediff_check(A, T.T, N)})
    require(o, c.ok, c.message);
  if (o.ok) o.detail = "symmetry, identity row, flatness, A = (dG) G^-1 at N = 3";
  return o;
}

Outcome route_equivalence() {
  Outcome o;
  for (const auto& bv : {support::toy("-x^4"), support::cubic()}) {
    const Cohomology c(bv);
    const auto g = build_linear_gamma(c, 5);
    const auto A = a_tensor(c, g, 3);
    const auto Ta = t_tensor_from_A(A, 3);
    const auto Td = t_tensor_direct(c, g, 3);
    for (std::size_t a = 0; a < Td.T.size(); ++a)
      require(o, Ta.T[a] == Td.T[a], bv.is_hypersurface() ? "cubic" : "toy");
  }
  if (o.ok) o.detail = "T from A equals direct T to order 3 on the quartic toy and the cubic";
  return o;
}

Outcome homotopy_invariance() {
  Outcome o;
  const Cohomology cubic(support::cubic());
  const auto& bv = cubic.bv();
  const int N = 3;
  const auto g = build_linear_gamma(cubic, N + 2);
  const auto A = a_tensor(cubic, g, N);
  const auto T = t_tensor_direct(cubic, g, N);
  Rng rng(99);
  int done = 0;
  while (done < 10) {
    std::vector<Poly> sigma(2);
    const int a = done % 2;
    sigma[a] = random_homogeneous(rng, bv, Grading{-1, 0, static_cast<int>(rng() % 3)}, 4);
    if (sigma[a].is_zero() || bv.K(sigma[a]).is_zero()) continue;
    const auto g2 = gauge_transform(cubic, g, sigma);
    const auto A2 = a_tensor(cubic, g2, N);
    const auto T2 = t_tensor_direct(cubic, g2, N);
    require(o, same_tensor(A.A, A2.A), "A changed under sigma = " + bv.str(sigma[a]));
    for (int c = 0; c < 2; ++c) require(o, T.T[c] == T2.T[c], "T changed under sigma = " + bv.str(sigma[a]));
    ++done;
  }
  if (o.ok) o.detail = "A and T unchanged for 10 seeded sigma";
  return o;
}

Outcome residue_pairing() {
  Outcome o;
  Outcome exactness;
  int pairs = 0, concentrated = 0, failures = 0, failures_weight_n = 0;
  for (const auto& bv : {support::cubic(), support::quartic()}) {
    const Cohomology c(bv);
    const int n = bv.hyper().n;
    const int cx = bv.hyper().c_X;
    const auto gram = c.gram_matrix();
    require(o, oracle::rank(gram) == c.basis().size(), "Gram matrix singular");
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const bool targeted = trial % 2 == 1;
      const int w = static_cast<int>(rng() % static_cast<unsigned>(n));
      const Poly u = targeted ? random_homogeneous(rng, bv, Grading{0, cx, w}, 5)
                              : random_homogeneous(rng, bv, random_grading(rng, bv));
      const Poly v = targeted ? random_homogeneous(rng, bv, Grading{0, cx, n - 1 - w}, 5)
                              : random_homogeneous(rng, bv, random_grading(rng, bv));
      if (u.is_zero() || v.is_zero()) continue;
      const auto g = bv.grading(u * v);
      if (c.residue_pair(u, v) != 0) {
        ++concentrated;
        require(o, g && g->weight == n - 1 && g->charge == 2 * cx, "residue outside (n-1, 2c_X)");
      }
    }
    for (int here = 0; here < 50;) {
      const int wv = static_cast<int>(rng() % static_cast<unsigned>(n));
      const int wl = n - 1 - wv + static_cast<int>(rng() % 2);
      const Poly lam = random_homogeneous(rng, bv, Grading{-1, cx, wl}, 4);
      Poly v;
      for (int a : c.basis().blocks[wv]) v += c.basis().reps[a] * random_scalar(rng);
      if (lam.is_zero() || v.is_zero()) continue;
      ++pairs;
      ++here;
      const Scalar rk = c.residue_pair(bv.K(lam), v);
      const Scalar rl = c.residue(bv.l2(lam, v));
      if (rk != 0 || rl != 0) {
        ++failures;
        if (wl + wv == n) ++failures_weight_n;
        require(exactness, false, "residue of K-image " + to_string(rk) + ", of l2-image " + to_string(rl) +
                                      " for Lambda = " + bv.str(lam));
      }
    }
  }
  const Cohomology cubic(support::cubic());
  const Scalar witness = cubic.residue(cubic.bv().K(cubic.bv().parse("y^2*x0*x1*x2*eta-1")));
  std::ostringstream os;
  os << pairs << " pairs, " << concentrated << " nonzero concentrated residues, Gram nondegenerate; ";
  if (!o.ok) return o;
  if (exactness.ok) {
    os << "K- and l2-images vanish";
    o.detail = os.str();
    return o;
  }
  o.ok = false;
  o.known = failures == failures_weight_n && witness == Scalar(2, 27);
  os << failures << " image pairs with nonzero residue, " << failures_weight_n
     << " of them with Lambda*v of weight n; witness res K(y^2 x0x1x2 eta-1) = " << to_string(witness)
     << "; first: " << exactness.detail;
  o.detail = os.str();
  return o;
}

Outcome non_cy_twist_suite() {
  Outcome o;
  const Cohomology quartic(support::quartic());
  const auto tw = non_cy_twist(quartic, std::nullopt, 2);
  require(o, verify_twist(quartic, tw), "twisted certificate");
  const int r = static_cast<int>(quartic.basis().size());
  require(o, !tw.directions.empty(), "no twisted directions");
  for (int c : tw.directions) require(o, tw.T_frame[c].truncated(1) == support::linear_series(r, 1, c), "T^rho");
  for (int c = 0; c < r; ++c)
    if (std::find(tw.directions.begin(), tw.directions.end(), c) == tw.directions.end())
      require(o, tw.T_frame[c].truncated(1).is_zero(), "T^rho outside the slice");
  if (o.ok) o.detail = std::to_string(tw.directions.size()) + " directions, T^rho = t^rho + O(t^2), certificate sound";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> allow_known, only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--allow-known" && i + 1 < argc) allow_known.insert(std::stoi(argv[++i]));
    if (a == "--only" && i + 1 < argc) only.insert(std::stoi(argv[++i]));
  }
  const std::vector<Criterion> criteria = {
      {1, "Gaussian toy moments", 1, gaussian_toy},
      {2, "quartic toy moment ratios via T", 5, quartic_toy},
      {3, "BV identity suite", 10, [] { return from_assertions(cli::suite_bv(7, 120)); }},
      {4, "cohomology dimensions", 10, cohomology_dimensions},
      {5, "oracle equivalence", 60, [] { return from_assertions(cli::suite_oracle(7, 50)); }},
      {6, "certificate soundness", 60, certificate_soundness},
      {7, "connection suite", 120, connection_suite},
      {8, "route equivalence", 120, route_equivalence},
      {9, "homotopy invariance", 180, homotopy_invariance},
      {10, "Frobenius suite", 300, [] { return from_assertions(cli::suite_wdvv(3)); }},
      {11, "residue pairing", 30, residue_pairing},
      {12, "non Calabi-Yau twist", 120, non_cy_twist_suite},
  };
  int hard_failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), false};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_s) {
      o.ok = false;
      o.known = false;
      o.detail += " (runtime over " + std::to_string(static_cast<int>(c.limit_s)) + " s)";
    }
    const bool tolerated = !o.ok && o.known && allow_known.count(c.id);
    if (!o.ok && !tolerated) ++hard_failures;
    std::printf("[%2d] %-5s %-34s %8.3fs  %s\n", c.id, o.ok ? "PASS" : (tolerated ? "FAIL*" : "FAIL"),
                c.name.c_str(), s, o.detail.c_str());
    std::fflush(stdout);
  }
  return hard_failures == 0 ? 0 : 1;
}
