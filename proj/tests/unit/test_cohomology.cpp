#include <doctest.h>

#include <cmath>

#include "bvperiod/cohomology.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bvperiod;

TEST_CASE("Griffiths basis block dimensions") {
  const Cohomology cubic(support::cubic());
  CHECK(cubic.basis().block_dims() == std::vector<std::size_t>{1, 1});
  CHECK(cubic.basis().labels == std::vector<std::string>{"1", "y*x0*x1*x2"});
  const Cohomology quartic(support::quartic());
  CHECK(quartic.basis().block_dims() == std::vector<std::size_t>{3, 3});
  const auto& q = quartic.bv();
  for (std::size_t a = 0; a < quartic.basis().size(); ++a) {
    const auto g = q.grading(quartic.basis().reps[a]);
    CHECK(g->ghost == 0);
    CHECK(g->charge == q.hyper().c_X);
    CHECK(g->weight == quartic.basis().block[a]);
  }
  const std::vector<Poly> jac = {q.parse("4*x0^3"), q.parse("4*x1^3"), q.parse("4*x2^3")};
  CHECK(oracle::quotient_dimension(jac, {1, 2, 3}, 1) == 3);
  CHECK(oracle::quotient_dimension(jac, {1, 2, 3}, 5) == 3);
  const Cohomology toy(support::toy("-x^4"));
  CHECK(toy.basis().labels == std::vector<std::string>{"1", "x", "x^2"});
  for (int m = 1; m <= 5; ++m) {
    const Cohomology c(support::toy("x^" + std::to_string(m + 1)));
    CHECK(c.basis().size() == static_cast<std::size_t>(m));
  }
  CHECK(cubic.milnor_number() == 8);
}

TEST_CASE("k_reduce on the toy models") {
  const Cohomology quartic_toy(support::toy("-x^4"));
  const auto& bv = quartic_toy.bv();
  auto r = quartic_toy.k_reduce(bv.parse("x^4"));
  CHECK(r.coefficients == std::vector<Scalar>{Scalar(1, 4), 0, 0});
  CHECK(r.certificate == bv.parse("-1/4*x*eta"));
  r = quartic_toy.k_reduce(bv.parse("x^6"));
  CHECK(r.coefficients == std::vector<Scalar>{0, 0, Scalar(3, 4)});
  CHECK(quartic_toy.verify(bv.parse("x^6"), r));
  CHECK(quartic_toy.k_reduce(bv.parse("x^5")).coefficients ==
        std::vector<Scalar>{0, Scalar(1, 2), 0});
  CHECK(quartic_toy.k_reduce(bv.parse("x^8")).coefficients ==
        std::vector<Scalar>{Scalar(5, 16), 0, 0});

  const Cohomology gauss(support::toy("-1/2*x^2"));
  for (unsigned k = 0; k <= 8; ++k) {
    const auto even = gauss.k_reduce(pow(gauss.bv().parse("x"), 2 * k));
    CHECK(even.coefficients == std::vector<Scalar>{double_factorial(2 * k - 1)});
    CHECK(gauss.verify(pow(gauss.bv().parse("x"), 2 * k), even));
    const auto odd = gauss.k_reduce(pow(gauss.bv().parse("x"), 2 * k + 1));
    CHECK(odd.coefficients == std::vector<Scalar>{0});
  }
}

TEST_CASE("k_reduce on the Fermat cubic and the classical oracle") {
  const Cohomology c(support::cubic());
  const auto& bv = c.bv();
  const Poly u = bv.parse("y^2*x0^3*x1^3");
  const auto r = c.k_reduce(u);
  CHECK(r.coefficients == std::vector<Scalar>{Scalar(1, 9), 0});
  CHECK(c.verify(u, r));
  CHECK(c.gd_reduce_oracle_raw(bv.parse("x0^3*x1^3"), 3) == std::vector<Scalar>{Scalar(1, 18), 0});
  CHECK(c.gd_reduce_oracle(bv.parse("x0^3*x1^3"), 3) == std::vector<Scalar>{Scalar(1, 9), 0});
  CHECK(c.gd_reduce_oracle(bv.parse("x0^2*x1^2*x2^2"), 3) == std::vector<Scalar>{0, 0});
  CHECK(c.gd_reduce_oracle(bv.parse("x0*x1*x2"), 2) == std::vector<Scalar>{0, 1});
  CHECK_THROWS_AS(c.gd_reduce_oracle(bv.parse("x0*x1"), 2), std::invalid_argument);

  const Poly mixed = bv.parse("x0^2*y+x1");
  const auto rm = c.k_reduce(mixed);
  CHECK(rm.coefficients == std::vector<Scalar>{0, 0});
  CHECK(c.verify(mixed, rm));
}

TEST_CASE("oracle equivalence and certificate soundness on random inputs") {
  for (const auto& bv : {support::cubic(), support::quartic()}) {
    const Cohomology c(bv);
    const int n = bv.hyper().n, d = bv.hyper().d;
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const int k = 1 + trial % 3;
      const int deg = k * d - n - 1;
      const Poly F = random_even_degree(rng, {1, 2, 3}, static_cast<unsigned>(deg), 5);
      if (F.is_zero()) continue;
      const Poly u = F * Poly(Monomial{{static_cast<std::uint16_t>(k - 1)}, 0}, 1);
      const auto r = c.k_reduce(u);
      CHECK(c.verify(u, r));
      const auto o = c.gd_reduce_oracle_raw(F, k);
      const Scalar norm = Scalar(k % 2 ? 1 : -1) * factorial(static_cast<unsigned>(k - 1));
      for (std::size_t a = 0; a < o.size(); ++a) CHECK(r.coefficients[a] == norm * o[a]);
    }
  }
}

TEST_CASE("residue pairing") {
  const Cohomology c(support::cubic());
  const auto& bv = c.bv();
  const auto P = [&](const char* s) { return bv.parse(s); };
  CHECK(c.residue_pair(P("1"), P("1")) == 0);
  CHECK(c.residue_pair(P("1"), P("y*x0*x1*x2")) == Scalar(1, 27));
  CHECK(c.grothendieck_residue(c.hessian()) == c.milnor_number());
  const std::vector<Scalar> c3 = {3, 3, 3};
  CHECK(c.grothendieck_residue(P("x0*x1*x2")) ==
        oracle::monomial_residue(P("x0*x1*x2").leading().mono, c3, {2, 2, 2}));
  const auto g = c.gram_matrix();
  CHECK(g == std::vector<std::vector<Scalar>>{{0, Scalar(1, 27)}, {Scalar(1, 27), 0}});

  const Cohomology q(support::quartic());
  const auto gq = q.gram_matrix();
  std::vector<std::vector<Scalar>> rows = gq;
  CHECK(oracle::rank(rows) == q.basis().size());
  for (std::size_t a = 0; a < gq.size(); ++a)
    for (std::size_t b = 0; b < gq.size(); ++b)
      if (q.basis().block[a] + q.basis().block[b] != 1) CHECK(gq[a][b] == 0);
}

TEST_CASE("residue concentration and exactness") {
  for (const auto& bv : {support::cubic(), support::quartic()}) {
    const Cohomology c(bv);
    const int n = bv.hyper().n;
    Rng rng(9);
    int nonzero = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const Poly u = random_homogeneous(rng, bv, random_grading(rng, bv));
      const Poly v = random_homogeneous(rng, bv, random_grading(rng, bv));
      if (u.is_zero() || v.is_zero()) continue;
      const Scalar r = c.residue_pair(u, v);
      const auto g = bv.grading(u * v);
      if (!g || g->weight != n - 1 || g->charge != 2 * bv.hyper().c_X) CHECK(r == 0);
      if (r != 0) ++nonzero;
    }
    for (int w = 0; w < n; ++w) {
      const Poly u = random_homogeneous(rng, bv, Grading{0, bv.hyper().c_X, w}, 5);
      const Poly v = random_homogeneous(rng, bv, Grading{0, bv.hyper().c_X, n - 1 - w}, 5);
      if (c.residue_pair(u, v) != 0) ++nonzero;
      CHECK(c.residue_pair(u, v) == c.residue_pair(v, u));
    }
    CHECK(nonzero > 0);
    // K-images vanish when the integrand Lambda*v sits in weight n-1.
    for (int trial = 0; trial < 50; ++trial) {
      const Poly lam = random_homogeneous(rng, bv, Grading{-1, 2 * bv.hyper().c_X, n - 1}, 5);
      if (lam.is_zero()) continue;
      CHECK(c.residue(bv.K(lam)) == 0);
    }
  }
}

TEST_CASE("exactness fails for weight-n integrands") {
  const Cohomology c(support::cubic());
  const auto& bv = c.bv();
  const Poly w = bv.parse("y^2*x0*x1*x2*eta-1");
  CHECK(bv.K(w) == bv.parse("2*y*x0*x1*x2+y^2*x0^4*x1*x2+y^2*x0*x1^4*x2+y^2*x0*x1*x2^4"));
  CHECK(c.residue(bv.K(w)) == Scalar(2, 27));
  CHECK(c.residue_pair(bv.parse("y*eta-1"), bv.parse("y*x0*x1*x2")) == 0);
  CHECK(c.residue(bv.l2(bv.parse("y*eta-1"), bv.parse("y*x0*x1*x2"))) == Scalar(1, 27));
  const auto r = c.k_reduce(bv.K(w));
  CHECK(r.coefficients == std::vector<Scalar>{0, 0});
}

TEST_CASE("numeric moment oracle") {
  const auto vars = VariableTable::generic({"x"});
  const Poly gauss = parse_polynomial("-1/2*x^2", vars);
  const Poly quart = parse_polynomial("-x^4", vars);
  CHECK(std::abs(numeric_moment_oracle(gauss, 1, 4) / (3 * std::sqrt(2 * M_PI)) - 1) < 1e-9);
  CHECK(std::abs(numeric_moment_oracle(gauss, 1, 3)) < 1e-12);
  const double m0 = numeric_moment_oracle(quart, 1, 0);
  CHECK(std::abs(numeric_moment_oracle(quart, 1, 4) / m0 - 0.25) < 1e-9);
  CHECK(std::abs(numeric_moment_oracle(quart, 1, 6) / numeric_moment_oracle(quart, 1, 2) - 0.75) <
        1e-9);
  CHECK_THROWS(numeric_moment_oracle(parse_polynomial("x^4", vars), 1, 0));
  CHECK_THROWS(numeric_moment_oracle(parse_polynomial("-x^3", vars), 1, 0));
}
