#include <doctest.h>

#include "bvperiod/descendant.hpp"
#include "support.hpp"

using namespace bvperiod;
using support::sign_of;

TEST_CASE("Q, Delta and K on the Fermat cubic") {
  const auto bv = support::cubic();
  const auto P = [&](const char* s) { return bv.parse(s); };
  CHECK(bv.Q(P("eta-1")) == bv.hyper().G);
  CHECK(bv.Q(bv.R()).is_zero());
  CHECK(bv.Q(P("y*eta0")) == P("3*y^2*x0^2"));
  CHECK(bv.Delta(P("y*eta-1")) == P("1"));
  CHECK(bv.Delta(P("x0*eta1")).is_zero());
  const Poly d = bv.Delta(P("x0*x1*eta0*eta1"));
  CHECK(d == P("x1*eta1-x0*eta0"));
  CHECK(bv.Delta(d).is_zero());
  CHECK(bv.K(P("eta-1")) == bv.hyper().G);
  CHECK(bv.K(Poly(Scalar(1))).is_zero());
  CHECK(bv.K(bv.R()) == Poly(Scalar(2 + 1 - 3)));
  CHECK(bv.R() == P("-3*y*eta-1+x0*eta0+x1*eta1+x2*eta2"));
}

TEST_CASE("one-variable toy K") {
  const auto bv = support::toy("-x^4");
  CHECK(bv.K(bv.parse("x*eta")) == bv.parse("-4*x^4+1"));
}

TEST_CASE("l2 examples and delta_R eigenvalues") {
  const auto bv = support::cubic();
  const auto P = [&](const char* s) { return bv.parse(s); };
  CHECK(bv.l2(P("x0"), P("eta0")) == P("1"));
  for (const char* f : {"x0", "y", "x0*x1^2", "y*x0*x1*x2", "y^2*x0", "1"}) {
    const Poly F = P(f);
    const Scalar c = bv.grading(F)->charge;
    CHECK(bv.l2(bv.R(), F) == F * c);
  }
  CHECK(bv.delta_R(P("1")).is_zero());
  CHECK(bv.delta_R(P("x0")) == P("x0"));
  CHECK(bv.delta_R(P("y")) == P("-3*y"));
  const auto q = support::quartic();
  CHECK(q.delta_R(q.parse("1")) == q.parse("-1"));
  CHECK(q.delta_R(q.parse("x0")).is_zero());
}

namespace {

void bv_identity_suite(const BVComplex& bv, std::uint64_t seed) {
  Rng rng(seed);
  const auto xs = support::random_elements(rng, bv, 120);
  const auto one = Poly(Scalar(1));
  const auto K = [&](const Poly& p) { return bv.K(p); };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Poly& a = xs[i];
    const Poly& b = xs[(i * 7 + 3) % xs.size()];
    const Poly& c = xs[(i * 13 + 5) % xs.size()];
    const int pa = parity(a), pb = parity(b), pc = parity(c);
    CHECK(bv.K(bv.K(a)).is_zero());
    CHECK(bv.Q(bv.Q(a)).is_zero());
    CHECK(bv.Delta(bv.Delta(a)).is_zero());
    CHECK((bv.Q(bv.Delta(a)) + bv.Delta(bv.Q(a))).is_zero());
    const auto ga = bv.grading(a);
    REQUIRE(ga);
    if (!bv.Q(a).is_zero()) {
      const auto gq = bv.grading(bv.Q(a));
      CHECK(gq->charge == ga->charge);
      CHECK(gq->weight == ga->weight);
    }
    if (!bv.Delta(a).is_zero()) {
      const auto gd = bv.grading(bv.Delta(a));
      CHECK(gd->charge == ga->charge);
      CHECK(gd->weight + 1 == ga->weight);
    }
    CHECK(bv.l2(a, b) == bv.l2(b, a) * Scalar(sign_of(pa * pb)));
    CHECK((bv.K(bv.l2(a, b)) + bv.l2(bv.K(a), b) + bv.l2(a, bv.K(b)) * Scalar(sign_of(pa)))
              .is_zero());
    CHECK(bv.l2(a, b * c) ==
          bv.l2(a, b) * c + b * bv.l2(a, c) * Scalar(sign_of((pa + 1) * pb)));
    CHECK(ell_nested(K, std::vector<Poly>{a, b}, one) == bv.l2(a, b));
    CHECK(ell_nested(K, std::vector<Poly>{a, b, c}, one).is_zero());
    CHECK(bv.delta_R(bv.K(a)) == bv.K(bv.delta_R(a)));
    (void)pc;
  }
}

}  // namespace

TEST_CASE("BV identity suite on the Fermat cubic") { bv_identity_suite(support::cubic(), 11); }
TEST_CASE("BV identity suite on the Fermat quartic") { bv_identity_suite(support::quartic(), 12); }

TEST_CASE("delta_R acts by charge minus background charge") {
  for (const auto& bv : {support::cubic(), support::quartic()}) {
    Rng rng(21);
    for (const auto& u : support::random_elements(rng, bv, 60)) {
      const auto g = bv.grading(u);
      CHECK(bv.delta_R(u) == u * Scalar(g->charge - bv.hyper().c_X));
    }
  }
}
