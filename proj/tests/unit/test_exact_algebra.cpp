#include <doctest.h>

#include <random>

#include "bvperiod/grading.hpp"
#include "bvperiod/variables.hpp"
#include "support.hpp"

using namespace bvperiod;

namespace {
const VariableTable kCubicVars = VariableTable::hypersurface(2);
Poly P(const char* s) { return parse_polynomial(s, kCubicVars); }
}  // namespace

TEST_CASE("odd generators anticommute and square to zero") {
  CHECK(P("eta0*eta1") == P("eta0*eta1"));
  CHECK(P("eta1") * P("eta0") == -P("eta0*eta1"));
  CHECK(P("eta0") * P("eta1") == P("eta0*eta1"));
  CHECK((P("eta0") * P("eta0")).is_zero());
  CHECK(P("x0+y") * P("x0-y") == P("x0^2-y^2"));
  CHECK(to_string(P("eta1*eta0"), kCubicVars) == "-eta0*eta1");
  CHECK(to_string(P("eta1*eta-1*x2"), kCubicVars) == "-x2*eta-1*eta1");
}

TEST_CASE("grading table") {
  CHECK(grading_of(P("y*x0*x1*x2"), 3) == Grading{0, 0, 1});
  CHECK(grading_of(P("eta-1"), 3) == Grading{-1, 3, 0});
  CHECK(grading_of(P("1"), 3) == Grading{0, 0, 0});
  CHECK(grading_of(P("eta0"), 3) == Grading{-1, -1, 1});
  CHECK(!grading_of(P("1+y"), 3).has_value());
  const auto parts = homogeneous_components(P("1+y+x0^3+y*x0^3"), 3);
  CHECK(parts.size() == 4);
  CHECK(parts.at(Grading{0, 0, 0}) == P("1"));
  CHECK(parts.at(Grading{0, 0, 1}) == P("y*x0^3"));
  CHECK(parts.at(Grading{0, -3, 1}) == P("y"));
}
