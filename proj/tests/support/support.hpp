#pragma once

#include <string>
#include <vector>

#include "bvperiod/bv.hpp"
#include "bvperiod/random.hpp"
#include "bvperiod/series.hpp"

namespace support {

using namespace bvperiod;

inline BVComplex fermat(int n, int d) {
  const auto vars = VariableTable::hypersurface(n);
  std::string text;
  for (int i = 0; i <= n; ++i)
    text += (i ? "+x" : "x") + std::to_string(i) + "^" + std::to_string(d);
  return BVComplex::hypersurface(parse_polynomial(text, vars), n, d);
}

inline BVComplex cubic() { return fermat(2, 3); }
inline BVComplex quartic() { return fermat(2, 4); }

inline BVComplex toy(const std::string& potential) {
  const auto vars = VariableTable::generic({"x"});
  return BVComplex::generic(parse_polynomial(potential, vars), vars);
}

// Random nonzero tri-homogeneous elements.
inline std::vector<Poly> random_elements(Rng& rng, const BVComplex& bv, std::size_t count) {
  std::vector<Poly> out;
  while (out.size() < count) {
    Poly p = random_homogeneous(rng, bv, random_grading(rng, bv));
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

// t^a with coefficient 1.
inline ScalarSeries linear_series(int r, int order, int a) {
  MultiIndex mu(r, 0);
  mu[a] = 1;
  ScalarSeries s(r, order);
  s.add(mu, Scalar(1));
  return s;
}

inline int sign_of(int e) { return e % 2 ? -1 : 1; }

}  // namespace support
