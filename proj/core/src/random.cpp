#include "bvperiod/random.hpp"

#include <bit>

namespace bvperiod {

Scalar random_scalar(Rng& rng, int bound) {
  std::uniform_int_distribution<int> num(1, bound), den(1, 3), sign(0, 1);
  Scalar s(num(rng), den(rng));
  s.canonicalize();
  return sign(rng) ? Scalar(-s) : s;
}

Poly random_even_degree(Rng& rng, const std::vector<int>& slots, unsigned degree,
                        int max_terms) {
  const auto ms = monomials_of_degree(slots, degree, MonomialOrder::over(slots));
  if (ms.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
  std::uniform_int_distribution<int> count(1, max_terms);
  std::vector<Term> terms;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) terms.push_back({ms[pick(rng)], random_scalar(rng)});
  return Poly::from_terms(std::move(terms));
}

Poly random_homogeneous(Rng& rng, const BVComplex& bv, const Grading& g, int max_terms) {
  const auto& h = bv.hyper();
  const int nodd = -g.ghost;
  std::vector<Monomial> pool;
  const int slots = h.n + 2;
  std::vector<int> xs;
  for (int i = 1; i < slots; ++i) xs.push_back(i);
  const auto order = MonomialOrder::over(xs);
  for (unsigned mask = 0; mask < (1u << slots); ++mask) {
    if (std::popcount(mask) != nodd) continue;
    const int odd_x = std::popcount(mask >> 1);
    const int ay = g.weight - odd_x;
    if (ay < 0) continue;
    const int xdeg = g.charge + h.d * ay - h.d * static_cast<int>(mask & 1u) + odd_x;
    if (xdeg < 0) continue;
    for (auto m : monomials_of_degree(xs, static_cast<unsigned>(xdeg), order)) {
      m.exp[0] = static_cast<std::uint16_t>(ay);
      m.odd = static_cast<std::uint16_t>(mask);
      pool.push_back(m);
    }
  }
  if (pool.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> count(1, max_terms);
  std::vector<Term> terms;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) terms.push_back({pool[pick(rng)], random_scalar(rng)});
  return Poly::from_terms(std::move(terms));
}

Grading random_grading(Rng& rng, const BVComplex& bv) {
  const auto& h = bv.hyper();
  std::uniform_int_distribution<int> ghost(-2, 0), weight(0, h.n), charge(-h.d, h.d);
  return {ghost(rng), charge(rng), weight(rng)};
}

}  // namespace bvperiod
