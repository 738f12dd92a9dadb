#include "bvperiod/grading.hpp"

#include <bit>

namespace bvperiod {

Grading grading_of(const Monomial& m, int d) {
  Grading g;
  const int odd_x = std::popcount(static_cast<unsigned>(m.odd >> 1));
  const bool eta_y = m.odd & 1u;
  g.ghost = -m.odd_count();
  g.charge = -d * m.exp[0] + d * (eta_y ? 1 : 0) - odd_x;
  for (std::size_t i = 1; i < kMaxVars; ++i) g.charge += m.exp[i];
  g.weight = m.exp[0] + odd_x;
  return g;
}

std::optional<Grading> grading_of(const Poly& p, int d) {
  if (p.is_zero()) return std::nullopt;
  const Grading g = grading_of(p.leading().mono, d);
  for (const auto& t : p.terms())
    if (grading_of(t.mono, d) != g) return std::nullopt;
  return g;
}

std::map<Grading, Poly> homogeneous_components(const Poly& p, int d) {
  std::map<Grading, std::vector<Term>> parts;
  for (const auto& t : p.terms()) parts[grading_of(t.mono, d)].push_back(t);
  std::map<Grading, Poly> out;
  for (auto& [g, terms] : parts) out.emplace(g, Poly::from_terms(std::move(terms)));
  return out;
}

}  // namespace bvperiod
