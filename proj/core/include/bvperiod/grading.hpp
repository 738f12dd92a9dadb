#pragma once

#include <compare>
#include <map>
#include <optional>

#include "bvperiod/polynomial.hpp"

namespace bvperiod {

struct Grading {
  int ghost = 0;
  int charge = 0;
  int weight = 0;
  auto operator<=>(const Grading&) const = default;
  Grading operator+(const Grading& o) const {
    return {ghost + o.ghost, charge + o.charge, weight + o.weight};
  }
};

// Tri-grading of a hypersurface monomial for hypersurface degree d.
Grading grading_of(const Monomial& m, int d);
// Common grading, or nullopt if p is zero or not tri-homogeneous.
std::optional<Grading> grading_of(const Poly& p, int d);
std::map<Grading, Poly> homogeneous_components(const Poly& p, int d);

}  // namespace bvperiod
