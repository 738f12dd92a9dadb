#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace bvperiod {

// Slot 0 is y (unused in generic mode); slots 1..m hold x0..xn or the user
// variables. Odd bit j is the partner eta of even slot j, so the canonical
// odd order is eta-1 < eta0 < ... < etan.
inline constexpr std::size_t kMaxVars = 12;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint16_t odd = 0;

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  int odd_count() const { return std::popcount(odd); }
  bool is_even() const { return odd == 0; }
  bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = m.odd * 0x9e3779b97f4a7c15ULL;
    for (auto e : m.exp) h = (h ^ e) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

// Storage order: grevlex on the even part with x0 > x1 > ... > y, ties broken
// by the odd mask. Returns <0, 0, >0.
int compare_storage(const Monomial& a, const Monomial& b);

inline bool storage_greater(const Monomial& a, const Monomial& b) {
  return compare_storage(a, b) > 0;
}

// Sign of eta_A * eta_B rewritten in canonical order (A, B disjoint).
int koszul_sign(std::uint16_t a, std::uint16_t b);

// Number of odd generators in `mask` strictly before bit `bit`.
inline int odd_before(std::uint16_t mask, int bit) {
  return std::popcount(static_cast<unsigned>(mask & ((1u << bit) - 1u)));
}

bool divides_even(const Monomial& a, const Monomial& b);

}  // namespace bvperiod
