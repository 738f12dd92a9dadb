#include "bvperiod/monomial.hpp"

namespace bvperiod {

int compare_storage(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  // y is the smallest variable, then x_n, ..., x0.
  if (a.exp[0] != b.exp[0]) return a.exp[0] < b.exp[0] ? 1 : -1;
  for (std::size_t i = kMaxVars - 1; i >= 1; --i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  if (a.odd != b.odd) {
    const int ca = a.odd_count(), cb = b.odd_count();
    if (ca != cb) return ca > cb ? 1 : -1;
    return a.odd < b.odd ? 1 : -1;
  }
  return 0;
}

int koszul_sign(std::uint16_t a, std::uint16_t b) {
  // Each bit of b must move left past every bit of a that is larger.
  int swaps = 0;
  for (unsigned bb = b; bb; bb &= bb - 1) {
    const int j = std::countr_zero(bb);
    swaps += std::popcount(static_cast<unsigned>(a >> (j + 1)));
  }
  return (swaps & 1) ? -1 : 1;
}

bool divides_even(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

}  // namespace bvperiod
