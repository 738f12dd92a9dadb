#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bvperiod/bv.hpp"
#include "bvperiod/series.hpp"

namespace bvperiod {

// Set partition of {0..n-1}: blocks ordered by minimum, elements ascending.
struct Partition {
  std::vector<std::vector<int>> blocks;
};

std::vector<Partition> partitions(int n);
// Koszul sign of the permutation listing `order` given parities of the items.
int koszul_sign_of(const std::vector<int>& order, const std::vector<int>& parity);
// epsilon(pi): sign of rewriting x_1...x_n as x_{B_1} ... x_{B_k}.
int partition_sign(const Partition& pi, const std::vector<int>& parity);

inline int parity_of(const Poly& p) { return parity(p); }
inline int parity_of(const PolySeries& s) {
  int par = -1;
  for (const auto& [mu, v] : s.coeffs()) {
    const int q = parity(v);
    if (q < 0) return -1;
    if (par == -1) par = q;
    else if (par != q) return -1;
  }
  return par == -1 ? 0 : par;
}

namespace detail {
inline int require_parity(int p) {
  if (p < 0) throw std::invalid_argument("argument is not parity-homogeneous");
  return p;
}
}  // namespace detail

// l_n(x_1..x_n) = [[...[K, L_{x_1}], ...], L_{x_n}](1).
template <class V, class Op>
V ell_nested(const Op& K, const std::vector<V>& xs, const V& one) {
  std::function<V(std::size_t, const V&)> op = [&](std::size_t k, const V& v) -> V {
    if (k == 0) return K(v);
    const V& x = xs[k - 1];
    int deg = 1;
    for (std::size_t j = 0; j + 1 < k; ++j) deg += detail::require_parity(parity_of(xs[j]));
    const int px = detail::require_parity(parity_of(x));
    V a = op(k - 1, x * v);
    V b = x * op(k - 1, v);
    if ((deg * px) % 2) return a + b;
    return a - b;
  };
  return op(xs.size(), one);
}

// l_n by solving the partition recursion for K(x_1 ... x_n); all subsets are
// memoized, so the returned map holds l(x_B) for every nonempty B (bitmask).
template <class V, class Op>
std::map<unsigned, V> ell_partition_all(const Op& K, const std::vector<V>& xs, const V& one) {
  const int n = static_cast<int>(xs.size());
  std::vector<int> par(n);
  for (int i = 0; i < n; ++i) par[i] = detail::require_parity(parity_of(xs[i]));
  std::map<unsigned, V> ell;
  for (unsigned size = 1; size <= static_cast<unsigned>(n); ++size) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) != size) continue;
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      std::vector<int> sub_par;
      V prod = one;
      for (int i : idx) {
        prod = prod * xs[i];
        sub_par.push_back(par[i]);
      }
      V val = K(prod);
      const int m = static_cast<int>(idx.size());
      for (const auto& pi : partitions(m)) {
        if (pi.blocks.size() == 1) continue;
        const int big = m - static_cast<int>(pi.blocks.size()) + 1;
        for (std::size_t i = 0; i < pi.blocks.size(); ++i) {
          if (static_cast<int>(pi.blocks[i].size()) != big) continue;
          int sign = partition_sign(pi, sub_par);
          int before = 0;
          for (std::size_t j = 0; j < i; ++j)
            for (int e : pi.blocks[j]) before += sub_par[e];
          if (before % 2) sign = -sign;
          V term = one;
          for (std::size_t j = 0; j < pi.blocks.size(); ++j) {
            if (j == i) {
              unsigned bmask = 0;
              for (int e : pi.blocks[j]) bmask |= 1u << idx[e];
              term = term * ell.at(bmask);
            } else {
              term = term * xs[idx[pi.blocks[j][0]]];
            }
          }
          if (sign > 0) val = val - term;
          else val = val + term;
          if (big != 1) break;
        }
      }
      ell.emplace(mask, val);
    }
  }
  return ell;
}

template <class V, class Op>
V ell_partition(const Op& K, const std::vector<V>& xs, const V& one) {
  const auto all = ell_partition_all(K, xs, one);
  return all.at((1u << xs.size()) - 1);
}

// phi^f_n via f(x_1...x_n) = sum_pi eps(pi) prod phi(x_B); returns phi(x_B) per mask.
template <class V, class W, class F>
std::map<unsigned, W> phi_all(const F& f, const std::vector<V>& xs, const V& one, const W& unit) {
  const int n = static_cast<int>(xs.size());
  std::vector<int> par(n);
  for (int i = 0; i < n; ++i) par[i] = detail::require_parity(parity_of(xs[i]));
  std::map<unsigned, W> phi;
  for (unsigned size = 1; size <= static_cast<unsigned>(n); ++size) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) != size) continue;
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      std::vector<int> sub_par;
      V prod = one;
      for (int i : idx) {
        prod = prod * xs[i];
        sub_par.push_back(par[i]);
      }
      W val = f(prod);
      for (const auto& pi : partitions(static_cast<int>(idx.size()))) {
        if (pi.blocks.size() == 1) continue;
        W term = unit;
        for (const auto& b : pi.blocks) {
          unsigned bmask = 0;
          for (int e : b) bmask |= 1u << idx[e];
          term = term * phi.at(bmask);
        }
        if (partition_sign(pi, sub_par) > 0) val = val - term;
        else val = val + term;
      }
      phi.emplace(mask, val);
    }
  }
  return phi;
}

template <class V, class W, class F>
W phi_n(const F& f, const std::vector<V>& xs, const V& one, const W& unit) {
  return phi_all(f, xs, one, unit).at((1u << xs.size()) - 1);
}

// Finite-dimensional graded space with a basis of given parities; vectors are
// coordinate lists.
using Vec = std::vector<Scalar>;

// Graded-symmetric multilinear maps S^n(V) -> W for n = 1..max_arity stored on
// sorted basis tuples.
class MultilinearTable {
 public:
  MultilinearTable() = default;
  MultilinearTable(std::vector<int> in_parity, std::vector<int> out_parity, int max_arity,
                   int degree)
      : in_parity_(std::move(in_parity)), out_parity_(std::move(out_parity)),
        max_arity_(max_arity), degree_(degree) {}

  int max_arity() const { return max_arity_; }
  int degree() const { return degree_; }
  const std::vector<int>& in_parity() const { return in_parity_; }
  const std::vector<int>& out_parity() const { return out_parity_; }
  std::size_t in_dim() const { return in_parity_.size(); }
  std::size_t out_dim() const { return out_parity_.size(); }

  // Value on basis elements in the given order (sign folded in).
  Vec value(const std::vector<int>& tuple) const;
  void set(std::vector<int> tuple, Vec value);
  // Multilinear extension to parity-homogeneous vectors.
  Vec evaluate(const std::vector<Vec>& args) const;
  // All sorted tuples of arity n over the input basis.
  std::vector<std::vector<int>> sorted_tuples(int n) const;

  // Random table with values respecting the map degree parity.
  static MultilinearTable random(std::mt19937_64& rng, std::vector<int> in_parity,
                                 std::vector<int> out_parity, int max_arity, int degree,
                                 double density = 0.6);

 private:
  std::vector<int> in_parity_, out_parity_;
  int max_arity_ = 0;
  int degree_ = 0;
  std::map<std::vector<int>, Vec> values_;
};

int vec_parity(const Vec& v, const std::vector<int>& basis_parity);

// (phi' . phi)_n = sum_pi eps(pi) phi'_{|pi|}(phi(x_B1), ..., phi(x_Bk)).
MultilinearTable compose(const MultilinearTable& outer, const MultilinearTable& inner, int N);
bool tables_equal(const MultilinearTable& a, const MultilinearTable& b, int N);

struct RelationReport {
  bool ok = true;
  int arity = 0;
  std::vector<int> witness;
  std::string message;
};

// Left side of the L-infinity relation at arity n for an operation family
// given as a callable on argument lists.
template <class V, class Ell>
V linf_relation(const Ell& ell, const std::vector<V>& xs, const V& zero) {
  const int n = static_cast<int>(xs.size());
  std::vector<int> par(n);
  for (int i = 0; i < n; ++i) par[i] = detail::require_parity(parity_of(xs[i]));
  V total = zero;
  for (const auto& pi : partitions(n)) {
    const int big = n - static_cast<int>(pi.blocks.size()) + 1;
    for (std::size_t i = 0; i < pi.blocks.size(); ++i) {
      if (static_cast<int>(pi.blocks[i].size()) != big) continue;
      int sign = partition_sign(pi, par);
      int before = 0;
      for (std::size_t j = 0; j < i; ++j)
        for (int e : pi.blocks[j]) before += par[e];
      if (before % 2) sign = -sign;
      std::vector<V> inner;
      for (int e : pi.blocks[i]) inner.push_back(xs[e]);
      std::vector<V> outer;
      for (std::size_t j = 0; j < pi.blocks.size(); ++j)
        outer.push_back(j == i ? ell(inner) : xs[pi.blocks[j][0]]);
      V term = ell(outer);
      if (sign > 0) total = total + term;
      else total = total - term;
    }
  }
  return total;
}

// Check of the L-infinity relations on all sorted basis tuples up to arity N.
RelationReport linf_relation_check(const MultilinearTable& ell, int N);
// Morphism relation between tables ell (source), ell2 (target) and phi.
RelationReport linf_morphism_check(const MultilinearTable& ell, const MultilinearTable& ell2,
                                   const MultilinearTable& phi, int N);

}  // namespace bvperiod
