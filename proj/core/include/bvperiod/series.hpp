#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bvperiod/polynomial.hpp"

namespace bvperiod {

// Exponent vector of t^mu over the deformation index set.
using MultiIndex = std::vector<std::uint8_t>;

inline int total_degree(const MultiIndex& mu) {
  return std::accumulate(mu.begin(), mu.end(), 0);
}

inline bool value_is_zero(const Poly& p) { return p.is_zero(); }
inline bool value_is_zero(const Scalar& s) { return s == 0; }

// All multi-indices over `nvars` variables of total degree exactly k.
std::vector<MultiIndex> multi_indices(int nvars, int k);
// mu! = prod mu_i!
Scalar multi_factorial(const MultiIndex& mu);

// Truncated power series in commuting t^0..t^{r-1} with coefficients in V,
// living in V[t]/(t)^{order+1}.
template <class V>
class Series {
 public:
  Series() = default;
  Series(int nvars, int order) : nvars_(nvars), order_(order) {}

  static Series constant(int nvars, int order, V value) {
    Series s(nvars, order);
    s.add(MultiIndex(nvars, 0), std::move(value));
    return s;
  }
  // value * t^i
  static Series linear(int nvars, int order, int i, V value) {
    Series s(nvars, order);
    MultiIndex mu(nvars, 0);
    mu[i] = 1;
    s.add(mu, std::move(value));
    return s;
  }

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  const std::map<MultiIndex, V>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  V at(const MultiIndex& mu) const {
    auto it = c_.find(mu);
    return it == c_.end() ? V() : it->second;
  }
  V at_zero() const { return at(MultiIndex(nvars_, 0)); }

  void add(const MultiIndex& mu, const V& v) {
    if (static_cast<int>(mu.size()) != nvars_) throw std::invalid_argument("multi-index size");
    if (total_degree(mu) > order_ || value_is_zero(v)) return;
    auto [it, inserted] = c_.try_emplace(mu, v);
    if (!inserted) {
      it->second += v;
      if (value_is_zero(it->second)) c_.erase(it);
    }
  }
  void set(const MultiIndex& mu, V v) {
    c_.erase(mu);
    add(mu, std::move(v));
  }

  // Part of exact total degree k.
  Series homogeneous_part(int k) const {
    Series s(nvars_, order_);
    for (const auto& [mu, v] : c_)
      if (total_degree(mu) == k) s.c_.emplace(mu, v);
    return s;
  }
  Series truncated(int order) const {
    Series s(nvars_, order);
    for (const auto& [mu, v] : c_)
      if (total_degree(mu) <= order) s.c_.emplace(mu, v);
    return s;
  }
  Series with_order(int order) const {
    Series s = truncated(order);
    return s;
  }

  Series& operator+=(const Series& o) {
    for (const auto& [mu, v] : o.c_) add(mu, v);
    return *this;
  }
  Series& operator-=(const Series& o) {
    for (const auto& [mu, v] : o.c_) add(mu, V(-v));
    return *this;
  }
  Series& operator*=(const Scalar& c) {
    if (c == 0) c_.clear();
    for (auto& [mu, v] : c_) v *= c;
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Scalar& c) { return a *= c; }
  Series operator-() const {
    Series s = *this;
    for (auto& [mu, v] : s.c_) v = V(-v);
    return s;
  }
  bool operator==(const Series& o) const { return c_ == o.c_; }

  friend Series operator*(const Series& a, const Series& b) {
    Series s(a.nvars_, std::min(a.order_, b.order_));
    MultiIndex mu(a.nvars_);
    for (const auto& [ma, va] : a.c_) {
      const int da = total_degree(ma);
      for (const auto& [mb, vb] : b.c_) {
        if (da + total_degree(mb) > s.order_) continue;
        for (int i = 0; i < a.nvars_; ++i) mu[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
        s.add(mu, va * vb);
      }
    }
    return s;
  }

  // d/dt^i; the result keeps the order (its top degree is then unreliable by one).
  Series derivative(int i) const {
    Series s(nvars_, order_);
    for (const auto& [mu, v] : c_) {
      if (!mu[i]) continue;
      MultiIndex nu = mu;
      --nu[i];
      V w = v;
      w *= Scalar(mu[i]);
      s.add(nu, w);
    }
    return s;
  }

  // Multiply by t^i.
  Series times_variable(int i) const {
    Series s(nvars_, order_);
    for (const auto& [mu, v] : c_) {
      MultiIndex nu = mu;
      ++nu[i];
      s.add(nu, v);
    }
    return s;
  }

  template <class F>
  auto map(F&& f) const -> Series<decltype(f(std::declval<const V&>()))> {
    using W = decltype(f(std::declval<const V&>()));
    Series<W> s(nvars_, order_);
    for (const auto& [mu, v] : c_) s.add(mu, f(v));
    return s;
  }

 private:
  int nvars_ = 0;
  int order_ = 0;
  std::map<MultiIndex, V> c_;
};

using PolySeries = Series<Poly>;
using ScalarSeries = Series<Scalar>;

// Scalar series times polynomial series.
PolySeries operator*(const ScalarSeries& a, const PolySeries& b);
PolySeries operator*(const ScalarSeries& a, const Poly& b);
ScalarSeries scalar_product(const ScalarSeries& a, const ScalarSeries& b);

// exp(X) - 1 and log(1 + X) for X without constant term.
template <class V>
Series<V> exp_minus_one(const Series<V>& x) {
  if (!value_is_zero(x.at_zero())) throw std::invalid_argument("exp of a non-nilpotent series");
  Series<V> result(x.nvars(), x.order());
  Series<V> power = x;
  for (int k = 1; k <= x.order() && !power.is_zero(); ++k) {
    result += power * (Scalar(1) / factorial(static_cast<unsigned>(k)));
    power = power * x;
  }
  return result;
}

template <class V>
Series<V> log_one_plus(const Series<V>& x) {
  if (!value_is_zero(x.at_zero())) throw std::invalid_argument("log of a non-unital series");
  Series<V> result(x.nvars(), x.order());
  Series<V> power = x;
  for (int k = 1; k <= x.order() && !power.is_zero(); ++k) {
    result += power * Scalar(k % 2 ? 1 : -1, k);
    power = power * x;
  }
  return result;
}

// exp(X) for a scalar-valued series X (constant term allowed only if zero).
inline ScalarSeries exp_series(const ScalarSeries& x) {
  ScalarSeries e = exp_minus_one(x);
  e.add(MultiIndex(x.nvars(), 0), Scalar(1));
  return e;
}

// Apply a linear map coefficient-wise.
template <class F>
PolySeries apply_linear(const PolySeries& s, F&& f) {
  return s.map([&](const Poly& p) { return f(p); });
}

// Inverse of a square matrix of scalar series whose value at t = 0 is invertible.
std::vector<std::vector<ScalarSeries>> invert(const std::vector<std::vector<ScalarSeries>>& m);
std::vector<std::vector<Scalar>> invert(const std::vector<std::vector<Scalar>>& m);

}  // namespace bvperiod
