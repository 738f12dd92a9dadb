#include "bvperiod/series.hpp"

namespace bvperiod {

std::vector<MultiIndex> multi_indices(int nvars, int k) {
  std::vector<MultiIndex> out;
  MultiIndex cur(nvars, 0);
  auto rec = [&](auto&& self, int idx, int left) -> void {
    if (idx == nvars - 1) {
      cur[idx] = static_cast<std::uint8_t>(left);
      out.push_back(cur);
      cur[idx] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[idx] = static_cast<std::uint8_t>(e);
      self(self, idx + 1, left - e);
    }
    cur[idx] = 0;
  };
  if (nvars > 0) rec(rec, 0, k);
  return out;
}

Scalar multi_factorial(const MultiIndex& mu) {
  Scalar r = 1;
  for (auto e : mu) r *= factorial(e);
  return r;
}

PolySeries operator*(const ScalarSeries& a, const PolySeries& b) {
  PolySeries s(b.nvars(), std::min(a.order(), b.order()));
  MultiIndex mu(b.nvars());
  for (const auto& [ma, va] : a.coeffs()) {
    const int da = total_degree(ma);
    for (const auto& [mb, vb] : b.coeffs()) {
      if (da + total_degree(mb) > s.order()) continue;
      for (int i = 0; i < b.nvars(); ++i) mu[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
      s.add(mu, vb * va);
    }
  }
  return s;
}

PolySeries operator*(const ScalarSeries& a, const Poly& b) {
  return a.map([&](const Scalar& c) { return b * c; });
}

ScalarSeries scalar_product(const ScalarSeries& a, const ScalarSeries& b) { return a * b; }

std::vector<std::vector<Scalar>> invert(const std::vector<std::vector<Scalar>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Scalar>> a = m, inv(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Scalar piv = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Scalar f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

std::vector<std::vector<ScalarSeries>> invert(const std::vector<std::vector<ScalarSeries>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  const int nv = m[0][0].nvars();
  const int ord = m[0][0].order();
  std::vector<std::vector<Scalar>> m0(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m0[i][j] = m[i][j].at_zero();
  const auto inv0 = invert(m0);
  // m = m0 (1 + N) with N nilpotent; m^{-1} = (sum (-N)^k) m0^{-1}.
  using Mat = std::vector<std::vector<ScalarSeries>>;
  auto zero = [&] { return Mat(n, std::vector<ScalarSeries>(n, ScalarSeries(nv, ord))); };
  auto mul = [&](const Mat& a, const Mat& b) {
    Mat c = zero();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (a[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
      }
    return c;
  };
  Mat inv0s = zero();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv0s[i][j] = ScalarSeries::constant(nv, ord, inv0[i][j]);
  Mat N = mul(inv0s, m);
  for (std::size_t i = 0; i < n; ++i) N[i][i] -= ScalarSeries::constant(nv, ord, Scalar(1));
  Mat negN = zero();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) negN[i][j] = -N[i][j];
  Mat sum = zero();
  for (std::size_t i = 0; i < n; ++i) sum[i][i] = ScalarSeries::constant(nv, ord, Scalar(1));
  Mat power = sum;
  for (int k = 1; k <= ord; ++k) {
    power = mul(power, negN);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum[i][j] += power[i][j];
  }
  return mul(sum, inv0s);
}

}  // namespace bvperiod
