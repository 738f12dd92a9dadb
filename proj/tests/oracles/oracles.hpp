#pragma once

#include <map>
#include <vector>

#include "bvperiod/groebner.hpp"

namespace oracle {

using bvperiod::Monomial;
using bvperiod::Poly;
using bvperiod::Scalar;

inline std::size_t rank(std::vector<std::vector<Scalar>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Scalar f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

// Dimension of (k[slots]/(gens))_D by linear algebra on the degree-D piece of
// the ideal, for homogeneous generators.
inline std::size_t quotient_dimension(const std::vector<Poly>& gens, const std::vector<int>& slots,
                                      unsigned D) {
  const auto order = bvperiod::MonomialOrder::over(slots);
  const auto ms = bvperiod::monomials_of_degree(slots, D, order);
  std::map<std::vector<std::uint16_t>, std::size_t> col;
  for (std::size_t i = 0; i < ms.size(); ++i)
    col[std::vector<std::uint16_t>(ms[i].exp.begin(), ms[i].exp.end())] = i;
  std::vector<std::vector<Scalar>> rows;
  for (const auto& g : gens) {
    const unsigned dg = g.leading().mono.degree();
    if (dg > D) continue;
    for (const auto& m : bvperiod::monomials_of_degree(slots, D - dg, order)) {
      std::vector<Scalar> row(ms.size(), Scalar(0));
      const Poly prod = Poly(m, 1) * g;
      for (const auto& t : prod.terms())
        row[col.at(std::vector<std::uint16_t>(t.mono.exp.begin(), t.mono.exp.end()))] += t.coeff;
      rows.push_back(std::move(row));
    }
  }
  return ms.size() - rank(std::move(rows));
}

// Res(x^beta / prod_i c_i x_i^{a_i}) over slots 1..n+1.
inline Scalar monomial_residue(const Monomial& beta, const std::vector<Scalar>& c,
                               const std::vector<unsigned>& a) {
  Scalar r = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (beta.exp[i + 1] + 1 != a[i]) return 0;
    r /= c[i];
  }
  return r;
}

}  // namespace oracle
