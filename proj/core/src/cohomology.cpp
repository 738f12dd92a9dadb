#include "bvperiod/cohomology.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bvperiod {

std::vector<std::size_t> GriffithsBasis::block_dims() const {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) out.push_back(b.size());
  return out;
}

Cohomology::Cohomology(const BVComplex& bv)
    : bv_(bv), js_([&] {
        std::vector<Poly> gens;
        for (const auto& p : bv.partials())
          if (!p.is_zero()) gens.push_back(p);
        if (gens.size() != bv.partials().size())
          throw std::invalid_argument("potential has a vanishing partial derivative");
        return GroebnerBasis::compute(std::move(gens), bv.order());
      }()) {
  if (bv_.is_hypersurface()) {
    const auto& h = bv_.hyper();
    std::vector<Poly> gens;
    std::vector<int> xs;
    for (int i = 0; i <= h.n; ++i) {
      gens.push_back(diff_even(h.G, i + 1));
      xs.push_back(i + 1);
    }
    jac_ = GroebnerBasis::compute(std::move(gens), MonomialOrder::over(xs, bv_.order().kind));
    for (int k = 0; k < h.n; ++k) {
      basis_.blocks.emplace_back();
      const int deg = h.d * (k + 1) - (h.n + 1);
      if (deg < 0) continue;
      for (const auto& m : jac_->standard_monomials(static_cast<unsigned>(deg))) {
        Monomial r = m;
        r.exp[0] = static_cast<std::uint16_t>(k);
        basis_.blocks.back().push_back(static_cast<int>(basis_.reps.size()));
        basis_.block.push_back(k);
        basis_.reps.emplace_back(r, 1);
        basis_.labels.push_back(bv_.str(basis_.reps.back()));
      }
    }
    const unsigned socle_deg = static_cast<unsigned>((h.n + 1) * (h.d - 2));
    for (unsigned deg = 0; deg <= socle_deg; ++deg)
      mu_ += static_cast<unsigned long>(jac_->standard_monomials(deg).size());
    const auto top = jac_->standard_monomials(socle_deg);
    if (top.size() != 1) throw std::logic_error("Jacobian ring socle is not one-dimensional");
    socle_ = top.front();
    const Scalar h_coeff = jac_->normal_form(hessian()).coeff(socle_);
    if (h_coeff == 0) throw std::logic_error("Hessian vanishes in the Jacobian ring");
    socle_residue_ = mu_ / h_coeff;
  } else {
    if (!js_.is_zero_dimensional())
      throw std::invalid_argument("critical ideal of the potential is not zero-dimensional");
    basis_.blocks.emplace_back();
    for (unsigned deg = 0;; ++deg) {
      const auto ms = js_.standard_monomials(deg);
      if (ms.empty()) break;
      for (const auto& m : ms) {
        basis_.blocks[0].push_back(static_cast<int>(basis_.reps.size()));
        basis_.block.push_back(0);
        basis_.reps.emplace_back(m, 1);
        basis_.labels.push_back(bv_.str(basis_.reps.back()));
      }
    }
  }
  for (std::size_t a = 0; a < basis_.reps.size(); ++a)
    rep_index_.emplace(basis_.reps[a].leading().mono, a);
}

const GroebnerBasis& Cohomology::jacobian() const {
  if (!jac_) throw std::logic_error("not in hypersurface mode");
  return *jac_;
}

void Cohomology::reduce_charge_cx(const Poly& u, ReductionCertificate& out) const {
  Poly cur = u;
  const auto& sl = bv_.slots();
  while (!cur.is_zero()) {
    if (++out.rounds > max_rounds) throw std::runtime_error("k_reduce did not terminate");
    const auto div = js_.divide(cur);
    for (const auto& t : div.remainder.terms()) {
      const auto it = rep_index_.find(t.mono);
      if (it == rep_index_.end())
        throw std::logic_error("remainder monomial " + monomial_string(t.mono, bv_.vars()) +
                               " is not a basis representative");
      out.coefficients[it->second] += t.coeff;
    }
    Poly next;
    for (std::size_t i = 0; i < sl.size(); ++i) {
      const auto& q = div.quotients[i];
      if (q.is_zero()) continue;
      out.certificate += q * Poly::odd_var(sl[i]);
      next -= diff_even(q, sl[i]);
    }
    cur = std::move(next);
  }
}

ReductionCertificate Cohomology::k_reduce(const Poly& u) const {
  if (!u.is_even()) throw std::invalid_argument("k_reduce input must have ghost number 0");
  ReductionCertificate out;
  out.coefficients.assign(basis_.size(), Scalar(0));
  if (!bv_.is_hypersurface()) {
    reduce_charge_cx(u, out);
    return out;
  }
  const auto& h = bv_.hyper();
  std::map<int, std::vector<Term>> by_charge;
  for (const auto& t : u.terms()) by_charge[grading_of(t.mono, h.d).charge].push_back(t);
  const Poly R = bv_.R();
  for (auto& [c, terms] : by_charge) {
    Poly part = Poly::from_terms(std::move(terms));
    if (c == h.c_X) {
      reduce_charge_cx(part, out);
    } else {
      out.certificate += R * part * (Scalar(1) / (c - h.c_X));
    }
  }
  return out;
}

bool Cohomology::verify(const Poly& u, const ReductionCertificate& cert) const {
  Poly r = u - bv_.K(cert.certificate);
  for (std::size_t a = 0; a < basis_.size(); ++a)
    if (cert.coefficients[a] != 0) r -= basis_.reps[a] * cert.coefficients[a];
  return r.is_zero();
}

std::vector<Scalar> Cohomology::gd_reduce_oracle_raw(const Poly& F, int k) const {
  const auto& h = bv_.hyper();
  const auto& jac = jacobian();
  const int deg = k * h.d - (h.n + 1);
  if (k < 1 || deg < 0) throw std::invalid_argument("pole order out of range");
  if (!F.is_zero() && !is_homogeneous_x(F, h.n, deg))
    throw std::invalid_argument("F has degree mismatch for pole order " + std::to_string(k));
  std::vector<Scalar> coeffs(basis_.size(), Scalar(0));
  Poly cur = F;
  for (int j = k; j >= 1 && !cur.is_zero(); --j) {
    const auto div = jac.divide(cur);
    const Scalar norm = (j % 2 == 1 ? 1 : -1) * factorial(static_cast<unsigned>(j - 1));
    for (const auto& t : div.remainder.terms()) {
      Monomial m = t.mono;
      m.exp[0] = static_cast<std::uint16_t>(j - 1);
      const auto it = rep_index_.find(m);
      if (it == rep_index_.end()) throw std::logic_error("pole remainder outside the basis");
      coeffs[it->second] += t.coeff / norm;
    }
    Poly next;
    for (int i = 0; i <= h.n; ++i) next += diff_even(div.quotients[i], i + 1);
    if (j == 1) {
      if (!next.is_zero() ||
          std::any_of(div.quotients.begin(), div.quotients.end(),
                      [](const Poly& q) { return !q.is_zero(); }))
        throw std::logic_error("logarithmic pole in reduction");
      break;
    }
    cur = next * (Scalar(1) / (j - 1));
  }
  return coeffs;
}

std::vector<Scalar> Cohomology::gd_reduce_oracle(const Poly& F, int k) const {
  auto coeffs = gd_reduce_oracle_raw(F, k);
  const Scalar norm = (k % 2 == 1 ? 1 : -1) * factorial(static_cast<unsigned>(k - 1));
  for (auto& c : coeffs) c *= norm;
  return coeffs;
}

Poly Cohomology::hessian() const {
  const auto& h = bv_.hyper();
  const int m = h.n + 1;
  std::vector<std::vector<Poly>> H(m, std::vector<Poly>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) H[i][j] = diff_even(diff_even(h.G, i + 1), j + 1);
  auto det = [&](auto&& self, std::vector<int> rows, std::vector<int> cols) -> Poly {
    if (rows.size() == 1) return H[rows[0]][cols[0]];
    Poly r;
    const int row = rows.front();
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (H[row][cols[c]].is_zero()) continue;
      std::vector<int> sub_cols = cols;
      sub_cols.erase(sub_cols.begin() + static_cast<long>(c));
      Poly minor = H[row][cols[c]] * self(self, sub_rows, sub_cols);
      if (c % 2) r -= minor;
      else r += minor;
    }
    return r;
  };
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  return det(det, idx, idx);
}

Scalar Cohomology::grothendieck_residue(const Poly& f) const {
  const auto& h = bv_.hyper();
  const unsigned socle_deg = static_cast<unsigned>((h.n + 1) * (h.d - 2));
  const Poly top = f.filter([socle_deg](const Monomial& m) { return m.degree() == socle_deg; });
  if (top.is_zero()) return 0;
  return jacobian().normal_form(top).coeff(socle_) * socle_residue_;
}

Scalar Cohomology::residue(const Poly& w) const {
  const auto& h = bv_.hyper();
  return grothendieck_residue(y_component(even_part(w), static_cast<unsigned>(h.n - 1)));
}

Scalar Cohomology::residue_pair(const Poly& u, const Poly& v) const { return residue(u * v); }

std::vector<std::vector<Scalar>> Cohomology::gram_matrix() const {
  const auto n = basis_.size();
  std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g[a][b] = residue_pair(basis_.reps[a], basis_.reps[b]);
  return g;
}

double numeric_moment_oracle(const Poly& G, int slot, int m) {
  if (m < 0) throw std::invalid_argument("negative moment");
  unsigned top = 0;
  for (const auto& t : G.terms()) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (static_cast<int>(i) != slot && t.mono.exp[i])
        throw std::invalid_argument("potential is not one-variable");
    if (t.mono.odd) throw std::invalid_argument("potential must be even");
    top = std::max<unsigned>(top, t.mono.exp[slot]);
  }
  Monomial lead;
  lead.exp[slot] = static_cast<std::uint16_t>(top);
  if (top == 0 || top % 2 || G.coeff(lead) >= 0)
    throw std::invalid_argument("exp(G) is not integrable on the real line");
  std::vector<std::pair<unsigned, double>> coeffs;
  for (const auto& t : G.terms()) coeffs.emplace_back(t.mono.exp[slot], t.coeff.get_d());
  auto g = [&](double x) {
    double s = 0;
    for (const auto& [e, c] : coeffs) s += c * std::pow(x, static_cast<int>(e));
    return s;
  };
  auto log_abs = [&](double x) {
    return (m == 0 ? 0.0 : m * std::log(std::abs(x) + 1e-300)) + g(x);
  };
  double log_scale = -1e300;
  double L = 1;
  for (int iter = 0; iter < 60; ++iter) {
    for (int i = 0; i <= 2000; ++i) {
      const double x = -L + 2 * L * i / 2000.0;
      log_scale = std::max(log_scale, log_abs(x));
    }
    const double edge = std::max(log_abs(L), log_abs(-L));
    if (edge < log_scale + std::log(1e-16)) break;
    L *= 1.5;
  }
  auto f = [&](double x) {
    return std::exp(log_abs(x) - log_scale) * ((m % 2 && x < 0) ? -1.0 : 1.0);
  };
  const int pieces = 32;
  double total = 0;
  for (int i = 0; i < pieces; ++i) {
    const double a = -L + 2 * L * i / pieces;
    const double b = -L + 2 * L * (i + 1) / pieces;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
  }
  return total * std::exp(log_scale);
}

}  // namespace bvperiod
