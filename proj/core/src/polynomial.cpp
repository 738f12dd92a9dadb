#include "bvperiod/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

namespace bvperiod {

Poly::Poly(const Scalar& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly::Poly(const Monomial& m, const Scalar& c) {
  if (c != 0) terms_.push_back({m, c});
}

Poly Poly::even_var(int slot, unsigned power) {
  Monomial m;
  m.exp[slot] = static_cast<std::uint16_t>(power);
  return Poly(m, 1);
}

Poly Poly::odd_var(int bit) {
  Monomial m;
  m.odd = static_cast<std::uint16_t>(1u << bit);
  return Poly(m, 1);
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return storage_greater(a.mono, b.mono);
  });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Poly::is_even() const {
  for (const auto& t : terms_)
    if (t.mono.odd) return false;
  return true;
}

Scalar Poly::constant_term() const { return coeff(Monomial{}); }

Scalar Poly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) {
                               return storage_greater(t.mono, key);
                             });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = compare_storage(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Scalar s = subtract ? Scalar(a[i].coeff - b[j].coeff) : Scalar(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
  if (a.odd & b.odd) return 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) out.exp[i] = a.exp[i] + b.exp[i];
  out.odd = a.odd | b.odd;
  return koszul_sign(a.odd, b.odd);
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1 && a.leading().mono == Monomial{}) return b * a.leading().coeff;
  if (b.size() == 1 && b.leading().mono == Monomial{}) return a * b.leading().coeff;
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  Monomial m;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      const int s = multiply_monomials(ta.mono, tb.mono, m);
      if (s == 0) continue;
      auto& slot = acc[m];
      if (s > 0) slot += ta.coeff * tb.coeff;
      else slot -= ta.coeff * tb.coeff;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [mono, c] : acc)
    if (c != 0) terms.push_back({mono, std::move(c)});
  return Poly::from_terms(std::move(terms));
}

void Poly::add_scaled_product(const Scalar& c, const Monomial& m, const Poly& p) {
  std::vector<Term> shifted;
  shifted.reserve(p.size());
  Monomial out;
  for (const auto& t : p.terms()) {
    const int s = multiply_monomials(m, t.mono, out);
    if (s == 0) continue;
    shifted.push_back({out, s > 0 ? Scalar(c * t.coeff) : Scalar(-c * t.coeff)});
  }
  // Multiplication by a monomial preserves the storage order only for even m.
  if (m.odd) {
    *this += Poly::from_terms(std::move(shifted));
  } else {
    Poly q;
    q.terms_ = std::move(shifted);
    *this += q;
  }
}

Poly Poly::filter(const std::function<bool(const Monomial&)>& keep) const {
  Poly r;
  for (const auto& t : terms_)
    if (keep(t.mono)) r.terms_.push_back(t);
  return r;
}

Poly Poly::map_terms(const std::function<bool(Term&)>& fn) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto t : terms_)
    if (fn(t) && t.coeff != 0) out.push_back(std::move(t));
  return from_terms(std::move(out));
}

Poly pow(const Poly& p, unsigned k) {
  Poly r(1);
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

Poly diff_even(const Poly& p, int slot) {
  return p.map_terms([slot](Term& t) {
    const auto e = t.mono.exp[slot];
    if (e == 0) return false;
    t.coeff *= e;
    t.mono.exp[slot] = e - 1;
    return true;
  });
}

Poly diff_odd(const Poly& p, int bit) {
  return p.map_terms([bit](Term& t) {
    if (!(t.mono.odd & (1u << bit))) return false;
    if (odd_before(t.mono.odd, bit) & 1) t.coeff = -t.coeff;
    t.mono.odd &= static_cast<std::uint16_t>(~(1u << bit));
    return true;
  });
}

Poly mul_odd_left(const Poly& p, int bit) {
  return p.map_terms([bit](Term& t) {
    if (t.mono.odd & (1u << bit)) return false;
    if (odd_before(t.mono.odd, bit) & 1) t.coeff = -t.coeff;
    t.mono.odd |= static_cast<std::uint16_t>(1u << bit);
    return true;
  });
}

Poly even_part(const Poly& p) {
  return p.filter([](const Monomial& m) { return m.odd == 0; });
}

Poly y_component(const Poly& p, unsigned k) {
  return p.map_terms([k](Term& t) {
    if (t.mono.exp[0] != k) return false;
    t.mono.exp[0] = 0;
    return true;
  });
}

unsigned max_degree_in(const Poly& p, int slot) {
  unsigned m = 0;
  for (const auto& t : p.terms()) m = std::max<unsigned>(m, t.mono.exp[slot]);
  return m;
}

}  // namespace bvperiod
