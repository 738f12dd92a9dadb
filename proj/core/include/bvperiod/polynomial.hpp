#pragma once

#include <functional>
#include <vector>

#include "bvperiod/monomial.hpp"
#include "bvperiod/scalar.hpp"

namespace bvperiod {

struct Term {
  Monomial mono;
  Scalar coeff;
  bool operator==(const Term&) const = default;
};

// Sparse super-commutative polynomial in y, x_i (even) and eta_j (odd).
// Terms are kept sorted in descending storage order with no zero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Scalar& c);
  Poly(const Monomial& m, const Scalar& c);

  static Poly constant(const Scalar& c) { return Poly(c); }
  static Poly even_var(int slot, unsigned power = 1);
  static Poly odd_var(int bit);
  // Builds from arbitrary (possibly unsorted, repeated, zero) terms.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  bool is_even() const;
  Scalar constant_term() const;
  Scalar coeff(const Monomial& m) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  // this += c * m * p, with m a monomial multiplied on the left.
  void add_scaled_product(const Scalar& c, const Monomial& m, const Poly& p);

  Poly filter(const std::function<bool(const Monomial&)>& keep) const;
  Poly map_terms(const std::function<bool(Term&)>& fn) const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

// m1 * m2 with the Koszul sign; returns 0 when an eta repeats.
int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out);

Poly pow(const Poly& p, unsigned k);
Poly diff_even(const Poly& p, int slot);
// Left derivative d/d eta_bit.
Poly diff_odd(const Poly& p, int bit);
// Multiplies by eta_bit on the left.
Poly mul_odd_left(const Poly& p, int bit);
// Sum of terms with no odd generators.
Poly even_part(const Poly& p);
// Coefficient of y^k as a polynomial in the remaining variables.
Poly y_component(const Poly& p, unsigned k);
unsigned max_degree_in(const Poly& p, int slot);

}  // namespace bvperiod
