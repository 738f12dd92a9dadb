#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bvperiod/polynomial.hpp"

namespace bvperiod {

enum class OrderKind { grevlex, lex };

// Monomial order on the even variables listed in `priority`, highest first.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::vector<int> priority;

  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  // x0 > ... > xn > y for hypersurfaces, or the given slots in order.
  static MonomialOrder hypersurface(int n, OrderKind kind = OrderKind::grevlex);
  static MonomialOrder over(std::vector<int> slots, OrderKind kind = OrderKind::grevlex);
};

OrderKind parse_order_kind(const std::string& name);
std::string order_kind_name(OrderKind kind);

struct DivisionResult {
  Poly remainder;
  std::vector<Poly> quotients;  // one per original generator
};

class GroebnerBasis {
 public:
  // Reduced Groebner basis of the ideal of `generators` (even, nonzero).
  static GroebnerBasis compute(std::vector<Poly> generators, MonomialOrder order);

  const MonomialOrder& order() const { return order_; }
  const std::vector<Poly>& generators() const { return generators_; }
  const std::vector<Poly>& basis() const { return basis_; }
  const std::vector<std::vector<Poly>>& cofactors() const { return cofactors_; }
  const std::vector<Monomial>& leading_monomials() const { return leads_; }

  DivisionResult divide(const Poly& f) const;
  Poly normal_form(const Poly& f) const;
  bool is_standard(const Monomial& m) const;
  // Standard monomials of the given total degree in the order's variables,
  // listed in descending order.
  std::vector<Monomial> standard_monomials(unsigned degree) const;
  bool is_zero_dimensional() const;

 private:
  Poly reduce_impl(const Poly& f, std::vector<Poly>* basis_quotients) const;

  MonomialOrder order_;
  std::vector<Poly> generators_;
  std::vector<Poly> basis_;
  std::vector<std::vector<Poly>> cofactors_;
  std::vector<Monomial> leads_;
  std::vector<Scalar> lead_coeffs_;
};

// All monomials of the given degree in `slots`, descending in `order`.
std::vector<Monomial> monomials_of_degree(const std::vector<int>& slots, unsigned degree,
                                          const MonomialOrder& order);

Monomial leading_monomial(const Poly& p, const MonomialOrder& order);

struct SmoothnessResult {
  bool smooth = false;
  // Exponent a_i with x_i^{a_i} a leading monomial, or 0 when none was found.
  std::vector<unsigned> pure_powers;
};

// G homogeneous in x0..xn (slots 1..n+1); throws std::invalid_argument otherwise.
SmoothnessResult smoothness_check(const Poly& G, int n, int d);
bool is_homogeneous_x(const Poly& G, int n, int d);

}  // namespace bvperiod
