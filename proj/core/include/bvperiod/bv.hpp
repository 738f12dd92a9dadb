#pragma once

#include <optional>

#include "bvperiod/grading.hpp"
#include "bvperiod/groebner.hpp"
#include "bvperiod/variables.hpp"

namespace bvperiod {

struct HypersurfaceData {
  int n = 0;
  int d = 0;
  Poly G;
  int c_X = 0;  // d - (n + 1)
};

// (A, ., K = Q + Delta) for the potential S on the even variables of `vars`.
class BVComplex {
 public:
  // S = y G; requires G homogeneous of degree d and smooth.
  static BVComplex hypersurface(const Poly& G, int n, int d,
                                OrderKind kind = OrderKind::grevlex);
  static BVComplex generic(const Poly& S, const VariableTable& vars,
                           OrderKind kind = OrderKind::grevlex);

  const Poly& S() const { return S_; }
  const VariableTable& vars() const { return vars_; }
  const std::vector<int>& slots() const { return vars_.slots(); }
  // dS/dq_i aligned with slots().
  const std::vector<Poly>& partials() const { return partials_; }
  const MonomialOrder& order() const { return order_; }
  bool is_hypersurface() const { return hyper_.has_value(); }
  const HypersurfaceData& hyper() const;

  Poly Q(const Poly& u) const;
  Poly Delta(const Poly& u) const;
  Poly K(const Poly& u) const;
  // K(ab) - K(a) b - (-1)^{|a|} a K(b), splitting a by parity.
  Poly l2(const Poly& a, const Poly& b) const;
  // R = -d y eta_{-1} + sum x_i eta_i.
  Poly R() const;
  Poly delta_R(const Poly& u) const;
  // sum_i lambda_i eta_i for coefficients aligned with slots().
  Poly eta_combination(const std::vector<Poly>& coeffs) const;

  std::optional<Grading> grading(const Poly& p) const;
  std::string str(const Poly& p) const { return to_string(p, vars_); }
  Poly parse(std::string_view text) const { return parse_polynomial(text, vars_); }

 private:
  Poly S_;
  VariableTable vars_ = VariableTable::generic({"x"});
  std::vector<Poly> partials_;
  MonomialOrder order_;
  std::optional<HypersurfaceData> hyper_;
};

// Parity (0 even, 1 odd) of the ghost number, or -1 for mixed parity.
int parity(const Poly& p);

}  // namespace bvperiod
