#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bvperiod/polynomial.hpp"

namespace bvperiod {

struct VarRef {
  bool odd = false;
  int index = 0;  // even slot or odd bit
};

// Names of the even and odd generators and their slots.
class VariableTable {
 public:
  // y, x0..xn and eta-1, eta0..etan.
  static VariableTable hypersurface(int n);
  // User variables in slots 1..m; odd partner "eta" (m = 1) or "eta_<v>".
  static VariableTable generic(const std::vector<std::string>& names);

  bool is_hypersurface() const { return hypersurface_; }
  // Active even slots in canonical order (y first in hypersurface mode).
  const std::vector<int>& slots() const { return slots_; }
  int count() const { return static_cast<int>(slots_.size()); }
  std::optional<VarRef> lookup(std::string_view name) const;
  const std::string& even_name(int slot) const { return even_names_.at(slot); }
  const std::string& odd_name(int bit) const { return odd_names_.at(bit); }

 private:
  bool hypersurface_ = false;
  std::vector<int> slots_;
  std::vector<std::string> even_names_ = std::vector<std::string>(kMaxVars);
  std::vector<std::string> odd_names_ = std::vector<std::string>(kMaxVars);
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct ParsedFactor {
  std::string name;
  unsigned exponent = 1;
  std::size_t offset = 0;
};

struct ParsedTerm {
  Scalar coeff = 1;
  std::vector<ParsedFactor> factors;
};

// Syntax only; names are resolved by parse_polynomial.
std::vector<ParsedTerm> parse_terms(std::string_view text, bool hypersurface_tokens);
Poly parse_polynomial(std::string_view text, const VariableTable& vars);
std::string to_string(const Poly& p, const VariableTable& vars);
std::string monomial_string(const Monomial& m, const VariableTable& vars);

}  // namespace bvperiod
