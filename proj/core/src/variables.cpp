#include "bvperiod/variables.hpp"

#include <cctype>

namespace bvperiod {

VariableTable VariableTable::hypersurface(int n) {
  if (n < 1 || n + 2 > static_cast<int>(kMaxVars))
    throw std::invalid_argument("hypersurface dimension out of range");
  VariableTable t;
  t.hypersurface_ = true;
  t.even_names_[0] = "y";
  t.odd_names_[0] = "eta-1";
  t.slots_.push_back(0);
  for (int i = 0; i <= n; ++i) {
    t.even_names_[i + 1] = "x" + std::to_string(i);
    t.odd_names_[i + 1] = "eta" + std::to_string(i);
    t.slots_.push_back(i + 1);
  }
  return t;
}

VariableTable VariableTable::generic(const std::vector<std::string>& names) {
  if (names.empty() || names.size() + 1 > kMaxVars)
    throw std::invalid_argument("variable count out of range");
  VariableTable t;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& v = names[i];
    if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
      throw std::invalid_argument("bad variable name '" + v + "'");
    t.even_names_[i + 1] = v;
    t.odd_names_[i + 1] = names.size() == 1 ? std::string("eta") : "eta_" + v;
    t.slots_.push_back(static_cast<int>(i + 1));
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j)
      if (t.odd_names_[i + 1] == t.even_names_[j + 1] || (i != j && names[i] == names[j]))
        throw std::invalid_argument("variable name clash '" + names[i] + "'");
  return t;
}

std::optional<VarRef> VariableTable::lookup(std::string_view name) const {
  for (int s : slots_) {
    if (even_names_[s] == name) return VarRef{false, s};
    if (odd_names_[s] == name) return VarRef{true, s};
  }
  return std::nullopt;
}

namespace {

class Lexer {
 public:
  Lexer(std::string_view text, bool hyper) : s_(text), hyper_(hyper) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

  std::string digits() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", start);
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string identifier() {
    skip_ws();
    const auto start = pos_;
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected variable", start);
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string id(s_.substr(start, pos_ - start));
    if (hyper_ && id == "eta" && s_.substr(pos_, 2) == "-1") {
      pos_ += 2;
      id = "eta-1";
    }
    return id;
  }

 private:
  std::string_view s_;
  bool hyper_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<ParsedTerm> parse_terms(std::string_view text, bool hypersurface_tokens) {
  Lexer lx(text, hypersurface_tokens);
  std::vector<ParsedTerm> out;
  if (lx.at_end()) throw ParseError("empty polynomial", lx.pos());
  bool first = true;
  while (!lx.at_end()) {
    ParsedTerm term;
    bool negative = false;
    const char c0 = lx.peek();
    if (c0 == '+' || c0 == '-') {
      negative = c0 == '-';
      lx.advance();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", lx.pos());
    }
    first = false;
    bool have_item = false;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      std::string num = lx.digits();
      if (lx.peek() == '/') {
        lx.advance();
        const auto at = lx.pos();
        std::string den = lx.digits();
        if (mpz_class(den) == 0) throw ParseError("zero denominator", at);
        num += "/" + den;
      }
      term.coeff = parse_scalar(num);
      have_item = true;
    }
    while (true) {
      const char c = lx.peek();
      if (c == '*') {
        lx.advance();
        if (!std::isalpha(static_cast<unsigned char>(lx.peek())))
          throw ParseError("expected variable after '*'", lx.pos());
      } else if (!std::isalpha(static_cast<unsigned char>(c))) {
        break;
      }
      ParsedFactor f;
      f.offset = (lx.skip_ws(), lx.pos());
      f.name = lx.identifier();
      if (lx.peek() == '^') {
        lx.advance();
        const auto at = lx.pos();
        const std::string e = lx.digits();
        if (e.size() > 4 || std::stoul(e) > 60000) throw ParseError("exponent too large", at);
        f.exponent = static_cast<unsigned>(std::stoul(e));
      }
      term.factors.push_back(std::move(f));
      have_item = true;
    }
    if (!have_item) throw ParseError("expected coefficient or variable", lx.pos());
    if (negative) term.coeff = -term.coeff;
    out.push_back(std::move(term));
  }
  return out;
}

Poly parse_polynomial(std::string_view text, const VariableTable& vars) {
  Poly total;
  for (const auto& term : parse_terms(text, vars.is_hypersurface())) {
    Poly p(term.coeff);
    for (const auto& f : term.factors) {
      const auto ref = vars.lookup(f.name);
      if (!ref) throw ParseError("unknown variable '" + f.name + "'", f.offset);
      if (ref->odd) {
        for (unsigned e = 0; e < f.exponent; ++e) p = p * Poly::odd_var(ref->index);
        if (f.exponent == 0) continue;
      } else {
        p = p * Poly::even_var(ref->index, f.exponent);
      }
    }
    total += p;
  }
  return total;
}

std::string monomial_string(const Monomial& m, const VariableTable& vars) {
  std::string out;
  auto add = [&out](const std::string& name, unsigned e) {
    if (!out.empty()) out += '*';
    out += name;
    if (e >= 2) out += "^" + std::to_string(e);
  };
  for (int s : vars.slots())
    if (m.exp[s]) add(vars.even_name(s), m.exp[s]);
  for (int s : vars.slots())
    if (m.odd & (1u << s)) add(vars.odd_name(s), 1);
  return out;
}

std::string to_string(const Poly& p, const VariableTable& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    const std::string mono = monomial_string(t.mono, vars);
    const bool neg = t.coeff < 0;
    const Scalar mag = neg ? Scalar(-t.coeff) : t.coeff;
    if (neg) out += '-';
    else if (!out.empty()) out += '+';
    if (mono.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace bvperiod
