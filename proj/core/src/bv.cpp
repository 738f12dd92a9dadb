#include "bvperiod/bv.hpp"

#include <stdexcept>

namespace bvperiod {

BVComplex BVComplex::hypersurface(const Poly& G, int n, int d, OrderKind kind) {
  if (d < 1) throw std::invalid_argument("degree must be positive");
  const auto smooth = smoothness_check(G, n, d);
  if (!smooth.smooth) throw std::invalid_argument("hypersurface is singular");
  BVComplex bv;
  bv.vars_ = VariableTable::hypersurface(n);
  bv.S_ = Poly::even_var(0) * G;
  bv.order_ = MonomialOrder::hypersurface(n, kind);
  for (int s : bv.vars_.slots()) bv.partials_.push_back(diff_even(bv.S_, s));
  bv.hyper_ = HypersurfaceData{n, d, G, d - (n + 1)};
  return bv;
}

BVComplex BVComplex::generic(const Poly& S, const VariableTable& vars, OrderKind kind) {
  if (!S.is_even()) throw std::invalid_argument("potential must have ghost number 0");
  BVComplex bv;
  bv.vars_ = vars;
  bv.S_ = S;
  bv.order_ = MonomialOrder::over(vars.slots(), kind);
  for (int s : vars.slots()) bv.partials_.push_back(diff_even(S, s));
  for (const auto& t : S.terms())
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (t.mono.exp[i] && !vars.lookup(vars.even_name(static_cast<int>(i))))
        throw std::invalid_argument("potential uses an undeclared variable");
  return bv;
}

const HypersurfaceData& BVComplex::hyper() const {
  if (!hyper_) throw std::logic_error("not in hypersurface mode");
  return *hyper_;
}

Poly BVComplex::Q(const Poly& u) const {
  Poly r;
  const auto& sl = slots();
  for (std::size_t i = 0; i < sl.size(); ++i) {
    Poly du = diff_odd(u, sl[i]);
    if (!du.is_zero()) r += partials_[i] * du;
  }
  return r;
}

Poly BVComplex::Delta(const Poly& u) const {
  Poly r;
  for (int s : slots()) {
    Poly du = diff_odd(u, s);
    if (!du.is_zero()) r += diff_even(du, s);
  }
  return r;
}

Poly BVComplex::K(const Poly& u) const { return Q(u) + Delta(u); }

int parity(const Poly& p) {
  int par = -1;
  for (const auto& t : p.terms()) {
    const int q = t.mono.odd_count() & 1;
    if (par == -1) par = q;
    else if (par != q) return -1;
  }
  return par == -1 ? 0 : par;
}

Poly BVComplex::l2(const Poly& a, const Poly& b) const {
  Poly r;
  for (int par = 0; par < 2; ++par) {
    const Poly ap = a.filter([par](const Monomial& m) { return (m.odd_count() & 1) == par; });
    if (ap.is_zero()) continue;
    Poly term = K(ap * b) - K(ap) * b;
    if (par == 0) term -= ap * K(b);
    else term += ap * K(b);
    r += term;
  }
  return r;
}

Poly BVComplex::R() const {
  const auto& h = hyper();
  Poly r = Poly::even_var(0) * Poly::odd_var(0) * Scalar(-h.d);
  for (int i = 0; i <= h.n; ++i) r += Poly::even_var(i + 1) * Poly::odd_var(i + 1);
  return r;
}

Poly BVComplex::delta_R(const Poly& u) const {
  const Poly r = R();
  return l2(r, u) + K(r) * u;
}

Poly BVComplex::eta_combination(const std::vector<Poly>& coeffs) const {
  Poly r;
  const auto& sl = slots();
  for (std::size_t i = 0; i < sl.size() && i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) r += coeffs[i] * Poly::odd_var(sl[i]);
  return r;
}

std::optional<Grading> BVComplex::grading(const Poly& p) const {
  if (!hyper_) return std::nullopt;
  return grading_of(p, hyper_->d);
}

}  // namespace bvperiod
