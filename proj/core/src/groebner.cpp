#include "bvperiod/groebner.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bvperiod {

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind == OrderKind::grevlex) {
    unsigned da = 0, db = 0;
    for (int s : priority) {
      da += a.exp[s];
      db += b.exp[s];
    }
    if (da != db) return da > db ? 1 : -1;
    for (auto it = priority.rbegin(); it != priority.rend(); ++it)
      if (a.exp[*it] != b.exp[*it]) return a.exp[*it] < b.exp[*it] ? 1 : -1;
    return 0;
  }
  for (int s : priority)
    if (a.exp[s] != b.exp[s]) return a.exp[s] > b.exp[s] ? 1 : -1;
  return 0;
}

MonomialOrder MonomialOrder::hypersurface(int n, OrderKind kind) {
  MonomialOrder o;
  o.kind = kind;
  for (int i = 0; i <= n; ++i) o.priority.push_back(i + 1);
  o.priority.push_back(0);
  return o;
}

MonomialOrder MonomialOrder::over(std::vector<int> slots, OrderKind kind) {
  return MonomialOrder{kind, std::move(slots)};
}

OrderKind parse_order_kind(const std::string& name) {
  if (name == "grevlex") return OrderKind::grevlex;
  if (name == "lex") return OrderKind::lex;
  throw std::invalid_argument("unknown monomial order '" + name + "'");
}

std::string order_kind_name(OrderKind kind) {
  return kind == OrderKind::grevlex ? "grevlex" : "lex";
}

Monomial leading_monomial(const Poly& p, const MonomialOrder& order) {
  Monomial best = p.leading().mono;
  for (const auto& t : p.terms())
    if (order.greater(t.mono, best)) best = t.mono;
  return best;
}

namespace {

struct Desc {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};

using Work = std::map<Monomial, Scalar, Desc>;

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = std::max(a.exp[i], b.exp[i]);
  return m;
}

Monomial quotient_monomial(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = a.exp[i] - b.exp[i];
  return m;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] && b.exp[i]) return false;
  return true;
}

void subtract_into(Work& w, const Scalar& c, const Monomial& shift, const Poly& g) {
  Monomial m;
  for (const auto& t : g.terms()) {
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = shift.exp[i] + t.mono.exp[i];
    auto [it, inserted] = w.try_emplace(m, 0);
    it->second -= c * t.coeff;
    if (it->second == 0) w.erase(it);
  }
}

Poly to_poly(const Work& w) {
  std::vector<Term> terms;
  terms.reserve(w.size());
  for (const auto& [m, c] : w) terms.push_back({m, c});
  return Poly::from_terms(std::move(terms));
}

// Working element of the Buchberger loop.
struct Element {
  Poly poly;
  Monomial lead;
  Scalar lead_coeff;
  std::vector<Poly> row;
};

struct Engine {
  MonomialOrder order;
  std::size_t ngen = 0;
  std::vector<Element> elems;

  // Full reduction of (f, row) against elems; updates the row alongside.
  void reduce(Poly& f, std::vector<Poly>& row, bool tail, std::size_t skip) const {
    Work w{Desc{&order}};
    for (const auto& t : f.terms()) w.emplace(t.mono, t.coeff);
    Work rem{Desc{&order}};
    while (!w.empty()) {
      auto it = w.begin();
      const Monomial m = it->first;
      const Scalar c = it->second;
      const Element* div = nullptr;
      for (std::size_t j = 0; j < elems.size(); ++j) {
        if (j == skip || elems[j].poly.is_zero()) continue;
        if (divides_even(elems[j].lead, m)) {
          div = &elems[j];
          break;
        }
      }
      if (!div) {
        rem.emplace(m, c);
        w.erase(it);
        if (!tail) break;
        continue;
      }
      const Scalar q = c / div->lead_coeff;
      const Monomial shift = quotient_monomial(m, div->lead);
      subtract_into(w, q, shift, div->poly);
      for (std::size_t i = 0; i < ngen; ++i)
        if (!div->row[i].is_zero()) row[i].add_scaled_product(-q, shift, div->row[i]);
    }
    for (const auto& [m, c] : w) rem.emplace(m, c);
    f = to_poly(rem);
  }

  void push(Poly p, std::vector<Poly> row) {
    Element e;
    e.lead = leading_monomial(p, order);
    e.lead_coeff = p.coeff(e.lead);
    e.poly = std::move(p);
    e.row = std::move(row);
    elems.push_back(std::move(e));
  }
};

}  // namespace

GroebnerBasis GroebnerBasis::compute(std::vector<Poly> generators, MonomialOrder order) {
  for (const auto& g : generators)
    if (g.is_zero() || !g.is_even())
      throw std::invalid_argument("Groebner generators must be nonzero and even");
  Engine eng;
  eng.order = order;
  eng.ngen = generators.size();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    std::vector<Poly> row(generators.size());
    row[i] = Poly(1);
    eng.push(generators[i], std::move(row));
  }

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned degree;
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (eng.elems[i].poly.is_zero()) continue;
      const Monomial l = lcm(eng.elems[i].lead, eng.elems[j].lead);
      pairs.push_back({i, j, l, l.degree()});
    }
  };
  for (std::size_t j = 0; j < eng.elems.size(); ++j) add_pairs(j);

  auto pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::any_of(pairs.begin(), pairs.end(),
                       [&](const Pair& p) { return p.i == a && p.j == b; });
  };

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      const int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    const Pair p = *best;
    pairs.erase(best);
    const Element& ei = eng.elems[p.i];
    const Element& ej = eng.elems[p.j];
    if (coprime(ei.lead, ej.lead)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < eng.elems.size() && !chain; ++k) {
      if (k == p.i || k == p.j || eng.elems[k].poly.is_zero()) continue;
      if (divides_even(eng.elems[k].lead, p.lcm) && !pending(p.i, k) && !pending(p.j, k))
        chain = true;
    }
    if (chain) continue;

    const Monomial si = quotient_monomial(p.lcm, ei.lead);
    const Monomial sj = quotient_monomial(p.lcm, ej.lead);
    Poly s;
    s.add_scaled_product(1 / ei.lead_coeff, si, ei.poly);
    s.add_scaled_product(-1 / ej.lead_coeff, sj, ej.poly);
    std::vector<Poly> row(eng.ngen);
    for (std::size_t g = 0; g < eng.ngen; ++g) {
      row[g].add_scaled_product(1 / ei.lead_coeff, si, ei.row[g]);
      row[g].add_scaled_product(-1 / ej.lead_coeff, sj, ej.row[g]);
    }
    eng.reduce(s, row, true, static_cast<std::size_t>(-1));
    if (s.is_zero()) continue;
    eng.push(std::move(s), std::move(row));
    add_pairs(eng.elems.size() - 1);
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < eng.elems.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < eng.elems.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides_even(eng.elems[j].lead, eng.elems[i].lead) &&
          (eng.elems[j].lead != eng.elems[i].lead || j < i))
        redundant = true;
    }
    if (!redundant) keep.push_back(i);
  }
  Engine red;
  red.order = order;
  red.ngen = eng.ngen;
  for (std::size_t i : keep) red.elems.push_back(eng.elems[i]);
  std::sort(red.elems.begin(), red.elems.end(),
            [&](const Element& a, const Element& b) { return order.greater(a.lead, b.lead); });
  for (std::size_t i = 0; i < red.elems.size(); ++i) {
    Poly f = red.elems[i].poly;
    std::vector<Poly> row = red.elems[i].row;
    red.reduce(f, row, true, i);
    const Scalar lc = f.coeff(red.elems[i].lead);
    f *= 1 / lc;
    for (auto& r : row) r *= 1 / lc;
    red.elems[i].poly = std::move(f);
    red.elems[i].row = std::move(row);
    red.elems[i].lead_coeff = 1;
  }

  GroebnerBasis gb;
  gb.order_ = std::move(order);
  gb.generators_ = std::move(generators);
  for (auto& e : red.elems) {
    gb.basis_.push_back(e.poly);
    gb.cofactors_.push_back(e.row);
    gb.leads_.push_back(e.lead);
    gb.lead_coeffs_.push_back(e.lead_coeff);
  }
  return gb;
}

Poly GroebnerBasis::reduce_impl(const Poly& f, std::vector<Poly>* basis_quotients) const {
  Work w{Desc{&order_}};
  for (const auto& t : f.terms()) w.emplace(t.mono, t.coeff);
  std::vector<Term> rem;
  if (basis_quotients) basis_quotients->assign(basis_.size(), Poly());
  std::vector<std::vector<Term>> qterms(basis_.size());
  while (!w.empty()) {
    auto it = w.begin();
    const Monomial m = it->first;
    const Scalar c = it->second;
    std::size_t j = 0;
    for (; j < leads_.size(); ++j)
      if (divides_even(leads_[j], m)) break;
    if (j == leads_.size()) {
      rem.push_back({m, c});
      w.erase(it);
      continue;
    }
    const Scalar q = c / lead_coeffs_[j];
    const Monomial shift = quotient_monomial(m, leads_[j]);
    subtract_into(w, q, shift, basis_[j]);
    if (basis_quotients) qterms[j].push_back({shift, q});
  }
  if (basis_quotients)
    for (std::size_t j = 0; j < basis_.size(); ++j)
      (*basis_quotients)[j] = Poly::from_terms(std::move(qterms[j]));
  return Poly::from_terms(std::move(rem));
}

DivisionResult GroebnerBasis::divide(const Poly& f) const {
  if (!f.is_even()) throw std::invalid_argument("division input must be even");
  std::vector<Poly> bq;
  DivisionResult r;
  r.remainder = reduce_impl(f, &bq);
  r.quotients.assign(generators_.size(), Poly());
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    if (bq[j].is_zero()) continue;
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (!cofactors_[j][i].is_zero()) r.quotients[i] += bq[j] * cofactors_[j][i];
  }
  return r;
}

Poly GroebnerBasis::normal_form(const Poly& f) const {
  if (!f.is_even()) throw std::invalid_argument("normal form input must be even");
  return reduce_impl(f, nullptr);
}

bool GroebnerBasis::is_standard(const Monomial& m) const {
  for (const auto& l : leads_)
    if (divides_even(l, m)) return false;
  return true;
}

std::vector<Monomial> monomials_of_degree(const std::vector<int>& slots, unsigned degree,
                                          const MonomialOrder& order) {
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t idx, unsigned left) -> void {
    if (idx + 1 == slots.size()) {
      cur.exp[slots[idx]] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      cur.exp[slots[idx]] = 0;
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur.exp[slots[idx]] = static_cast<std::uint16_t>(e);
      self(self, idx + 1, left - e);
    }
    cur.exp[slots[idx]] = 0;
  };
  if (!slots.empty()) rec(rec, 0, degree);
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return order.greater(a, b); });
  return out;
}

std::vector<Monomial> GroebnerBasis::standard_monomials(unsigned degree) const {
  std::vector<Monomial> out;
  for (const auto& m : monomials_of_degree(order_.priority, degree, order_))
    if (is_standard(m)) out.push_back(m);
  return out;
}

bool GroebnerBasis::is_zero_dimensional() const {
  for (int s : order_.priority) {
    bool found = false;
    for (const auto& l : leads_) {
      bool pure = l.exp[s] > 0;
      for (int t : order_.priority)
        if (t != s && l.exp[t]) pure = false;
      if (pure) found = true;
    }
    if (!found) return false;
  }
  return true;
}

bool is_homogeneous_x(const Poly& G, int n, int d) {
  if (G.is_zero() || !G.is_even()) return false;
  for (const auto& t : G.terms()) {
    if (t.mono.exp[0]) return false;
    unsigned deg = 0;
    for (std::size_t i = 1; i < kMaxVars; ++i) {
      if (t.mono.exp[i] && static_cast<int>(i) > n + 1) return false;
      deg += t.mono.exp[i];
    }
    if (static_cast<int>(deg) != d) return false;
  }
  return true;
}

SmoothnessResult smoothness_check(const Poly& G, int n, int d) {
  if (!is_homogeneous_x(G, n, d))
    throw std::invalid_argument("G is not homogeneous of degree " + std::to_string(d) +
                                " in x0..x" + std::to_string(n));
  std::vector<Poly> partials;
  std::vector<int> slots;
  for (int i = 0; i <= n; ++i) {
    slots.push_back(i + 1);
    Poly p = diff_even(G, i + 1);
    if (!p.is_zero()) partials.push_back(std::move(p));
  }
  SmoothnessResult r;
  r.pure_powers.assign(n + 1, 0);
  if (partials.empty()) return r;
  const auto gb = GroebnerBasis::compute(partials, MonomialOrder::over(slots));
  for (int i = 0; i <= n; ++i) {
    for (const auto& l : gb.leading_monomials()) {
      bool pure = l.exp[i + 1] > 0;
      for (int s : slots)
        if (s != i + 1 && l.exp[s]) pure = false;
      if (pure) r.pure_powers[i] = l.exp[i + 1];
    }
  }
  r.smooth = std::all_of(r.pure_powers.begin(), r.pure_powers.end(),
                         [](unsigned e) { return e > 0; });
  return r;
}

}  // namespace bvperiod
