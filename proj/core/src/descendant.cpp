#include "bvperiod/descendant.hpp"

#include <algorithm>
#include <numeric>

namespace bvperiod {

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  if (n == 0) return {Partition{}};
  std::vector<int> label(n, 0);
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == n) {
      Partition p;
      p.blocks.assign(used, {});
      for (int k = 0; k < n; ++k) p.blocks[label[k]].push_back(k);
      out.push_back(std::move(p));
      return;
    }
    for (int b = 0; b <= used; ++b) {
      label[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  label[0] = 0;
  rec(rec, 1, 1);
  return out;
}

int koszul_sign_of(const std::vector<int>& order, const std::vector<int>& parity) {
  int s = 0;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (order[a] > order[b]) s += parity[order[a]] * parity[order[b]];
  return s % 2 ? -1 : 1;
}

int partition_sign(const Partition& pi, const std::vector<int>& parity) {
  std::vector<int> order;
  for (const auto& b : pi.blocks) order.insert(order.end(), b.begin(), b.end());
  return koszul_sign_of(order, parity);
}

int vec_parity(const Vec& v, const std::vector<int>& basis_parity) {
  int par = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (par == -1) par = basis_parity[i];
    else if (par != basis_parity[i]) return -1;
  }
  return par == -1 ? 0 : par;
}

namespace {

Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

void axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (a == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (x[i] != 0) y[i] += a * x[i];
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s == 0; });
}

}  // namespace

Vec MultilinearTable::value(const std::vector<int>& tuple) const {
  const int n = static_cast<int>(tuple.size());
  if (n == 0 || n > max_arity_) return zero_vec(out_dim());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return tuple[a] < tuple[b]; });
  std::vector<int> par(n), sorted(n);
  for (int i = 0; i < n; ++i) {
    par[i] = in_parity_[tuple[i]];
    sorted[i] = tuple[order[i]];
  }
  const auto it = values_.find(sorted);
  if (it == values_.end()) return zero_vec(out_dim());
  Vec v = it->second;
  if (koszul_sign_of(order, par) < 0)
    for (auto& x : v) x = -x;
  return v;
}

void MultilinearTable::set(std::vector<int> tuple, Vec value) {
  std::sort(tuple.begin(), tuple.end());
  values_[std::move(tuple)] = std::move(value);
}

Vec MultilinearTable::evaluate(const std::vector<Vec>& args) const {
  const std::size_t n = args.size();
  Vec out = zero_vec(out_dim());
  if (n == 0 || static_cast<int>(n) > max_arity_) return out;
  std::vector<int> idx(n);
  auto rec = [&](auto&& self, std::size_t k, const Scalar& coeff) -> void {
    if (k == n) {
      axpy(out, coeff, value(idx));
      return;
    }
    for (std::size_t i = 0; i < args[k].size(); ++i) {
      if (args[k][i] == 0) continue;
      idx[k] = static_cast<int>(i);
      self(self, k + 1, coeff * args[k][i]);
    }
  };
  rec(rec, 0, Scalar(1));
  return out;
}

std::vector<std::vector<int>> MultilinearTable::sorted_tuples(int n) const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  const int d = static_cast<int>(in_dim());
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < d; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

MultilinearTable MultilinearTable::random(std::mt19937_64& rng, std::vector<int> in_parity,
                                          std::vector<int> out_parity, int max_arity,
                                          int degree, double density) {
  MultilinearTable t(std::move(in_parity), std::move(out_parity), max_arity, degree);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  for (int n = 1; n <= max_arity; ++n) {
    for (const auto& tuple : t.sorted_tuples(n)) {
      int par = degree;
      bool repeated_odd = false;
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        par += t.in_parity_[tuple[k]];
        if (k && tuple[k] == tuple[k - 1] && t.in_parity_[tuple[k]]) repeated_odd = true;
      }
      par = ((par % 2) + 2) % 2;
      Vec v = zero_vec(t.out_dim());
      if (!repeated_odd)
        for (std::size_t i = 0; i < v.size(); ++i)
          if (t.out_parity_[i] == par && keep(rng)) {
            v[i] = Scalar(num(rng), den(rng));
            v[i].canonicalize();
          }
      t.set(tuple, std::move(v));
    }
  }
  return t;
}

MultilinearTable compose(const MultilinearTable& outer, const MultilinearTable& inner, int N) {
  MultilinearTable out(inner.in_parity(), outer.out_parity(), N, 0);
  for (int n = 1; n <= N; ++n) {
    for (const auto& tuple : out.sorted_tuples(n)) {
      std::vector<int> par(n);
      for (int i = 0; i < n; ++i) par[i] = inner.in_parity()[tuple[i]];
      Vec total = zero_vec(outer.out_dim());
      for (const auto& pi : partitions(n)) {
        std::vector<Vec> args;
        for (const auto& b : pi.blocks) {
          std::vector<int> sub;
          for (int e : b) sub.push_back(tuple[e]);
          args.push_back(inner.value(sub));
        }
        axpy(total, Scalar(partition_sign(pi, par)), outer.evaluate(args));
      }
      out.set(tuple, std::move(total));
    }
  }
  return out;
}

bool tables_equal(const MultilinearTable& a, const MultilinearTable& b, int N) {
  for (int n = 1; n <= N; ++n)
    for (const auto& tuple : a.sorted_tuples(n))
      if (a.value(tuple) != b.value(tuple)) return false;
  return true;
}

namespace {

// Sum over partitions with one distinguished block of size n-|pi|+1 and the
// rest singletons: eps(pi,i) F_{|pi|}(x_B1, ..., G(x_Bi), ...).
Vec inner_insertion_sum(const MultilinearTable& outer_map, const MultilinearTable& ell,
                        const std::vector<int>& tuple) {
  const int n = static_cast<int>(tuple.size());
  std::vector<int> par(n);
  for (int i = 0; i < n; ++i) par[i] = ell.in_parity()[tuple[i]];
  Vec total = zero_vec(outer_map.out_dim());
  const std::size_t dim = ell.in_dim();
  for (const auto& pi : partitions(n)) {
    const int big = n - static_cast<int>(pi.blocks.size()) + 1;
    for (std::size_t i = 0; i < pi.blocks.size(); ++i) {
      if (static_cast<int>(pi.blocks[i].size()) != big) continue;
      int sign = partition_sign(pi, par);
      int before = 0;
      for (std::size_t j = 0; j < i; ++j)
        for (int e : pi.blocks[j]) before += par[e];
      if (before % 2) sign = -sign;
      std::vector<int> sub;
      for (int e : pi.blocks[i]) sub.push_back(tuple[e]);
      std::vector<Vec> args;
      for (std::size_t j = 0; j < pi.blocks.size(); ++j) {
        if (j == i) {
          args.push_back(ell.value(sub));
        } else {
          Vec e = zero_vec(dim);
          e[tuple[pi.blocks[j][0]]] = 1;
          args.push_back(std::move(e));
        }
      }
      axpy(total, Scalar(sign), outer_map.evaluate(args));
    }
  }
  return total;
}

std::string tuple_string(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

}  // namespace

RelationReport linf_relation_check(const MultilinearTable& ell, int N) {
  RelationReport r;
  for (int n = 1; n <= N; ++n) {
    for (const auto& tuple : ell.sorted_tuples(n)) {
      if (!is_zero_vec(inner_insertion_sum(ell, ell, tuple))) {
        r.ok = false;
        r.arity = n;
        r.witness = tuple;
        r.message = "L-infinity relation fails at arity " + std::to_string(n) + " on basis tuple " +
                    tuple_string(tuple);
        return r;
      }
    }
  }
  r.message = "L-infinity relations hold up to arity " + std::to_string(N);
  return r;
}

RelationReport linf_morphism_check(const MultilinearTable& ell, const MultilinearTable& ell2,
                                   const MultilinearTable& phi, int N) {
  RelationReport r;
  for (int n = 1; n <= N; ++n) {
    for (const auto& tuple : ell.sorted_tuples(n)) {
      std::vector<int> par(n);
      for (int i = 0; i < n; ++i) par[i] = ell.in_parity()[tuple[i]];
      Vec lhs = zero_vec(ell2.out_dim());
      for (const auto& pi : partitions(n)) {
        std::vector<Vec> args;
        for (const auto& b : pi.blocks) {
          std::vector<int> sub;
          for (int e : b) sub.push_back(tuple[e]);
          args.push_back(phi.value(sub));
        }
        axpy(lhs, Scalar(partition_sign(pi, par)), ell2.evaluate(args));
      }
      const Vec rhs = inner_insertion_sum(phi, ell, tuple);
      if (lhs != rhs) {
        r.ok = false;
        r.arity = n;
        r.witness = tuple;
        r.message = "L-infinity morphism relation fails at arity " + std::to_string(n) +
                    " on basis tuple " + tuple_string(tuple);
        return r;
      }
    }
  }
  r.message = "L-infinity morphism relations hold up to arity " + std::to_string(N);
  return r;
}

}  // namespace bvperiod
