#include <benchmark/benchmark.h>

#include "bvperiod/deformation.hpp"
#include "bvperiod/groebner.hpp"
#include "bvperiod/random.hpp"

using namespace bvperiod;

namespace {

BVComplex fermat(int n, int d) {
  const auto vars = VariableTable::hypersurface(n);
  std::string text;
  for (int i = 0; i <= n; ++i) text += (i ? "+x" : "x") + std::to_string(i) + "^" + std::to_string(d);
  return BVComplex::hypersurface(parse_polynomial(text, vars), n, d);
}

void BM_PolyMultiply(benchmark::State& state) {
  Rng rng(5);
  const Poly a = random_even_degree(rng, {1, 2, 3, 4}, static_cast<unsigned>(state.range(0)), 40);
  const Poly b = random_even_degree(rng, {1, 2, 3, 4}, static_cast<unsigned>(state.range(0)), 40);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMultiply)->Arg(4)->Arg(8)->Arg(12);

void BM_JacobianGroebner(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const auto vars = VariableTable::hypersurface(n);
  std::string text;
  for (int i = 0; i <= n; ++i) text += (i ? "+x" : "x") + std::to_string(i) + "^" + std::to_string(d);
  text += "+x0*x1*x" + std::to_string(n) + "^" + std::to_string(d - 2);
  const Poly G = parse_polynomial(text, vars);
  std::vector<Poly> gens;
  for (int i = 0; i <= n; ++i) gens.push_back(diff_even(G, i + 1));
  for (auto _ : state) benchmark::DoNotOptimize(GroebnerBasis::compute(gens, MonomialOrder::hypersurface(n)));
}
BENCHMARK(BM_JacobianGroebner)->Args({2, 3})->Args({2, 4})->Args({3, 4})->Args({3, 5});

void BM_KReduce(benchmark::State& state) {
  const Cohomology coh(fermat(2, static_cast<int>(state.range(0))));
  const auto& bv = coh.bv();
  Rng rng(3);
  std::vector<Poly> inputs;
  while (inputs.size() < 16) {
    Poly u = random_homogeneous(rng, bv, Grading{0, bv.hyper().c_X, static_cast<int>(inputs.size() % 4)}, 6);
    if (!u.is_zero()) inputs.push_back(std::move(u));
  }
  for (auto _ : state)
    for (const auto& u : inputs) benchmark::DoNotOptimize(coh.k_reduce(u));
}
BENCHMARK(BM_KReduce)->Arg(3)->Arg(4)->Arg(5);

void BM_ConnectionTensor(benchmark::State& state) {
  const Cohomology coh(fermat(2, 3));
  const int N = static_cast<int>(state.range(0));
  const auto g = build_linear_gamma(coh, N + 2);
  for (auto _ : state) benchmark::DoNotOptimize(a_tensor(coh, g, N));
}
BENCHMARK(BM_ConnectionTensor)->Arg(3)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
