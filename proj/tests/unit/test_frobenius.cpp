#include <doctest.h>

#include "bvperiod/frobenius.hpp"
#include "support.hpp"

using namespace bvperiod;

TEST_CASE("special quantum solution of the Fermat cubic") {
  const Cohomology cubic(support::cubic());
  const int N = 3;
  const auto sol = special_quantum_solution(cubic, N);
  const auto& G = sol.gamma.gamma;
  CHECK(G.at({1, 0}) == Poly(Scalar(1)));
  CHECK(G.at({0, 1}) == cubic.bv().parse("y*x0*x1*x2"));
  for (const auto& [mu, p] : G.coeffs())
    if (mu[0] > 0) CHECK(mu == MultiIndex{1, 0});
  CHECK(G.at({0, 2}).is_zero());
  const auto res = master_residuals(cubic, G, sol.A.A, sol.chain, N);
  CHECK_MESSAGE(res.ok, res.message);
  CHECK(verify_ledger(cubic, sol.gamma, sol.A));
  CHECK(sol.max_chain_length <= 2 + 1);
  const auto quantum = a_tensor(cubic, sol.gamma, N);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) CHECK(quantum.A[a][b][c] == sol.A.A[a][b][c]);
  const auto rep = metric_and_axioms(cubic, G, sol.A.A, N);
  for (const auto& [name, c] : rep.checks) CHECK_MESSAGE(c.ok, name << ": " << c.message);
  CHECK(sol.metric == std::vector<std::vector<Scalar>>{{0, Scalar(1, 27)}, {Scalar(1, 27), 0}});
  CHECK(sol.A.A[1][1][0].is_zero());
  CHECK(sol.A.A[1][1][1].is_zero());
}
