#pragma once

#include <map>
#include <string>
#include <vector>

#include "bvperiod/deformation.hpp"

namespace bvperiod {

// Gamma with d_0 Gamma = 1 solving
//   d_a Gamma d_b Gamma = sum_c A_ab^c d_c Gamma + Q_Gamma L0_ab
//   d_a d_b Gamma       = Delta L0_ab - Q_Gamma L1_ab
//   Delta Lk_ab         = Q_Gamma L(k+1)_ab,  k >= 1
// to t-order N (Gamma itself to order N + 2).
struct SpecialSolution {
  int order = 0;
  GammaFamily gamma;
  ConnectionTensor A;  // ledger holds L0 - L1 + L2 - ...
  std::vector<std::vector<std::vector<PolySeries>>> chain;  // chain[a][b][k] = Lk_ab
  std::vector<std::vector<Scalar>> metric;
  int max_chain_length = 0;
};

SpecialSolution special_quantum_solution(const Cohomology& coh, int N);

// Residuals of the three master equations for a given Gamma, A and chain.
struct MasterResiduals {
  bool ok = true;
  std::string message;
  std::vector<int> witness;
};
MasterResiduals master_residuals(const Cohomology& coh, const PolySeries& gamma, const Tensor3& A,
                                 const std::vector<std::vector<std::vector<PolySeries>>>& chain,
                                 int N);

struct AxiomReport {
  std::map<std::string, CheckReport> checks;
  // Phi coefficients by t multi-index, to order N + 3.
  ScalarSeries potential;
  std::vector<std::vector<ScalarSeries>> metric_series;
  bool ok() const;
};

// Metric g_ab(t) = residue of d_a Gamma d_b Gamma and the Frobenius axioms.
AxiomReport metric_and_axioms(const Cohomology& coh, const PolySeries& gamma, const Tensor3& A,
                              int N, int unit_index = 0);

// Structure constants from the first master equation alone (Q_Gamma division).
Tensor3 classical_structure_constants(const Cohomology& coh, const PolySeries& gamma, int N);

}  // namespace bvperiod
