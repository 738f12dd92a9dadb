#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bvperiod/cohomology.hpp"
#include "bvperiod/series.hpp"

namespace bvperiod {

enum class Provenance { linear, geometric, special_quantum, gauge };
std::string provenance_name(Provenance p);

// Ghost-0 family Gamma(t) over the basis index set, Gamma(0) = 0.
struct GammaFamily {
  PolySeries gamma;
  Provenance provenance = Provenance::linear;
  // Directions carried by y F(T) in a geometric family (I' in block 1).
  std::vector<int> geometric_directions;
};

class DeformationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gamma = sum_a t^a rep_a.
GammaFamily build_linear_gamma(const Cohomology& coh, int order);
// Gamma = sum_{a not in I'} t^a rep_a + y F(T), with T^a read as t^a. Symbols
// are T<a> for basis index a; a bare T names the single block-1 direction.
GammaFamily build_geometric_gamma(const Cohomology& coh, std::string_view family, int order);

// Series versions of the BV operators, applied coefficient-wise.
PolySeries apply_K(const BVComplex& bv, const PolySeries& s);
PolySeries apply_Q(const BVComplex& bv, const PolySeries& s);
PolySeries apply_Delta(const BVComplex& bv, const PolySeries& s);
PolySeries l2_series(const BVComplex& bv, const PolySeries& a, const PolySeries& b);
// K_Gamma(x) = K(x) + l2(Gamma, x).
PolySeries apply_K_gamma(const BVComplex& bv, const PolySeries& gamma, const PolySeries& x);
// Scalar series of a linear functional applied coefficient-wise.
template <class F>
ScalarSeries functional(const PolySeries& s, F&& f) {
  ScalarSeries out(s.nvars(), s.order());
  for (const auto& [mu, p] : s.coeffs()) out.add(mu, f(p));
  return out;
}

// Cohomology classes of the frame f_c = d_c Gamma at t = 0:
// f_c = sum_a L[c][a] rep_a + K(sigma_c).
struct Frame {
  std::vector<Poly> vectors;
  std::vector<std::vector<Scalar>> L;
  std::vector<std::vector<Scalar>> L_inv;
  std::vector<Poly> sigma;
};
Frame make_frame(const Cohomology& coh, const std::vector<Poly>& vectors);
// rho = sum_c a^c f_c + K(Lambda).
struct FrameReduction {
  std::vector<Scalar> a;
  Poly lambda;
};
FrameReduction reduce_in_frame(const Cohomology& coh, const Frame& frame, const Poly& rho);

using ScalarMatrix = std::vector<std::vector<ScalarSeries>>;
using Tensor3 = std::vector<std::vector<std::vector<ScalarSeries>>>;

// d_a d_b e^Gamma = sum_c A_ab^c d_c e^Gamma + K(Lambda_ab e^Gamma) mod t^{N+1}.
struct ConnectionTensor {
  int order = 0;
  int dim = 0;
  Tensor3 A;                                // A[a][b][c]
  std::vector<std::vector<PolySeries>> ledger;  // Lambda[a][b]
  Frame frame;
};

ConnectionTensor a_tensor(const Cohomology& coh, const GammaFamily& gamma, int N);
// Exact re-expansion of the ledger identity in exponential form.
bool verify_ledger(const Cohomology& coh, const GammaFamily& gamma, const ConnectionTensor& A);

// e^Gamma - 1 = sum_c T^c rep_c + K(U).
struct OneTensor {
  int order = 0;
  std::vector<ScalarSeries> T;
  PolySeries certificate;
};

OneTensor t_tensor_direct(const Cohomology& coh, const GammaFamily& gamma, int N);
bool verify_one_tensor(const Cohomology& coh, const GammaFamily& gamma, const OneTensor& T);
// Partition recursion from A; requires N <= A.order + 2.
OneTensor t_tensor_from_A(const ConnectionTensor& A, int N);

// G_b^r = d_b T^r.
ScalarMatrix period_jacobian(const std::vector<ScalarSeries>& T);
// Set t^a = 0 for a outside `keep`.
ScalarSeries restrict_to(const ScalarSeries& s, const std::vector<int>& keep);
// omega(T) multipliers on the base symbols: entry [b][r] multiplies omega_r(0).
ScalarMatrix deformed_period_matrix(const std::vector<ScalarSeries>& T,
                                    const std::vector<int>& directions);

struct CheckReport {
  bool ok = true;
  std::string message;
  std::vector<int> witness;
  int order = -1;
};

CheckReport onediff_check(const ConnectionTensor& A, const std::vector<ScalarSeries>& T, int N);
CheckReport flatness_check(const Tensor3& A, int N);
CheckReport symmetry_check(const Tensor3& A);
CheckReport identity_row_check(const Tensor3& A, int unit_index);

// Connection matrix -A_{a b}^c along t^a alone, as one-variable series.
std::vector<std::vector<ScalarSeries>> restrict_one_parameter(const Tensor3& A, int direction);

// Gamma' = Gamma + log(1 + K_Gamma(xi)), xi = sum_a t^a sigma_a.
GammaFamily gauge_transform(const Cohomology& coh, const GammaFamily& gamma,
                            const std::vector<Poly>& sigma);

struct TwistResult {
  int i = 0;
  Poly g;
  std::vector<int> directions;  // I'
  Frame frame;                  // F_1(e_r)
  PolySeries twisted;           // y^i g (e^{y F(T)} - 1)
  std::vector<ScalarSeries> T_frame;
  std::vector<ScalarSeries> T_basis;
  PolySeries certificate;  // twisted - sum T_frame^r F_1(e_r) - K(U) = 0
  ScalarMatrix period_matrix;
};

TwistResult non_cy_twist(const Cohomology& coh, const std::optional<std::string>& family, int N);
bool verify_twist(const Cohomology& coh, const TwistResult& tw);

// Canonical text of a connection tensor ledger used for hashing.
std::string canonical_ledger_text(const ConnectionTensor& A, const VariableTable& vars);
std::string series_key(const MultiIndex& mu);

}  // namespace bvperiod
