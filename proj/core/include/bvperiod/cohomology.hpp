#pragma once

#include <unordered_map>
#include <string>
#include <vector>

#include "bvperiod/bv.hpp"

namespace bvperiod {

struct GriffithsBasis {
  // reps[alpha] = y^k F_{[k]a}; block[alpha] = k.
  std::vector<Poly> reps;
  std::vector<int> block;
  std::vector<std::vector<int>> blocks;  // indices per block
  std::vector<std::string> labels;

  std::size_t size() const { return reps.size(); }
  std::vector<std::size_t> block_dims() const;
};

struct ReductionCertificate {
  std::vector<Scalar> coefficients;  // indexed by basis position
  Poly certificate;                  // Lambda, ghost -1
  int rounds = 0;
};

// Groebner data and the cohomology basis attached to a BV complex.
class Cohomology {
 public:
  explicit Cohomology(const BVComplex& bv);

  const BVComplex& bv() const { return bv_; }
  const GriffithsBasis& basis() const { return basis_; }
  // Basis of the ideal generated by dS/dq_i, generators in slot order.
  const GroebnerBasis& potential_ideal() const { return js_; }
  // Hypersurface mode: basis of the Jacobian ideal of G in x0..xn.
  const GroebnerBasis& jacobian() const;

  // u = sum coeff_a rep_a + K(Lambda) for u of ghost 0.
  ReductionCertificate k_reduce(const Poly& u) const;
  bool verify(const Poly& u, const ReductionCertificate& cert) const;

  // Classical pole-order reduction of F Omega / G^k. Coefficient c_a means
  // F/G^k is cohomologous to sum_a c_a (-1)^j j! F_{[j]a} / G^{j+1}.
  std::vector<Scalar> gd_reduce_oracle_raw(const Poly& F, int k) const;
  // Raw coefficients times (-1)^{k-1} (k-1)!, i.e. the class of y^{k-1} F.
  std::vector<Scalar> gd_reduce_oracle(const Poly& F, int k) const;

  Scalar residue_pair(const Poly& u, const Poly& v) const;
  Scalar residue(const Poly& w) const;
  // Res of a polynomial in x over prod dG/dx_i.
  Scalar grothendieck_residue(const Poly& f) const;
  Scalar milnor_number() const { return mu_; }
  Poly hessian() const;
  std::vector<std::vector<Scalar>> gram_matrix() const;

  int max_rounds = 10000;

 private:
  void reduce_charge_cx(const Poly& u, ReductionCertificate& out) const;

  BVComplex bv_;
  GroebnerBasis js_;
  std::optional<GroebnerBasis> jac_;
  GriffithsBasis basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> rep_index_;
  Monomial socle_;
  Scalar socle_residue_;
  Scalar mu_ = 0;
};

// Adaptive Gauss-Kronrod value of the integral of x^m exp(G(x)) over R for a
// one-variable potential with negative even leading term.
double numeric_moment_oracle(const Poly& G, int slot, int m);

}  // namespace bvperiod
