#pragma once

#include <map>

#include "block_types.hpp"

namespace opschur {

// Operator-valued trigonometric polynomial P(t) = sum_l T_l e^{ilt} with
// finitely many nonzero coefficients.
class SymbolPolynomial {
 public:
  explicit SymbolPolynomial(int dim);

  int dim() const { return dim_; }
  void set_term(int l, OperatorBlock block);
  Eigen::MatrixXcd fourier_coefficient(int l) const;  // zero off support
  const std::map<int, OperatorBlock>& terms() const { return terms_; }
  // max |l| over the support; 0 for the zero polynomial.
  int degree() const;
  BandRange band() const;

  OperatorBlock eval(double t) const;

  static SymbolPolynomial from_toeplitz(const ToeplitzSpec& spec);
  ToeplitzSpec to_toeplitz() const;
  // Scalar kernel as a (c_l * Id) polynomial, truncated to |l| <= band_limit
  // for kernels with infinite support.
  static SymbolPolynomial from_kernel(const KernelSpec& kernel, int dim, int band_limit);

 private:
  int dim_;
  std::map<int, OperatorBlock> terms_;
};

// Entrywise operator composition: block (k, j) of the result is
// a.block(k, j) * b.block(k, j). Not commutative.
BlockMatrix schur_product(const BlockMatrix& a, const BlockMatrix& b);

// block (k, j) scaled by e^{i(j-k)t}; a diagonal-unitary conjugation.
BlockMatrix modulate(const BlockMatrix& a, double t);

// Toeplitz matrix with block (k, j) = c(j-k) * Id for the kernel's
// coefficient function c.
BlockMatrix kernel_matrix(const KernelSpec& kernel, int N, int dim);

// Schur product with the Fejer kernel matrix: diagonal l scaled by
// max(0, 1 - |l|/(n+1)). Result is banded within [-n, n].
BlockMatrix smooth_fejer(const BlockMatrix& a, int n);

// Schur product with the Poisson kernel matrix: diagonal l scaled by r^|l|.
BlockMatrix smooth_poisson(const BlockMatrix& a, double r);

// Matrix of rank-one operators block (k, j) = x_j (x) y_k, i.e.
// z |-> <z, x_j> y_k. Applying it to z gives <<z, x>> y.
BlockMatrix rank_one_matrix(const HVector& x, const HVector& y);

// Toeplitz matrix with block (k, j) = fourier_coefficient(j - k).
BlockMatrix toeplitz_from_symbol(const SymbolPolynomial& f, int N);

// (A x)_k = sum_j block(k, j) x_j.
HVector apply(const BlockMatrix& a, const HVector& x);

}  // namespace opschur
