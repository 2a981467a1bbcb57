#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <string>

#include "errors.hpp"

namespace opschur {

using Complex = std::complex<double>;

// A d x d complex matrix: one operator entry acting on H = C^d. Immutable
// after construction; construction validates shape and finiteness.
class OperatorBlock {
 public:
  explicit OperatorBlock(Eigen::MatrixXcd m);
  static OperatorBlock zero(int dim);
  static OperatorBlock identity(int dim);
  static OperatorBlock scalar(int dim, Complex c);  // c * Id

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& mat() const { return m_; }

  // Largest singular value.
  double op_norm() const;
  OperatorBlock adjoint() const { return OperatorBlock(m_.adjoint()); }
  bool is_zero() const { return m_.isZero(0.0); }

 private:
  Eigen::MatrixXcd m_;
};

// Length-N truncation of a square-summable H-valued sequence. Coordinates are
// 1-based like everything on the public surface; coordinate n occupies the
// contiguous slice [(n-1)*d, n*d) of the flat vector.
class HVector {
 public:
  HVector(int dim, int len);  // all zero
  static HVector from_flat(int dim, int len, Eigen::VectorXcd flat);

  int dim() const { return dim_; }
  int len() const { return len_; }
  const Eigen::VectorXcd& flat() const { return flat_; }

  Eigen::VectorXcd coord(int n) const;          // 1-based
  void set_coord(int n, const Eigen::VectorXcd& v);

  // sqrt(sum_n ||x_n||^2)
  double norm() const { return flat_.norm(); }
  // <<x, y>> = sum_n <x_n, y_n>, linear in x and conjugate-linear in y.
  Complex inner(const HVector& y) const;

 private:
  int dim_;
  int len_;
  Eigen::VectorXcd flat_;
};

// x placed at coordinate j of an otherwise zero length-N sequence.
HVector make_basis_vector(const Eigen::VectorXcd& x, int j, int N);

enum class Structure { dense, toeplitz, upper_triangular, banded };

const char* structure_name(Structure s);
Structure structure_from_name(const std::string& name);

struct BandRange {
  int lo = 0;
  int hi = 0;
};

// N x N grid of d x d operator blocks, stored as the flattened
// (N*d) x (N*d) complex matrix: block (k, j) occupies rows
// [(k-1)*d, k*d) and columns [(j-1)*d, j*d). Column-major underneath
// (Eigen's default). Structure tags are advisory but verified whenever set.
class BlockMatrix {
 public:
  BlockMatrix(int dim, int size);  // zero matrix, tag dense

  int dim() const { return dim_; }
  int size() const { return size_; }
  Structure structure() const { return tag_; }
  BandRange band() const { return band_; }

  const Eigen::MatrixXcd& flat() const { return flat_; }
  Eigen::MatrixXcd& mutable_flat() { return flat_; }

  Eigen::MatrixXcd block(int k, int j) const;  // 1-based
  void set_block(int k, int j, const Eigen::MatrixXcd& b);

  // Sets the tag after verifying the structural property exactly; throws
  // ErrorCode::precondition when the contents violate it.
  void set_structure(Structure tag, BandRange band = {});
  // Tag without verification, for constructions that guarantee the property.
  void set_structure_unchecked(Structure tag, BandRange band = {});

  // max over (k, j) of the largest singular value of block (k, j).
  double sup_entry_norm() const;
  bool is_zero() const { return flat_.isZero(0.0); }

  // Leading n x n corner (blockwise); preserves a still-valid tag.
  BlockMatrix corner(int n) const;

  BlockMatrix& operator+=(const BlockMatrix& o);
  BlockMatrix& operator-=(const BlockMatrix& o);
  BlockMatrix& operator*=(Complex c);
  friend BlockMatrix operator+(BlockMatrix a, const BlockMatrix& b) { return a += b; }
  friend BlockMatrix operator-(BlockMatrix a, const BlockMatrix& b) { return a -= b; }
  friend BlockMatrix operator*(Complex c, BlockMatrix a) { return a *= c; }

 private:
  int dim_;
  int size_;
  Structure tag_ = Structure::dense;
  BandRange band_{};
  Eigen::MatrixXcd flat_;
};

bool exactly_equal(const BlockMatrix& a, const BlockMatrix& b);

// Requires matching dim and size.
void require_compatible(const BlockMatrix& a, const BlockMatrix& b);

// Id on the main diagonal, zero elsewhere.
BlockMatrix identity_matrix(int dim, int size);
// Id in every block: the unit element for the Schur product.
BlockMatrix schur_unit(int dim, int size);

// Adjoint matrix: block (k, j) of the result is block(j, k)^*.
BlockMatrix adjoint(const BlockMatrix& a);

// The l-diagonal of a: block (k, k+l) kept, everything else zero.
// Requires |l| < N.
BlockMatrix extract_diagonal(const BlockMatrix& a, int l);
BlockMatrix extract_row(const BlockMatrix& a, int k);
BlockMatrix extract_column(const BlockMatrix& a, int j);

// Banded list of diagonal coefficients T_l defining a Toeplitz matrix
// block(k, j) = T_{j-k} at any truncation size. realize(N) is index-stable:
// realize(N) is the leading corner of realize(N') for N' > N.
class ToeplitzSpec {
 public:
  explicit ToeplitzSpec(int dim);

  int dim() const { return dim_; }
  void set_coefficient(int l, OperatorBlock block);
  // Zero block when l is outside the stored band.
  Eigen::MatrixXcd coefficient(int l) const;
  const std::map<int, OperatorBlock>& coefficients() const { return coeffs_; }
  // Smallest interval containing the support; {0, 0} when empty.
  BandRange band() const;

  BlockMatrix realize(int N) const;

 private:
  int dim_;
  std::map<int, OperatorBlock> coeffs_;
};

BlockMatrix realize_toeplitz(const ToeplitzSpec& spec, int N);

// Summability kernel (or point mass) described by its Fourier coefficients.
class KernelSpec {
 public:
  enum class Kind { fejer, poisson, dirac, custom };

  static KernelSpec fejer(int n);
  static KernelSpec poisson(double r);
  static KernelSpec dirac(double t);
  static KernelSpec custom(std::map<int, Complex> coeffs);

  Kind kind() const { return kind_; }
  int fejer_order() const { return order_; }
  double poisson_radius() const { return radius_; }
  double dirac_angle() const { return angle_; }
  const std::map<int, Complex>& custom_coefficients() const { return custom_; }

  // Fourier coefficient at l; dirac coefficients are computed on demand from
  // the stored angle.
  Complex coefficient(int l) const;
  // Band limit when the coefficient support is finite (fejer, custom).
  std::optional<int> band_limit() const;

 private:
  KernelSpec() = default;
  Kind kind_ = Kind::custom;
  int order_ = 0;
  double radius_ = 0.0;
  double angle_ = 0.0;
  std::map<int, Complex> custom_;
};

}  // namespace opschur
