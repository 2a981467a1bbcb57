#include "block_types.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

namespace opschur {

namespace {

void require_finite(const Eigen::MatrixXcd& m, const char* what) {
  if (!m.allFinite()) fail(ErrorCode::invalid_argument, std::string(what) + " has non-finite entries");
}

}  // namespace

OperatorBlock::OperatorBlock(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    fail(ErrorCode::invalid_argument, "operator block must be square and nonempty");
  require_finite(m_, "operator block");
}

OperatorBlock OperatorBlock::zero(int dim) {
  return OperatorBlock(Eigen::MatrixXcd::Zero(dim, dim));
}

OperatorBlock OperatorBlock::identity(int dim) {
  return OperatorBlock(Eigen::MatrixXcd::Identity(dim, dim));
}

OperatorBlock OperatorBlock::scalar(int dim, Complex c) {
  return OperatorBlock(c * Eigen::MatrixXcd::Identity(dim, dim));
}

double OperatorBlock::op_norm() const {
  if (dim() == 1) return std::abs(m_(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m_);
  return svd.singularValues()(0);
}

HVector::HVector(int dim, int len) : dim_(dim), len_(len) {
  if (dim < 1 || len < 1) fail(ErrorCode::invalid_argument, "HVector needs dim >= 1 and len >= 1");
  flat_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim) * len);
}

HVector HVector::from_flat(int dim, int len, Eigen::VectorXcd flat) {
  HVector v(dim, len);
  if (flat.size() != static_cast<Eigen::Index>(dim) * len)
    fail(ErrorCode::dimension_mismatch, "flat vector length does not match dim*len");
  require_finite(flat, "HVector");
  v.flat_ = std::move(flat);
  return v;
}

Eigen::VectorXcd HVector::coord(int n) const {
  if (n < 1 || n > len_) fail(ErrorCode::index_out_of_range, "HVector coordinate out of range");
  return flat_.segment(static_cast<Eigen::Index>(n - 1) * dim_, dim_);
}

void HVector::set_coord(int n, const Eigen::VectorXcd& v) {
  if (n < 1 || n > len_) fail(ErrorCode::index_out_of_range, "HVector coordinate out of range");
  if (v.size() != dim_) fail(ErrorCode::dimension_mismatch, "coordinate has wrong dimension");
  flat_.segment(static_cast<Eigen::Index>(n - 1) * dim_, dim_) = v;
}

Complex HVector::inner(const HVector& y) const {
  if (dim_ != y.dim_ || len_ != y.len_)
    fail(ErrorCode::dimension_mismatch, "inner product operands must match in dim and len");
  // <x, y> = sum x_i * conj(y_i); Eigen's dot conjugates its first argument.
  return y.flat_.dot(flat_);
}

HVector make_basis_vector(const Eigen::VectorXcd& x, int j, int N) {
  if (N < 1) fail(ErrorCode::invalid_argument, "basis vector needs N >= 1");
  if (j < 1 || j > N) fail(ErrorCode::index_out_of_range, "basis position out of range");
  if (x.size() < 1) fail(ErrorCode::invalid_argument, "basis entry must be nonempty");
  HVector v(static_cast<int>(x.size()), N);
  v.set_coord(j, x);
  return v;
}

const char* structure_name(Structure s) {
  switch (s) {
    case Structure::dense: return "dense";
    case Structure::toeplitz: return "toeplitz";
    case Structure::upper_triangular: return "upper_triangular";
    case Structure::banded: return "banded";
  }
  return "unknown";
}

Structure structure_from_name(const std::string& name) {
  if (name == "dense") return Structure::dense;
  if (name == "toeplitz") return Structure::toeplitz;
  if (name == "upper_triangular") return Structure::upper_triangular;
  if (name == "banded") return Structure::banded;
  fail(ErrorCode::parse, "unknown structure tag '" + name + "'");
}

BlockMatrix::BlockMatrix(int dim, int size) : dim_(dim), size_(size) {
  if (dim < 1 || size < 1) fail(ErrorCode::invalid_argument, "BlockMatrix needs dim >= 1 and size >= 1");
  const Eigen::Index n = static_cast<Eigen::Index>(dim) * size;
  flat_ = Eigen::MatrixXcd::Zero(n, n);
}

Eigen::MatrixXcd BlockMatrix::block(int k, int j) const {
  if (k < 1 || k > size_ || j < 1 || j > size_)
    fail(ErrorCode::index_out_of_range, "block index out of range");
  return flat_.block(static_cast<Eigen::Index>(k - 1) * dim_,
                     static_cast<Eigen::Index>(j - 1) * dim_, dim_, dim_);
}

void BlockMatrix::set_block(int k, int j, const Eigen::MatrixXcd& b) {
  if (k < 1 || k > size_ || j < 1 || j > size_)
    fail(ErrorCode::index_out_of_range, "block index out of range");
  if (b.rows() != dim_ || b.cols() != dim_)
    fail(ErrorCode::dimension_mismatch, "block has wrong dimension");
  require_finite(b, "block");
  flat_.block(static_cast<Eigen::Index>(k - 1) * dim_,
              static_cast<Eigen::Index>(j - 1) * dim_, dim_, dim_) = b;
}

void BlockMatrix::set_structure(Structure tag, BandRange band) {
  auto block_is_zero = [&](int k, int j) {
    return flat_
        .block(static_cast<Eigen::Index>(k - 1) * dim_,
               static_cast<Eigen::Index>(j - 1) * dim_, dim_, dim_)
        .isZero(0.0);
  };
  switch (tag) {
    case Structure::dense:
      break;
    case Structure::toeplitz:
      for (int l = -(size_ - 1); l <= size_ - 1; ++l) {
        const int k0 = std::max(1, 1 - l);
        const Eigen::MatrixXcd first = block(k0, k0 + l);
        for (int k = k0 + 1; k + l <= size_ && k <= size_; ++k)
          if (block(k, k + l) != first)
            fail(ErrorCode::precondition, "matrix is not Toeplitz: diagonal " + std::to_string(l) + " varies");
      }
      break;
    case Structure::upper_triangular:
      for (int k = 1; k <= size_; ++k)
        for (int j = 1; j < k; ++j)
          if (!block_is_zero(k, j))
            fail(ErrorCode::precondition, "matrix is not upper triangular");
      break;
    case Structure::banded:
      if (band.lo > band.hi) fail(ErrorCode::invalid_argument, "banded range must have lo <= hi");
      for (int k = 1; k <= size_; ++k)
        for (int j = 1; j <= size_; ++j)
          if ((j - k < band.lo || j - k > band.hi) && !block_is_zero(k, j))
            fail(ErrorCode::precondition, "matrix has entries outside the declared band");
      break;
  }
  tag_ = tag;
  band_ = tag == Structure::banded ? band : BandRange{};
}

void BlockMatrix::set_structure_unchecked(Structure tag, BandRange band) {
  tag_ = tag;
  band_ = tag == Structure::banded ? band : BandRange{};
}

double BlockMatrix::sup_entry_norm() const {
  double best = 0.0;
  if (dim_ == 1) {
    best = flat_.cwiseAbs().maxCoeff();
  } else {
    for (int k = 1; k <= size_; ++k)
      for (int j = 1; j <= size_; ++j) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block(k, j));
        best = std::max(best, svd.singularValues()(0));
      }
  }
  return best;
}

BlockMatrix BlockMatrix::corner(int n) const {
  if (n < 1 || n > size_) fail(ErrorCode::precondition, "corner size must be in [1, N]");
  BlockMatrix out(dim_, n);
  const Eigen::Index m = static_cast<Eigen::Index>(n) * dim_;
  out.flat_ = flat_.topLeftCorner(m, m);
  if (tag_ == Structure::banded) {
    out.set_structure_unchecked(Structure::banded,
                                {std::max(band_.lo, -(n - 1)), std::min(band_.hi, n - 1)});
  } else {
    out.set_structure_unchecked(tag_);
  }
  return out;
}

BlockMatrix& BlockMatrix::operator+=(const BlockMatrix& o) {
  require_compatible(*this, o);
  flat_ += o.flat_;
  if (tag_ != o.tag_ || tag_ == Structure::banded) set_structure_unchecked(Structure::dense);
  return *this;
}

BlockMatrix& BlockMatrix::operator-=(const BlockMatrix& o) {
  require_compatible(*this, o);
  flat_ -= o.flat_;
  // Difference keeps toeplitz/upper structure; band ranges would need a merge,
  // fall back to dense there.
  if (tag_ != o.tag_ || tag_ == Structure::banded) set_structure_unchecked(Structure::dense);
  return *this;
}

BlockMatrix& BlockMatrix::operator*=(Complex c) {
  flat_ *= c;
  return *this;
}

bool exactly_equal(const BlockMatrix& a, const BlockMatrix& b) {
  return a.dim() == b.dim() && a.size() == b.size() &&
         a.structure() == b.structure() && a.band().lo == b.band().lo &&
         a.band().hi == b.band().hi && a.flat() == b.flat();
}

void require_compatible(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.dim() != b.dim() || a.size() != b.size())
    fail(ErrorCode::dimension_mismatch,
         "matrices must agree in dim and size (got d=" + std::to_string(a.dim()) +
             ",N=" + std::to_string(a.size()) + " vs d=" + std::to_string(b.dim()) +
             ",N=" + std::to_string(b.size()) + ")");
}

BlockMatrix identity_matrix(int dim, int size) {
  BlockMatrix m(dim, size);
  m.mutable_flat().setIdentity();
  m.set_structure_unchecked(Structure::toeplitz);
  return m;
}

BlockMatrix schur_unit(int dim, int size) {
  BlockMatrix m(dim, size);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (int k = 1; k <= size; ++k)
    for (int j = 1; j <= size; ++j) m.set_block(k, j, id);
  m.set_structure_unchecked(Structure::toeplitz);
  return m;
}

BlockMatrix adjoint(const BlockMatrix& a) {
  BlockMatrix out(a.dim(), a.size());
  out.mutable_flat() = a.flat().adjoint();
  switch (a.structure()) {
    case Structure::toeplitz:
      out.set_structure_unchecked(Structure::toeplitz);
      break;
    case Structure::banded:
      out.set_structure_unchecked(Structure::banded, {-a.band().hi, -a.band().lo});
      break;
    default:
      out.set_structure_unchecked(Structure::dense);
  }
  return out;
}

BlockMatrix extract_diagonal(const BlockMatrix& a, int l) {
  const int N = a.size();
  if (l <= -N || l >= N)
    fail(ErrorCode::index_out_of_range,
         "diagonal " + std::to_string(l) + " is empty at size " + std::to_string(N));
  BlockMatrix out(a.dim(), N);
  for (int k = std::max(1, 1 - l); k <= N && k + l <= N; ++k)
    out.set_block(k, k + l, a.block(k, k + l));
  out.set_structure_unchecked(Structure::banded, {l, l});
  return out;
}

BlockMatrix extract_row(const BlockMatrix& a, int k) {
  if (k < 1 || k > a.size()) fail(ErrorCode::index_out_of_range, "row index out of range");
  BlockMatrix out(a.dim(), a.size());
  for (int j = 1; j <= a.size(); ++j) out.set_block(k, j, a.block(k, j));
  return out;
}

BlockMatrix extract_column(const BlockMatrix& a, int j) {
  if (j < 1 || j > a.size()) fail(ErrorCode::index_out_of_range, "column index out of range");
  BlockMatrix out(a.dim(), a.size());
  for (int k = 1; k <= a.size(); ++k) out.set_block(k, j, a.block(k, j));
  return out;
}

ToeplitzSpec::ToeplitzSpec(int dim) : dim_(dim) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "ToeplitzSpec needs dim >= 1");
}

void ToeplitzSpec::set_coefficient(int l, OperatorBlock block) {
  if (block.dim() != dim_) fail(ErrorCode::dimension_mismatch, "coefficient has wrong dimension");
  coeffs_.insert_or_assign(l, std::move(block));
}

Eigen::MatrixXcd ToeplitzSpec::coefficient(int l) const {
  auto it = coeffs_.find(l);
  if (it == coeffs_.end()) return Eigen::MatrixXcd::Zero(dim_, dim_);
  return it->second.mat();
}

BandRange ToeplitzSpec::band() const {
  if (coeffs_.empty()) return {0, 0};
  return {coeffs_.begin()->first, coeffs_.rbegin()->first};
}

BlockMatrix ToeplitzSpec::realize(int N) const {
  if (N < 1) fail(ErrorCode::precondition, "realization size must be >= 1");
  BlockMatrix out(dim_, N);
  for (const auto& [l, block] : coeffs_) {
    if (l <= -N || l >= N) continue;  // outside the visible corner
    for (int k = std::max(1, 1 - l); k <= N && k + l <= N; ++k)
      out.set_block(k, k + l, block.mat());
  }
  out.set_structure_unchecked(Structure::toeplitz);
  return out;
}

BlockMatrix realize_toeplitz(const ToeplitzSpec& spec, int N) { return spec.realize(N); }

KernelSpec KernelSpec::fejer(int n) {
  if (n < 0) fail(ErrorCode::invalid_argument, "fejer order must be >= 0");
  KernelSpec k;
  k.kind_ = Kind::fejer;
  k.order_ = n;
  return k;
}

KernelSpec KernelSpec::poisson(double r) {
  if (!(r > 0.0 && r < 1.0))
    fail(ErrorCode::precondition, "poisson radius must lie in (0, 1)");
  KernelSpec k;
  k.kind_ = Kind::poisson;
  k.radius_ = r;
  return k;
}

KernelSpec KernelSpec::dirac(double t) {
  KernelSpec k;
  k.kind_ = Kind::dirac;
  k.angle_ = t;
  return k;
}

KernelSpec KernelSpec::custom(std::map<int, Complex> coeffs) {
  KernelSpec k;
  k.kind_ = Kind::custom;
  k.custom_ = std::move(coeffs);
  return k;
}

Complex KernelSpec::coefficient(int l) const {
  switch (kind_) {
    case Kind::fejer:
      if (std::abs(l) > order_) return 0.0;
      return 1.0 - static_cast<double>(std::abs(l)) / (order_ + 1.0);
    case Kind::poisson:
      return std::pow(radius_, std::abs(l));
    case Kind::dirac: {
      // e^{i l t}, with the phase reduced before evaluation so large |l| does
      // not lose the angle to argument growth.
      const double phase =
          std::remainder(static_cast<double>(l) * angle_, 2.0 * std::numbers::pi);
      return {std::cos(phase), std::sin(phase)};
    }
    case Kind::custom: {
      auto it = custom_.find(l);
      return it == custom_.end() ? Complex(0.0) : it->second;
    }
  }
  return 0.0;
}

std::optional<int> KernelSpec::band_limit() const {
  switch (kind_) {
    case Kind::fejer:
      return order_;
    case Kind::custom: {
      int lim = 0;
      for (const auto& [l, c] : custom_) lim = std::max(lim, std::abs(l));
      return lim;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace opschur
