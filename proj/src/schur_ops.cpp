#include "schur_ops.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace opschur {

SymbolPolynomial::SymbolPolynomial(int dim) : dim_(dim) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "SymbolPolynomial needs dim >= 1");
}

void SymbolPolynomial::set_term(int l, OperatorBlock block) {
  if (block.dim() != dim_) fail(ErrorCode::dimension_mismatch, "term has wrong dimension");
  terms_.insert_or_assign(l, std::move(block));
}

Eigen::MatrixXcd SymbolPolynomial::fourier_coefficient(int l) const {
  auto it = terms_.find(l);
  if (it == terms_.end()) return Eigen::MatrixXcd::Zero(dim_, dim_);
  return it->second.mat();
}

int SymbolPolynomial::degree() const {
  int deg = 0;
  for (const auto& [l, block] : terms_) deg = std::max(deg, std::abs(l));
  return deg;
}

BandRange SymbolPolynomial::band() const {
  if (terms_.empty()) return {0, 0};
  return {terms_.begin()->first, terms_.rbegin()->first};
}

OperatorBlock SymbolPolynomial::eval(double t) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (const auto& [l, block] : terms_) {
    const double phase = static_cast<double>(l) * t;
    acc += Complex(std::cos(phase), std::sin(phase)) * block.mat();
  }
  return OperatorBlock(std::move(acc));
}

SymbolPolynomial SymbolPolynomial::from_toeplitz(const ToeplitzSpec& spec) {
  SymbolPolynomial p(spec.dim());
  for (const auto& [l, block] : spec.coefficients()) p.set_term(l, block);
  return p;
}

ToeplitzSpec SymbolPolynomial::to_toeplitz() const {
  ToeplitzSpec spec(dim_);
  for (const auto& [l, block] : terms_) spec.set_coefficient(l, block);
  return spec;
}

SymbolPolynomial SymbolPolynomial::from_kernel(const KernelSpec& kernel, int dim,
                                               int band_limit) {
  if (band_limit < 0) fail(ErrorCode::invalid_argument, "band limit must be >= 0");
  if (auto natural = kernel.band_limit()) band_limit = std::min(band_limit, *natural);
  SymbolPolynomial p(dim);
  for (int l = -band_limit; l <= band_limit; ++l) {
    const Complex c = kernel.coefficient(l);
    if (c != 0.0) p.set_term(l, OperatorBlock::scalar(dim, c));
  }
  return p;
}

BlockMatrix schur_product(const BlockMatrix& a, const BlockMatrix& b) {
  require_compatible(a, b);
  const int d = a.dim();
  const int N = a.size();
  BlockMatrix out(d, N);
  auto& flat = out.mutable_flat();
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j)
      flat.block(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(j) * d, d, d) =
          a.flat().block(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(j) * d, d, d) *
          b.flat().block(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(j) * d, d, d);
  // Structure carries over when both factors share it; band ranges intersect.
  if (a.structure() == Structure::toeplitz && b.structure() == Structure::toeplitz)
    out.set_structure_unchecked(Structure::toeplitz);
  else if (a.structure() == Structure::upper_triangular &&
           b.structure() == Structure::upper_triangular)
    out.set_structure_unchecked(Structure::upper_triangular);
  else if (a.structure() == Structure::banded && b.structure() == Structure::banded) {
    const BandRange r{std::max(a.band().lo, b.band().lo), std::min(a.band().hi, b.band().hi)};
    if (r.lo <= r.hi)
      out.set_structure_unchecked(Structure::banded, r);
    else
      out.set_structure_unchecked(Structure::banded, {0, 0});
  }
  return out;
}

BlockMatrix modulate(const BlockMatrix& a, double t) {
  const int d = a.dim();
  const int N = a.size();
  BlockMatrix out(d, N);
  auto& flat = out.mutable_flat();
  for (int l = -(N - 1); l <= N - 1; ++l) {
    // Same phase reduction as KernelSpec::coefficient, so modulation agrees
    // exactly with the Schur product against the dirac kernel matrix.
    const double phase =
        std::remainder(static_cast<double>(l) * t, 2.0 * std::numbers::pi);
    const Complex factor(std::cos(phase), std::sin(phase));
    for (int k = std::max(0, -l); k < N && k + l < N; ++k)
      flat.block(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(k + l) * d, d, d) =
          factor *
          a.flat().block(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(k + l) * d, d, d);
  }
  out.set_structure_unchecked(a.structure(), a.band());
  return out;
}

BlockMatrix kernel_matrix(const KernelSpec& kernel, int N, int dim) {
  if (N < 1) fail(ErrorCode::precondition, "kernel matrix needs N >= 1");
  if (dim < 1) fail(ErrorCode::invalid_argument, "kernel matrix needs dim >= 1");
  BlockMatrix out(dim, N);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (int l = -(N - 1); l <= N - 1; ++l) {
    const Complex c = kernel.coefficient(l);
    if (c == 0.0) continue;
    const Eigen::MatrixXcd blockval = c * id;
    for (int k = std::max(1, 1 - l); k <= N && k + l <= N; ++k)
      out.set_block(k, k + l, blockval);
  }
  out.set_structure_unchecked(Structure::toeplitz);
  return out;
}

namespace {

// Scales diagonal l of a by factor(l). Equal to the Schur product with the
// Toeplitz matrix (factor(j-k) * Id), bit for bit, since (c*Id)*T multiplies
// each entry by c with no extra arithmetic.
template <typename FactorFn>
BlockMatrix scale_diagonals(const BlockMatrix& a, FactorFn factor) {
  const int d = a.dim();
  const int N = a.size();
  BlockMatrix out(d, N);
  auto& flat = out.mutable_flat();
  for (int l = -(N - 1); l <= N - 1; ++l) {
    const Complex c = factor(l);
    if (c == 0.0) continue;
    for (int k = std::max(0, -l); k < N && k + l < N; ++k)
      flat.block(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(k + l) * d, d, d) =
          c *
          a.flat().block(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(k + l) * d, d, d);
  }
  return out;
}

}  // namespace

BlockMatrix smooth_fejer(const BlockMatrix& a, int n) {
  if (n < 0) fail(ErrorCode::invalid_argument, "fejer order must be >= 0");
  BlockMatrix out = scale_diagonals(a, [n](int l) -> Complex {
    const double f = 1.0 - static_cast<double>(std::abs(l)) / (n + 1.0);
    return f > 0.0 ? Complex(f) : Complex(0.0);
  });
  if (a.structure() == Structure::toeplitz) {
    out.set_structure_unchecked(Structure::toeplitz);
  } else {
    const int N = a.size();
    BandRange band{-std::min(n, N - 1), std::min(n, N - 1)};
    if (a.structure() == Structure::banded) {
      band.lo = std::max(band.lo, a.band().lo);
      band.hi = std::min(band.hi, a.band().hi);
      if (band.lo > band.hi) band = {0, 0};
    } else if (a.structure() == Structure::upper_triangular) {
      band.lo = 0;
    }
    out.set_structure_unchecked(Structure::banded, band);
  }
  return out;
}

BlockMatrix smooth_poisson(const BlockMatrix& a, double r) {
  if (!(r > 0.0 && r < 1.0))
    fail(ErrorCode::precondition, "poisson radius must lie in (0, 1)");
  BlockMatrix out = scale_diagonals(
      a, [r](int l) -> Complex { return std::pow(r, std::abs(l)); });
  out.set_structure_unchecked(a.structure(), a.band());
  return out;
}

BlockMatrix rank_one_matrix(const HVector& x, const HVector& y) {
  if (x.dim() != y.dim() || x.len() != y.len())
    fail(ErrorCode::dimension_mismatch, "rank-one factors must match in dim and len");
  BlockMatrix out(x.dim(), x.len());
  // Block (k, j) maps z to <z, x_j> y_k, i.e. y_k x_j^*; the flattened matrix
  // is the outer product of the flat vectors.
  out.mutable_flat() = y.flat() * x.flat().adjoint();
  return out;
}

BlockMatrix toeplitz_from_symbol(const SymbolPolynomial& f, int N) {
  return f.to_toeplitz().realize(N);
}

HVector apply(const BlockMatrix& a, const HVector& x) {
  if (a.dim() != x.dim() || a.size() != x.len())
    fail(ErrorCode::dimension_mismatch, "matrix and vector must match in dim and size");
  return HVector::from_flat(x.dim(), x.len(), a.flat() * x.flat());
}

}  // namespace opschur
