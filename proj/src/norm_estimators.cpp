#include "norm_estimators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "fft.hpp"
#include "rng.hpp"

namespace opschur {

const char* norm_kind_name(NormKind k) {
  switch (k) {
    case NormKind::exact_truncation: return "exact_truncation";
    case NormKind::lower_bound: return "lower_bound";
    case NormKind::upper_bound: return "upper_bound";
  }
  return "unknown";
}

const char* multiplier_side_name(MultiplierSide s) {
  return s == MultiplierSide::left ? "left" : "right";
}

NormEstimate operator_norm_dense(const BlockMatrix& a, int cap) {
  const Eigen::Index n = a.flat().rows();
  if (n > cap)
    fail(ErrorCode::precondition,
         "flattened size " + std::to_string(n) + " above dense cap " +
             std::to_string(cap) + "; use operator_norm_iterative");
  if (a.is_zero()) return {0.0, NormKind::exact_truncation, "zero", 0, 0.0};
  // Top eigenpair of the Gram matrix. The squared conditioning only hurts the
  // small singular values, not sigma_max. (Eigen 3.4's BDCSVD mis-deflates
  // complex banded matrices when vectors are requested, so it is not used.)
  const Eigen::MatrixXcd& m = a.flat();
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::precondition, "eigensolver failed on the Gram matrix");
  const Eigen::Index top = n - 1;  // ascending order
  const double lambda = std::max(0.0, es.eigenvalues()(top));
  const double sigma = std::sqrt(lambda);
  double resid = 0.0;
  if (lambda > 0.0) {
    const Eigen::VectorXcd v = es.eigenvectors().col(top);
    resid = (gram * v - lambda * v).norm() / lambda;
  }
  return {sigma, NormKind::exact_truncation, "gram_eig", 1, resid};
}

NormEstimate operator_norm_iterative(const BlockMatrix& a,
                                     const PowerIterOptions& opt) {
  if (!(opt.tol > 0.0)) fail(ErrorCode::precondition, "power iteration tol must be > 0");
  if (a.is_zero()) return {0.0, NormKind::exact_truncation, "zero", 0, 0.0};
  const Eigen::MatrixXcd& m = a.flat();
  const Eigen::Index n = m.rows();

  std::uint64_t seed = opt.seed;
  auto random_unit = [&](std::uint64_t s) {
    Rng rng(s);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_gaussian();
    const double nv = v.norm();
    if (nv == 0.0) v(0) = 1.0; else v /= nv;
    return v;
  };

  Eigen::VectorXcd v = random_unit(seed);
  double best_sigma = 0.0;
  double best_resid = std::numeric_limits<double>::infinity();
  double resid_ref = std::numeric_limits<double>::infinity();
  long resid_ref_iter = 0;
  int restarts = 0;

  for (long iter = 1; iter <= opt.max_iter; ++iter) {
    const Eigen::VectorXcd w = m * v;
    const double lambda = w.squaredNorm();  // Rayleigh quotient of A^*A
    const double sigma = std::sqrt(lambda);
    if (lambda == 0.0) {
      // v lies in the kernel; try a different start.
      v = random_unit(++seed);
      continue;
    }
    const Eigen::VectorXcd z = m.adjoint() * w;
    const double resid = (z - lambda * v).norm() / lambda;
    if (sigma > best_sigma) best_sigma = sigma;
    if (resid < best_resid) best_resid = resid;
    if (resid < opt.tol)
      return {sigma, NormKind::exact_truncation, "power_iteration", iter, resid};
    v = z / z.norm();
    // Plateau: no meaningful residual progress over 50 iterations.
    if (iter - resid_ref_iter >= 50) {
      if (resid > 0.999 * resid_ref && restarts < 3) {
        ++restarts;
        v = random_unit(++seed);
      }
      resid_ref = resid;
      resid_ref_iter = iter;
    } else if (resid < resid_ref) {
      resid_ref = resid;
      resid_ref_iter = iter;
    }
  }
  return {best_sigma, NormKind::lower_bound, "power_iteration", opt.max_iter,
          best_resid};
}

NormEstimate operator_norm(const BlockMatrix& a, int cap) {
  if (a.flat().rows() <= cap) return operator_norm_dense(a, cap);
  PowerIterOptions opt;
  opt.tol = 1e-8;
  return operator_norm_iterative(a, opt);
}

HVector toeplitz_apply_fast(const ToeplitzSpec& spec, const HVector& x) {
  if (spec.dim() != x.dim())
    fail(ErrorCode::dimension_mismatch, "spec and vector must agree in dim");
  const int d = spec.dim();
  const int N = x.len();
  HVector y(d, N);
  if (spec.coefficients().empty()) return y;

  const BandRange band = spec.band();
  const int lo = std::max(band.lo, -(N - 1));
  const int hi = std::min(band.hi, N - 1);
  if (lo > hi) return y;
  const int width = std::max({0, hi, -lo});
  const std::size_t C = fft::next_pow2(static_cast<std::size_t>(N) + width);

  // Frequency-domain copies of the d scalar component sequences of x.
  std::vector<std::vector<Complex>> xhat(d, std::vector<Complex>(C, Complex(0)));
  for (int b = 0; b < d; ++b) {
    for (int j = 0; j < N; ++j)
      xhat[b][j] = x.flat()(static_cast<Eigen::Index>(j) * d + b);
    fft::transform(xhat[b], false);
  }

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(N) * d);
  std::vector<Complex> kernel(C), acc(C);
  for (int arow = 0; arow < d; ++arow) {
    std::fill(acc.begin(), acc.end(), Complex(0));
    for (int b = 0; b < d; ++b) {
      std::fill(kernel.begin(), kernel.end(), Complex(0));
      bool any = false;
      for (const auto& [l, block] : spec.coefficients()) {
        if (l < lo || l > hi) continue;
        const Complex c = block.mat()(arow, b);
        if (c == Complex(0)) continue;
        // y_k = sum_l T_l x_{k+l}: the convolution kernel holds t_{-m} at m.
        const std::size_t idx = static_cast<std::size_t>(((-l) % static_cast<int>(C) +
                                                          static_cast<int>(C)) %
                                                         static_cast<int>(C));
        kernel[idx] = c;
        any = true;
      }
      if (!any) continue;
      fft::transform(kernel, false);
      for (std::size_t i = 0; i < C; ++i) acc[i] += kernel[i] * xhat[b][i];
    }
    fft::transform(acc, true);
    for (int k = 0; k < N; ++k)
      out(static_cast<Eigen::Index>(k) * d + arow) = acc[k];
  }
  return HVector::from_flat(d, N, std::move(out));
}

namespace {

struct Probe {
  std::string name;
  BlockMatrix matrix;
  double known_norm = -1.0;  // analytically exact operator norm, when one exists
};

std::vector<Probe> build_probes(const BlockMatrix& a, MultiplierSide side,
                                const ProbeSet& set, std::uint64_t seed) {
  const int d = a.dim();
  const int N = a.size();
  std::vector<Probe> probes;

  if (set.entry) {
    // Largest entry (row-major scan, first hit wins) with the unitary factor
    // of its SVD placed so that the Schur product reproduces sigma_max.
    int bk = 1, bj = 1;
    double best = -1.0;
    for (int k = 1; k <= N; ++k)
      for (int j = 1; j <= N; ++j) {
        const double v = OperatorBlock(a.block(k, j)).op_norm();
        if (v > best) { best = v; bk = k; bj = j; }
      }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        a.block(bk, bj), Eigen::ComputeFullU | Eigen::ComputeFullV);
    BlockMatrix probe(d, N);
    if (side == MultiplierSide::right)
      probe.set_block(bk, bj, svd.matrixU().adjoint());
    else
      probe.set_block(bk, bj, svd.matrixV());
    probes.push_back({"entry", std::move(probe), 1.0});  // single unitary block
  }
  if (set.unit) probes.push_back({"unit", schur_unit(d, N), static_cast<double>(N)});
  for (int i = 0; i < set.dirac_angles; ++i) {
    const double t = 2.0 * std::numbers::pi * (i + 1) / (set.dirac_angles + 1);
    // Diagonal-unitary conjugate of the all-Id matrix: norm N.
    probes.push_back({"dirac", kernel_matrix(KernelSpec::dirac(t), N, d),
                      static_cast<double>(N)});
  }
  Rng rng(seed);
  for (int i = 0; i < set.gaussians; ++i) {
    BlockMatrix g(d, N);
    auto& flat = g.mutable_flat();
    for (Eigen::Index c = 0; c < flat.cols(); ++c)
      for (Eigen::Index r = 0; r < flat.rows(); ++r)
        flat(r, c) = rng.complex_gaussian();
    probes.push_back({"gaussian", std::move(g), -1.0});
  }
  for (int i = 0; i < set.rank_ones; ++i) {
    HVector x(d, N), y(d, N);
    for (int n = 1; n <= N; ++n) {
      Eigen::VectorXcd vx(d), vy(d);
      for (int c = 0; c < d; ++c) { vx(c) = rng.complex_gaussian(); vy(c) = rng.complex_gaussian(); }
      x.set_coord(n, vx);
      y.set_coord(n, vy);
    }
    const double nx = x.norm();
    const double ny = y.norm();
    probes.push_back({"rank_one", rank_one_matrix(x, y), nx * ny});
  }
  for (const auto& extra : set.extra) {
    require_compatible(a, extra);
    probes.push_back({"extra", extra, -1.0});
  }
  return probes;
}

}  // namespace

NormEstimate multiplier_lower_bound(const BlockMatrix& a, MultiplierSide side,
                                    const ProbeSet& set, std::uint64_t seed) {
  if (set.count() <= 0) fail(ErrorCode::precondition, "probe set is empty");
  if (a.is_zero()) return {0.0, NormKind::exact_truncation, "zero", 0, 0.0};

  const std::vector<Probe> probes = build_probes(a, side, set, seed);
  double best = 0.0;
  std::string best_name = "none";
  for (const auto& probe : probes) {
    const double pnorm = probe.known_norm > 0.0 ? probe.known_norm
                                                : operator_norm(probe.matrix).value;
    if (pnorm == 0.0) continue;
    const BlockMatrix prod = side == MultiplierSide::right
                                 ? schur_product(probe.matrix, a)
                                 : schur_product(a, probe.matrix);
    const double ratio = operator_norm(prod).value / pnorm;
    if (ratio > best) {
      best = ratio;
      best_name = probe.name;
    }
  }
  return {best, NormKind::lower_bound, "probe:" + best_name,
          static_cast<long>(probes.size()), 0.0};
}

SymbolPolynomial symbol_from_diagonals(const BlockMatrix& a) {
  if (a.structure() != Structure::toeplitz)
    fail(ErrorCode::precondition, "symbol reconstruction needs a Toeplitz-tagged matrix");
  const int N = a.size();
  SymbolPolynomial p(a.dim());
  for (int l = -(N - 1); l <= N - 1; ++l) {
    const int k0 = std::max(1, 1 - l);
    Eigen::MatrixXcd block = a.block(k0, k0 + l);
    if (!block.isZero(0.0)) p.set_term(l, OperatorBlock(std::move(block)));
  }
  return p;
}

namespace {

// Modulation matrix check: every visible diagonal equals c_1^l * Id for a
// unimodular c_1. Such a matrix is a diagonal-unitary conjugation, an exact
// Schur multiplier of norm 1 at every truncation. Returns the detection
// deviation, or a negative value when the pattern does not hold.
double modulation_deviation(const BlockMatrix& a) {
  const int N = a.size();
  const int d = a.dim();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  auto scalar_of = [&](int l) -> std::optional<Complex> {
    const int k0 = std::max(1, 1 - l);
    const Eigen::MatrixXcd block = a.block(k0, k0 + l);
    const Complex c = block(0, 0);
    if ((block - c * id).cwiseAbs().maxCoeff() > 0.0) return std::nullopt;
    return c;
  };
  const double tol = 1e-12;
  double dev = 0.0;
  auto c0 = scalar_of(0);
  if (!c0 || std::abs(*c0 - Complex(1.0)) > tol) return -1.0;
  dev = std::max(dev, std::abs(*c0 - Complex(1.0)));
  if (N == 1) return dev;
  auto c1 = scalar_of(1);
  if (!c1 || std::abs(std::abs(*c1) - 1.0) > tol) return -1.0;
  for (int l = -(N - 1); l <= N - 1; ++l) {
    auto cl = scalar_of(l);
    if (!cl) return -1.0;
    const Complex expect = std::polar(1.0, static_cast<double>(l) * std::arg(*c1));
    const double e = std::abs(*cl - expect);
    if (e > tol) return -1.0;
    dev = std::max(dev, e);
  }
  return dev;
}

}  // namespace

NormEstimate multiplier_upper_bound(const BlockMatrix& a) {
  if (a.is_zero()) return {0.0, NormKind::exact_truncation, "zero", 0, 0.0};
  NormEstimate op = operator_norm(a);
  if (op.kind != NormKind::exact_truncation)
    fail(ErrorCode::precondition,
         "operator norm did not converge; no certified upper bound available");
  NormEstimate out{op.value, NormKind::upper_bound, "operator_norm", op.iterations,
                   op.residual};
  if (a.structure() == Structure::toeplitz) {
    const double dev = modulation_deviation(a);
    if (dev >= 0.0) {
      if (1.0 < out.value) out = {1.0, NormKind::upper_bound, "dirac_conjugation", 0, dev};
      return out;
    }
    const SymbolPolynomial p = symbol_from_diagonals(a);
    const int grid = std::max(256, 4 * (p.degree() + 1));
    const double l1 = symbol_l1_norm(p, grid);
    if (l1 < out.value) out = {l1, NormKind::upper_bound, "symbol_l1", 0, 0.0};
  }
  return out;
}

namespace {

// ||f(t)|| on the uniform M-point grid (M a power of two), sampled through
// inverse FFTs of the coefficient components; exact up to FFT roundoff and
// O(M log M) instead of O(M * terms).
std::vector<double> symbol_grid_norms(const SymbolPolynomial& f, std::size_t m) {
  const int d = f.dim();
  std::vector<std::vector<Complex>> comp(
      static_cast<std::size_t>(d) * d, std::vector<Complex>(m, Complex(0)));
  const auto mi = static_cast<long long>(m);
  for (const auto& [l, block] : f.terms()) {
    const std::size_t idx = static_cast<std::size_t>(((l % mi) + mi) % mi);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        comp[static_cast<std::size_t>(r) * d + c][idx] += block.mat()(r, c);
  }
  for (auto& a : comp) fft::transform(a, true);
  const double scale = static_cast<double>(m);
  std::vector<double> norms(m);
  if (d == 1) {
    for (std::size_t k = 0; k < m; ++k) norms[k] = std::abs(comp[0][k]) * scale;
    return norms;
  }
  Eigen::MatrixXcd b(d, d);
  for (std::size_t k = 0; k < m; ++k) {
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        b(r, c) = comp[static_cast<std::size_t>(r) * d + c][k] * scale;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    norms[k] = svd.singularValues()(0);
  }
  return norms;
}

double symbol_grid_value(const SymbolPolynomial& f, std::size_t m, bool sup) {
  const std::vector<double> norms = symbol_grid_norms(f, m);
  if (sup) {
    double best = 0.0;
    for (double v : norms) best = std::max(best, v);
    return best;
  }
  double acc = 0.0;
  for (double v : norms) acc += v;
  return acc / static_cast<double>(m);
}

std::size_t symbol_grid_floor(const SymbolPolynomial& f, int grid) {
  return fft::next_pow2(static_cast<std::size_t>(
      std::max({grid, 4 * (f.degree() + 1), 8})));
}

double refined_symbol_value(const SymbolPolynomial& f, int grid, bool sup) {
  std::size_t m = symbol_grid_floor(f, grid);
  double value = symbol_grid_value(f, m, sup);
  for (int round = 0; round < 16 && m < (1u << 20); ++round) {
    m *= 2;
    const double next = symbol_grid_value(f, m, sup);
    const bool done = std::abs(next - value) < 1e-8;
    value = next;
    if (done) break;
  }
  return value;
}

}  // namespace

double symbol_sup_norm(const SymbolPolynomial& f, int grid) {
  return refined_symbol_value(f, grid, true);
}

double symbol_l1_norm(const SymbolPolynomial& f, int grid) {
  return refined_symbol_value(f, grid, false);
}

namespace {

// ||f(t) x|| on the uniform m-point grid, via d inverse FFTs of the
// coefficient-times-x component sequences.
std::vector<double> symbol_vector_norms(const SymbolPolynomial& f,
                                        const Eigen::VectorXcd& x, std::size_t m) {
  const int d = f.dim();
  std::vector<std::vector<Complex>> comp(static_cast<std::size_t>(d),
                                         std::vector<Complex>(m, Complex(0)));
  const auto mi = static_cast<long long>(m);
  for (const auto& [l, block] : f.terms()) {
    const std::size_t idx = static_cast<std::size_t>(((l % mi) + mi) % mi);
    const Eigen::VectorXcd v = block.mat() * x;
    for (int r = 0; r < d; ++r) comp[static_cast<std::size_t>(r)][idx] += v(r);
  }
  for (auto& a : comp) fft::transform(a, true);
  const double scale = static_cast<double>(m);
  std::vector<double> norms(m);
  for (std::size_t k = 0; k < m; ++k) {
    double acc = 0.0;
    for (int r = 0; r < d; ++r) acc += std::norm(comp[static_cast<std::size_t>(r)][k]);
    norms[k] = std::sqrt(acc) * scale;
  }
  return norms;
}

}  // namespace

NormEstimate l1_sot_norm(const SymbolPolynomial& f, int grid,
                         const AscentOptions& opt, std::uint64_t seed) {
  const int d = f.dim();
  if (f.terms().empty()) return {0.0, NormKind::exact_truncation, "zero", 0, 0.0};
  const std::size_t m = symbol_grid_floor(f, grid);

  std::vector<Eigen::MatrixXcd> samples;
  samples.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    samples.push_back(
        f.eval(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m)).mat());

  auto objective = [&](const Eigen::VectorXcd& x) {
    double acc = 0.0;
    for (const auto& s : samples) acc += (s * x).norm();
    return acc / static_cast<double>(m);
  };
  auto gradient = [&](const Eigen::VectorXcd& x) {
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(d);
    for (const auto& s : samples) {
      const Eigen::VectorXcd u = s * x;
      const double nu = u.norm();
      if (nu > 0.0) g += s.adjoint() * (u / nu);
    }
    return Eigen::VectorXcd(g / static_cast<double>(m));
  };

  Rng rng(seed);
  double best = 0.0;
  Eigen::VectorXcd best_x = Eigen::VectorXcd::Zero(d);
  long evals = 0;
  for (int start = 0; start < opt.starts; ++start) {
    Eigen::VectorXcd x(d);
    for (int c = 0; c < d; ++c) x(c) = rng.complex_gaussian();
    if (x.norm() == 0.0) x(0) = 1.0;
    x /= x.norm();
    double val = objective(x);
    double step = opt.step;
    for (int it = 0; it < opt.steps; ++it) {
      ++evals;
      Eigen::VectorXcd cand = x + step * gradient(x);
      const double nc = cand.norm();
      if (nc == 0.0) break;
      cand /= nc;
      const double cval = objective(cand);
      if (cval > val) {
        x = cand;
        val = cval;
      } else {
        step *= 0.5;
        if (step < 1e-12) break;
      }
    }
    if (val > best) {
      best = val;
      best_x = x;
    }
  }

  // Re-integrate along the best direction with the doubling rule so the
  // reported value carries quadrature accuracy matching symbol_l1_norm.
  if (best > 0.0) {
    std::size_t mm = m;
    double value = best;
    for (int round = 0; round < 16 && mm < (1u << 20); ++round) {
      mm *= 2;
      const std::vector<double> norms = symbol_vector_norms(f, best_x, mm);
      double acc = 0.0;
      for (double v : norms) acc += v;
      const double next = acc / static_cast<double>(mm);
      const bool done = std::abs(next - value) < 1e-8;
      value = next;
      if (done) break;
    }
    best = value;
  }
  return {best, NormKind::lower_bound, "projected_ascent", evals, 0.0};
}

}  // namespace opschur
