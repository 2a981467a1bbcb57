#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace opschur {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::decreasing_to_zero: return "decreasing_to_zero";
    case Verdict::bounded: return "bounded";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Verdict classify_profile(std::span<const double> values) {
  if (values.empty()) return Verdict::inconclusive;
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  if (vmax < 1e-14) return Verdict::decreasing_to_zero;
  const double base = std::abs(values.front()) < 1e-14 ? vmax : values.front();
  bool monotone = true;
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i + 1] > values[i] + 1e-12 * vmax) monotone = false;
  if (monotone && values.back() < 0.05 * base) return Verdict::decreasing_to_zero;
  if (values.size() >= 3) {
    const auto last3 = values.subspan(values.size() - 3);
    const double hi = std::max({last3[0], last3[1], last3[2]});
    const double lo = std::min({last3[0], last3[1], last3[2]});
    if (hi - lo <= 0.05 * hi && values.back() >= 0.05 * base) return Verdict::bounded;
  }
  return Verdict::inconclusive;
}

namespace {

// Probe budget for profile points: smaller than the standalone default since
// a profile evaluates many matrices.
ProbeSet profile_probes() {
  ProbeSet set;
  set.dirac_angles = 4;
  set.gaussians = 4;
  set.rank_ones = 4;
  return set;
}

struct MetricValue {
  double primary;
  double lower;  // only meaningful in multiplier mode
};

MetricValue evaluate_metric(const BlockMatrix& residue, ProfileMetric metric,
                            std::uint64_t seed) {
  if (metric == ProfileMetric::operator_norm)
    return {operator_norm(residue).value, 0.0};
  const double upper = multiplier_upper_bound(residue).value;
  const double lower =
      multiplier_lower_bound(residue, MultiplierSide::right, profile_probes(), seed)
          .value;
  return {upper, lower};
}

const char* metric_name(ProfileMetric metric) {
  return metric == ProfileMetric::operator_norm ? "operator_norm"
                                                : "multiplier_upper";
}

ConvergenceProfile finish_profile(ConvergenceProfile p) {
  p.verdict = classify_profile(p.values);
  return p;
}

}  // namespace

ConvergenceProfile fejer_convergence_profile(const BlockMatrix& a,
                                             std::span<const int> orders,
                                             ProfileMetric metric,
                                             std::uint64_t seed) {
  if (orders.empty()) fail(ErrorCode::precondition, "orders must be nonempty");
  for (std::size_t i = 1; i < orders.size(); ++i)
    if (orders[i] <= orders[i - 1])
      fail(ErrorCode::precondition, "orders must be strictly increasing");
  ConvergenceProfile p;
  p.metric = metric_name(metric);
  for (int n : orders) {
    const BlockMatrix residue = smooth_fejer(a, n) - a;
    const MetricValue v = evaluate_metric(residue, metric, seed);
    p.parameters.push_back(static_cast<double>(n));
    p.values.push_back(v.primary);
    if (metric == ProfileMetric::multiplier_bounds) p.lower_values.push_back(v.lower);
  }
  return finish_profile(std::move(p));
}

ConvergenceProfile poisson_convergence_profile(const BlockMatrix& a,
                                               std::span<const double> radii,
                                               ProfileMetric metric,
                                               std::uint64_t seed) {
  if (radii.empty()) fail(ErrorCode::precondition, "radii must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0))
      fail(ErrorCode::precondition, "radii must lie in (0, 1)");
    if (i > 0 && radii[i] <= radii[i - 1])
      fail(ErrorCode::precondition, "radii must be strictly increasing");
  }
  ConvergenceProfile p;
  p.metric = metric_name(metric);
  for (double r : radii) {
    const BlockMatrix residue = smooth_poisson(a, r) - a;
    const MetricValue v = evaluate_metric(residue, metric, seed);
    p.parameters.push_back(r);
    p.values.push_back(v.primary);
    if (metric == ProfileMetric::multiplier_bounds) p.lower_values.push_back(v.lower);
  }
  return finish_profile(std::move(p));
}

ConvergenceProfile riemann_lebesgue_profile(const BlockMatrix& a) {
  ConvergenceProfile p;
  p.metric = "diagonal_operator_norm";
  const int N = a.size();
  auto push = [&](int l) {
    p.parameters.push_back(static_cast<double>(l));
    p.values.push_back(operator_norm(extract_diagonal(a, l)).value);
  };
  push(0);
  for (int m = 1; m <= N - 1; ++m) {
    push(-m);
    push(m);
  }
  return finish_profile(std::move(p));
}

ConvergenceProfile modulation_continuity_profile(const BlockMatrix& a,
                                                 std::span<const double> deltas,
                                                 ProfileMetric metric,
                                                 std::uint64_t seed) {
  if (deltas.empty()) fail(ErrorCode::precondition, "deltas must be nonempty");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0))
      fail(ErrorCode::precondition, "deltas must be positive");
    if (i > 0 && deltas[i] >= deltas[i - 1])
      fail(ErrorCode::precondition, "deltas must be strictly decreasing");
  }
  ConvergenceProfile p;
  p.metric = metric_name(metric);
  for (double delta : deltas) {
    const BlockMatrix residue = modulate(a, delta) - a;
    const MetricValue v = evaluate_metric(residue, metric, seed);
    p.parameters.push_back(delta);
    p.values.push_back(v.primary);
    if (metric == ProfileMetric::multiplier_bounds) p.lower_values.push_back(v.lower);
  }
  return finish_profile(std::move(p));
}

Verdict l1_membership_verdict(const BlockMatrix& a, std::span<const int> orders,
                              double threshold, std::uint64_t seed) {
  if (orders.size() < 4 ||
      orders.back() < 8 * orders.front() || orders.front() < 1)
    fail(ErrorCode::precondition,
         "membership verdict needs at least 4 orders covering three doublings");
  if (!(threshold > 0.0)) fail(ErrorCode::precondition, "threshold must be > 0");
  const ConvergenceProfile p =
      fejer_convergence_profile(a, orders, ProfileMetric::multiplier_bounds, seed);
  const auto& v = p.values;
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  bool monotone = true;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i] + 1e-12 * std::max(vmax, 1.0)) monotone = false;
  if (monotone && v.back() < threshold) return Verdict::decreasing_to_zero;
  const auto last3 = std::span<const double>(v).subspan(v.size() - 3);
  const double hi = std::max({last3[0], last3[1], last3[2]});
  const double lo = std::min({last3[0], last3[1], last3[2]});
  if (hi - lo <= 0.05 * hi && v.back() >= threshold) return Verdict::bounded;
  return Verdict::inconclusive;
}

namespace {

void require_upper_triangular(const BlockMatrix& a) {
  const int d = a.dim();
  for (int k = 2; k <= a.size(); ++k)
    for (int j = 1; j < k; ++j)
      if (!a.flat()
               .block(static_cast<Eigen::Index>(k - 1) * d,
                      static_cast<Eigen::Index>(j - 1) * d, d, d)
               .isZero(0.0))
        fail(ErrorCode::precondition, "matrix is not upper triangular");
}

}  // namespace

BlockMatrix disc_extension(const BlockMatrix& upper, std::complex<double> z) {
  return disc_extension(upper, std::abs(z), std::arg(z));
}

BlockMatrix disc_extension(const BlockMatrix& upper, double r, double t) {
  require_upper_triangular(upper);
  if (!(r >= 0.0) || r >= 1.0)
    fail(ErrorCode::precondition, "disc extension needs |z| < 1");
  if (r == 0.0) return extract_diagonal(upper, 0);
  return modulate(smooth_poisson(upper, r), t);
}

OperatorBlock disc_symbol_value(const ToeplitzSpec& spec, std::complex<double> z) {
  for (const auto& [l, block] : spec.coefficients())
    if (l < 0 && !block.is_zero())
      fail(ErrorCode::precondition, "disc series needs a nonnegative band");
  if (std::abs(z) > 1.0 + 1e-12)
    fail(ErrorCode::precondition, "disc series needs |z| <= 1");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(spec.dim(), spec.dim());
  Complex zp = 1.0;
  int cur = 0;
  for (const auto& [l, block] : spec.coefficients()) {
    if (l < 0) continue;
    while (cur < l) {
      zp *= z;
      ++cur;
    }
    acc += zp * block.mat();
  }
  return OperatorBlock(std::move(acc));
}

namespace {

SymbolPolynomial radial_symbol(const ToeplitzSpec& spec, double r) {
  SymbolPolynomial p(spec.dim());
  double rl = 1.0;
  int cur = 0;
  for (const auto& [l, block] : spec.coefficients()) {
    if (l < 0 && !block.is_zero())
      fail(ErrorCode::precondition, "Hardy norms need a nonnegative band");
    if (l < 0) continue;
    while (cur < l) {
      rl *= r;
      ++cur;
    }
    if (!block.is_zero()) p.set_term(l, OperatorBlock(rl * block.mat()));
  }
  return p;
}

}  // namespace

double h_infinity_norm(const ToeplitzSpec& spec, int grid) {
  return symbol_sup_norm(radial_symbol(spec, 1.0), grid);
}

double h1_radial_value(const ToeplitzSpec& spec, double r, int grid) {
  if (!(r > 0.0 && r <= 1.0))
    fail(ErrorCode::precondition, "radius must lie in (0, 1]");
  return symbol_l1_norm(radial_symbol(spec, r), grid);
}

double h1_norm(const ToeplitzSpec& spec, std::span<const double> radii, int grid) {
  double best = h1_radial_value(spec, 1.0, grid);
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0))
      fail(ErrorCode::precondition, "radii must lie in (0, 1)");
    best = std::max(best, h1_radial_value(spec, r, grid));
  }
  return best;
}

}  // namespace opschur
