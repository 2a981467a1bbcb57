#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "block_types.hpp"
#include "norm_estimators.hpp"
#include "schur_ops.hpp"

namespace opschur {

enum class Verdict { decreasing_to_zero, bounded, inconclusive };

const char* verdict_name(Verdict v);

// Decision rule shared by the profiles (deterministic in the values):
//   decreasing_to_zero: nonincreasing after the first point and the final
//     value is below 5% of the initial one (all-zero profiles qualify);
//   bounded: the last three values agree within 5% and the profile has not
//     dropped below 5% of its initial value;
//   inconclusive otherwise.
Verdict classify_profile(std::span<const double> values);

enum class ProfileMetric { operator_norm, multiplier_bounds };

struct ConvergenceProfile {
  std::string metric;                // name of the primary series
  std::vector<double> parameters;
  std::vector<double> values;        // primary series, drives the verdict
  std::vector<double> lower_values;  // multiplier lower bounds; empty in
                                     // operator mode
  Verdict verdict = Verdict::inconclusive;
};

// values[i] = metric of (sigma_{n_i}(A) - A). In multiplier_bounds mode the
// primary series is the certified upper bound and lower_values carries the
// probe lower bound (right side). Realize A at N >= 4 * max(orders) when the
// smoothing band must stay clear of the truncation boundary; the residue
// formulas for single diagonals are exact at any N.
ConvergenceProfile fejer_convergence_profile(const BlockMatrix& a,
                                             std::span<const int> orders,
                                             ProfileMetric metric,
                                             std::uint64_t seed = 0);

// values[i] = metric of (P_{r_i}(A) - A).
ConvergenceProfile poisson_convergence_profile(const BlockMatrix& a,
                                               std::span<const double> radii,
                                               ProfileMetric metric,
                                               std::uint64_t seed = 0);

// values over the full band: ||extract_diagonal(A, l)|| ordered by |l|
// (0, -1, +1, -2, +2, ...).
ConvergenceProfile riemann_lebesgue_profile(const BlockMatrix& a);

// Modulus-of-continuity surrogate: metric of (modulate(A, delta) - A) over
// shrinking deltas. A decreasing profile is the finite signal for
// continuity of t -> modulate(A, t) in the estimated multiplier norm.
ConvergenceProfile modulation_continuity_profile(const BlockMatrix& a,
                                                 std::span<const double> deltas,
                                                 ProfileMetric metric,
                                                 std::uint64_t seed = 0);

// Finite-truncation membership heuristic: runs the Fejer profile with the
// multiplier upper-bound metric; decreasing_to_zero when the profile is
// nonincreasing after its first point and ends below `threshold`, bounded
// when the last three values plateau within 5% above the threshold.
// Requires at least 4 orders spanning three doublings.
Verdict l1_membership_verdict(const BlockMatrix& a, std::span<const int> orders,
                              double threshold, std::uint64_t seed = 0);

struct AnalyticSample {
  std::complex<double> z;
  BlockMatrix value;
};

// Diagonal power series of an upper-triangular matrix evaluated inside the
// disc: sum_{l>=0} D_l z^l. With z = r e^{it} this is exactly
// modulate(smooth_poisson(A, r), t); z = 0 returns the main diagonal.
BlockMatrix disc_extension(const BlockMatrix& upper, std::complex<double> z);
// Polar form: the identity with modulate(smooth_poisson(A, r), t) holds bit
// for bit since no |z|/arg(z) round trip is involved.
BlockMatrix disc_extension(const BlockMatrix& upper, double r, double t);

// Coefficient series of an upper-band Toeplitz spec: sum_{l>=0} T_l z^l as a
// single block. Requires a nonnegative band and |z| <= 1.
OperatorBlock disc_symbol_value(const ToeplitzSpec& spec, std::complex<double> z);

// Boundary maximum of ||sum_{l>=0} T_l e^{ilt}|| over a refined grid; valid
// as the disc supremum because the band is finite (maximum principle).
double h_infinity_norm(const ToeplitzSpec& spec, int grid);

// sup over the given radii (and r -> 1) of the integral means
// (1/2pi) int ||sum T_l r^l e^{ilt}|| dt; for polynomials the sup is the
// boundary value.
double h1_norm(const ToeplitzSpec& spec, std::span<const double> radii, int grid);

// Integral mean at one radius, used by the monotonicity checks.
double h1_radial_value(const ToeplitzSpec& spec, double r, int grid);

}  // namespace opschur
