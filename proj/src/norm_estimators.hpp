#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "block_types.hpp"
#include "schur_ops.hpp"

namespace opschur {

enum class NormKind { exact_truncation, lower_bound, upper_bound };

const char* norm_kind_name(NormKind k);

struct NormEstimate {
  double value = 0.0;
  NormKind kind = NormKind::exact_truncation;
  std::string method;
  long iterations = 0;
  double residual = 0.0;
};

inline constexpr int kDenseCap = 4096;  // max N*d for the dense norm path

// Largest singular value of the flattened (N*d) x (N*d) matrix. Throws
// ErrorCode::precondition when N*d exceeds the cap.
NormEstimate operator_norm_dense(const BlockMatrix& a, int cap = kDenseCap);

struct PowerIterOptions {
  double tol = 1e-10;
  long max_iter = 5000;
  std::uint64_t seed = 0;
};

// Power iteration on A^*A with a seeded complex gaussian start; restarts with
// a fresh seed when the eigen-residual plateaus over 50 iterations. Returns
// exact_truncation when the residual beats tol, else a certified lower bound
// (||A v|| for a unit v never exceeds the norm).
NormEstimate operator_norm_iterative(const BlockMatrix& a,
                                     const PowerIterOptions& opt = {});

// Dense under the cap, iterative (tol 1e-8) above it.
NormEstimate operator_norm(const BlockMatrix& a, int cap = kDenseCap);

// Block-Toeplitz matvec through a power-of-two circulant embedding; identical
// to apply(realize_toeplitz(spec, x.len()), x) within 1e-10 per coordinate,
// at cost O(d^2 N log N).
HVector toeplitz_apply_fast(const ToeplitzSpec& spec, const HVector& x);

enum class MultiplierSide { left, right };

const char* multiplier_side_name(MultiplierSide s);

// Probe families for the multiplier lower bound. All enabled families are
// used; gaussian and rank-one probes are drawn from the caller's seed.
struct ProbeSet {
  bool entry = true;        // single unitary block at the largest entry
  bool unit = true;         // the all-Id matrix, normalized
  int dirac_angles = 8;     // modulation kernels at sampled angles
  int gaussians = 8;        // dense complex gaussian matrices
  int rank_ones = 8;        // x (x) y with gaussian x, y
  std::vector<BlockMatrix> extra;

  int count() const {
    return (entry ? 1 : 0) + (unit ? 1 : 0) + dirac_angles + gaussians +
           rank_ones + static_cast<int>(extra.size());
  }
};

// max over normalized probes B of ||B * A|| (right) or ||A * B|| (left).
// Every probe is divided by its computed operator norm, so each ratio is a
// certified lower bound for the multiplier norm at this truncation. The entry
// probe attains sup_{k,j} ||T_kj|| exactly.
NormEstimate multiplier_lower_bound(const BlockMatrix& a, MultiplierSide side,
                                    const ProbeSet& probes = {},
                                    std::uint64_t seed = 0);

// min of the operator norm and, for Toeplitz-tagged matrices, the L^1 norm of
// the symbol polynomial read off the visible diagonals. Modulation matrices
// (every diagonal c^l * Id with |c| = 1) get the certified value 1.
NormEstimate multiplier_upper_bound(const BlockMatrix& a);

// max over a uniform grid of ||f(t)||, refined by doubling until the value
// moves by less than 1e-8. The grid never goes below 4*(degree+1).
double symbol_sup_norm(const SymbolPolynomial& f, int grid);

// (1/2pi) integral of ||f(t)|| by the rectangle rule (exact for band-limited
// integrands), same refinement rule and grid floor.
double symbol_l1_norm(const SymbolPolynomial& f, int grid);

struct AscentOptions {
  int starts = 16;
  int steps = 200;
  double step = 0.1;  // halved on non-improvement
};

// sup over unit x of (1/2pi) integral ||sum_l T_l(x) e^{ilt}|| dt, by
// multi-start projected gradient ascent on the quadrature objective. The
// search may miss the supremum, so the kind is lower_bound; the value for the
// best direction found is re-integrated with the doubling refinement.
NormEstimate l1_sot_norm(const SymbolPolynomial& f, int grid,
                         const AscentOptions& opt = {}, std::uint64_t seed = 0);

// Symbol polynomial read off the visible diagonals of a Toeplitz-tagged
// matrix (first block of each diagonal).
SymbolPolynomial symbol_from_diagonals(const BlockMatrix& a);

}  // namespace opschur
