#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <numbers>

#include "norm_estimators.hpp"
#include "test_helpers.hpp"

using namespace opschur;
using namespace opschur::testing;

TEST_CASE("dense operator norm") {
  CHECK(operator_norm_dense(identity_matrix(2, 5)).value ==
        doctest::Approx(1.0).epsilon(1e-14));

  SUBCASE("single diagonal equals the largest block norm") {
    const BlockMatrix a = random_dense_matrix(3, 6, 100);
    for (int l : {-2, 0, 3}) {
      const BlockMatrix dl = extract_diagonal(a, l);
      double best = 0.0;
      for (int k = std::max(1, 1 - l); k <= 6 && k + l <= 6; ++k)
        best = std::max(best, OperatorBlock(a.block(k, k + l)).op_norm());
      CHECK(std::abs(operator_norm_dense(dl).value - best) < 1e-10);
    }
  }
  SUBCASE("rank one matrices have norm ||x|| ||y||") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const HVector x = random_hvector(2, 7, 101 + seed);
      const HVector y = random_hvector(2, 7, 201 + seed);
      CHECK(std::abs(operator_norm_dense(rank_one_matrix(x, y)).value -
                     x.norm() * y.norm()) < 1e-10);
    }
  }
  SUBCASE("cap violation reports the iterative path") {
    const BlockMatrix a(2, 3);
    CHECK_ERROR_CODE(operator_norm_dense(a, 4), ErrorCode::precondition);
  }
  SUBCASE("zero matrix short-circuits") {
    const NormEstimate e = operator_norm_dense(BlockMatrix(2, 4));
    CHECK(e.value == 0.0);
    CHECK(e.kind == NormKind::exact_truncation);
  }
}

TEST_CASE("iterative operator norm") {
  SUBCASE("identity converges immediately") {
    const NormEstimate e = operator_norm_iterative(identity_matrix(2, 6));
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.iterations == 1);
    CHECK(e.kind == NormKind::exact_truncation);
  }
  SUBCASE("agrees with the dense path on random instances") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const int d = 1 + static_cast<int>(seed % 4);
      const int n = 8 + 4 * static_cast<int>(seed % 3);
      const BlockMatrix a = random_dense_matrix(d, n, 300 + seed);
      PowerIterOptions opt;
      opt.seed = seed;
      CHECK(std::abs(operator_norm_iterative(a, opt).value -
                     operator_norm_dense(a).value) < 1e-8);
    }
  }
  SUBCASE("modulation leaves the estimate unchanged") {
    const BlockMatrix a = random_dense_matrix(2, 10, 310);
    for (double t : {0.4, 3.0})
      CHECK(std::abs(operator_norm_iterative(modulate(a, t)).value -
                     operator_norm_iterative(a).value) < 1e-8);
  }
  SUBCASE("deterministic for a fixed seed") {
    const BlockMatrix a = random_dense_matrix(2, 9, 311);
    PowerIterOptions opt;
    opt.seed = 7;
    CHECK(operator_norm_iterative(a, opt).value ==
          operator_norm_iterative(a, opt).value);
  }
  SUBCASE("rejects bad tolerance") {
    PowerIterOptions opt;
    opt.tol = 0.0;
    CHECK_ERROR_CODE(operator_norm_iterative(identity_matrix(1, 2), opt),
                     ErrorCode::precondition);
  }
}

TEST_CASE("fast toeplitz apply") {
  SUBCASE("identity coefficient") {
    ToeplitzSpec spec(2);
    spec.set_coefficient(0, OperatorBlock::identity(2));
    const HVector x = random_hvector(2, 9, 320);
    CHECK((toeplitz_apply_fast(spec, x).flat() - x.flat()).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("shift by one") {
    ToeplitzSpec spec(1);
    spec.set_coefficient(1, OperatorBlock::identity(1));
    const HVector x = random_hvector(1, 6, 321);
    const HVector y = toeplitz_apply_fast(spec, x);
    for (int k = 1; k <= 5; ++k)
      CHECK(std::abs(y.coord(k)(0) - x.coord(k + 1)(0)) < 1e-13);
    CHECK(std::abs(y.coord(6)(0)) < 1e-13);
  }
  SUBCASE("random banded specs match the dense apply oracle") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const int d = 1 + static_cast<int>(seed % 3);
      ToeplitzSpec spec(d);
      Rng rng(seed);
      for (int l = -3; l <= 4; ++l)
        if (rng.uniform() < 0.6)
          spec.set_coefficient(l, OperatorBlock(random_block(d, 900 + seed * 16 + l)));
      const HVector x = random_hvector(d, 64, 330 + seed);
      const HVector fast = toeplitz_apply_fast(spec, x);
      const HVector dense = apply(spec.realize(64), x);
      CHECK((fast.flat() - dense.flat()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("band wider than the truncation is clamped") {
    ToeplitzSpec spec(1);
    spec.set_coefficient(7, OperatorBlock::identity(1));
    spec.set_coefficient(0, OperatorBlock::scalar(1, 2.0));
    const HVector x = random_hvector(1, 4, 340);
    const HVector fast = toeplitz_apply_fast(spec, x);
    const HVector dense = apply(spec.realize(4), x);
    CHECK((fast.flat() - dense.flat()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("dimension mismatch") {
    ToeplitzSpec spec(2);
    spec.set_coefficient(0, OperatorBlock::identity(2));
    CHECK_ERROR_CODE(toeplitz_apply_fast(spec, HVector(3, 4)),
                     ErrorCode::dimension_mismatch);
  }
}

TEST_CASE("multiplier lower bound") {
  SUBCASE("all-Id matrix reports exactly one") {
    const NormEstimate e =
        multiplier_lower_bound(schur_unit(2, 6), MultiplierSide::right);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.kind == NormKind::lower_bound);
  }
  SUBCASE("single nonzero block is tight on both sides") {
    BlockMatrix a(3, 5);
    const Eigen::MatrixXcd t = random_block(3, 350);
    a.set_block(2, 4, t);
    const double tn = OperatorBlock(t).op_norm();
    CHECK(std::abs(multiplier_lower_bound(a, MultiplierSide::left).value - tn) < 1e-10);
    CHECK(std::abs(multiplier_lower_bound(a, MultiplierSide::right).value - tn) < 1e-10);
  }
  SUBCASE("fejer kernel matrices never exceed one") {
    for (int n : {2, 8}) {
      const BlockMatrix m = kernel_matrix(KernelSpec::fejer(n), 4 * (n + 1), 1);
      for (auto side : {MultiplierSide::left, MultiplierSide::right})
        CHECK(multiplier_lower_bound(m, side, {}, 3).value <= 1.0 + 1e-9);
    }
  }
  SUBCASE("entry probe reaches the sup of block norms") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const BlockMatrix a = random_dense_matrix(2, 6, 360 + seed);
      const double floor = a.sup_entry_norm();
      for (auto side : {MultiplierSide::left, MultiplierSide::right})
        CHECK(multiplier_lower_bound(a, side, {}, seed).value >= floor - 1e-9);
    }
  }
  SUBCASE("column and row formulas are attained") {
    const BlockMatrix base = random_dense_matrix(2, 7, 365);
    const BlockMatrix col = extract_column(base, 3);
    const BlockMatrix row = extract_row(base, 2);
    CHECK(std::abs(multiplier_lower_bound(col, MultiplierSide::left).value -
                   col.sup_entry_norm()) < 1e-9);
    CHECK(std::abs(multiplier_lower_bound(row, MultiplierSide::right).value -
                   row.sup_entry_norm()) < 1e-9);
  }
  SUBCASE("empty probe set is rejected") {
    ProbeSet set;
    set.entry = false;
    set.unit = false;
    set.dirac_angles = set.gaussians = set.rank_ones = 0;
    CHECK_ERROR_CODE(
        multiplier_lower_bound(identity_matrix(1, 3), MultiplierSide::left, set),
        ErrorCode::precondition);
  }
  SUBCASE("adjoint duality with an adjointed probe set") {
    const BlockMatrix a = random_dense_matrix(2, 5, 370);
    ProbeSet left_set;
    left_set.entry = left_set.unit = false;
    left_set.dirac_angles = left_set.gaussians = left_set.rank_ones = 0;
    ProbeSet right_set = left_set;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const BlockMatrix b = random_dense_matrix(2, 5, 380 + seed);
      left_set.extra.push_back(b);
      right_set.extra.push_back(adjoint(b));
    }
    const double left = multiplier_lower_bound(a, MultiplierSide::left, left_set).value;
    const double right =
        multiplier_lower_bound(adjoint(a), MultiplierSide::right, right_set).value;
    CHECK(std::abs(left - right) < 1e-10);
  }
}

TEST_CASE("multiplier upper bound") {
  SUBCASE("single mode symbol: both routes give ||T||") {
    SymbolPolynomial f(2);
    const Eigen::MatrixXcd t = random_block(2, 390);
    f.set_term(1, OperatorBlock(t));
    const NormEstimate e = multiplier_upper_bound(toeplitz_from_symbol(f, 6));
    CHECK(std::abs(e.value - OperatorBlock(t).op_norm()) < 1e-8);
    CHECK(e.kind == NormKind::upper_bound);
  }
  SUBCASE("fejer kernel: the L1 route certifies one") {
    for (int n : {2, 8}) {
      const BlockMatrix m = kernel_matrix(KernelSpec::fejer(n), 4 * (n + 1), 1);
      const NormEstimate e = multiplier_upper_bound(m);
      CHECK(std::abs(e.value - 1.0) < 1e-8);
      CHECK(e.method == "symbol_l1");
      CHECK(e.value < operator_norm(m).value);  // op-norm route grows with N
    }
  }
  SUBCASE("dirac kernel: conjugation certifies one") {
    const BlockMatrix m = kernel_matrix(KernelSpec::dirac(1.3), 12, 2);
    const NormEstimate e = multiplier_upper_bound(m);
    CHECK(e.value == 1.0);
    CHECK(e.method == "dirac_conjugation");
  }
  SUBCASE("zero matrix") {
    const NormEstimate e = multiplier_upper_bound(BlockMatrix(2, 3));
    CHECK(e.value == 0.0);
    CHECK(e.kind == NormKind::exact_truncation);
  }
  SUBCASE("sandwich against the lower bound") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const BlockMatrix a = random_dense_matrix(2, 6, 400 + seed);
      const double upper = multiplier_upper_bound(a).value;
      for (auto side : {MultiplierSide::left, MultiplierSide::right})
        CHECK(multiplier_lower_bound(a, side, {}, seed).value <= upper + 1e-9);
    }
  }
  SUBCASE("certified upper bound dominates every product ratio") {
    // ||B * A|| <= upper_M(A) ||B|| whenever a certified bound exists; the
    // general-d substitute for scalar submultiplicativity.
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const BlockMatrix a = toeplitz_from_symbol(random_symbol(2, 2, 460 + seed), 10);
      const double upper = multiplier_upper_bound(a).value;
      for (std::uint64_t bs = 0; bs < 3; ++bs) {
        const BlockMatrix b = random_dense_matrix(2, 10, 470 + 4 * seed + bs);
        CHECK(operator_norm(schur_product(b, a)).value <=
              upper * operator_norm(b).value + 1e-9);
      }
    }
  }
}

TEST_CASE("closed form for the cosine symbol truncations") {
  // Independent oracle: the tridiagonal with 1/2 off the diagonal, assembled
  // directly and fed to a self-adjoint eigensolver; the closed form is
  // cos(pi/(N+1)).
  SymbolPolynomial cosine(1);
  cosine.set_term(-1, OperatorBlock::scalar(1, 0.5));
  cosine.set_term(1, OperatorBlock::scalar(1, 0.5));
  for (int n : {8, 32}) {
    Eigen::MatrixXcd tri = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
      tri(i, i + 1) = 0.5;
      tri(i + 1, i) = 0.5;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(tri);
    const double oracle = es.eigenvalues().cwiseAbs().maxCoeff();
    const double closed = std::cos(std::numbers::pi / (n + 1));
    CHECK(oracle == doctest::Approx(closed).epsilon(1e-12));
    CHECK(operator_norm_dense(toeplitz_from_symbol(cosine, n)).value ==
          doctest::Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("symbol sup norm") {
  SUBCASE("single mode has constant modulus") {
    SymbolPolynomial f(2);
    const Eigen::MatrixXcd t = random_block(2, 410);
    f.set_term(1, OperatorBlock(t));
    CHECK(std::abs(symbol_sup_norm(f, 64) - OperatorBlock(t).op_norm()) < 1e-10);
  }
  SUBCASE("cosine peaks at one") {
    SymbolPolynomial f(1);
    f.set_term(-1, OperatorBlock::scalar(1, 0.5));
    f.set_term(1, OperatorBlock::scalar(1, 0.5));
    CHECK(symbol_sup_norm(f, 64) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("truncation norms stay below the sup and approach it") {
    const SymbolPolynomial f = random_symbol(2, 2, 411);
    const double sup = symbol_sup_norm(f, 256);
    double prev = 0.0;
    for (int n : {8, 16, 32, 64}) {
      const double v = operator_norm_dense(toeplitz_from_symbol(f, n)).value;
      CHECK(v <= sup + 1e-9);
      CHECK(v >= prev - 1e-12);  // corners of corners: monotone
      prev = v;
    }
    CHECK(prev > 0.9 * sup);
  }
}

TEST_CASE("symbol l1 norm") {
  SUBCASE("positive kernels integrate to one") {
    for (int n : {2, 5, 8}) {
      const SymbolPolynomial f =
          SymbolPolynomial::from_kernel(KernelSpec::fejer(n), 1, n);
      CHECK(std::abs(symbol_l1_norm(f, 64) - 1.0) < 1e-8);
    }
  }
  SUBCASE("single mode") {
    SymbolPolynomial f(2);
    const Eigen::MatrixXcd t = random_block(2, 420);
    f.set_term(-2, OperatorBlock(t));
    CHECK(std::abs(symbol_l1_norm(f, 64) - OperatorBlock(t).op_norm()) < 1e-10);
  }
  SUBCASE("dirichlet norms grow") {
    double prev = 0.0;
    for (int n : {2, 4, 8}) {
      SymbolPolynomial f(1);
      for (int l = -n; l <= n; ++l) f.set_term(l, OperatorBlock::identity(1));
      const double v = symbol_l1_norm(f, 128);
      CHECK(v > prev + 0.1);
      prev = v;
    }
  }
}

TEST_CASE("l1 sot norm") {
  SUBCASE("scalar case reduces to the l1 norm") {
    const SymbolPolynomial f = SymbolPolynomial::from_kernel(KernelSpec::fejer(4), 1, 4);
    CHECK(std::abs(l1_sot_norm(f, 64).value - 1.0) < 1e-8);
  }
  SUBCASE("single mode gives ||T||") {
    SymbolPolynomial f(2);
    const Eigen::MatrixXcd t = random_block(2, 430);
    f.set_term(3, OperatorBlock(t));
    const NormEstimate e = l1_sot_norm(f, 64);
    CHECK(e.value <= OperatorBlock(t).op_norm() + 1e-10);
    CHECK(e.value >= OperatorBlock(t).op_norm() - 1e-6);
    CHECK(e.kind == NormKind::lower_bound);
  }
  SUBCASE("never exceeds the symbol l1 norm on the same grid") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const SymbolPolynomial f = random_symbol(1 + static_cast<int>(seed % 3), 3, 440 + seed);
      CHECK(l1_sot_norm(f, 256, {}, seed).value <= symbol_l1_norm(f, 256) + 1e-8);
    }
  }
  SUBCASE("zero polynomial") {
    CHECK(l1_sot_norm(SymbolPolynomial(2), 64).value == 0.0);
  }
}

TEST_CASE("probe evaluation order does not change the max") {
  const BlockMatrix a = random_dense_matrix(2, 5, 450);
  ProbeSet forward;
  ProbeSet reversed;
  forward.entry = forward.unit = reversed.entry = reversed.unit = false;
  forward.dirac_angles = forward.gaussians = forward.rank_ones = 0;
  reversed.dirac_angles = reversed.gaussians = reversed.rank_ones = 0;
  std::vector<BlockMatrix> probes;
  for (std::uint64_t seed = 0; seed < 6; ++seed)
    probes.push_back(random_dense_matrix(2, 5, 460 + seed));
  forward.extra = probes;
  reversed.extra = std::vector<BlockMatrix>(probes.rbegin(), probes.rend());
  CHECK(multiplier_lower_bound(a, MultiplierSide::right, forward).value ==
        multiplier_lower_bound(a, MultiplierSide::right, reversed).value);
}
