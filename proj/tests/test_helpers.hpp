#pragma once

#include <doctest.h>

#include "block_types.hpp"
#include "corpus.hpp"
#include "rng.hpp"

namespace opschur::testing {

inline double max_abs(const BlockMatrix& m) {
  return m.flat().cwiseAbs().maxCoeff();
}

inline Eigen::MatrixXcd random_block(int d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXcd b(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) b(r, c) = rng.complex_gaussian();
  return b;
}

inline Eigen::VectorXcd random_vec(int d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.complex_gaussian();
  return v;
}

#define CHECK_ERROR_CODE(expr, expected_code)                  \
  do {                                                         \
    bool threw_expected = false;                               \
    try {                                                      \
      (void)(expr);                                            \
    } catch (const ::opschur::Error& e) {                      \
      threw_expected = e.code() == (expected_code);            \
    }                                                          \
    CHECK_MESSAGE(threw_expected, "expected error from " #expr); \
  } while (0)

}  // namespace opschur::testing
