#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "block_types.hpp"
#include "schur_ops.hpp"

namespace opschur {

// Text spec files, one object per file. Line-oriented key-value grammar,
// strict: unknown keys, malformed values, duplicate definitions and structure
// violations are errors carrying the offending line number.
//
//   opschur v1                      <- required first line
//   # comment                       <- '#' starts a comment, blank lines ok
//   kind = matrix                   <- matrix | toeplitz | symbol | kernel
//   d = 2
//
//   kind = matrix also takes:
//   N = 4
//   structure = dense               <- dense | toeplitz | upper_triangular
//                                      | banded LO HI
//   block K J = A+Bi ...            <- d*d row-major entries, 1-based K J;
//                                      omitted blocks are zero
//
//   For the other kinds 'N' is optional and records the default realization
//   size.
//
//   kind = toeplitz | symbol take:
//   coeff L = A+Bi ...              <- d*d row-major entries, L in Z
//
//   kind = kernel takes:
//   kernel = fejer N | poisson R | dirac T | custom
//   coeff L = A+Bi                  <- custom kernels only, one scalar per l
//
// Complex entries are written A, Bi, A+Bi or A-Bi with C double literals for
// A and B. The serializer prints 17 significant digits, so a write/parse
// round trip reproduces every double bit for bit.

enum class SpecKind { matrix, toeplitz, symbol, kernel };

const char* spec_kind_name(SpecKind k);

struct ParsedSpec {
  SpecKind kind = SpecKind::matrix;
  int dim = 1;
  std::optional<int> size_hint;  // N; always set for matrices
  std::optional<BlockMatrix> matrix;
  std::optional<ToeplitzSpec> toeplitz;
  std::optional<SymbolPolynomial> symbol;
  std::optional<KernelSpec> kernel;
};

ParsedSpec parse_spec_text(std::string_view text);
ParsedSpec parse_spec_file(const std::string& path);

std::string format_matrix_spec(const BlockMatrix& m);
std::string format_toeplitz_spec(const ToeplitzSpec& spec, std::optional<int> size_hint = {});
std::string format_symbol_spec(const SymbolPolynomial& f, std::optional<int> size_hint = {});
std::string format_kernel_spec(const KernelSpec& k, int dim = 1, std::optional<int> size_hint = {});

void write_text_file(const std::string& path, const std::string& text);

std::string format_double(double x);    // %.17g
std::string format_complex(Complex c);  // A+Bi

}  // namespace opschur
