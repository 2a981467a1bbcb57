#pragma once

#include <string>
#include <vector>

#include "specfile.hpp"

namespace opschur {

// One named object of the built-in test corpus, together with a matrix
// realization (non-matrix kinds are realized at `realized_size`).
struct CorpusEntry {
  std::string id;
  SpecKind kind = SpecKind::matrix;
  int realized_size = 0;
  BlockMatrix matrix;
  std::optional<ToeplitzSpec> toeplitz;
  std::optional<SymbolPolynomial> symbol;
  std::optional<KernelSpec> kernel;
};

// Deterministic corpus covering the structural families the invariants talk
// about: identity/all-Id patterns, seeded random dense matrices, single
// diagonals, columns and rows, rank-one matrices, Toeplitz realizations of
// random symbols, kernel matrices, upper-triangular and degenerate cases.
const std::vector<CorpusEntry>& builtin_corpus();

// Seeded random helpers shared by corpus and tests.
BlockMatrix random_dense_matrix(int dim, int size, std::uint64_t seed);
BlockMatrix random_upper_triangular(int dim, int size, std::uint64_t seed);
HVector random_hvector(int dim, int len, std::uint64_t seed);
SymbolPolynomial random_symbol(int dim, int degree, std::uint64_t seed);
// Truncated sawtooth: scalar coefficients 1/(i l) for 0 < |l| <= degree.
SymbolPolynomial sawtooth_symbol(int degree);

// Writes one spec file per entry into dir (<id>.spec); returns the count.
int write_corpus(const std::string& dir);

// Parses every *.spec file in dir (sorted by name) into corpus entries;
// non-matrix kinds realize at their stored N hint, or 16 without one.
std::vector<CorpusEntry> load_corpus_dir(const std::string& dir);

// Entry from an already-parsed spec.
CorpusEntry entry_from_spec(std::string id, const ParsedSpec& spec,
                            int size_override = 0);

}  // namespace opschur
