#include "corpus.hpp"

#include <algorithm>
#include <filesystem>

#include "rng.hpp"

namespace opschur {

BlockMatrix random_dense_matrix(int dim, int size, std::uint64_t seed) {
  Rng rng(seed);
  BlockMatrix m(dim, size);
  auto& flat = m.mutable_flat();
  for (Eigen::Index c = 0; c < flat.cols(); ++c)
    for (Eigen::Index r = 0; r < flat.rows(); ++r) flat(r, c) = rng.complex_gaussian();
  return m;
}

BlockMatrix random_upper_triangular(int dim, int size, std::uint64_t seed) {
  Rng rng(seed);
  BlockMatrix m(dim, size);
  for (int k = 1; k <= size; ++k)
    for (int j = k; j <= size; ++j) {
      Eigen::MatrixXcd b(dim, dim);
      for (Eigen::Index c = 0; c < dim; ++c)
        for (Eigen::Index r = 0; r < dim; ++r) b(r, c) = rng.complex_gaussian();
      m.set_block(k, j, b);
    }
  m.set_structure_unchecked(Structure::upper_triangular);
  return m;
}

HVector random_hvector(int dim, int len, std::uint64_t seed) {
  Rng rng(seed);
  HVector v(dim, len);
  for (int n = 1; n <= len; ++n) {
    Eigen::VectorXcd x(dim);
    for (int c = 0; c < dim; ++c) x(c) = rng.complex_gaussian();
    v.set_coord(n, x);
  }
  return v;
}

SymbolPolynomial random_symbol(int dim, int degree, std::uint64_t seed) {
  Rng rng(seed);
  SymbolPolynomial f(dim);
  for (int l = -degree; l <= degree; ++l) {
    Eigen::MatrixXcd b(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c)
      for (Eigen::Index r = 0; r < dim; ++r) b(r, c) = rng.complex_gaussian();
    f.set_term(l, OperatorBlock(std::move(b)));
  }
  return f;
}

SymbolPolynomial sawtooth_symbol(int degree) {
  SymbolPolynomial f(1);
  for (int l = -degree; l <= degree; ++l) {
    if (l == 0) continue;
    Eigen::MatrixXcd b(1, 1);
    b(0, 0) = Complex(0.0, -1.0 / l);  // 1/(i l)
    f.set_term(l, OperatorBlock(std::move(b)));
  }
  return f;
}

namespace {

CorpusEntry matrix_entry(std::string id, BlockMatrix m) {
  return CorpusEntry{std::move(id), SpecKind::matrix, m.size(), std::move(m),
                     std::nullopt, std::nullopt, std::nullopt};
}

std::vector<CorpusEntry> make_corpus() {
  std::vector<CorpusEntry> corpus;

  corpus.push_back(matrix_entry("identity_d2_n8", identity_matrix(2, 8)));
  corpus.push_back(matrix_entry("allid_d2_n8", schur_unit(2, 8)));
  corpus.push_back(matrix_entry("dense_d2_n8", random_dense_matrix(2, 8, 11)));
  corpus.push_back(matrix_entry("dense_d1_n12", random_dense_matrix(1, 12, 12)));
  corpus.push_back(
      matrix_entry("diagonal_l2_d2_n12",
                   extract_diagonal(random_dense_matrix(2, 12, 13), 2)));
  corpus.push_back(matrix_entry("column_j3_d2_n12",
                                extract_column(random_dense_matrix(2, 12, 14), 3)));
  corpus.push_back(
      matrix_entry("row_k2_d2_n12", extract_row(random_dense_matrix(2, 12, 15), 2)));
  corpus.push_back(matrix_entry(
      "rank_one_d2_n10",
      rank_one_matrix(random_hvector(2, 10, 16), random_hvector(2, 10, 17))));
  {
    SymbolPolynomial f = random_symbol(2, 3, 18);
    CorpusEntry e{"toeplitz_deg3_d2_n16", SpecKind::toeplitz, 16,
                  toeplitz_from_symbol(f, 16), f.to_toeplitz(), f, std::nullopt};
    corpus.push_back(std::move(e));
  }
  {
    const KernelSpec k = KernelSpec::fejer(8);
    corpus.push_back(CorpusEntry{"fejer8_d1_n32", SpecKind::kernel, 32,
                                 kernel_matrix(k, 32, 1), std::nullopt, std::nullopt, k});
  }
  {
    const KernelSpec k = KernelSpec::poisson(0.5);
    corpus.push_back(CorpusEntry{"poisson_half_d1_n16", SpecKind::kernel, 16,
                                 kernel_matrix(k, 16, 1), std::nullopt, std::nullopt, k});
  }
  {
    const KernelSpec k = KernelSpec::dirac(1.0);
    corpus.push_back(CorpusEntry{"dirac_1_d1_n12", SpecKind::kernel, 12,
                                 kernel_matrix(k, 12, 1), std::nullopt, std::nullopt, k});
  }
  corpus.push_back(matrix_entry("upper_d2_n8", random_upper_triangular(2, 8, 19)));
  {
    BlockMatrix m(3, 6);
    Rng rng(20);
    Eigen::MatrixXcd b(3, 3);
    for (Eigen::Index c = 0; c < 3; ++c)
      for (Eigen::Index r = 0; r < 3; ++r) b(r, c) = rng.complex_gaussian();
    m.set_block(2, 5, b);
    corpus.push_back(matrix_entry("single_block_d3_n6", std::move(m)));
  }
  corpus.push_back(matrix_entry("zero_d2_n8", BlockMatrix(2, 8)));
  {
    SymbolPolynomial f = sawtooth_symbol(64);
    CorpusEntry e{"sawtooth64_d1_n80", SpecKind::symbol, 80,
                  toeplitz_from_symbol(f, 80), std::nullopt, f, std::nullopt};
    corpus.push_back(std::move(e));
  }
  return corpus;
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = make_corpus();
  return corpus;
}

int write_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create directory '" + dir + "': " + ec.message());
  int count = 0;
  for (const auto& e : builtin_corpus()) {
    std::string text;
    switch (e.kind) {
      case SpecKind::matrix:
        text = format_matrix_spec(e.matrix);
        break;
      case SpecKind::toeplitz:
        text = format_toeplitz_spec(*e.toeplitz, e.realized_size);
        break;
      case SpecKind::symbol:
        text = format_symbol_spec(*e.symbol, e.realized_size);
        break;
      case SpecKind::kernel:
        text = format_kernel_spec(*e.kernel, e.matrix.dim(), e.realized_size);
        break;
    }
    write_text_file((fs::path(dir) / (e.id + ".spec")).string(), text);
    ++count;
  }
  return count;
}

CorpusEntry entry_from_spec(std::string id, const ParsedSpec& spec, int size_override) {
  const int N = size_override > 0 ? size_override : spec.size_hint.value_or(16);
  switch (spec.kind) {
    case SpecKind::matrix: {
      BlockMatrix m = *spec.matrix;
      if (size_override > 0 && size_override != m.size()) m = m.corner(size_override);
      return CorpusEntry{std::move(id), SpecKind::matrix, m.size(), std::move(m),
                         std::nullopt, std::nullopt, std::nullopt};
    }
    case SpecKind::toeplitz:
      return CorpusEntry{std::move(id), SpecKind::toeplitz, N,
                         spec.toeplitz->realize(N), spec.toeplitz, std::nullopt,
                         std::nullopt};
    case SpecKind::symbol:
      return CorpusEntry{std::move(id), SpecKind::symbol, N,
                         toeplitz_from_symbol(*spec.symbol, N), std::nullopt,
                         spec.symbol, std::nullopt};
    case SpecKind::kernel:
      return CorpusEntry{std::move(id), SpecKind::kernel, N,
                         kernel_matrix(*spec.kernel, N, spec.dim), std::nullopt,
                         std::nullopt, spec.kernel};
  }
  fail(ErrorCode::invalid_argument, "unreachable spec kind");
}

std::vector<CorpusEntry> load_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) fail(ErrorCode::io, "'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& de : fs::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".spec")
      files.push_back(de.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    fail(ErrorCode::precondition, "no .spec files found in '" + dir + "'");
  std::vector<CorpusEntry> corpus;
  corpus.reserve(files.size());
  for (const auto& f : files)
    corpus.push_back(entry_from_spec(f.stem().string(), parse_spec_file(f.string())));
  return corpus;
}

}  // namespace opschur
