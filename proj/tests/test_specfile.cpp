#include <doctest.h>

#include <filesystem>

#include "specfile.hpp"
#include "test_helpers.hpp"

using namespace opschur;
using namespace opschur::testing;

namespace {

void check_parse_error_line(const std::string& text, const std::string& needle) {
  try {
    parse_spec_text(text);
    FAIL("expected a parse error for:\n" << text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                  "message '" << e.what() << "' should mention '" << needle << "'");
  }
}

}  // namespace

TEST_CASE("matrix specs round trip bit for bit") {
  BlockMatrix m = random_dense_matrix(2, 4, 600);
  const ParsedSpec parsed = parse_spec_text(format_matrix_spec(m));
  REQUIRE(parsed.kind == SpecKind::matrix);
  CHECK(exactly_equal(*parsed.matrix, m));

  // Tagged structures survive the trip.
  const BlockMatrix banded = extract_diagonal(m, 1);
  const ParsedSpec parsed_banded = parse_spec_text(format_matrix_spec(banded));
  CHECK(exactly_equal(*parsed_banded.matrix, banded));

  const BlockMatrix upper = random_upper_triangular(2, 4, 601);
  CHECK(exactly_equal(*parse_spec_text(format_matrix_spec(upper)).matrix, upper));
}

TEST_CASE("toeplitz and symbol specs round trip") {
  ToeplitzSpec spec(2);
  spec.set_coefficient(-1, OperatorBlock(random_block(2, 602)));
  spec.set_coefficient(2, OperatorBlock(random_block(2, 603)));
  const ParsedSpec parsed = parse_spec_text(format_toeplitz_spec(spec, 12));
  REQUIRE(parsed.kind == SpecKind::toeplitz);
  CHECK(parsed.size_hint.value() == 12);
  CHECK(parsed.toeplitz->coefficient(-1) == spec.coefficient(-1));
  CHECK(parsed.toeplitz->coefficient(2) == spec.coefficient(2));
  CHECK(parsed.toeplitz->coefficient(0).isZero(0.0));

  SymbolPolynomial f = random_symbol(3, 2, 604);
  const ParsedSpec fparsed = parse_spec_text(format_symbol_spec(f));
  REQUIRE(fparsed.kind == SpecKind::symbol);
  for (int l = -2; l <= 2; ++l)
    CHECK(fparsed.symbol->fourier_coefficient(l) == f.fourier_coefficient(l));
}

TEST_CASE("kernel specs round trip") {
  for (const KernelSpec& k :
       {KernelSpec::fejer(5), KernelSpec::poisson(0.37281944448887),
        KernelSpec::dirac(2.2347789012345678),
        KernelSpec::custom({{-2, Complex(0.25, -1)}, {0, Complex(1, 0)}})}) {
    const ParsedSpec parsed = parse_spec_text(format_kernel_spec(k, 2, 8));
    REQUIRE(parsed.kind == SpecKind::kernel);
    CHECK(parsed.dim == 2);
    CHECK(parsed.size_hint.value() == 8);
    CHECK(parsed.kernel->kind() == k.kind());
    for (int l = -4; l <= 4; ++l)
      CHECK(parsed.kernel->coefficient(l) == k.coefficient(l));
  }
}

TEST_CASE("complex entry grammar") {
  auto one = [](const std::string& tok) {
    const ParsedSpec p = parse_spec_text("opschur v1\nkind = matrix\nd = 1\nN = 1\nblock 1 1 = " + tok + "\n");
    return p.matrix->block(1, 1)(0, 0);
  };
  CHECK(one("2") == Complex(2, 0));
  CHECK(one("-3.5e-2") == Complex(-0.035, 0));
  CHECK(one("2i") == Complex(0, 2));
  CHECK(one("-1.5+2i") == Complex(-1.5, 2));
  CHECK(one("1-2e1i") == Complex(1, -20));

  for (const std::string bad : {"2+", "i", "1e", "2x", "1+2", "++2i"})
    check_parse_error_line(
        "opschur v1\nkind = matrix\nd = 1\nN = 1\nblock 1 1 = " + bad + "\n", "line 5");
}

TEST_CASE("strict parsing failures carry line numbers") {
  check_parse_error_line("kind = matrix\n", "opschur v1");
  check_parse_error_line("opschur v1\nfrobnicate = 3\n", "unknown key");
  check_parse_error_line("opschur v1\nkind = widget\n", "unknown kind");
  check_parse_error_line("opschur v1\nkind = matrix\nd = 2\nN = 2\nblock 1 1 = 1+0i 0+0i 0+0i\n",
                         "expected 4 entries");
  check_parse_error_line(
      "opschur v1\nkind = matrix\nd = 1\nN = 2\nblock 1 1 = 1\nblock 1 1 = 2\n",
      "duplicate block");
  check_parse_error_line("opschur v1\nkind = matrix\nd = 1\nN = 2\nblock 3 1 = 1\n",
                         "out of range");
  check_parse_error_line("opschur v1\nkind = matrix\nd = 1\nblock 1 1 = 1\n",
                         "'N' must be declared");
  check_parse_error_line("opschur v1\nd = 1\nN = 2\nstructure = dense\n",
                         "'kind' must be declared");
  check_parse_error_line("opschur v1\nkind = kernel\nkernel = poisson 1.5\n", "line 3");
  check_parse_error_line("opschur v1\nkind = kernel\nkernel = fejer 3\ncoeff 0 = 1\n",
                         "custom");
  check_parse_error_line("opschur v1\nkind = matrix\nd = 1\nN = 2\ncoeff 1 = 1\n",
                         "not valid for kind = matrix");
  check_parse_error_line(
      "opschur v1\nkind = matrix\nd = 1\nN = 2\nstructure = toeplitz\n"
      "block 1 1 = 1\nblock 2 2 = 2\n",
      "not Toeplitz");

  // Missing kind / missing N are reported even without line context.
  CHECK_ERROR_CODE(parse_spec_text("opschur v1\n"), ErrorCode::parse);
  CHECK_ERROR_CODE(parse_spec_text("opschur v1\nkind = matrix\nd = 1\n"),
                   ErrorCode::parse);
}

TEST_CASE("comments and blank lines are ignored") {
  const ParsedSpec p = parse_spec_text(
      "# leading comment\n\nopschur v1\n# another\nkind = matrix\nd = 1\nN = 1\n"
      "block 1 1 = 3  # trailing comment\n");
  CHECK(p.matrix->block(1, 1)(0, 0) == Complex(3, 0));
}

TEST_CASE("file io") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "opschur_specfile_test";
  fs::create_directories(dir);
  const std::string path = (dir / "m.spec").string();
  const BlockMatrix m = random_dense_matrix(2, 3, 610);
  write_text_file(path, format_matrix_spec(m));
  CHECK(exactly_equal(*parse_spec_file(path).matrix, m));

  CHECK_ERROR_CODE(parse_spec_file((dir / "missing.spec").string()), ErrorCode::io);
  fs::remove_all(dir);
}

TEST_CASE("corpus writes and reloads") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "opschur_corpus_test";
  fs::remove_all(dir);
  const int count = write_corpus(dir.string());
  CHECK(count == static_cast<int>(builtin_corpus().size()));
  const std::vector<CorpusEntry> loaded = load_corpus_dir(dir.string());
  CHECK(loaded.size() == builtin_corpus().size());
  // Matrix realizations agree entry by entry with the built-in objects.
  for (const auto& e : builtin_corpus()) {
    const auto it = std::find_if(loaded.begin(), loaded.end(),
                                 [&](const CorpusEntry& l) { return l.id == e.id; });
    REQUIRE(it != loaded.end());
    CHECK(max_abs(it->matrix - e.matrix) == 0.0);
  }
  fs::remove_all(dir);
}
