// Exercises the shared-library surface through opschur.h only.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "opschur.h"

namespace {

struct Handle {
  opschur_matrix* m = nullptr;
  ~Handle() { opschur_matrix_free(m); }
};

opschur_matrix* must_parse_matrix(const std::string& text, int size = 0) {
  opschur_spec* spec = nullptr;
  REQUIRE(opschur_spec_parse(text.c_str(), &spec) == OPSCHUR_OK);
  opschur_matrix* m = nullptr;
  REQUIRE(opschur_spec_realize(spec, size, &m) == OPSCHUR_OK);
  opschur_spec_free(spec);
  return m;
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(opschur_version()).find("opschur") == 0);
  CHECK(std::string(opschur_status_name(OPSCHUR_OK)) == "ok");
  CHECK(std::string(opschur_status_name(OPSCHUR_ERROR_PARSE)) == "parse");
}

TEST_CASE("null arguments are rejected") {
  CHECK(opschur_spec_load_file(nullptr, nullptr) == OPSCHUR_ERROR_INVALID_ARGUMENT);
  CHECK(opschur_matrix_identity(2, 3, nullptr) == OPSCHUR_ERROR_INVALID_ARGUMENT);
  opschur_norm_result r;
  CHECK(opschur_operator_norm_dense(nullptr, 0, &r) == OPSCHUR_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("parse errors carry line information") {
  opschur_spec* spec = nullptr;
  CHECK(opschur_spec_parse("opschur v1\nbogus = 1\n", &spec) == OPSCHUR_ERROR_PARSE);
  CHECK(std::string(opschur_last_error()).find("line 2") != std::string::npos);
}

TEST_CASE("matrix lifecycle and block access") {
  opschur_matrix* m = nullptr;
  REQUIRE(opschur_matrix_create(2, 3, nullptr, &m) == OPSCHUR_OK);
  Handle h{m};
  const double block[8] = {1, 0, 0, 0, 0, 0, 2, -1};  // [[1, 0], [0, 2-i]]
  CHECK(opschur_matrix_set_block(m, 2, 3, block) == OPSCHUR_OK);
  double out[8] = {0};
  CHECK(opschur_matrix_get_block(m, 2, 3, out) == OPSCHUR_OK);
  for (int i = 0; i < 8; ++i) CHECK(out[i] == block[i]);
  CHECK(opschur_matrix_get_block(m, 4, 1, out) == OPSCHUR_ERROR_INDEX_OUT_OF_RANGE);

  double sup = 0.0;
  CHECK(opschur_matrix_sup_entry_norm(m, &sup) == OPSCHUR_OK);
  CHECK(sup == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  int dim = 0, size = 0, structure = -1;
  CHECK(opschur_matrix_get_dim(m, &dim) == OPSCHUR_OK);
  CHECK(opschur_matrix_get_size(m, &size) == OPSCHUR_OK);
  CHECK(opschur_matrix_get_structure(m, &structure) == OPSCHUR_OK);
  CHECK(dim == 2);
  CHECK(size == 3);
  CHECK(structure == OPSCHUR_STRUCTURE_DENSE);
}

TEST_CASE("serialize, reload, compare") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "opschur_capi_test";
  fs::create_directories(dir);
  const std::string path = (dir / "m.spec").string();

  opschur_matrix* m = nullptr;
  REQUIRE(opschur_matrix_kernel(OPSCHUR_KERNEL_FEJER, 3, 8, 1, &m) == OPSCHUR_OK);
  Handle h{m};
  REQUIRE(opschur_matrix_write_file(m, path.c_str()) == OPSCHUR_OK);

  opschur_spec* spec = nullptr;
  REQUIRE(opschur_spec_load_file(path.c_str(), &spec) == OPSCHUR_OK);
  opschur_matrix* reloaded = nullptr;
  REQUIRE(opschur_spec_realize(spec, 0, &reloaded) == OPSCHUR_OK);
  Handle h2{reloaded};
  opschur_spec_free(spec);

  int equal = 0;
  CHECK(opschur_matrix_equal(m, reloaded, &equal) == OPSCHUR_OK);
  CHECK(equal == 1);
  fs::remove_all(dir);
}

TEST_CASE("norms through the C surface") {
  opschur_matrix* id = nullptr;
  REQUIRE(opschur_matrix_identity(2, 6, &id) == OPSCHUR_OK);
  Handle h{id};

  opschur_norm_result r;
  CHECK(opschur_operator_norm_dense(id, 0, &r) == OPSCHUR_OK);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.kind == OPSCHUR_NORM_EXACT_TRUNCATION);

  CHECK(opschur_operator_norm_iterative(id, 1e-10, 100, 0, &r) == OPSCHUR_OK);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));

  opschur_matrix* unit = nullptr;
  REQUIRE(opschur_matrix_schur_unit(2, 6, &unit) == OPSCHUR_OK);
  Handle hu{unit};
  CHECK(opschur_multiplier_lower_bound(unit, OPSCHUR_SIDE_RIGHT, -1, -1, -1, 0, &r) ==
        OPSCHUR_OK);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.kind == OPSCHUR_NORM_LOWER_BOUND);

  opschur_matrix* fejer = nullptr;
  REQUIRE(opschur_matrix_kernel(OPSCHUR_KERNEL_FEJER, 4, 20, 1, &fejer) == OPSCHUR_OK);
  Handle hf{fejer};
  CHECK(opschur_multiplier_upper_bound(fejer, &r) == OPSCHUR_OK);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::string(r.method) == "symbol_l1");

  CHECK(opschur_matrix_kernel(OPSCHUR_KERNEL_POISSON, 1.5, 4, 1, &fejer) ==
        OPSCHUR_ERROR_PRECONDITION);
}

TEST_CASE("hvectors, apply and rank-one matrices") {
  const double coords[4] = {1, 0, 0, 1};  // (1, i) in C^2
  opschur_hvector* x = nullptr;
  REQUIRE(opschur_hvector_basis(coords, 2, 2, 4, &x) == OPSCHUR_OK);
  double nx = 0.0;
  CHECK(opschur_hvector_norm(x, &nx) == OPSCHUR_OK);
  CHECK(nx == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  opschur_matrix* id = nullptr;
  REQUIRE(opschur_matrix_identity(2, 4, &id) == OPSCHUR_OK);
  opschur_hvector* y = nullptr;
  REQUIRE(opschur_apply(id, x, &y) == OPSCHUR_OK);
  std::vector<double> data(16, 0.0);
  CHECK(opschur_hvector_get_data(y, data.data()) == OPSCHUR_OK);
  CHECK(data[4] == 1.0);  // coordinate 2, component 1, real part
  CHECK(data[7] == 1.0);  // coordinate 2, component 2, imag part

  opschur_matrix* rank_one = nullptr;
  REQUIRE(opschur_rank_one_matrix(x, x, &rank_one) == OPSCHUR_OK);
  opschur_norm_result r;
  CHECK(opschur_operator_norm_dense(rank_one, 0, &r) == OPSCHUR_OK);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

  opschur_matrix_free(rank_one);
  opschur_matrix_free(id);
  opschur_hvector_free(x);
  opschur_hvector_free(y);
}

TEST_CASE("fast apply matches dense apply") {
  const std::string text =
      "opschur v1\nkind = toeplitz\nd = 1\ncoeff -1 = 0.5\ncoeff 2 = 1+1i\n";
  opschur_spec* spec = nullptr;
  REQUIRE(opschur_spec_parse(text.c_str(), &spec) == OPSCHUR_OK);

  std::vector<double> coords;
  for (int i = 0; i < 32; ++i) {
    coords.push_back(std::sin(0.3 * i));
    coords.push_back(std::cos(0.7 * i));
  }
  opschur_hvector* x = nullptr;
  REQUIRE(opschur_hvector_create(1, 32, coords.data(), &x) == OPSCHUR_OK);

  opschur_hvector* fast = nullptr;
  REQUIRE(opschur_spec_apply_fast(spec, x, &fast) == OPSCHUR_OK);
  opschur_matrix* dense = nullptr;
  REQUIRE(opschur_spec_realize(spec, 32, &dense) == OPSCHUR_OK);
  opschur_hvector* slow = nullptr;
  REQUIRE(opschur_apply(dense, x, &slow) == OPSCHUR_OK);

  std::vector<double> a(64), b(64);
  CHECK(opschur_hvector_get_data(fast, a.data()) == OPSCHUR_OK);
  CHECK(opschur_hvector_get_data(slow, b.data()) == OPSCHUR_OK);
  for (int i = 0; i < 64; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);

  opschur_hvector_free(x);
  opschur_hvector_free(fast);
  opschur_hvector_free(slow);
  opschur_matrix_free(dense);
  opschur_spec_free(spec);
}

TEST_CASE("profiles through the C surface") {
  opschur_matrix* base = must_parse_matrix(
      "opschur v1\nkind = matrix\nd = 1\nN = 12\n"
      "block 1 3 = 2\nblock 2 4 = 2\nblock 3 5 = 2\nblock 4 6 = 2\n"
      "block 5 7 = 2\nblock 6 8 = 2\nblock 7 9 = 2\nblock 8 10 = 2\n"
      "block 9 11 = 2\nblock 10 12 = 2\n");
  Handle h{base};

  const int orders[3] = {2, 4, 8};
  opschur_profile* p = nullptr;
  REQUIRE(opschur_profile_fejer(base, orders, 3, OPSCHUR_METRIC_OPERATOR_NORM, 0, &p) ==
          OPSCHUR_OK);
  int len = 0;
  CHECK(opschur_profile_get_length(p, &len) == OPSCHUR_OK);
  CHECK(len == 3);
  for (int i = 0; i < 3; ++i) {
    double param = 0.0, value = 0.0;
    CHECK(opschur_profile_get_parameter(p, i, &param) == OPSCHUR_OK);
    CHECK(opschur_profile_get_value(p, i, &value) == OPSCHUR_OK);
    CHECK(param == orders[i]);
    // Single diagonal at l = 2 with blocks of norm 2.
    CHECK(value == doctest::Approx(std::min(1.0, 2.0 / (orders[i] + 1)) * 2.0)
                       .epsilon(1e-12));
  }
  double unused = 0.0;
  CHECK(opschur_profile_get_lower_value(p, 0, &unused) == OPSCHUR_ERROR_UNSUPPORTED);
  int has_lower = -1;
  CHECK(opschur_profile_has_lower_series(p, &has_lower) == OPSCHUR_OK);
  CHECK(has_lower == 0);
  CHECK(std::string(opschur_profile_metric_name(p)) == "operator_norm");
  opschur_profile_free(p);

  REQUIRE(opschur_profile_riemann_lebesgue(base, &p) == OPSCHUR_OK);
  int verdict = -1;
  CHECK(opschur_profile_get_verdict(p, &verdict) == OPSCHUR_OK);
  CHECK(std::string(opschur_verdict_name(verdict)) ==
        opschur_verdict_name(verdict));
  opschur_profile_free(p);
}

TEST_CASE("analytic series and hardy norms through the C surface") {
  const std::string text =
      "opschur v1\nkind = toeplitz\nd = 1\ncoeff 0 = 1\ncoeff 1 = 1\n";
  opschur_spec* spec = nullptr;
  REQUIRE(opschur_spec_parse(text.c_str(), &spec) == OPSCHUR_OK);

  double block[2] = {0, 0};
  CHECK(opschur_disc_symbol_value(spec, 0.5, 0.0, block) == OPSCHUR_OK);
  CHECK(block[0] == doctest::Approx(1.5).epsilon(1e-14));

  double hinf = 0.0, h1 = 0.0;
  const double radii[2] = {0.5, 0.9};
  CHECK(opschur_h_infinity_norm(spec, 256, &hinf) == OPSCHUR_OK);
  CHECK(opschur_h1_norm(spec, radii, 2, 256, &h1) == OPSCHUR_OK);
  CHECK(hinf == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(h1 == doctest::Approx(4.0 / 3.14159265358979324).epsilon(1e-6));

  opschur_symbol* sym = nullptr;
  REQUIRE(opschur_spec_symbol(spec, &sym) == OPSCHUR_OK);
  int deg = -1;
  CHECK(opschur_symbol_get_degree(sym, &deg) == OPSCHUR_OK);
  CHECK(deg == 1);
  double l1 = 0.0;
  CHECK(opschur_symbol_l1_norm(sym, 256, &l1) == OPSCHUR_OK);
  CHECK(l1 == doctest::Approx(4.0 / 3.14159265358979324).epsilon(1e-6));
  opschur_norm_result r;
  CHECK(opschur_l1_sot_norm(sym, 256, 0, &r) == OPSCHUR_OK);
  CHECK(r.value <= l1 + 1e-8);
  opschur_symbol_free(sym);

  // Upper-triangular disc extension.
  opschur_matrix* m = nullptr;
  REQUIRE(opschur_spec_realize(spec, 6, &m) == OPSCHUR_OK);
  opschur_matrix* ext = nullptr;
  REQUIRE(opschur_disc_extension(m, 0.3, 0.2, &ext) == OPSCHUR_OK);
  opschur_matrix_free(ext);
  CHECK(opschur_disc_extension(m, 1.0, 0.5, &ext) == OPSCHUR_ERROR_PRECONDITION);
  opschur_matrix_free(m);
  opschur_spec_free(spec);
}

TEST_CASE("realization size and dimension overrides") {
  opschur_spec* spec = nullptr;
  REQUIRE(opschur_spec_parse("opschur v1\nkind = kernel\nd = 1\nN = 6\nkernel = fejer 2\n",
                             &spec) == OPSCHUR_OK);
  opschur_matrix* m = nullptr;
  REQUIRE(opschur_spec_realize_dim(spec, 4, 3, &m) == OPSCHUR_OK);
  int dim = 0, size = 0;
  CHECK(opschur_matrix_get_dim(m, &dim) == OPSCHUR_OK);
  CHECK(opschur_matrix_get_size(m, &size) == OPSCHUR_OK);
  CHECK(dim == 3);
  CHECK(size == 4);
  opschur_matrix_free(m);
  // Size from the stored hint.
  REQUIRE(opschur_spec_realize(spec, 0, &m) == OPSCHUR_OK);
  CHECK(opschur_matrix_get_size(m, &size) == OPSCHUR_OK);
  CHECK(size == 6);
  opschur_matrix_free(m);
  opschur_spec_free(spec);

  // Dimension overrides are rejected off the kernel kind.
  opschur_spec* toep = nullptr;
  REQUIRE(opschur_spec_parse("opschur v1\nkind = toeplitz\nd = 1\ncoeff 0 = 1\n",
                             &toep) == OPSCHUR_OK);
  CHECK(opschur_spec_realize_dim(toep, 4, 2, &m) == OPSCHUR_ERROR_PRECONDITION);
  opschur_spec_free(toep);
}

TEST_CASE("membership verdict through the C surface") {
  opschur_matrix* unit = nullptr;
  REQUIRE(opschur_matrix_schur_unit(1, 64, &unit) == OPSCHUR_OK);
  Handle h{unit};
  const int orders[4] = {2, 4, 8, 16};
  int verdict = -1;
  REQUIRE(opschur_l1_membership_verdict(unit, orders, 4, 0.1, 0, &verdict) == OPSCHUR_OK);
  CHECK(verdict != OPSCHUR_VERDICT_DECREASING_TO_ZERO);
}

TEST_CASE("verification over a small corpus directory") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "opschur_capi_verify";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream a(dir / "identity.spec");
    a << "opschur v1\nkind = matrix\nd = 1\nN = 4\nstructure = toeplitz\n"
         "block 1 1 = 1\nblock 2 2 = 1\nblock 3 3 = 1\nblock 4 4 = 1\n";
    std::ofstream b(dir / "toeplitz.spec");
    b << "opschur v1\nkind = toeplitz\nd = 1\nN = 6\ncoeff 0 = 1\ncoeff 1 = 0.5i\n";
  }
  opschur_report* report = nullptr;
  REQUIRE(opschur_verify_run(dir.string().c_str(), 0, 0, &report) == OPSCHUR_OK);
  int count = 0;
  CHECK(opschur_report_get_count(report, &count) == OPSCHUR_OK);
  CHECK(count > 15);
  for (int i = 0; i < count; ++i) {
    int pass = -1;
    CHECK(opschur_report_get_pass(report, i, &pass) == OPSCHUR_OK);
    CHECK_MESSAGE(pass == 1, opschur_report_get_name(report, i)
                                 << ": " << opschur_report_get_detail(report, i));
  }
  opschur_report_free(report);

  // Fault injection must trip the submultiplicativity check.
  REQUIRE(opschur_verify_run(dir.string().c_str(), 1, 0, &report) == OPSCHUR_OK);
  bool saw_failure = false;
  CHECK(opschur_report_get_count(report, &count) == OPSCHUR_OK);
  for (int i = 0; i < count; ++i) {
    int pass = -1;
    REQUIRE(opschur_report_get_pass(report, i, &pass) == OPSCHUR_OK);
    if (!pass) {
      saw_failure = true;
      CHECK(std::string(opschur_report_get_name(report, i)) ==
            "norms.submultiplicativity_scalar");
    }
  }
  CHECK(saw_failure);
  opschur_report_free(report);
  fs::remove_all(dir);
}

TEST_CASE("corpus generation through the C surface") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "opschur_capi_gen";
  fs::remove_all(dir);
  int count = 0;
  REQUIRE(opschur_corpus_write(dir.string().c_str(), &count) == OPSCHUR_OK);
  CHECK(count == 16);
  int files = 0;
  for (const auto& de : fs::directory_iterator(dir))
    if (de.path().extension() == ".spec") ++files;
  CHECK(files == count);
  fs::remove_all(dir);
}
