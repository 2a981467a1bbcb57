// opschur: batch front door over the C API. Parses spec files, dispatches
// norm computations and experiments, and emits deterministic CSV reports.
//
// Exit codes: 0 success, 1 verification failure, 2 parse error (spec files,
// command line, unreadable input), 3 precondition violation.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "opschur.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitPrecondition = 3;

struct CliError {
  int exit_code;
  std::string status;
  std::string message;
};

int exit_code_for(opschur_status status) {
  switch (status) {
    case OPSCHUR_OK:
      return kExitOk;
    case OPSCHUR_ERROR_PARSE:
    case OPSCHUR_ERROR_IO:
      return kExitParseError;
    default:
      return kExitPrecondition;
  }
}

void check(opschur_status status) {
  if (status == OPSCHUR_OK) return;
  throw CliError{exit_code_for(status), opschur_status_name(status),
                 opschur_last_error()};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string matrix_id_from_path(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// RAII wrappers over the C handles.
using SpecPtr = std::unique_ptr<opschur_spec, decltype(&opschur_spec_free)>;
using MatrixPtr = std::unique_ptr<opschur_matrix, decltype(&opschur_matrix_free)>;
using SymbolPtr = std::unique_ptr<opschur_symbol, decltype(&opschur_symbol_free)>;
using ProfilePtr = std::unique_ptr<opschur_profile, decltype(&opschur_profile_free)>;
using ReportPtr = std::unique_ptr<opschur_report, decltype(&opschur_report_free)>;

SpecPtr load_spec(const std::string& path) {
  opschur_spec* spec = nullptr;
  check(opschur_spec_load_file(path.c_str(), &spec));
  return SpecPtr(spec, &opschur_spec_free);
}

MatrixPtr realize(const opschur_spec* spec, int size, int dim) {
  opschur_matrix* m = nullptr;
  check(opschur_spec_realize_dim(spec, size, dim, &m));
  return MatrixPtr(m, &opschur_matrix_free);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError{kExitParseError, "io", "cannot write '" + path + "'"};
  out << text;
}

struct CommonConfig {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  int size = 0;  // N override; 0 keeps the stored size
  int dim = 0;   // d override for kernel specs; 0 keeps the stored value
};

// ---- norm ----------------------------------------------------------------

struct NormConfig : CommonConfig {
  std::string kind = "all";
  std::string side = "both";
  int grid = 512;
  double tol = 0.0;
  long max_iter = 0;
};

std::string norm_row(const std::string& id, const std::string& kind,
                     const std::string& side, const opschur_norm_result& r,
                     std::uint64_t seed) {
  return id + "," + kind + "," + side + "," + fmt(r.value) + "," + r.method + "," +
         std::to_string(r.iterations) + "," + fmt(r.residual) + "," +
         std::to_string(seed) + "\n";
}

int run_norm(const NormConfig& cfg) {
  const SpecPtr spec = load_spec(cfg.input);
  const std::string id = matrix_id_from_path(cfg.input);
  std::string out = "schema,opschur.norm.v1\n";
  out += "matrix_id,norm_kind,side,value,method,iterations,residual,seed\n";

  const bool all = cfg.kind == "all";
  auto wants = [&](const char* k) { return all || cfg.kind == k; };

  MatrixPtr matrix(nullptr, &opschur_matrix_free);
  auto need_matrix = [&]() -> const opschur_matrix* {
    if (!matrix) matrix = realize(spec.get(), cfg.size, cfg.dim);
    return matrix.get();
  };

  int spec_kind = 0;
  check(opschur_spec_get_kind(spec.get(), &spec_kind));
  const bool maybe_symbol_view = spec_kind != OPSCHUR_SPEC_MATRIX;

  if (wants("operator")) {
    opschur_norm_result r;
    int dim = 0, size = 0;
    check(opschur_matrix_get_dim(need_matrix(), &dim));
    check(opschur_matrix_get_size(need_matrix(), &size));
    if (dim * size <= 4096) {
      check(opschur_operator_norm_dense(need_matrix(), 0, &r));
    } else {
      check(opschur_operator_norm_iterative(need_matrix(), cfg.tol > 0 ? cfg.tol : 1e-8,
                                            cfg.max_iter, cfg.seed, &r));
    }
    out += norm_row(id, "operator", "none", r, cfg.seed);
  }
  if (wants("operator_iterative")) {
    opschur_norm_result r;
    check(opschur_operator_norm_iterative(need_matrix(), cfg.tol, cfg.max_iter,
                                          cfg.seed, &r));
    out += norm_row(id, "operator_iterative", "none", r, cfg.seed);
  }
  if (wants("multiplier_lower")) {
    for (const char* side : {"left", "right"}) {
      if (cfg.side != "both" && cfg.side != side) continue;
      opschur_norm_result r;
      check(opschur_multiplier_lower_bound(
          need_matrix(), side == std::string("left") ? OPSCHUR_SIDE_LEFT : OPSCHUR_SIDE_RIGHT,
          -1, -1, -1, cfg.seed, &r));
      out += norm_row(id, "multiplier_lower", side, r, cfg.seed);
    }
  }
  if (wants("multiplier_upper")) {
    opschur_norm_result r;
    check(opschur_multiplier_upper_bound(need_matrix(), &r));
    out += norm_row(id, "multiplier_upper", "both", r, cfg.seed);
  }
  bool run_symbol_norms = !all;
  SymbolPtr symbol(nullptr, &opschur_symbol_free);
  if (all && maybe_symbol_view) {
    // --norm-kind all covers symbol norms when a polynomial view exists;
    // kernels with unbounded support just skip them.
    opschur_symbol* s = nullptr;
    const opschur_status status = opschur_spec_symbol(spec.get(), &s);
    if (status == OPSCHUR_OK) {
      symbol.reset(s);
      run_symbol_norms = true;
    } else if (status != OPSCHUR_ERROR_UNSUPPORTED) {
      check(status);
    }
  }
  if (run_symbol_norms) {
    // Asking for a symbol norm explicitly on a matrix spec is an error.
    auto need_symbol = [&]() -> const opschur_symbol* {
      if (!symbol) {
        opschur_symbol* s = nullptr;
        check(opschur_spec_symbol(spec.get(), &s));
        symbol.reset(s);
      }
      return symbol.get();
    };
    if (wants("symbol_sup")) {
      double v = 0.0;
      check(opschur_symbol_sup_norm(need_symbol(), cfg.grid, &v));
      opschur_norm_result r{v, OPSCHUR_NORM_EXACT_TRUNCATION, 0, 0.0, "grid_refined"};
      out += norm_row(id, "symbol_sup", "none", r, cfg.seed);
    }
    if (wants("symbol_l1")) {
      double v = 0.0;
      check(opschur_symbol_l1_norm(need_symbol(), cfg.grid, &v));
      opschur_norm_result r{v, OPSCHUR_NORM_EXACT_TRUNCATION, 0, 0.0, "grid_refined"};
      out += norm_row(id, "symbol_l1", "none", r, cfg.seed);
    }
    if (wants("l1_sot")) {
      opschur_norm_result r;
      check(opschur_l1_sot_norm(need_symbol(), cfg.grid, cfg.seed, &r));
      out += norm_row(id, "l1_sot", "none", r, cfg.seed);
    }
  }
  emit(cfg.output, out);
  return kExitOk;
}

// ---- profile ---------------------------------------------------------------

struct ProfileConfig : CommonConfig {
  std::string experiment;
  std::vector<int> orders{4, 8, 16, 32};
  std::vector<double> radii{0.5, 0.75, 0.875, 0.9375};
  std::string norm_mode = "operator";
  double threshold = 0.1;
  std::string plot_data;
};

int run_profile(const ProfileConfig& cfg) {
  const SpecPtr spec = load_spec(cfg.input);
  const std::string id = matrix_id_from_path(cfg.input) + "." + cfg.experiment;
  const MatrixPtr matrix = realize(spec.get(), cfg.size, cfg.dim);
  const int metric = cfg.norm_mode == "multiplier" ? OPSCHUR_METRIC_MULTIPLIER_BOUNDS
                                                   : OPSCHUR_METRIC_OPERATOR_NORM;

  ProfilePtr profile(nullptr, &opschur_profile_free);
  opschur_profile* p = nullptr;
  if (cfg.experiment == "fejer" || cfg.experiment == "membership") {
    check(opschur_profile_fejer(matrix.get(), cfg.orders.data(),
                                static_cast<int>(cfg.orders.size()),
                                cfg.experiment == "membership"
                                    ? OPSCHUR_METRIC_MULTIPLIER_BOUNDS
                                    : metric,
                                cfg.seed, &p));
  } else if (cfg.experiment == "poisson") {
    check(opschur_profile_poisson(matrix.get(), cfg.radii.data(),
                                  static_cast<int>(cfg.radii.size()), metric,
                                  cfg.seed, &p));
  } else if (cfg.experiment == "riemann-lebesgue") {
    check(opschur_profile_riemann_lebesgue(matrix.get(), &p));
  } else {
    throw CliError{kExitParseError, "parse",
                   "unknown experiment '" + cfg.experiment + "'"};
  }
  profile.reset(p);

  std::string out = "schema,opschur.profile.v1\n";
  out += "experiment_id,parameter,metric,value,verdict\n";
  int n = 0;
  check(opschur_profile_get_length(profile.get(), &n));
  int has_lower = 0;
  check(opschur_profile_has_lower_series(profile.get(), &has_lower));
  const std::string metric_name = opschur_profile_metric_name(profile.get());
  std::string plot;
  for (int i = 0; i < n; ++i) {
    double param = 0.0, value = 0.0;
    check(opschur_profile_get_parameter(profile.get(), i, &param));
    check(opschur_profile_get_value(profile.get(), i, &value));
    out += id + "," + fmt(param) + "," + metric_name + "," + fmt(value) + ",\n";
    if (has_lower) {
      double lower = 0.0;
      check(opschur_profile_get_lower_value(profile.get(), i, &lower));
      out += id + "," + fmt(param) + ",multiplier_lower," + fmt(lower) + ",\n";
    }
    plot += fmt(param) + " " + fmt(value) + "\n";
  }
  if (cfg.experiment == "membership") {
    int verdict = 0;
    check(opschur_l1_membership_verdict(matrix.get(), cfg.orders.data(),
                                        static_cast<int>(cfg.orders.size()),
                                        cfg.threshold, cfg.seed, &verdict));
    out += id + ",,verdict,," + opschur_verdict_name(verdict) + "\n";
  } else {
    int verdict = 0;
    check(opschur_profile_get_verdict(profile.get(), &verdict));
    out += id + ",,verdict,," + opschur_verdict_name(verdict) + "\n";
  }
  emit(cfg.output, out);
  if (!cfg.plot_data.empty()) emit(cfg.plot_data, plot);
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyConfig : CommonConfig {
  bool inject_fault = false;
};

int run_verify(const VerifyConfig& cfg) {
  std::string dir = cfg.input;
  if (dir.empty()) {
    if (const char* env = std::getenv("OPSCHUR_CORPUS_DIR")) dir = env;
  }
  opschur_report* r = nullptr;
  check(opschur_verify_run(dir.empty() ? nullptr : dir.c_str(),
                           cfg.inject_fault ? 1 : 0, cfg.seed, &r));
  ReportPtr report(r, &opschur_report_free);

  std::string out = "schema,opschur.verify.v1\n";
  out += "check,pass,slack,detail\n";
  int count = 0;
  check(opschur_report_get_count(report.get(), &count));
  bool all_pass = true;
  for (int i = 0; i < count; ++i) {
    int pass = 0;
    double slack = 0.0;
    check(opschur_report_get_pass(report.get(), i, &pass));
    check(opschur_report_get_slack(report.get(), i, &slack));
    all_pass = all_pass && pass != 0;
    out += std::string(opschur_report_get_name(report.get(), i)) + "," +
           (pass ? "pass" : "fail") + "," + fmt(slack) + "," +
           opschur_report_get_detail(report.get(), i) + "\n";
  }
  emit(cfg.output, out);
  return all_pass ? kExitOk : kExitVerifyFailure;
}

// ---- gen -------------------------------------------------------------------

int run_gen(const std::string& dir) {
  int count = 0;
  check(opschur_corpus_write(dir.c_str(), &count));
  std::vector<std::string> names;
  for (const auto& de : std::filesystem::directory_iterator(dir))
    if (de.path().extension() == ".spec") names.push_back(de.path().filename().string());
  std::sort(names.begin(), names.end());
  std::string out = "schema,opschur.gen.v1\nfile\n";
  for (const auto& n : names) out += n + "\n";
  emit("", out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-valued Schur multiplier toolkit"};
  app.require_subcommand(1);
  // 'opschur --config FILE <command> ...': the file holds 'key = value'
  // lines under a [command] section. Explicit flags beat the file, the file
  // beats defaults.
  app.set_config("--config");

  NormConfig norm_cfg;
  auto* norm = app.add_subcommand("norm", "norm estimates for a spec file");
  norm->add_option("--input", norm_cfg.input, "spec file")->required();
  norm->add_option("--output", norm_cfg.output, "output CSV (default stdout)");
  norm->add_option("--seed", norm_cfg.seed, "random seed (default 0)");
  norm->add_option("--N", norm_cfg.size, "realization size override");
  norm->add_option("--d", norm_cfg.dim, "entry dimension override (kernel specs)");
  norm->add_option("--norm-kind", norm_cfg.kind,
                   "operator|operator_iterative|multiplier_lower|multiplier_upper|"
                   "symbol_sup|symbol_l1|l1_sot|all")
      ->check(CLI::IsMember({"operator", "operator_iterative", "multiplier_lower",
                             "multiplier_upper", "symbol_sup", "symbol_l1", "l1_sot",
                             "all"}));
  norm->add_option("--side", norm_cfg.side, "left|right|both")
      ->check(CLI::IsMember({"left", "right", "both"}));
  norm->add_option("--grid-M", norm_cfg.grid, "quadrature grid size");
  norm->add_option("--tol", norm_cfg.tol, "iterative tolerance");
  norm->add_option("--max-iter", norm_cfg.max_iter, "iterative max iterations");

  ProfileConfig profile_cfg;
  auto* profile = app.add_subcommand("profile", "convergence experiments");
  profile->add_option("--input", profile_cfg.input, "spec file")->required();
  profile->add_option("--experiment", profile_cfg.experiment,
                      "fejer|poisson|riemann-lebesgue|membership")
      ->required()
      ->check(CLI::IsMember({"fejer", "poisson", "riemann-lebesgue", "membership"}));
  profile->add_option("--output", profile_cfg.output, "output CSV (default stdout)");
  profile->add_option("--seed", profile_cfg.seed, "random seed (default 0)");
  profile->add_option("--N", profile_cfg.size, "realization size override");
  profile->add_option("--d", profile_cfg.dim, "entry dimension override (kernel specs)");
  profile->add_option("--orders", profile_cfg.orders, "fejer orders")->delimiter(',');
  profile->add_option("--radii", profile_cfg.radii, "poisson radii")->delimiter(',');
  profile->add_option("--norm-mode", profile_cfg.norm_mode, "operator|multiplier")
      ->check(CLI::IsMember({"operator", "multiplier"}));
  profile->add_option("--threshold", profile_cfg.threshold,
                      "membership threshold (default 0.1)");
  profile->add_option("--plot-data", profile_cfg.plot_data, "write (x,y) pairs here");

  VerifyConfig verify_cfg;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--input", verify_cfg.input,
                     "corpus directory (default built-in; env OPSCHUR_CORPUS_DIR)");
  verify->add_option("--output", verify_cfg.output, "output CSV (default stdout)");
  verify->add_option("--seed", verify_cfg.seed, "random seed (default 0)");
  verify->add_flag("--inject-fault", verify_cfg.inject_fault,
                   "perturb a measurement to prove the checks can fail");

  std::string gen_dir;
  auto* gen = app.add_subcommand("gen", "write the built-in corpus spec files");
  gen->add_option("--output", gen_dir, "target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParseError;
  }

  try {
    if (norm->parsed()) return run_norm(norm_cfg);
    if (profile->parsed()) return run_profile(profile_cfg);
    if (verify->parsed()) return run_verify(verify_cfg);
    if (gen->parsed()) return run_gen(gen_dir);
  } catch (const CliError& e) {
    std::cerr << "error," << e.status << "," << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error,internal," << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitOk;
}
