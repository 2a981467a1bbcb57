#include "opschur.h"

#include <cstring>
#include <string>

#include "corpus.hpp"
#include "experiments.hpp"
#include "norm_estimators.hpp"
#include "specfile.hpp"
#include "verify_checks.hpp"

using namespace opschur;

struct opschur_spec {
  ParsedSpec spec;
};
struct opschur_matrix {
  BlockMatrix m;
};
struct opschur_hvector {
  HVector v;
};
struct opschur_symbol {
  SymbolPolynomial f;
};
struct opschur_profile {
  ConvergenceProfile p;
};
struct opschur_report {
  std::vector<CheckResult> rows;
};

namespace {

thread_local std::string g_last_error;

opschur_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return OPSCHUR_ERROR_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return OPSCHUR_ERROR_DIMENSION_MISMATCH;
    case ErrorCode::index_out_of_range: return OPSCHUR_ERROR_INDEX_OUT_OF_RANGE;
    case ErrorCode::parse: return OPSCHUR_ERROR_PARSE;
    case ErrorCode::precondition: return OPSCHUR_ERROR_PRECONDITION;
    case ErrorCode::io: return OPSCHUR_ERROR_IO;
    case ErrorCode::unsupported: return OPSCHUR_ERROR_UNSUPPORTED;
  }
  return OPSCHUR_ERROR_INTERNAL;
}

template <typename Fn>
opschur_status wrap(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return OPSCHUR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OPSCHUR_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OPSCHUR_ERROR_INTERNAL;
  }
}

opschur_status require(bool cond, const char* msg) {
  if (cond) return OPSCHUR_OK;
  g_last_error = msg;
  return OPSCHUR_ERROR_INVALID_ARGUMENT;
}

#define OPSCHUR_REQUIRE(cond, msg) \
  do {                             \
    if (!(cond)) return require(false, msg); \
  } while (0)

Eigen::MatrixXcd block_from_interleaved(const double* data, int d) {
  Eigen::MatrixXcd b(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const std::size_t at = 2 * (static_cast<std::size_t>(r) * d + c);
      b(r, c) = Complex(data[at], data[at + 1]);
    }
  return b;
}

void block_to_interleaved(const Eigen::MatrixXcd& b, double* out) {
  const int d = static_cast<int>(b.rows());
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const std::size_t at = 2 * (static_cast<std::size_t>(r) * d + c);
      out[at] = b(r, c).real();
      out[at + 1] = b(r, c).imag();
    }
}

void fill_result(const NormEstimate& e, opschur_norm_result* out) {
  out->value = e.value;
  out->kind = static_cast<int>(e.kind);
  out->iterations = e.iterations;
  out->residual = e.residual;
  std::snprintf(out->method, sizeof out->method, "%s", e.method.c_str());
}

const ToeplitzSpec spec_as_toeplitz(const ParsedSpec& spec) {
  switch (spec.kind) {
    case SpecKind::toeplitz: return *spec.toeplitz;
    case SpecKind::symbol: return spec.symbol->to_toeplitz();
    default:
      fail(ErrorCode::unsupported, "operation needs a toeplitz or symbol spec");
  }
}

}  // namespace

extern "C" {

const char* opschur_version(void) { return "opschur 1.0.0"; }

const char* opschur_status_name(opschur_status status) {
  switch (status) {
    case OPSCHUR_OK: return "ok";
    case OPSCHUR_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case OPSCHUR_ERROR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case OPSCHUR_ERROR_INDEX_OUT_OF_RANGE: return "index_out_of_range";
    case OPSCHUR_ERROR_PARSE: return "parse";
    case OPSCHUR_ERROR_PRECONDITION: return "precondition";
    case OPSCHUR_ERROR_IO: return "io";
    case OPSCHUR_ERROR_UNSUPPORTED: return "unsupported";
    case OPSCHUR_ERROR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* opschur_last_error(void) { return g_last_error.c_str(); }

/* ---- spec files -------------------------------------------------------- */

opschur_status opschur_spec_load_file(const char* path, opschur_spec** out) {
  OPSCHUR_REQUIRE(path && out, "null argument");
  return wrap([&] { *out = new opschur_spec{parse_spec_file(path)}; });
}

opschur_status opschur_spec_parse(const char* text, opschur_spec** out) {
  OPSCHUR_REQUIRE(text && out, "null argument");
  return wrap([&] { *out = new opschur_spec{parse_spec_text(text)}; });
}

void opschur_spec_free(opschur_spec* spec) { delete spec; }

opschur_status opschur_spec_get_kind(const opschur_spec* spec, int* kind_out) {
  OPSCHUR_REQUIRE(spec && kind_out, "null argument");
  *kind_out = static_cast<int>(spec->spec.kind);
  return OPSCHUR_OK;
}

opschur_status opschur_spec_get_dim(const opschur_spec* spec, int* dim_out) {
  OPSCHUR_REQUIRE(spec && dim_out, "null argument");
  *dim_out = spec->spec.dim;
  return OPSCHUR_OK;
}

opschur_status opschur_spec_get_size_hint(const opschur_spec* spec, int* size_out) {
  OPSCHUR_REQUIRE(spec && size_out, "null argument");
  *size_out = spec->spec.size_hint.value_or(0);
  return OPSCHUR_OK;
}

opschur_status opschur_spec_realize(const opschur_spec* spec, int size,
                                    opschur_matrix** out) {
  return opschur_spec_realize_dim(spec, size, 0, out);
}

opschur_status opschur_spec_realize_dim(const opschur_spec* spec, int size,
                                        int dim, opschur_matrix** out) {
  OPSCHUR_REQUIRE(spec && out, "null argument");
  return wrap([&] {
    const ParsedSpec& s = spec->spec;
    int n = size;
    if (n <= 0) {
      if (!s.size_hint)
        fail(ErrorCode::precondition, "spec carries no N; pass an explicit size");
      n = *s.size_hint;
    }
    if (dim > 0 && dim != s.dim && s.kind != SpecKind::kernel)
      fail(ErrorCode::precondition,
           "dimension override only applies to kernel specs");
    switch (s.kind) {
      case SpecKind::matrix: {
        BlockMatrix m = *s.matrix;
        if (n > m.size())
          fail(ErrorCode::precondition,
               "requested size exceeds the stored matrix size");
        if (n < m.size()) m = m.corner(n);
        *out = new opschur_matrix{std::move(m)};
        break;
      }
      case SpecKind::toeplitz:
        *out = new opschur_matrix{s.toeplitz->realize(n)};
        break;
      case SpecKind::symbol:
        *out = new opschur_matrix{toeplitz_from_symbol(*s.symbol, n)};
        break;
      case SpecKind::kernel:
        *out = new opschur_matrix{kernel_matrix(*s.kernel, n, dim > 0 ? dim : s.dim)};
        break;
    }
  });
}

opschur_status opschur_spec_symbol(const opschur_spec* spec, opschur_symbol** out) {
  OPSCHUR_REQUIRE(spec && out, "null argument");
  return wrap([&] {
    const ParsedSpec& s = spec->spec;
    switch (s.kind) {
      case SpecKind::symbol:
        *out = new opschur_symbol{*s.symbol};
        break;
      case SpecKind::toeplitz:
        *out = new opschur_symbol{SymbolPolynomial::from_toeplitz(*s.toeplitz)};
        break;
      case SpecKind::kernel: {
        const auto limit = s.kernel->band_limit();
        if (!limit)
          fail(ErrorCode::unsupported,
               "kernel has unbounded support; no exact polynomial view");
        *out = new opschur_symbol{
            SymbolPolynomial::from_kernel(*s.kernel, s.dim, *limit)};
        break;
      }
      default:
        fail(ErrorCode::unsupported, "matrix specs have no symbol view");
    }
  });
}

opschur_status opschur_spec_apply_fast(const opschur_spec* spec,
                                       const opschur_hvector* x,
                                       opschur_hvector** out) {
  OPSCHUR_REQUIRE(spec && x && out, "null argument");
  return wrap([&] {
    *out = new opschur_hvector{toeplitz_apply_fast(spec_as_toeplitz(spec->spec), x->v)};
  });
}

/* ---- matrices ---------------------------------------------------------- */

opschur_status opschur_matrix_create(int dim, int size, const double* interleaved,
                                     opschur_matrix** out) {
  OPSCHUR_REQUIRE(out, "null argument");
  return wrap([&] {
    BlockMatrix m(dim, size);
    if (interleaved) {
      const Eigen::Index n = m.flat().rows();
      auto& flat = m.mutable_flat();
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
          const std::size_t at = 2 * (static_cast<std::size_t>(r) * n + c);
          flat(r, c) = Complex(interleaved[at], interleaved[at + 1]);
        }
      if (!flat.allFinite())
        fail(ErrorCode::invalid_argument, "matrix has non-finite entries");
    }
    *out = new opschur_matrix{std::move(m)};
  });
}

opschur_status opschur_matrix_identity(int dim, int size, opschur_matrix** out) {
  OPSCHUR_REQUIRE(out, "null argument");
  return wrap([&] { *out = new opschur_matrix{identity_matrix(dim, size)}; });
}

opschur_status opschur_matrix_schur_unit(int dim, int size, opschur_matrix** out) {
  OPSCHUR_REQUIRE(out, "null argument");
  return wrap([&] { *out = new opschur_matrix{schur_unit(dim, size)}; });
}

opschur_status opschur_matrix_kernel(int kernel_kind, double parameter, int size,
                                     int dim, opschur_matrix** out) {
  OPSCHUR_REQUIRE(out, "null argument");
  return wrap([&] {
    KernelSpec k = [&] {
      switch (kernel_kind) {
        case OPSCHUR_KERNEL_FEJER:
          return KernelSpec::fejer(static_cast<int>(parameter));
        case OPSCHUR_KERNEL_POISSON:
          return KernelSpec::poisson(parameter);
        case OPSCHUR_KERNEL_DIRAC:
          return KernelSpec::dirac(parameter);
        default:
          fail(ErrorCode::invalid_argument, "unknown kernel kind");
      }
    }();
    *out = new opschur_matrix{kernel_matrix(k, size, dim)};
  });
}

void opschur_matrix_free(opschur_matrix* m) { delete m; }

opschur_status opschur_matrix_clone(const opschur_matrix* m, opschur_matrix** out) {
  OPSCHUR_REQUIRE(m && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{m->m}; });
}

opschur_status opschur_matrix_get_dim(const opschur_matrix* m, int* out) {
  OPSCHUR_REQUIRE(m && out, "null argument");
  *out = m->m.dim();
  return OPSCHUR_OK;
}

opschur_status opschur_matrix_get_size(const opschur_matrix* m, int* out) {
  OPSCHUR_REQUIRE(m && out, "null argument");
  *out = m->m.size();
  return OPSCHUR_OK;
}

opschur_status opschur_matrix_get_structure(const opschur_matrix* m, int* out) {
  OPSCHUR_REQUIRE(m && out, "null argument");
  *out = static_cast<int>(m->m.structure());
  return OPSCHUR_OK;
}

opschur_status opschur_matrix_get_block(const opschur_matrix* m, int k, int j,
                                        double* interleaved_out) {
  OPSCHUR_REQUIRE(m && interleaved_out, "null argument");
  return wrap([&] { block_to_interleaved(m->m.block(k, j), interleaved_out); });
}

opschur_status opschur_matrix_set_block(opschur_matrix* m, int k, int j,
                                        const double* interleaved) {
  OPSCHUR_REQUIRE(m && interleaved, "null argument");
  return wrap([&] { m->m.set_block(k, j, block_from_interleaved(interleaved, m->m.dim())); });
}

opschur_status opschur_matrix_equal(const opschur_matrix* a, const opschur_matrix* b,
                                    int* equal_out) {
  OPSCHUR_REQUIRE(a && b && equal_out, "null argument");
  *equal_out = exactly_equal(a->m, b->m) ? 1 : 0;
  return OPSCHUR_OK;
}

opschur_status opschur_matrix_sup_entry_norm(const opschur_matrix* m, double* out) {
  OPSCHUR_REQUIRE(m && out, "null argument");
  return wrap([&] { *out = m->m.sup_entry_norm(); });
}

opschur_status opschur_matrix_write_file(const opschur_matrix* m, const char* path) {
  OPSCHUR_REQUIRE(m && path, "null argument");
  return wrap([&] { write_text_file(path, format_matrix_spec(m->m)); });
}

opschur_status opschur_schur_product(const opschur_matrix* a, const opschur_matrix* b,
                                     opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && b && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{schur_product(a->m, b->m)}; });
}

opschur_status opschur_matrix_add(const opschur_matrix* a, const opschur_matrix* b,
                                  opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && b && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{a->m + b->m}; });
}

opschur_status opschur_matrix_subtract(const opschur_matrix* a,
                                       const opschur_matrix* b, opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && b && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{a->m - b->m}; });
}

opschur_status opschur_adjoint(const opschur_matrix* a, opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{adjoint(a->m)}; });
}

opschur_status opschur_modulate(const opschur_matrix* a, double t,
                                opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{modulate(a->m, t)}; });
}

opschur_status opschur_extract_diagonal(const opschur_matrix* a, int l,
                                        opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{extract_diagonal(a->m, l)}; });
}

opschur_status opschur_extract_row(const opschur_matrix* a, int k,
                                   opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{extract_row(a->m, k)}; });
}

opschur_status opschur_extract_column(const opschur_matrix* a, int j,
                                      opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{extract_column(a->m, j)}; });
}

opschur_status opschur_smooth_fejer(const opschur_matrix* a, int order,
                                    opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{smooth_fejer(a->m, order)}; });
}

opschur_status opschur_smooth_poisson(const opschur_matrix* a, double radius,
                                      opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{smooth_poisson(a->m, radius)}; });
}

/* ---- H-valued sequences ------------------------------------------------ */

opschur_status opschur_hvector_create(int dim, int len, const double* interleaved,
                                      opschur_hvector** out) {
  OPSCHUR_REQUIRE(out, "null argument");
  return wrap([&] {
    HVector v(dim, len);
    if (interleaved) {
      Eigen::VectorXcd flat(static_cast<Eigen::Index>(dim) * len);
      for (Eigen::Index i = 0; i < flat.size(); ++i)
        flat(i) = Complex(interleaved[2 * i], interleaved[2 * i + 1]);
      v = HVector::from_flat(dim, len, std::move(flat));
    }
    *out = new opschur_hvector{std::move(v)};
  });
}

opschur_status opschur_hvector_basis(const double* x, int dim, int j, int len,
                                     opschur_hvector** out) {
  OPSCHUR_REQUIRE(x && out, "null argument");
  return wrap([&] {
    if (dim < 1) fail(ErrorCode::invalid_argument, "dim must be >= 1");
    Eigen::VectorXcd coord(dim);
    for (int i = 0; i < dim; ++i) coord(i) = Complex(x[2 * i], x[2 * i + 1]);
    *out = new opschur_hvector{make_basis_vector(coord, j, len)};
  });
}

void opschur_hvector_free(opschur_hvector* v) { delete v; }

opschur_status opschur_hvector_get_dim(const opschur_hvector* v, int* out) {
  OPSCHUR_REQUIRE(v && out, "null argument");
  *out = v->v.dim();
  return OPSCHUR_OK;
}

opschur_status opschur_hvector_get_len(const opschur_hvector* v, int* out) {
  OPSCHUR_REQUIRE(v && out, "null argument");
  *out = v->v.len();
  return OPSCHUR_OK;
}

opschur_status opschur_hvector_get_data(const opschur_hvector* v,
                                        double* interleaved_out) {
  OPSCHUR_REQUIRE(v && interleaved_out, "null argument");
  const auto& flat = v->v.flat();
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    interleaved_out[2 * i] = flat(i).real();
    interleaved_out[2 * i + 1] = flat(i).imag();
  }
  return OPSCHUR_OK;
}

opschur_status opschur_hvector_norm(const opschur_hvector* v, double* out) {
  OPSCHUR_REQUIRE(v && out, "null argument");
  *out = v->v.norm();
  return OPSCHUR_OK;
}

opschur_status opschur_apply(const opschur_matrix* a, const opschur_hvector* x,
                             opschur_hvector** out) {
  OPSCHUR_REQUIRE(a && x && out, "null argument");
  return wrap([&] { *out = new opschur_hvector{apply(a->m, x->v)}; });
}

opschur_status opschur_rank_one_matrix(const opschur_hvector* x,
                                       const opschur_hvector* y,
                                       opschur_matrix** out) {
  OPSCHUR_REQUIRE(x && y && out, "null argument");
  return wrap([&] { *out = new opschur_matrix{rank_one_matrix(x->v, y->v)}; });
}

/* ---- norms -------------------------------------------------------------- */

opschur_status opschur_operator_norm_dense(const opschur_matrix* a, int cap,
                                           opschur_norm_result* out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] {
    fill_result(operator_norm_dense(a->m, cap > 0 ? cap : kDenseCap), out);
  });
}

opschur_status opschur_operator_norm_iterative(const opschur_matrix* a, double tol,
                                               long max_iter, uint64_t seed,
                                               opschur_norm_result* out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] {
    PowerIterOptions opt;
    if (tol > 0) opt.tol = tol;
    if (max_iter > 0) opt.max_iter = max_iter;
    opt.seed = seed;
    fill_result(operator_norm_iterative(a->m, opt), out);
  });
}

opschur_status opschur_multiplier_lower_bound(const opschur_matrix* a, int side,
                                              int dirac_probes, int gaussian_probes,
                                              int rank_one_probes, uint64_t seed,
                                              opschur_norm_result* out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  OPSCHUR_REQUIRE(side == OPSCHUR_SIDE_LEFT || side == OPSCHUR_SIDE_RIGHT,
                  "side must be left (0) or right (1)");
  return wrap([&] {
    ProbeSet set;
    if (dirac_probes >= 0) set.dirac_angles = dirac_probes;
    if (gaussian_probes >= 0) set.gaussians = gaussian_probes;
    if (rank_one_probes >= 0) set.rank_ones = rank_one_probes;
    fill_result(multiplier_lower_bound(a->m,
                                       side == OPSCHUR_SIDE_LEFT
                                           ? MultiplierSide::left
                                           : MultiplierSide::right,
                                       set, seed),
                out);
  });
}

opschur_status opschur_multiplier_upper_bound(const opschur_matrix* a,
                                              opschur_norm_result* out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] { fill_result(multiplier_upper_bound(a->m), out); });
}

void opschur_symbol_free(opschur_symbol* s) { delete s; }

opschur_status opschur_symbol_get_dim(const opschur_symbol* s, int* out) {
  OPSCHUR_REQUIRE(s && out, "null argument");
  *out = s->f.dim();
  return OPSCHUR_OK;
}

opschur_status opschur_symbol_get_degree(const opschur_symbol* s, int* out) {
  OPSCHUR_REQUIRE(s && out, "null argument");
  *out = s->f.degree();
  return OPSCHUR_OK;
}

opschur_status opschur_symbol_sup_norm(const opschur_symbol* s, int grid,
                                       double* out) {
  OPSCHUR_REQUIRE(s && out, "null argument");
  return wrap([&] { *out = symbol_sup_norm(s->f, grid); });
}

opschur_status opschur_symbol_l1_norm(const opschur_symbol* s, int grid,
                                      double* out) {
  OPSCHUR_REQUIRE(s && out, "null argument");
  return wrap([&] { *out = symbol_l1_norm(s->f, grid); });
}

opschur_status opschur_l1_sot_norm(const opschur_symbol* s, int grid, uint64_t seed,
                                   opschur_norm_result* out) {
  OPSCHUR_REQUIRE(s && out, "null argument");
  return wrap([&] { fill_result(l1_sot_norm(s->f, grid, {}, seed), out); });
}

/* ---- experiments --------------------------------------------------------- */

opschur_status opschur_profile_fejer(const opschur_matrix* a, const int* orders,
                                     int n_orders, int metric, uint64_t seed,
                                     opschur_profile** out) {
  OPSCHUR_REQUIRE(a && orders && out && n_orders > 0, "null or empty argument");
  return wrap([&] {
    *out = new opschur_profile{fejer_convergence_profile(
        a->m, std::span<const int>(orders, static_cast<std::size_t>(n_orders)),
        static_cast<ProfileMetric>(metric), seed)};
  });
}

opschur_status opschur_profile_poisson(const opschur_matrix* a, const double* radii,
                                       int n_radii, int metric, uint64_t seed,
                                       opschur_profile** out) {
  OPSCHUR_REQUIRE(a && radii && out && n_radii > 0, "null or empty argument");
  return wrap([&] {
    *out = new opschur_profile{poisson_convergence_profile(
        a->m, std::span<const double>(radii, static_cast<std::size_t>(n_radii)),
        static_cast<ProfileMetric>(metric), seed)};
  });
}

opschur_status opschur_profile_riemann_lebesgue(const opschur_matrix* a,
                                                opschur_profile** out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] { *out = new opschur_profile{riemann_lebesgue_profile(a->m)}; });
}

opschur_status opschur_profile_modulation_continuity(const opschur_matrix* a,
                                                     const double* deltas,
                                                     int n_deltas, int metric,
                                                     uint64_t seed,
                                                     opschur_profile** out) {
  OPSCHUR_REQUIRE(a && deltas && out && n_deltas > 0, "null or empty argument");
  return wrap([&] {
    *out = new opschur_profile{modulation_continuity_profile(
        a->m, std::span<const double>(deltas, static_cast<std::size_t>(n_deltas)),
        static_cast<ProfileMetric>(metric), seed)};
  });
}

void opschur_profile_free(opschur_profile* p) { delete p; }

opschur_status opschur_profile_get_length(const opschur_profile* p, int* out) {
  OPSCHUR_REQUIRE(p && out, "null argument");
  *out = static_cast<int>(p->p.parameters.size());
  return OPSCHUR_OK;
}

opschur_status opschur_profile_get_parameter(const opschur_profile* p, int i,
                                             double* out) {
  OPSCHUR_REQUIRE(p && out, "null argument");
  OPSCHUR_REQUIRE(i >= 0 && i < static_cast<int>(p->p.parameters.size()),
                  "profile index out of range");
  *out = p->p.parameters[static_cast<std::size_t>(i)];
  return OPSCHUR_OK;
}

opschur_status opschur_profile_get_value(const opschur_profile* p, int i,
                                         double* out) {
  OPSCHUR_REQUIRE(p && out, "null argument");
  OPSCHUR_REQUIRE(i >= 0 && i < static_cast<int>(p->p.values.size()),
                  "profile index out of range");
  *out = p->p.values[static_cast<std::size_t>(i)];
  return OPSCHUR_OK;
}

opschur_status opschur_profile_get_lower_value(const opschur_profile* p, int i,
                                               double* out) {
  OPSCHUR_REQUIRE(p && out, "null argument");
  if (p->p.lower_values.empty()) {
    g_last_error = "profile has no lower-bound series (operator metric)";
    return OPSCHUR_ERROR_UNSUPPORTED;
  }
  OPSCHUR_REQUIRE(i >= 0 && i < static_cast<int>(p->p.lower_values.size()),
                  "profile index out of range");
  *out = p->p.lower_values[static_cast<std::size_t>(i)];
  return OPSCHUR_OK;
}

opschur_status opschur_profile_has_lower_series(const opschur_profile* p, int* out) {
  OPSCHUR_REQUIRE(p && out, "null argument");
  *out = p->p.lower_values.empty() ? 0 : 1;
  return OPSCHUR_OK;
}

const char* opschur_profile_metric_name(const opschur_profile* p) {
  return p ? p->p.metric.c_str() : "";
}

opschur_status opschur_profile_get_verdict(const opschur_profile* p, int* out) {
  OPSCHUR_REQUIRE(p && out, "null argument");
  *out = static_cast<int>(p->p.verdict);
  return OPSCHUR_OK;
}

opschur_status opschur_l1_membership_verdict(const opschur_matrix* a,
                                             const int* orders, int n_orders,
                                             double threshold, uint64_t seed,
                                             int* verdict_out) {
  OPSCHUR_REQUIRE(a && orders && verdict_out && n_orders > 0, "null or empty argument");
  return wrap([&] {
    *verdict_out = static_cast<int>(l1_membership_verdict(
        a->m, std::span<const int>(orders, static_cast<std::size_t>(n_orders)),
        threshold, seed));
  });
}

const char* opschur_verdict_name(int verdict) {
  return verdict_name(static_cast<Verdict>(verdict));
}

opschur_status opschur_disc_extension(const opschur_matrix* a, double z_re,
                                      double z_im, opschur_matrix** out) {
  OPSCHUR_REQUIRE(a && out, "null argument");
  return wrap([&] {
    *out = new opschur_matrix{disc_extension(a->m, Complex(z_re, z_im))};
  });
}

opschur_status opschur_disc_symbol_value(const opschur_spec* spec, double z_re,
                                         double z_im, double* interleaved_out) {
  OPSCHUR_REQUIRE(spec && interleaved_out, "null argument");
  return wrap([&] {
    const OperatorBlock b =
        disc_symbol_value(spec_as_toeplitz(spec->spec), Complex(z_re, z_im));
    block_to_interleaved(b.mat(), interleaved_out);
  });
}

opschur_status opschur_h_infinity_norm(const opschur_spec* spec, int grid,
                                       double* out) {
  OPSCHUR_REQUIRE(spec && out, "null argument");
  return wrap([&] { *out = h_infinity_norm(spec_as_toeplitz(spec->spec), grid); });
}

opschur_status opschur_h1_norm(const opschur_spec* spec, const double* radii,
                               int n_radii, int grid, double* out) {
  OPSCHUR_REQUIRE(spec && out, "null argument");
  OPSCHUR_REQUIRE(n_radii == 0 || radii, "null radii");
  return wrap([&] {
    *out = h1_norm(spec_as_toeplitz(spec->spec),
                   std::span<const double>(radii, static_cast<std::size_t>(n_radii)),
                   grid);
  });
}

/* ---- corpus and verification -------------------------------------------- */

opschur_status opschur_corpus_write(const char* dir, int* count_out) {
  OPSCHUR_REQUIRE(dir, "null argument");
  return wrap([&] {
    const int n = write_corpus(dir);
    if (count_out) *count_out = n;
  });
}

opschur_status opschur_verify_run(const char* corpus_dir, int inject_fault,
                                  uint64_t seed, opschur_report** out) {
  OPSCHUR_REQUIRE(out, "null argument");
  return wrap([&] {
    VerifyOptions opt;
    opt.inject_fault = inject_fault != 0;
    opt.seed = seed;
    std::vector<CheckResult> rows =
        corpus_dir ? run_verification(load_corpus_dir(corpus_dir), opt)
                   : run_verification(builtin_corpus(), opt);
    *out = new opschur_report{std::move(rows)};
  });
}

void opschur_report_free(opschur_report* r) { delete r; }

opschur_status opschur_report_get_count(const opschur_report* r, int* out) {
  OPSCHUR_REQUIRE(r && out, "null argument");
  *out = static_cast<int>(r->rows.size());
  return OPSCHUR_OK;
}

const char* opschur_report_get_name(const opschur_report* r, int i) {
  if (!r || i < 0 || i >= static_cast<int>(r->rows.size())) return "";
  return r->rows[static_cast<std::size_t>(i)].name.c_str();
}

opschur_status opschur_report_get_pass(const opschur_report* r, int i, int* out) {
  OPSCHUR_REQUIRE(r && out, "null argument");
  OPSCHUR_REQUIRE(i >= 0 && i < static_cast<int>(r->rows.size()),
                  "report index out of range");
  *out = r->rows[static_cast<std::size_t>(i)].pass ? 1 : 0;
  return OPSCHUR_OK;
}

opschur_status opschur_report_get_slack(const opschur_report* r, int i, double* out) {
  OPSCHUR_REQUIRE(r && out, "null argument");
  OPSCHUR_REQUIRE(i >= 0 && i < static_cast<int>(r->rows.size()),
                  "report index out of range");
  *out = r->rows[static_cast<std::size_t>(i)].slack;
  return OPSCHUR_OK;
}

const char* opschur_report_get_detail(const opschur_report* r, int i) {
  if (!r || i < 0 || i >= static_cast<int>(r->rows.size())) return "";
  return r->rows[static_cast<std::size_t>(i)].detail.c_str();
}

}  // extern "C"
