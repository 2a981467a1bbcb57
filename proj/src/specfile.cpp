#include "specfile.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace opschur {

const char* spec_kind_name(SpecKind k) {
  switch (k) {
    case SpecKind::matrix: return "matrix";
    case SpecKind::toeplitz: return "toeplitz";
    case SpecKind::symbol: return "symbol";
    case SpecKind::kernel: return "kernel";
  }
  return "unknown";
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail(ErrorCode::parse, "line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_double_token(const std::string& tok, int line) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + tok.size())
    parse_fail(line, "malformed number '" + tok + "'");
  return v;
}

long parse_int_token(const std::string& tok, int line) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end != begin + tok.size())
    parse_fail(line, "malformed integer '" + tok + "'");
  return v;
}

// Accepts A, Bi, A+Bi, A-Bi with C double literals for A and B.
Complex parse_complex_token(const std::string& tok, int line) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double first = std::strtod(begin, &end);
  if (end == begin) parse_fail(line, "malformed complex entry '" + tok + "'");
  if (*end == '\0') return {first, 0.0};
  if (*end == 'i' && *(end + 1) == '\0') return {0.0, first};
  if (*end != '+' && *end != '-')
    parse_fail(line, "malformed complex entry '" + tok + "'");
  const char* second_begin = end;
  const double second = std::strtod(second_begin, &end);
  if (end == second_begin || *end != 'i' || *(end + 1) != '\0')
    parse_fail(line, "malformed complex entry '" + tok + "'");
  return {first, second};
}

Eigen::MatrixXcd parse_block_entries(const std::vector<std::string>& toks,
                                     std::size_t offset, int d, int line) {
  if (toks.size() - offset != static_cast<std::size_t>(d) * d)
    parse_fail(line, "expected " + std::to_string(d * d) + " entries, got " +
                         std::to_string(toks.size() - offset));
  Eigen::MatrixXcd b(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      b(r, c) = parse_complex_token(toks[offset + static_cast<std::size_t>(r) * d + c], line);
  return b;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

}  // namespace

ParsedSpec parse_spec_text(std::string_view text) {
  std::vector<Line> lines;
  {
    int number = 0;
    std::size_t pos = 0;
    bool saw_version = false;
    while (pos <= text.size()) {
      const std::size_t eol = text.find('\n', pos);
      std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
      ++number;
      const std::size_t hash = raw.find('#');
      if (hash != std::string_view::npos) raw = raw.substr(0, hash);
      raw = trim(raw);
      if (raw.empty()) continue;
      if (!saw_version) {
        if (raw != "opschur v1")
          parse_fail(number, "expected header 'opschur v1'");
        saw_version = true;
        continue;
      }
      const std::size_t eq = raw.find('=');
      if (eq == std::string_view::npos) parse_fail(number, "expected 'key = value'");
      lines.push_back({number, std::string(trim(raw.substr(0, eq))),
                       std::string(trim(raw.substr(eq + 1)))});
    }
    if (!saw_version) fail(ErrorCode::parse, "line 1: expected header 'opschur v1'");
  }

  std::optional<SpecKind> kind;
  std::optional<int> dim;
  std::optional<int> size;
  std::optional<std::string> structure_value;
  int structure_line = 0;
  std::optional<KernelSpec> kernel;
  std::map<std::pair<int, int>, Eigen::MatrixXcd> blocks;
  std::map<int, Eigen::MatrixXcd> coeffs;
  std::map<int, Complex> scalar_coeffs;

  auto need_kind = [&](int line) -> SpecKind {
    if (!kind) parse_fail(line, "'kind' must be declared first");
    return *kind;
  };
  auto need_dim = [&](int line) -> int {
    if (!dim) parse_fail(line, "'d' must be declared before blocks or coefficients");
    return *dim;
  };

  for (const auto& ln : lines) {
    const auto toks = split_ws(ln.key);
    if (toks.empty()) parse_fail(ln.number, "missing key");
    const std::string& head = toks[0];

    if (head == "kind") {
      if (toks.size() != 1) parse_fail(ln.number, "malformed 'kind' line");
      if (kind) parse_fail(ln.number, "duplicate 'kind'");
      if (ln.value == "matrix") kind = SpecKind::matrix;
      else if (ln.value == "toeplitz") kind = SpecKind::toeplitz;
      else if (ln.value == "symbol") kind = SpecKind::symbol;
      else if (ln.value == "kernel") kind = SpecKind::kernel;
      else parse_fail(ln.number, "unknown kind '" + ln.value + "'");
    } else if (head == "d") {
      if (toks.size() != 1) parse_fail(ln.number, "malformed 'd' line");
      if (dim) parse_fail(ln.number, "duplicate 'd'");
      const long v = parse_int_token(ln.value, ln.number);
      if (v < 1) parse_fail(ln.number, "d must be >= 1");
      dim = static_cast<int>(v);
    } else if (head == "N") {
      if (toks.size() != 1) parse_fail(ln.number, "malformed 'N' line");
      if (size) parse_fail(ln.number, "duplicate 'N'");
      const long v = parse_int_token(ln.value, ln.number);
      if (v < 1) parse_fail(ln.number, "N must be >= 1");
      size = static_cast<int>(v);
    } else if (head == "structure") {
      if (need_kind(ln.number) != SpecKind::matrix)
        parse_fail(ln.number, "'structure' is only valid for kind = matrix");
      if (structure_value) parse_fail(ln.number, "duplicate 'structure'");
      structure_value = ln.value;
      structure_line = ln.number;
    } else if (head == "block") {
      if (need_kind(ln.number) != SpecKind::matrix)
        parse_fail(ln.number, "'block' is only valid for kind = matrix");
      const int d = need_dim(ln.number);
      if (!size) parse_fail(ln.number, "'N' must be declared before blocks");
      if (toks.size() != 3) parse_fail(ln.number, "block key must be 'block K J'");
      const long k = parse_int_token(toks[1], ln.number);
      const long j = parse_int_token(toks[2], ln.number);
      if (k < 1 || k > *size || j < 1 || j > *size)
        parse_fail(ln.number, "block index out of range");
      if (!blocks.emplace(std::make_pair(static_cast<int>(k), static_cast<int>(j)),
                          parse_block_entries(split_ws(ln.value), 0, d, ln.number))
               .second)
        parse_fail(ln.number, "duplicate block");
    } else if (head == "coeff") {
      const SpecKind kk = need_kind(ln.number);
      if (toks.size() != 2) parse_fail(ln.number, "coeff key must be 'coeff L'");
      const long l = parse_int_token(toks[1], ln.number);
      if (kk == SpecKind::toeplitz || kk == SpecKind::symbol) {
        const int d = need_dim(ln.number);
        if (!coeffs.emplace(static_cast<int>(l),
                            parse_block_entries(split_ws(ln.value), 0, d, ln.number))
                 .second)
          parse_fail(ln.number, "duplicate coefficient");
      } else if (kk == SpecKind::kernel) {
        const auto vt = split_ws(ln.value);
        if (vt.size() != 1) parse_fail(ln.number, "kernel coefficients take one entry");
        if (!scalar_coeffs.emplace(static_cast<int>(l),
                                   parse_complex_token(vt[0], ln.number))
                 .second)
          parse_fail(ln.number, "duplicate coefficient");
      } else {
        parse_fail(ln.number, "'coeff' is not valid for kind = matrix");
      }
    } else if (head == "kernel") {
      if (need_kind(ln.number) != SpecKind::kernel)
        parse_fail(ln.number, "'kernel' is only valid for kind = kernel");
      if (kernel) parse_fail(ln.number, "duplicate 'kernel'");
      const auto vt = split_ws(ln.value);
      if (vt.empty()) parse_fail(ln.number, "missing kernel family");
      try {
        if (vt[0] == "fejer" && vt.size() == 2)
          kernel = KernelSpec::fejer(static_cast<int>(parse_int_token(vt[1], ln.number)));
        else if (vt[0] == "poisson" && vt.size() == 2)
          kernel = KernelSpec::poisson(parse_double_token(vt[1], ln.number));
        else if (vt[0] == "dirac" && vt.size() == 2)
          kernel = KernelSpec::dirac(parse_double_token(vt[1], ln.number));
        else if (vt[0] == "custom" && vt.size() == 1)
          kernel = KernelSpec::custom({});
        else
          parse_fail(ln.number, "malformed kernel '" + ln.value + "'");
      } catch (const Error& e) {
        if (e.code() == ErrorCode::parse) throw;
        parse_fail(ln.number, e.what());
      }
    } else {
      parse_fail(ln.number, "unknown key '" + head + "'");
    }
  }

  if (!kind) fail(ErrorCode::parse, "missing 'kind'");
  ParsedSpec out;
  out.kind = *kind;
  out.dim = dim.value_or(1);
  out.size_hint = size;

  switch (*kind) {
    case SpecKind::matrix: {
      if (!dim) fail(ErrorCode::parse, "missing 'd'");
      if (!size) fail(ErrorCode::parse, "missing 'N'");
      BlockMatrix m(*dim, *size);
      for (const auto& [kj, b] : blocks) m.set_block(kj.first, kj.second, b);
      if (structure_value) {
        const auto vt = split_ws(*structure_value);
        try {
          if (vt.size() == 1 && vt[0] != "banded") {
            m.set_structure(structure_from_name(vt[0]));
          } else if (vt.size() == 3 && vt[0] == "banded") {
            m.set_structure(Structure::banded,
                            {static_cast<int>(parse_int_token(vt[1], structure_line)),
                             static_cast<int>(parse_int_token(vt[2], structure_line))});
          } else {
            parse_fail(structure_line, "malformed structure '" + *structure_value + "'");
          }
        } catch (const Error& e) {
          if (e.code() == ErrorCode::parse) throw;
          parse_fail(structure_line, std::string("structure violated: ") + e.what());
        }
      }
      out.matrix = std::move(m);
      break;
    }
    case SpecKind::toeplitz:
    case SpecKind::symbol: {
      if (!dim) fail(ErrorCode::parse, "missing 'd'");
      if (*kind == SpecKind::toeplitz) {
        ToeplitzSpec spec(*dim);
        for (const auto& [l, b] : coeffs) spec.set_coefficient(l, OperatorBlock(b));
        out.toeplitz = std::move(spec);
      } else {
        SymbolPolynomial f(*dim);
        for (const auto& [l, b] : coeffs) f.set_term(l, OperatorBlock(b));
        out.symbol = std::move(f);
      }
      break;
    }
    case SpecKind::kernel: {
      if (!kernel) fail(ErrorCode::parse, "missing 'kernel'");
      if (kernel->kind() == KernelSpec::Kind::custom)
        kernel = KernelSpec::custom(scalar_coeffs);
      else if (!scalar_coeffs.empty())
        fail(ErrorCode::parse, "coefficients are only valid for custom kernels");
      out.kernel = std::move(kernel);
      break;
    }
  }
  return out;
}

ParsedSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec_text(buf.str());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse)
      fail(ErrorCode::parse, path + ": " + e.what());
    throw;
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
  return buf;
}

namespace {

void append_entries(std::string& out, const Eigen::MatrixXcd& b) {
  for (Eigen::Index r = 0; r < b.rows(); ++r)
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      out += ' ';
      out += format_complex(b(r, c));
    }
}

}  // namespace

std::string format_matrix_spec(const BlockMatrix& m) {
  std::string out = "opschur v1\nkind = matrix\nd = " + std::to_string(m.dim()) +
                    "\nN = " + std::to_string(m.size()) + "\nstructure = ";
  if (m.structure() == Structure::banded)
    out += "banded " + std::to_string(m.band().lo) + " " + std::to_string(m.band().hi);
  else
    out += structure_name(m.structure());
  out += '\n';
  for (int k = 1; k <= m.size(); ++k)
    for (int j = 1; j <= m.size(); ++j) {
      const Eigen::MatrixXcd b = m.block(k, j);
      if (b.isZero(0.0)) continue;
      out += "block " + std::to_string(k) + " " + std::to_string(j) + " =";
      append_entries(out, b);
      out += '\n';
    }
  return out;
}

namespace {

std::string size_hint_line(std::optional<int> size_hint) {
  return size_hint ? "N = " + std::to_string(*size_hint) + "\n" : std::string();
}

}  // namespace

std::string format_toeplitz_spec(const ToeplitzSpec& spec, std::optional<int> size_hint) {
  std::string out = "opschur v1\nkind = toeplitz\nd = " + std::to_string(spec.dim()) + "\n" +
                    size_hint_line(size_hint);
  for (const auto& [l, block] : spec.coefficients()) {
    out += "coeff " + std::to_string(l) + " =";
    append_entries(out, block.mat());
    out += '\n';
  }
  return out;
}

std::string format_symbol_spec(const SymbolPolynomial& f, std::optional<int> size_hint) {
  std::string out = "opschur v1\nkind = symbol\nd = " + std::to_string(f.dim()) + "\n" +
                    size_hint_line(size_hint);
  for (const auto& [l, block] : f.terms()) {
    out += "coeff " + std::to_string(l) + " =";
    append_entries(out, block.mat());
    out += '\n';
  }
  return out;
}

std::string format_kernel_spec(const KernelSpec& k, int dim, std::optional<int> size_hint) {
  std::string out = "opschur v1\nkind = kernel\nd = " + std::to_string(dim) + "\n" +
                    size_hint_line(size_hint) + "kernel = ";
  switch (k.kind()) {
    case KernelSpec::Kind::fejer:
      out += "fejer " + std::to_string(k.fejer_order());
      break;
    case KernelSpec::Kind::poisson:
      out += "poisson " + format_double(k.poisson_radius());
      break;
    case KernelSpec::Kind::dirac:
      out += "dirac " + format_double(k.dirac_angle());
      break;
    case KernelSpec::Kind::custom:
      out += "custom";
      break;
  }
  out += '\n';
  if (k.kind() == KernelSpec::Kind::custom)
    for (const auto& [l, c] : k.custom_coefficients()) {
      out += "coeff " + std::to_string(l) + " = " + format_complex(c) + "\n";
    }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::io, "write failed for '" + path + "'");
}

}  // namespace opschur
