#include "dctscale/dctscale.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "dctscale/analysis.hpp"
#include "dctscale/catalog.hpp"
#include "dctscale/error.hpp"
#include "dctscale/exact.hpp"
#include "dctscale/metrics.hpp"
#include "dctscale/scaler.hpp"

using namespace dctscale;

struct dcs_matrix {
  RealMatrix m;
};

struct dcs_catalog {
  Catalog catalog;
  std::vector<std::string> ids;
};

struct dcs_scaled {
  ScaledTransform t;
  RealMatrix reference;
};

namespace {

thread_local std::string g_last_error;

dcs_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return DCS_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return DCS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::Singular: return DCS_ERR_SINGULAR;
    case ErrorCode::NotFound: return DCS_ERR_NOT_FOUND;
    case ErrorCode::Checksum: return DCS_ERR_CHECKSUM;
    case ErrorCode::Parse: return DCS_ERR_PARSE;
    case ErrorCode::Overflow: return DCS_ERR_OVERFLOW;
    case ErrorCode::Io: return DCS_ERR_IO;
  }
  return DCS_ERR_INTERNAL;
}

template <class F>
dcs_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return DCS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DCS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DCS_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Format to_format(dcs_format f) {
  switch (f) {
    case DCS_FORMAT_MARKDOWN: return Format::Markdown;
    case DCS_FORMAT_CSV: return Format::Csv;
    case DCS_FORMAT_JSON: return Format::Json;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown output format");
}

RealMatrix generate(const std::string& kind, std::size_t n) {
  require(n >= 1, "size must be >= 1");
  const auto half = [&] {
    if (n % 2 != 0) throw Error(ErrorCode::InvalidArgument, kind + " needs an even size");
    return n / 2;
  };
  if (kind == "dct2") return transform_matrix(TransformKind::Dct2, n);
  if (kind == "dct4") return transform_matrix(TransformKind::Dct4, n);
  if (kind == "dst4") return transform_matrix(TransformKind::Dst4, n);
  if (kind == "A") return dct4_left_factor(n);
  if (kind == "B") return exact_scaling_b(n);
  if (kind == "D") return dct4_right_factor(n);
  if (kind == "G") return exact_scaling_g(n);
  if (kind == "J") return sign_alternation(n).to_real();
  if (kind == "ibar") return counter_identity(n).to_real();
  if (kind == "Z") return halve_first(n).to_real();
  if (kind == "shuffle") return perfect_shuffle(half()).to_real();
  if (kind == "bitrev") return bit_reversal(n).to_real();
  if (kind == "butterfly") return butterfly(half()).to_real();
  throw Error(ErrorCode::InvalidArgument, "unknown matrix kind '" + kind + "'");
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_method(item));
  require(!out.empty(), "no scaling method given");
  return out;
}

BaseTransform make_base(const dcs_catalog* c, const std::string& approx, std::size_t base_size,
                        std::size_t target) {
  if (approx == "exact") {
    const std::size_t n = base_size == 0 ? target / 2 : base_size;
    require(n >= 1, "exact base size must be >= 1");
    return BaseTransform::exact_dct(n);
  }
  require(c != nullptr, "a catalog is required for catalog approximations");
  return BaseTransform::from_entry(c->catalog.load(approx));
}

}  // namespace

extern "C" {

const char* dcs_version(void) { return "1.0.0"; }

const char* dcs_status_name(dcs_status status) {
  switch (status) {
    case DCS_OK: return "ok";
    case DCS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DCS_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case DCS_ERR_SINGULAR: return "singular matrix";
    case DCS_ERR_NOT_FOUND: return "not found";
    case DCS_ERR_CHECKSUM: return "checksum mismatch";
    case DCS_ERR_PARSE: return "parse error";
    case DCS_ERR_OVERFLOW: return "overflow";
    case DCS_ERR_IO: return "i/o error";
    case DCS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dcs_last_error(void) { return g_last_error.c_str(); }

void dcs_string_free(char* s) { std::free(s); }

dcs_status dcs_matrix_generate(const char* kind, size_t n, dcs_matrix** out) {
  return guarded([&] {
    require(kind && out, "null argument");
    *out = new dcs_matrix{generate(kind, n)};
  });
}

size_t dcs_matrix_size(const dcs_matrix* m) { return m ? m->m.size() : 0; }

dcs_status dcs_matrix_copy(const dcs_matrix* m, double* out, size_t len) {
  return guarded([&] {
    require(m && out, "null argument");
    const auto data = m->m.data();
    if (len < data.size()) throw Error(ErrorCode::DimensionMismatch, "output buffer too small");
    std::copy(data.begin(), data.end(), out);
  });
}

dcs_status dcs_matrix_format(const dcs_matrix* m, dcs_format format, int decimals, char** out) {
  return guarded([&] {
    require(m && out, "null argument");
    require(decimals >= 0 && decimals <= 17, "decimals must lie in [0, 17]");
    const RealMatrix& a = m->m;
    std::string text;
    if (format == DCS_FORMAT_JSON) {
      text = "{\"size\": " + std::to_string(a.size()) + ", \"rows\": [";
      for (std::size_t r = 0; r < a.size(); ++r) {
        text += r ? ", [" : "[";
        for (std::size_t c = 0; c < a.size(); ++c) text += (c ? ", " : "") + fixed(a(r, c), decimals);
        text += "]";
      }
      text += "]}\n";
    } else if (format == DCS_FORMAT_CSV) {
      for (std::size_t r = 0; r < a.size(); ++r) {
        for (std::size_t c = 0; c < a.size(); ++c) text += (c ? "," : "") + fixed(a(r, c), decimals);
        text += "\r\n";
      }
    } else {
      throw Error(ErrorCode::InvalidArgument, "matrices support csv and json only");
    }
    *out = dup_string(text);
  });
}

void dcs_matrix_free(dcs_matrix* m) { delete m; }

dcs_status dcs_catalog_open(const char* dir, dcs_catalog** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    Catalog cat = dir ? Catalog::open(dir) : Catalog::open();
    auto ids = cat.ids();
    *out = new dcs_catalog{std::move(cat), std::move(ids)};
  });
}

void dcs_catalog_free(dcs_catalog* c) { delete c; }

size_t dcs_catalog_count(const dcs_catalog* c) { return c ? c->ids.size() : 0; }

const char* dcs_catalog_id(const dcs_catalog* c, size_t index) {
  if (!c || index >= c->ids.size()) return nullptr;
  return c->ids[index].c_str();
}

dcs_status dcs_catalog_matrix(const dcs_catalog* c, const char* id, dcs_matrix** out) {
  return guarded([&] {
    require(c && id && out, "null argument");
    *out = new dcs_matrix{c->catalog.load(id).matrix.to_real()};
  });
}

dcs_status dcs_catalog_baseline(const dcs_catalog* c, const char* id, dcs_cost* out) {
  return guarded([&] {
    require(c && id && out, "null argument");
    const Cost cost = c->catalog.load(id).baseline();
    *out = {cost.adds, cost.shifts};
  });
}

dcs_status dcs_scale(const dcs_catalog* c, const char* approx, size_t base_size, const char* methods,
                     size_t target, dcs_scaled** out) {
  return guarded([&] {
    require(approx && methods && out, "null argument");
    const BaseTransform base = make_base(c, approx, base_size, target);
    const std::vector<Method> list = parse_methods(methods);
    ScaledTransform t = scale_to(base, target, list);
    *out = new dcs_scaled{std::move(t), transform_matrix(TransformKind::Dct2, target)};
  });
}

void dcs_scaled_free(dcs_scaled* s) { delete s; }

size_t dcs_scaled_size(const dcs_scaled* s) { return s ? s->t.size() : 0; }

int dcs_scaled_is_dyadic(const dcs_scaled* s) { return s && s->t.factored ? 1 : 0; }

dcs_status dcs_scaled_low_complexity(const dcs_scaled* s, dcs_matrix** out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = new dcs_matrix{s->t.dense};
  });
}

dcs_status dcs_scaled_orthogonalized(const dcs_scaled* s, dcs_matrix** out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = new dcs_matrix{s->t.c_hat};
  });
}

double dcs_scaled_error(const dcs_scaled* s) {
  return s ? frobenius_distance(s->t.c_hat, s->reference) : 0.0;
}

dcs_status dcs_scaled_cost(const dcs_scaled* s, dcs_cost* out) {
  return guarded([&] {
    require(s && out, "null argument");
    require(s->t.factored.has_value(), "transform is not dyadic; no operation count");
    const Cost c = s->t.factored->cost();
    *out = {c.adds, c.shifts};
  });
}

dcs_status dcs_scaled_metrics(const dcs_scaled* s, double rho, dcs_metrics* out) {
  return guarded([&] {
    require(s && out, "null argument");
    const Cost cost = s->t.factored ? s->t.factored->cost() : Cost{};
    const MetricReport r = evaluate(s->t.c_hat, s->reference, rho, cost);
    *out = {r.d, r.epsilon, r.mse, r.cg, r.eta, r.frob, r.adds, r.shifts};
  });
}

dcs_status dcs_scaled_apply(const dcs_scaled* s, const double* x, size_t n, int orthogonalize, double* y) {
  return guarded([&] {
    require(s && x && y, "null argument");
    if (n != s->t.size()) throw Error(ErrorCode::DimensionMismatch, "input length does not match transform size");
    const std::span<const double> in(x, n);
    std::vector<double> out = s->t.factored ? s->t.factored->apply(in) : multiply(s->t.dense, in);
    if (orthogonalize) {
      for (std::size_t i = 0; i < n; ++i) out[i] *= s->t.sigma(i, i);
    }
    std::copy(out.begin(), out.end(), y);
  });
}

dcs_status dcs_scaled_apply_exact(const dcs_scaled* s, const int64_t* x, size_t n, int64_t* numerator,
                                  uint32_t* shift) {
  return guarded([&] {
    require(s && x && numerator && shift, "null argument");
    require(s->t.factored.has_value(), "exact application needs a dyadic transform");
    if (n != s->t.size()) throw Error(ErrorCode::DimensionMismatch, "input length does not match transform size");
    std::vector<DyadicRational> in;
    in.reserve(n);
    for (std::size_t i = 0; i < n; ++i) in.emplace_back(x[i]);
    const std::vector<DyadicRational> out = s->t.factored->apply(std::span<const DyadicRational>(in));
    for (std::size_t i = 0; i < n; ++i) {
      numerator[i] = out[i].numerator();
      shift[i] = out[i].shift();
    }
  });
}

dcs_status dcs_scaled_factored_json(const dcs_scaled* s, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    require(s->t.factored.has_value(), "transform is not dyadic; no factored form");
    *out = dup_string(s->t.factored->to_json(2) + "\n");
  });
}

dcs_status dcs_check_orthogonality(const dcs_catalog* c, const char* approx, size_t base_size, const char* method,
                                   dcs_orthogonality* out) {
  return guarded([&] {
    require(approx && method && out, "null argument");
    const BaseTransform base = make_base(c, approx, base_size, 16);
    const OrthogonalityCheck r = check_orthogonality(base, parse_method(method));
    *out = {r.cond_i, r.cond_ii, r.cond_iii, r.orthogonal};
  });
}

size_t dcs_identity_count(void) { return all_identities().size(); }

const char* dcs_identity_name(size_t index) {
  const auto ids = all_identities();
  return index < ids.size() ? identity_name(ids[index]).data() : nullptr;
}

int dcs_identity_requires_power_of_two(size_t index) {
  const auto ids = all_identities();
  return index < ids.size() && identity_requires_power_of_two(ids[index]) ? 1 : 0;
}

dcs_status dcs_verify_identity(const char* name, size_t n, double* residual) {
  return guarded([&] {
    require(name && residual, "null argument");
    *residual = verify_identity(parse_identity(name), n);
  });
}

dcs_status dcs_tables_render(const dcs_catalog* c, const char* id, dcs_format format, char** out, int* all_ok) {
  return guarded([&] {
    require(c && id && out, "null argument");
    const Format f = to_format(format);
    std::vector<TableDocument> docs;
    if (std::string_view(id) == "all") {
      docs = reproduce_all(c->catalog);
    } else {
      docs.push_back(reproduce_table(id, c->catalog));
    }
    bool ok = true;
    for (const auto& d : docs) ok = ok && d.all_ok();
    *out = dup_string(render(docs, f));
    if (all_ok) *all_ok = ok ? 1 : 0;
  });
}

size_t dcs_table_count(void) { return table_ids().size(); }

const char* dcs_table_id(size_t index) {
  static const std::vector<std::string> ids = table_ids();
  return index < ids.size() ? ids[index].c_str() : nullptr;
}

}  // extern "C"
