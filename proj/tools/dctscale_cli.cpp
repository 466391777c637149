// Command-line front end. Links only the C interface; every verb builds its
// whole output in memory and prints it only after all work succeeded.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dctscale/dctscale.h"

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(dcs_status s) {
  if (s != DCS_OK) throw Failure(std::string(dcs_status_name(s)) + ": " + dcs_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using MatrixPtr = std::unique_ptr<dcs_matrix, Deleter<dcs_matrix, dcs_matrix_free>>;
using CatalogPtr = std::unique_ptr<dcs_catalog, Deleter<dcs_catalog, dcs_catalog_free>>;
using ScaledPtr = std::unique_ptr<dcs_scaled, Deleter<dcs_scaled, dcs_scaled_free>>;

std::string take(char* s) {
  std::string out(s);
  dcs_string_free(s);
  return out;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

dcs_format matrix_format(const std::string& name) {
  if (name == "csv") return DCS_FORMAT_CSV;
  if (name == "json") return DCS_FORMAT_JSON;
  throw Failure("unknown matrix format '" + name + "'");
}

CatalogPtr open_catalog(const std::string& dir) {
  dcs_catalog* c = nullptr;
  check(dcs_catalog_open(dir.empty() ? nullptr : dir.c_str(), &c));
  return CatalogPtr(c);
}

struct ScaleOptions {
  std::string approx;
  std::string method = "JAM";
  std::size_t size = 16;
  std::size_t base_size = 0;
};

void add_scale_options(CLI::App* cmd, ScaleOptions& o) {
  cmd->add_option("--approx", o.approx, "catalog id or 'exact'")->required();
  cmd->add_option("--method", o.method, "JAM, I..VII, EXACT, or a comma-separated list per level")
      ->capture_default_str();
  cmd->add_option("--size", o.size, "output size (16, 32 or 64)")->capture_default_str();
  cmd->add_option("--base-size", o.base_size, "exact base size (default size/2)");
}

ScaledPtr run_scale(const std::string& catalog_dir, const ScaleOptions& o) {
  if (o.size != 16 && o.size != 32 && o.size != 64) throw Failure("--size must be 16, 32 or 64");
  CatalogPtr cat;
  if (o.approx != "exact") cat = open_catalog(catalog_dir);
  dcs_scaled* s = nullptr;
  check(dcs_scale(cat.get(), o.approx.c_str(), o.base_size, o.method.c_str(), o.size, &s));
  return ScaledPtr(s);
}

std::vector<std::vector<std::string>> read_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure("cannot open input file '" + path + "'");
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> v;
    for (std::string tok; ss >> tok;) v.push_back(tok);
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

std::string cmd_gen(const std::string& kind, std::size_t size, const std::string& format, int decimals) {
  dcs_matrix* m = nullptr;
  check(dcs_matrix_generate(kind.c_str(), size, &m));
  MatrixPtr owned(m);
  char* text = nullptr;
  check(dcs_matrix_format(m, matrix_format(format), decimals, &text));
  return take(text);
}

std::string cmd_scale(const std::string& dir, const ScaleOptions& o, bool orthogonalize, bool factored,
                      const std::string& format, int decimals) {
  ScaledPtr s = run_scale(dir, o);
  const double err = dcs_scaled_error(s.get());
  if (factored) {
    char* json = nullptr;
    check(dcs_scaled_factored_json(s.get(), &json));
    return take(json);
  }
  dcs_matrix* m = nullptr;
  check(orthogonalize ? dcs_scaled_orthogonalized(s.get(), &m) : dcs_scaled_low_complexity(s.get(), &m));
  MatrixPtr owned(m);
  char* text = nullptr;
  check(dcs_matrix_format(m, matrix_format(format), decimals, &text));
  std::string body = take(text);
  if (format == "json") {
    body.pop_back();  // trailing newline
    return "{\"approx\": \"" + o.approx + "\", \"method\": \"" + o.method + "\", \"size\": " +
           std::to_string(o.size) + ", \"orthogonalized\": " + (orthogonalize ? "true" : "false") +
           ", \"matrix\": " + body + ", \"frobenius_error\": " + fixed(err, 3) + "}\n";
  }
  return body + "frobenius_error," + fixed(err, 3) + "\r\n";
}

std::string cmd_metrics(const std::string& dir, const ScaleOptions& o, double rho, const std::string& format) {
  ScaledPtr s = run_scale(dir, o);
  dcs_metrics r{};
  check(dcs_scaled_metrics(s.get(), rho, &r));
  const bool dyadic = dcs_scaled_is_dyadic(s.get()) != 0;
  const std::string a = dyadic ? std::to_string(r.adds) : "";
  const std::string sh = dyadic ? std::to_string(r.shifts) : "";
  if (format == "json") {
    return "{\"approx\": \"" + o.approx + "\", \"method\": \"" + o.method + "\", \"size\": " +
           std::to_string(o.size) + ", \"d\": " + fixed(r.d, 2) + ", \"epsilon\": " + fixed(r.epsilon, 3) +
           ", \"mse\": " + fixed(r.mse, 2) + ", \"cg\": " + fixed(r.cg, 2) + ", \"eta\": " + fixed(r.eta, 2) +
           ", \"frobenius\": " + fixed(r.frob, 3) + ", \"adds\": " + (dyadic ? a : "null") +
           ", \"shifts\": " + (dyadic ? sh : "null") + "}\n";
  }
  if (format != "csv") throw Failure("unknown format '" + format + "'");
  return "approx,method,size,d,epsilon,mse,cg,eta,frobenius,adds,shifts\r\n" + o.approx + "," + o.method + "," +
         std::to_string(o.size) + "," + fixed(r.d, 2) + "," + fixed(r.epsilon, 3) + "," + fixed(r.mse, 2) + "," +
         fixed(r.cg, 2) + "," + fixed(r.eta, 2) + "," + fixed(r.frob, 3) + "," + a + "," + sh + "\r\n";
}

std::string cmd_apply(const std::string& dir, const ScaleOptions& o, const std::string& input, bool integer,
                      bool orthogonalize, int decimals) {
  if (integer && orthogonalize) throw Failure("--int and --orthogonalize are mutually exclusive");
  ScaledPtr s = run_scale(dir, o);
  const std::size_t n = dcs_scaled_size(s.get());
  std::string out;
  std::size_t line = 0;
  for (const auto& tokens : read_vectors(input)) {
    ++line;
    if (tokens.size() != n) {
      throw Failure("input vector " + std::to_string(line) + " has " + std::to_string(tokens.size()) +
                    " entries, expected " + std::to_string(n));
    }
    std::vector<std::string> cells;
    if (integer) {
      std::vector<std::int64_t> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t pos = 0;
        try {
          x[i] = std::stoll(tokens[i], &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos == 0 || pos != tokens[i].size()) {
          throw Failure("input vector " + std::to_string(line) + ": '" + tokens[i] + "' is not an integer");
        }
      }
      std::vector<std::int64_t> num(n);
      std::vector<std::uint32_t> sh(n);
      check(dcs_scaled_apply_exact(s.get(), x.data(), n, num.data(), sh.data()));
      for (std::size_t i = 0; i < n; ++i) {
        cells.push_back(sh[i] == 0 ? std::to_string(num[i])
                                   : std::to_string(num[i]) + "/" + std::to_string(std::uint64_t{1} << sh[i]));
      }
    } else {
      std::vector<double> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t pos = 0;
        try {
          x[i] = std::stod(tokens[i], &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos == 0 || pos != tokens[i].size() || !std::isfinite(x[i])) {
          throw Failure("input vector " + std::to_string(line) + ": '" + tokens[i] + "' is not a number");
        }
      }
      check(dcs_scaled_apply(s.get(), x.data(), n, orthogonalize ? 1 : 0, y.data()));
      for (double v : y) cells.push_back(fixed(v, decimals));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? " " : "") + cells[i];
    out += "\n";
  }
  return out;
}

std::string cmd_tables(const std::string& dir, const std::string& id, const std::string& format, bool strict) {
  dcs_format f = DCS_FORMAT_MARKDOWN;
  if (format == "csv") {
    f = DCS_FORMAT_CSV;
  } else if (format == "json") {
    f = DCS_FORMAT_JSON;
  } else if (format != "markdown") {
    throw Failure("unknown format '" + format + "'");
  }
  CatalogPtr cat = open_catalog(dir);
  char* text = nullptr;
  int ok = 0;
  check(dcs_tables_render(cat.get(), id.c_str(), f, &text, &ok));
  std::string out = take(text);
  if (strict && !ok) throw Failure("reproduced values differ from the published ones:\n" + out);
  return out;
}

std::string cmd_verify(std::size_t max_size, double tol, bool& all_ok) {
  if (max_size < 2) throw Failure("--max-size must be >= 2");
  std::string out = "identity,N,max_residual,ok\r\n";
  all_ok = true;
  for (std::size_t i = 0; i < dcs_identity_count(); ++i) {
    const std::string name = dcs_identity_name(i);
    for (std::size_t n = 2; n <= max_size; n *= 2) {
      double r = 0.0;
      check(dcs_verify_identity(name.c_str(), n, &r));
      const bool ok = r <= tol;
      all_ok = all_ok && ok;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3e", r);
      out += name + "," + std::to_string(n) + "," + buf + "," + (ok ? "true" : "false") + "\r\n";
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scaled low-complexity DCT approximations"};
  app.require_subcommand(1);
  std::string catalog_dir;
  app.add_option("--catalog-dir", catalog_dir, "directory holding MANIFEST and matrix files");

  std::string kind, format = "csv";
  std::size_t gen_size = 8;
  int decimals = 6;
  auto* gen = app.add_subcommand("gen", "print a structural or transform matrix");
  gen->add_option("--kind", kind, "dct2 dct4 dst4 A B D G J ibar Z shuffle bitrev butterfly")->required();
  gen->add_option("--size", gen_size, "matrix dimension")->required();
  gen->add_option("--format", format, "csv or json")->capture_default_str();
  gen->add_option("--decimals", decimals, "fixed decimals per entry")->capture_default_str();

  ScaleOptions scale_opts;
  bool orthogonalize = false, factored = false;
  auto* scale = app.add_subcommand("scale", "scale an 8-point approximation and print T or C_hat");
  add_scale_options(scale, scale_opts);
  scale->add_flag("--orthogonalize", orthogonalize, "print C_hat instead of T");
  scale->add_flag("--factored", factored, "print the factored form and its cost as JSON");
  scale->add_option("--format", format, "csv or json")->capture_default_str();
  scale->add_option("--decimals", decimals, "fixed decimals per entry")->capture_default_str();

  ScaleOptions metric_opts;
  double rho = 0.95;
  std::string metric_format = "csv";
  auto* metrics = app.add_subcommand("metrics", "print the figure-of-merit row of a scaled transform");
  add_scale_options(metrics, metric_opts);
  metrics->add_option("--rho", rho, "AR(1) correlation coefficient")->capture_default_str();
  metrics->add_option("--format", metric_format, "csv or json")->capture_default_str();

  ScaleOptions apply_opts;
  std::string input;
  bool integer = false, apply_orth = false;
  auto* apply = app.add_subcommand("apply", "transform vectors read from a file, one per line");
  add_scale_options(apply, apply_opts);
  apply->add_option("--input", input, "whitespace-separated vectors, one per line")->required();
  apply->add_flag("--int", integer, "integer inputs; exact dyadic outputs");
  apply->add_flag("--orthogonalize", apply_orth, "multiply by Sigma after T");
  apply->add_option("--decimals", decimals, "fixed decimals per entry")->capture_default_str();

  std::string table_id, table_format = "markdown";
  bool strict = false;
  auto* tables = app.add_subcommand("tables", "regenerate published tables with per-cell deltas");
  tables->add_option("--id", table_id, "table id or 'all'")->required();
  tables->add_option("--format", table_format, "markdown, csv or json")->capture_default_str();
  tables->add_flag("--strict", strict, "fail when any cell is out of tolerance");

  std::size_t max_size = 64;
  double tol = 1e-10;
  auto* verify = app.add_subcommand("verify", "check the exact factorization identities");
  verify->add_option("--max-size", max_size, "largest N checked (powers of two from 2)")->capture_default_str();
  verify->add_option("--tol", tol, "largest accepted residual")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    std::string out;
    int code = 0;
    if (*gen) {
      out = cmd_gen(kind, gen_size, format, decimals);
    } else if (*scale) {
      out = cmd_scale(catalog_dir, scale_opts, orthogonalize, factored, format, decimals);
    } else if (*metrics) {
      out = cmd_metrics(catalog_dir, metric_opts, rho, metric_format);
    } else if (*apply) {
      out = cmd_apply(catalog_dir, apply_opts, input, integer, apply_orth, decimals);
    } else if (*tables) {
      out = cmd_tables(catalog_dir, table_id, table_format, strict);
    } else if (*verify) {
      bool ok = true;
      out = cmd_verify(max_size, tol, ok);
      code = ok ? 0 : 3;
    }
    std::cout << out << std::flush;
    return code;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::cerr << "error: " << msg.substr(0, msg.find('\n')) << '\n';
    return 1;
  }
}
