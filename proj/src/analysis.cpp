#include "dctscale/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "dctscale/error.hpp"
#include "dctscale/exact.hpp"
#include "dctscale/metrics.hpp"
#include "json.hpp"

namespace dctscale {

namespace {

constexpr std::string_view kMetricsPrefix = "metrics-";

std::string fixed(double v, int decimals) {
  char buf[64];
  if (decimals < 0) {
    std::snprintf(buf, sizeof buf, "%.3e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  }
  std::string s(buf);
  // A rounded negative zero prints as "-0.00".
  if (s.find_first_not_of("-0.e+") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

int delta_decimals(const TableCell& c) { return c.decimals <= 0 ? c.decimals : c.decimals + 1; }

std::string cell_text(const TableCell& c, double v) {
  if (c.flag) return v != 0.0 ? "Yes" : "No";
  return fixed(v, c.decimals);
}

TableCell compared(std::string column, double value, int decimals, double printed, golden::Tolerance tol) {
  TableCell c{std::move(column), value, decimals, false, printed, tol.accepts(value, printed)};
  return c;
}

TableCell plain(std::string column, double value, int decimals) {
  return TableCell{std::move(column), value, decimals, false, std::nullopt, std::nullopt};
}

TableDocument scaling_families_table() {
  TableDocument doc{"scaling-families", "Frobenius error of the scaled exact DCT", {}, {}};
  for (std::size_t n : golden::kScalingSizes) doc.columns.push_back("N=" + std::to_string(n));
  doc.columns.push_back("Orth.?");
  for (const auto& g : golden::scaling_families()) {
    TableRow row{std::string(method_name(g.method)), {}};
    bool orthogonal = true;
    for (std::size_t i = 0; i < golden::kScalingSizes.size(); ++i) {
      const std::size_t n = golden::kScalingSizes[i];
      const ScaledTransform s = scale(BaseTransform::exact_dct(n), g.method);
      const double err = frobenius_distance(s.c_hat, transform_matrix(TransformKind::Dct2, 2 * n));
      row.cells.push_back(compared(doc.columns[i], err, 3, g.error[i], golden::kScalingTolerance));
      orthogonal = orthogonal && max_abs_difference(gram(s.c_hat), RealMatrix::identity(2 * n)) <= 1e-10;
    }
    TableCell orth{"Orth.?", orthogonal ? 1.0 : 0.0, 0, true, g.orthogonal ? 1.0 : 0.0,
                   orthogonal == g.orthogonal};
    row.cells.push_back(orth);
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

std::vector<LinearFit> fits_by_method(const Catalog& catalog) {
  std::vector<LinearFit> fits;
  for (Method m : approximate_methods()) fits.push_back(fit(catalog_error_points(catalog, m)));
  return fits;
}

TableDocument regression_table(const Catalog& catalog) {
  TableDocument doc{"regression", "Least-squares fit of 16-point error on 8-point error",
                    {"m_hat", "b_hat", "chi2", "RMSE"}, {}};
  const std::vector<LinearFit> fits = fits_by_method(catalog);
  for (const auto& g : golden::regression()) {
    const LinearFit& f = fits[static_cast<std::size_t>(g.method)];
    doc.rows.push_back({std::string(method_name(g.method)),
                        {compared("m_hat", f.m_hat, 3, g.m_hat, golden::kSlopeTolerance),
                         compared("b_hat", f.b_hat, 3, g.b_hat, golden::kSlopeTolerance),
                         compared("chi2", f.chi2, -1, g.chi2, golden::kStatisticTolerance),
                         compared("RMSE", f.rmse, -1, g.rmse, golden::kStatisticTolerance)}});
  }
  return doc;
}

TableDocument break_point_table(const Catalog& catalog) {
  TableDocument doc{"break-point", "Largest 8-point error for which a method beats JAM", {"x*"}, {}};
  const std::vector<LinearFit> fits = fits_by_method(catalog);
  const LinearFit& jam = fits[static_cast<std::size_t>(Method::Jam)];
  for (const auto& g : golden::break_points()) {
    const double x = break_point(jam, fits[static_cast<std::size_t>(g.method)]);
    doc.rows.push_back({std::string(method_name(g.method)),
                        {compared("x*", x, 3, g.x, golden::kBreakPointTolerance)}});
  }
  return doc;
}

TableDocument error_points_table(const Catalog& catalog) {
  TableDocument doc{"error-points", "8-point error against 16-point error per scaling method", {"x"}, {}};
  std::vector<std::vector<ErrorPoint>> per_method;
  for (Method m : approximate_methods()) {
    doc.columns.push_back("y_" + std::string(method_name(m)));
    per_method.push_back(catalog_error_points(catalog, m));
  }
  const std::vector<std::string> ids = catalog.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    TableRow row{ids[i], {plain("x", per_method[0][i].x, 3)}};
    for (std::size_t k = 0; k < per_method.size(); ++k) {
      row.cells.push_back(plain(doc.columns[k + 1], per_method[k][i].y, 3));
    }
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

TableDocument metrics_table(std::string_view id, const Catalog& catalog) {
  const ApproximationEntry& entry = catalog.load(id);
  const golden::MetricTable& g = golden::metric_table(id);
  TableDocument doc{std::string(kMetricsPrefix) + std::string(id),
                    "Metrics for scaling methods using " + entry.id,
                    {"d", "epsilon", "MSE", "Cg", "eta", "A", "S"},
                    {}};
  const RealMatrix c16 = transform_matrix(TransformKind::Dct2, 16);
  const BaseTransform base = BaseTransform::from_entry(entry);
  for (const golden::MetricRow& p : g.rows) {
    const ScaledTransform s = scale(base, p.method);
    const MetricReport r = evaluate(s.c_hat, c16, kDefaultRho, s.factored->cost());
    const golden::Tolerance exact{0.0, 0.0};
    doc.rows.push_back({std::string(method_name(p.method)),
                        {compared("d", r.d, 2, p.d, golden::kDTolerance),
                         compared("epsilon", r.epsilon, 3, p.epsilon, golden::kEpsilonTolerance),
                         compared("MSE", r.mse, 2, p.mse, golden::kMseTolerance),
                         compared("Cg", r.cg, 2, p.cg, golden::kCodingGainTolerance),
                         compared("eta", r.eta, 2, p.eta, golden::kEfficiencyTolerance),
                         compared("A", static_cast<double>(r.adds), 0, static_cast<double>(p.adds), exact),
                         compared("S", static_cast<double>(r.shifts), 0, static_cast<double>(p.shifts), exact)}});
  }
  return doc;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render_markdown(std::span<const TableDocument> docs) {
  std::ostringstream out;
  bool first = true;
  for (const TableDocument& doc : docs) {
    if (!first) out << '\n';
    first = false;
    out << "### " << doc.id << ": " << doc.title << "\n\n| |";
    for (const auto& c : doc.columns) out << ' ' << c << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out << "---|";
    out << '\n';
    for (const TableRow& row : doc.rows) {
      out << "| " << row.label << " |";
      for (const TableCell& c : row.cells) {
        out << ' ' << cell_text(c, c.value);
        if (c.printed) {
          out << " [" << cell_text(c, *c.printed);
          if (!c.flag) out << ", " << (*c.delta() >= 0 ? "+" : "") << fixed(*c.delta(), delta_decimals(c));
          out << ']';
        }
        if (c.ok && !*c.ok) out << " !";
        out << " |";
      }
      out << '\n';
    }
    out << "\nstatus: " << (doc.all_ok() ? "ok" : "MISMATCH") << '\n';
  }
  return out.str();
}

std::string render_csv(std::span<const TableDocument> docs) {
  std::ostringstream out;
  out << "table,row,column,computed,printed,delta,ok\r\n";
  for (const TableDocument& doc : docs)
    for (const TableRow& row : doc.rows)
      for (const TableCell& c : row.cells) {
        out << csv_quote(doc.id) << ',' << csv_quote(row.label) << ',' << csv_quote(c.column) << ','
            << cell_text(c, c.value) << ',';
        if (c.printed) out << cell_text(c, *c.printed);
        out << ',';
        if (c.printed && !c.flag) out << fixed(*c.delta(), delta_decimals(c));
        out << ',';
        if (c.ok) out << (*c.ok ? "true" : "false");
        out << "\r\n";
      }
  return out.str();
}

std::string render_json(std::span<const TableDocument> docs) {
  using nlohmann::ordered_json;
  ordered_json all = ordered_json::array();
  for (const TableDocument& doc : docs) {
    ordered_json rows = ordered_json::array();
    for (const TableRow& row : doc.rows) {
      ordered_json cells = ordered_json::object();
      for (const TableCell& c : row.cells) {
        ordered_json cell;
        cell["computed"] = c.flag ? ordered_json(c.value != 0.0) : ordered_json(c.value);
        if (c.printed) {
          cell["printed"] = c.flag ? ordered_json(*c.printed != 0.0) : ordered_json(*c.printed);
          if (!c.flag) cell["delta"] = *c.delta();
        }
        if (c.ok) cell["ok"] = *c.ok;
        cells[c.column] = std::move(cell);
      }
      rows.push_back({{"label", row.label}, {"cells", std::move(cells)}});
    }
    all.push_back({{"id", doc.id},
                   {"title", doc.title},
                   {"columns", doc.columns},
                   {"ok", doc.all_ok()},
                   {"rows", std::move(rows)}});
  }
  return all.dump(2) + "\n";
}

}  // namespace

LinearFit fit(std::span<const ErrorPoint> points) {
  const std::size_t n = points.size();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "regression needs at least 3 points");
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    sx += p.x;
    sy += p.y;
  }
  const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "regression needs two distinct x values");
  LinearFit f;
  f.m_hat = sxy / sxx;
  f.b_hat = my - f.m_hat * mx;
  for (const auto& p : points) {
    const double r = p.y - (f.m_hat * p.x + f.b_hat);
    f.chi2 += r * r;
  }
  f.rmse = std::sqrt(f.chi2 / static_cast<double>(n - 2));
  return f;
}

double break_point(const LinearFit& a, const LinearFit& b) {
  if (a.m_hat == b.m_hat) throw Error(ErrorCode::InvalidArgument, "parallel lines have no break point");
  return (a.b_hat - b.b_hat) / (b.m_hat - a.m_hat);
}

std::vector<ErrorPoint> catalog_error_points(const Catalog& catalog, Method method) {
  const RealMatrix c8 = transform_matrix(TransformKind::Dct2, 8);
  const RealMatrix c16 = transform_matrix(TransformKind::Dct2, 16);
  std::vector<ErrorPoint> points;
  for (const std::string& id : catalog.ids()) {
    const ApproximationEntry& e = catalog.load(id);
    const double x = frobenius_distance(orthogonalize(e.matrix).c_hat, c8);
    const double y = frobenius_distance(scale(BaseTransform::from_entry(e), method).c_hat, c16);
    points.push_back({id, x, y});
  }
  return points;
}

std::optional<double> TableCell::delta() const {
  if (!printed) return std::nullopt;
  return value - *printed;
}

bool TableDocument::all_ok() const {
  for (const auto& r : rows)
    for (const auto& c : r.cells) {
      if (c.ok && !*c.ok) return false;
    }
  return true;
}

std::vector<std::string> table_ids() {
  std::vector<std::string> ids = {"scaling-families", "regression", "break-point", "error-points"};
  for (std::string_view id : catalog_ids()) ids.push_back(std::string(kMetricsPrefix) + std::string(id));
  return ids;
}

TableDocument reproduce_table(std::string_view id, const Catalog& catalog) {
  if (id == "scaling-families") return scaling_families_table();
  if (id == "regression") return regression_table(catalog);
  if (id == "break-point") return break_point_table(catalog);
  if (id == "error-points") return error_points_table(catalog);
  if (id.starts_with(kMetricsPrefix)) {
    const std::string_view entry = id.substr(kMetricsPrefix.size());
    for (std::string_view known : catalog_ids()) {
      if (known == entry) return metrics_table(entry, catalog);
    }
  }
  throw Error(ErrorCode::NotFound, "unknown table '" + std::string(id) + "'");
}

std::vector<TableDocument> reproduce_all(const Catalog& catalog) {
  std::vector<std::future<TableDocument>> jobs;
  for (const std::string& id : table_ids()) {
    jobs.push_back(std::async(std::launch::async, [id, &catalog] { return reproduce_table(id, catalog); }));
  }
  std::vector<TableDocument> docs;
  for (auto& j : jobs) docs.push_back(j.get());
  return docs;
}

Format parse_format(std::string_view name) {
  if (name == "markdown" || name == "md") return Format::Markdown;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "'");
}

std::string render(std::span<const TableDocument> docs, Format format) {
  switch (format) {
    case Format::Markdown: return render_markdown(docs);
    case Format::Csv: return render_csv(docs);
    case Format::Json: return render_json(docs);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown format");
}

}  // namespace dctscale
