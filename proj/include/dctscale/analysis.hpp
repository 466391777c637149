#pragma once

// Error-model regression over the catalog, break points between scaling
// methods, and regeneration of the published tables next to their printed
// values.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctscale/catalog.hpp"
#include "dctscale/golden.hpp"
#include "dctscale/scaler.hpp"

namespace dctscale {

struct ErrorPoint {
  std::string id;
  double x = 0.0;  // ||C_hat_8 - C_8||_F
  double y = 0.0;  // ||C_hat_16 - C_16||_F
};

struct LinearFit {
  double m_hat = 0.0;
  double b_hat = 0.0;
  double chi2 = 0.0;  // sum of squared residuals
  double rmse = 0.0;  // sqrt(chi2 / (n - 2))
};

// Ordinary least squares y = m x + b. Needs >= 3 points and two distinct x.
LinearFit fit(std::span<const ErrorPoint> points);

// x where the two lines cross. Throws InvalidArgument for parallel lines.
double break_point(const LinearFit& a, const LinearFit& b);

// One point per catalog entry, in catalog order.
std::vector<ErrorPoint> catalog_error_points(const Catalog& catalog, Method method);

struct TableCell {
  std::string column;
  double value = 0.0;
  int decimals = 3;  // < 0: scientific with 4 significant digits; flag cells print Yes/No
  bool flag = false;
  std::optional<double> printed;
  std::optional<bool> ok;

  std::optional<double> delta() const;
};

struct TableRow {
  std::string label;
  std::vector<TableCell> cells;
};

struct TableDocument {
  std::string id;
  std::string title;
  std::vector<std::string> columns;
  std::vector<TableRow> rows;

  // False when any compared cell is out of tolerance.
  bool all_ok() const;
};

// "scaling-families", "regression", "break-point", "error-points",
// "metrics-<catalog id>" for each entry.
std::vector<std::string> table_ids();

// Throws NotFound for an unknown id.
TableDocument reproduce_table(std::string_view id, const Catalog& catalog);
// Every table in table_ids() order; "all" in the CLI.
std::vector<TableDocument> reproduce_all(const Catalog& catalog);

enum class Format { Markdown, Csv, Json };
Format parse_format(std::string_view name);
std::string render(std::span<const TableDocument> docs, Format format);

}  // namespace dctscale
