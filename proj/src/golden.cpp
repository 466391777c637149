#include "dctscale/golden.hpp"

#include <cmath>
#include <string>

#include "dctscale/error.hpp"

namespace dctscale::golden {

namespace {

using enum Method;

constexpr std::array<ScalingFamilyRow, 8> kScaling = {{
    {Jam, {3.994, 5.653, 7.997}, true},
    {I, {3.826, 5.533, 7.912}, true},
    {II, {4.001, 5.657, 8.000}, true},
    {III, {4.001, 5.657, 8.000}, true},
    {IV, {3.826, 5.533, 7.912}, true},
    {V, {4.006, 5.661, 8.003}, true},
    {VI, {1.954, 3.033, 4.515}, true},
    {VII, {1.954, 3.033, 4.515}, true},
}};

constexpr std::array<RegressionRow, 8> kRegression = {{
    {Jam, 0.264, 3.833, 7.979e-2, 9.987e-2},
    {I, 0.426, 3.561, 3.599e-2, 6.708e-2},
    {II, 0.413, 3.746, 3.177e-2, 6.243e-2},
    {III, 0.413, 3.746, 3.177e-2, 6.243e-2},
    {IV, 0.431, 3.555, 3.636e-2, 6.742e-2},
    {V, 0.562, 3.636, 5.220e-2, 8.077e-2},
    {VI, 1.045, 1.319, 1.531e-1, 1.383e-1},
    {VII, 1.045, 1.319, 1.531e-1, 1.383e-1},
}};

// III is printed as 1.664 although its fitted line equals II's.
constexpr std::array<BreakPointRow, 7> kBreakPoints = {{
    {I, 1.679}, {II, 0.584}, {III, 1.664}, {IV, 1.664}, {V, 0.661}, {VI, 3.219}, {VII, 3.219},
}};

constexpr std::array<MetricTable, 10> kMetrics = {{
    {"bas1",
     {{
         {Jam, 0.00, 14.62, 0.14, 8.16, 70.98, 48, 0},
         {I, 0.00, 15.04, 0.34, 8.16, 70.98, 48, 0},
         {II, 0.00, 15.79, 0.35, 8.16, 70.98, 48, 0},
         {III, 0.00, 15.79, 0.35, 8.16, 70.98, 48, 0},
         {IV, 0.00, 15.13, 0.36, 7.16, 57.36, 48, 0},
         {V, 0.00, 16.62, 0.42, 7.16, 57.36, 48, 0},
         {VI, 0.00, 13.88, 0.40, 7.16, 57.36, 48, 0},
         {VII, 0.00, 13.88, 0.40, 7.16, 57.36, 48, 0},
     }}},
    {"bas2",
     {{
         {Jam, 0.00, 14.58, 0.14, 8.37, 71.83, 52, 4},
         {I, 0.00, 15.19, 0.35, 8.37, 71.83, 52, 4},
         {II, 0.00, 15.61, 0.36, 8.37, 71.83, 52, 4},
         {III, 0.00, 15.61, 0.36, 8.37, 71.83, 52, 4},
         {IV, 0.00, 15.23, 0.37, 7.48, 58.83, 52, 4},
         {V, 0.00, 16.67, 0.44, 7.48, 58.83, 52, 4},
         {VI, 0.00, 13.84, 0.42, 7.48, 58.83, 52, 4},
         {VII, 0.00, 13.84, 0.42, 7.48, 58.83, 52, 4},
     }}},
    {"bas3",
     {{
         {Jam, 0.00, 14.67, 0.14, 8.16, 70.80, 52, 0},
         {I, 0.00, 15.36, 0.36, 8.16, 70.80, 52, 0},
         {II, 0.00, 15.57, 0.37, 8.16, 70.80, 52, 0},
         {III, 0.00, 15.57, 0.37, 8.16, 70.80, 52, 0},
         {IV, 0.00, 15.36, 0.37, 7.41, 59.95, 52, 0},
         {V, 0.00, 16.70, 0.44, 7.41, 59.95, 52, 0},
         {VI, 0.00, 13.94, 0.42, 7.41, 59.95, 52, 0},
         {VII, 0.00, 13.94, 0.42, 7.41, 59.95, 52, 0},
     }}},
    {"bas4",
     {{
         {Jam, 0.00, 13.18, 0.13, 8.19, 70.65, 64, 0},
         {I, 0.00, 12.65, 0.34, 8.19, 70.65, 64, 0},
         {II, 0.00, 13.18, 0.36, 8.19, 70.65, 64, 0},
         {III, 0.00, 13.18, 0.36, 8.19, 70.65, 64, 0},
         {IV, 0.00, 12.65, 0.34, 8.19, 70.65, 64, 0},
         {V, 0.00, 13.18, 0.13, 8.19, 70.65, 64, 0},
         {VI, 0.00, 7.40, 0.06, 8.19, 70.65, 64, 0},
         {VII, 0.00, 7.40, 0.06, 8.19, 70.65, 64, 0},
     }}},
    {"rdct",
     {{
         {Jam, 0.00, 12.93, 0.12, 8.43, 72.23, 60, 0},
         {I, 0.00, 12.25, 0.31, 8.43, 72.23, 60, 0},
         {II, 0.00, 12.82, 0.30, 8.43, 72.23, 60, 0},
         {III, 0.00, 12.82, 0.30, 8.43, 72.23, 60, 0},
         {IV, 0.00, 12.25, 0.34, 7.50, 59.87, 60, 0},
         {V, 0.00, 12.65, 0.14, 7.50, 59.87, 60, 0},
         {VI, 0.00, 6.80, 0.07, 7.50, 59.87, 60, 0},
         {VII, 0.00, 6.80, 0.07, 7.50, 59.87, 60, 0},
     }}},
    {"mrdct",
     {{
         {Jam, 0.00, 12.77, 0.13, 7.58, 66.07, 44, 0},
         {I, 0.00, 13.19, 0.34, 7.58, 66.07, 44, 0},
         {II, 0.00, 13.72, 0.34, 7.58, 66.07, 44, 0},
         {III, 0.00, 13.72, 0.34, 7.58, 66.07, 44, 0},
         {IV, 0.00, 13.19, 0.36, 6.48, 52.20, 44, 0},
         {V, 0.00, 14.39, 0.25, 6.48, 52.20, 44, 0},
         {VI, 0.00, 9.67, 0.18, 6.48, 52.20, 44, 0},
         {VII, 0.00, 9.67, 0.18, 6.48, 52.20, 44, 0},
     }}},
    {"abdct",
     {{
         {Jam, 0.00, 12.63, 0.12, 8.88, 76.81, 64, 12},
         {I, 0.00, 12.21, 0.31, 8.88, 76.81, 64, 12},
         {II, 0.00, 12.75, 0.32, 8.88, 76.81, 64, 12},
         {III, 0.00, 12.75, 0.32, 8.88, 76.81, 64, 12},
         {IV, 0.00, 12.21, 0.34, 8.18, 63.79, 64, 12},
         {V, 0.00, 12.81, 0.14, 8.18, 63.79, 64, 12},
         {VI, 0.00, 6.56, 0.07, 8.18, 63.79, 64, 12},
         {VII, 0.00, 6.56, 0.07, 8.18, 63.79, 64, 12},
     }}},
    {"sdct",
     {{
         {Jam, 0.20, 12.83, 0.13, 6.27, 68.82, 64, 0},
         {I, 0.20, 12.42, 0.34, 6.27, 68.82, 64, 0},
         {II, 0.20, 12.96, 0.36, 6.27, 68.82, 64, 0},
         {III, 0.20, 12.96, 0.36, 6.27, 68.82, 64, 0},
         {IV, 0.20, 12.42, 0.38, 5.57, 58.11, 64, 0},
         {V, 0.20, 13.12, 0.16, 5.57, 58.11, 64, 0},
         {VI, 0.20, 7.29, 0.09, 5.57, 58.11, 64, 0},
         {VII, 0.20, 7.29, 0.09, 5.57, 58.11, 64, 0},
     }}},
    {"lodct",
     {{
         {Jam, 0.00, 12.67, 0.12, 8.64, 73.11, 64, 4},
         {I, 0.00, 12.15, 0.30, 8.64, 73.11, 64, 4},
         {II, 0.00, 12.69, 0.31, 8.64, 73.11, 64, 4},
         {III, 0.00, 12.69, 0.31, 8.64, 73.11, 64, 4},
         {IV, 0.00, 12.15, 0.34, 7.83, 61.49, 64, 4},
         {V, 0.00, 12.68, 0.14, 7.83, 61.49, 64, 4},
         {VI, 0.00, 6.30, 0.07, 7.83, 61.49, 64, 4},
         {VII, 0.00, 6.30, 0.07, 7.83, 61.49, 64, 4},
     }}},
    {"imrdct",
     {{
         {Jam, 0.00, 13.21, 0.15, 7.58, 66.07, 44, 0},
         {I, 0.00, 13.51, 0.39, 7.58, 66.07, 44, 0},
         {II, 0.00, 14.03, 0.39, 7.58, 66.07, 44, 0},
         {III, 0.00, 14.03, 0.39, 7.58, 66.07, 44, 0},
         {IV, 0.00, 13.51, 0.37, 6.48, 52.20, 44, 0},
         {V, 0.00, 14.58, 0.26, 6.48, 52.20, 44, 0},
         {VI, 0.00, 9.94, 0.20, 6.48, 52.20, 44, 0},
         {VII, 0.00, 9.94, 0.20, 6.48, 52.20, 44, 0},
     }}},
}};

}  // namespace

bool Tolerance::accepts(double computed, double printed) const {
  const double bound = absolute > 0.0 ? absolute : relative * std::abs(printed);
  // Printed values carry a few decimals; keep the bound inclusive.
  return std::abs(computed - printed) <= bound + 1e-12;
}

std::span<const ScalingFamilyRow> scaling_families() { return kScaling; }
std::span<const RegressionRow> regression() { return kRegression; }
std::span<const BreakPointRow> break_points() { return kBreakPoints; }
std::span<const MetricTable> metric_tables() { return kMetrics; }

const MetricTable& metric_table(std::string_view approximation) {
  for (const MetricTable& t : kMetrics) {
    if (t.approximation == approximation) return t;
  }
  throw Error(ErrorCode::NotFound, "no published table for '" + std::string(approximation) + "'");
}

}  // namespace dctscale::golden
