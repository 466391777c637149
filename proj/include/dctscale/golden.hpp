#pragma once

// Published values that the reproduction tables are compared against, with
// the tolerance attached to each column. These are reference data only; no
// computation reads them.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "dctscale/scaler.hpp"

namespace dctscale::golden {

struct Tolerance {
  double absolute = 0.0;
  double relative = 0.0;  // fraction of the printed value; used when absolute == 0

  bool accepts(double computed, double printed) const;
};

// Frobenius error of the orthogonalized 2N-point result for exact N-point
// input, N = 8, 16, 32.
inline constexpr std::array<std::size_t, 3> kScalingSizes = {8, 16, 32};
struct ScalingFamilyRow {
  Method method;
  std::array<double, 3> error;
  bool orthogonal;
};
inline constexpr Tolerance kScalingTolerance{0.001, 0.0};
std::span<const ScalingFamilyRow> scaling_families();

struct RegressionRow {
  Method method;
  double m_hat, b_hat, chi2, rmse;
};
inline constexpr Tolerance kSlopeTolerance{0.01, 0.0};
inline constexpr Tolerance kStatisticTolerance{0.0, 0.10};
std::span<const RegressionRow> regression();

// Largest 8-point error for which a method beats JAM.
struct BreakPointRow {
  Method method;
  double x;
};
inline constexpr Tolerance kBreakPointTolerance{0.01, 0.0};
std::span<const BreakPointRow> break_points();

struct MetricRow {
  Method method;
  double d, epsilon, mse, cg, eta;
  std::uint64_t adds, shifts;
};
struct MetricTable {
  std::string_view approximation;
  std::array<MetricRow, 8> rows;
};
inline constexpr Tolerance kDTolerance{0.005, 0.0};
inline constexpr Tolerance kEpsilonTolerance{0.05, 0.0};
inline constexpr Tolerance kMseTolerance{0.01, 0.0};
inline constexpr Tolerance kCodingGainTolerance{0.01, 0.0};
inline constexpr Tolerance kEfficiencyTolerance{0.05, 0.0};
std::span<const MetricTable> metric_tables();
// Throws NotFound.
const MetricTable& metric_table(std::string_view approximation);

}  // namespace dctscale::golden
