#include "dctscale/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dctscale/error.hpp"

namespace dctscale {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": sizes " + std::to_string(a) +
                                                  " and " + std::to_string(b) + " differ");
  }
}

RealMatrix transformed_covariance(const RealMatrix& c_hat, const SignalModel& model) {
  require_same(c_hat.size(), model.size, "signal model");
  return c_hat * model.covariance() * c_hat.transpose();
}

}  // namespace

RealMatrix SignalModel::covariance() const {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "correlation coefficient must lie in [0, 1)");
  }
  RealMatrix r(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      r(i, j) = std::pow(rho, static_cast<double>(i > j ? i - j : j - i));
    }
  return r;
}

double deviation_from_orthogonality(const RealMatrix& c_hat) {
  const RealMatrix m = gram(c_hat);
  double diag = 0.0, total = 0.0;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) {
      const double sq = m(r, c) * m(r, c);
      total += sq;
      if (r == c) diag += sq;
    }
  if (total == 0.0) throw Error(ErrorCode::InvalidArgument, "deviation from orthogonality of a zero matrix");
  return 1.0 - diag / total;
}

double total_error_energy(const RealMatrix& c_hat, const RealMatrix& c) {
  require_same(c_hat.size(), c.size(), "total error energy");
  return std::numbers::pi * frobenius_distance(c, c_hat);
}

double mse(const RealMatrix& c_hat, const RealMatrix& c, const SignalModel& model) {
  require_same(c_hat.size(), c.size(), "mse");
  require_same(c.size(), model.size, "signal model");
  const RealMatrix diff = c - c_hat;
  const RealMatrix e = diff * model.covariance() * diff.transpose();
  double trace = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) trace += e(k, k);
  return trace / static_cast<double>(c.size());
}

double coding_gain(const RealMatrix& c_hat, const SignalModel& model) {
  const RealMatrix ry = transformed_covariance(c_hat, model);
  const RealMatrix inv = inverse(c_hat);
  const double n = static_cast<double>(c_hat.size());
  // Sum of logs instead of a product of powers keeps N = 64 in range.
  double log_sum = 0.0;
  for (std::size_t k = 0; k < c_hat.size(); ++k) {
    double b = 0.0;
    for (double v : inv.row(k)) b += v * v;
    log_sum += std::log10(ry(k, k) * b);
  }
  return -10.0 * log_sum / n;
}

double transform_efficiency(const RealMatrix& c_hat, const SignalModel& model) {
  const RealMatrix ry = transformed_covariance(c_hat, model);
  double diag = 0.0, total = 0.0;
  for (std::size_t r = 0; r < ry.size(); ++r)
    for (std::size_t c = 0; c < ry.size(); ++c) {
      total += std::abs(ry(r, c));
      if (r == c) diag += std::abs(ry(r, c));
    }
  if (total == 0.0) throw Error(ErrorCode::InvalidArgument, "transform efficiency of a zero matrix");
  return 100.0 * diag / total;
}

MetricReport evaluate(const RealMatrix& c_hat, const RealMatrix& reference, double rho, Cost cost) {
  require_same(c_hat.size(), reference.size(), "evaluate");
  const SignalModel model{rho, c_hat.size()};
  MetricReport r;
  r.d = deviation_from_orthogonality(c_hat);
  r.frob = frobenius_distance(reference, c_hat);
  r.epsilon = total_error_energy(c_hat, reference);
  r.mse = mse(c_hat, reference, model);
  r.cg = coding_gain(c_hat, model);
  r.eta = transform_efficiency(c_hat, model);
  r.adds = cost.adds;
  r.shifts = cost.shifts;
  return r;
}

}  // namespace dctscale
