#pragma once

// Figures of merit for an approximate transform against the exact one, under
// a first-order Markov (AR(1)) signal model.

#include <cstddef>

#include "dctscale/fastpath.hpp"
#include "dctscale/matkit.hpp"

namespace dctscale {

inline constexpr double kDefaultRho = 0.95;

struct SignalModel {
  double rho = kDefaultRho;  // 0 <= rho < 1
  std::size_t size = 0;

  // [R]_ij = rho^|i-j|. Throws InvalidArgument when rho is out of range.
  RealMatrix covariance() const;
};

// 1 - ||diag(M)||^2 / ||M||^2 with M = c_hat c_hat^T.
double deviation_from_orthogonality(const RealMatrix& c_hat);
// pi * ||c - c_hat||_F
double total_error_energy(const RealMatrix& c_hat, const RealMatrix& c);
// (1/N) tr((c - c_hat) R (c - c_hat)^T)
double mse(const RealMatrix& c_hat, const RealMatrix& c, const SignalModel& model);
// 10 log10 prod_k (A_k B_k)^(-1/N), A_k = [c_hat R c_hat^T]_kk,
// B_k = squared norm of row k of c_hat^-1.
double coding_gain(const RealMatrix& c_hat, const SignalModel& model);
// 100 * sum_k |[R_Y]_kk| / sum_ij |[R_Y]_ij| with R_Y = c_hat R c_hat^T.
double transform_efficiency(const RealMatrix& c_hat, const SignalModel& model);

struct MetricReport {
  double d = 0.0;
  double epsilon = 0.0;
  double mse = 0.0;
  double cg = 0.0;
  double eta = 0.0;
  double frob = 0.0;  // ||c - c_hat||_F
  std::uint64_t adds = 0;
  std::uint64_t shifts = 0;
};

MetricReport evaluate(const RealMatrix& c_hat, const RealMatrix& reference, double rho = kDefaultRho,
                      Cost cost = {});

}  // namespace dctscale
