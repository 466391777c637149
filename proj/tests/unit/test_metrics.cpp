#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "dctscale/catalog.hpp"
#include "dctscale/error.hpp"
#include "dctscale/exact.hpp"
#include "dctscale/golden.hpp"
#include "dctscale/metrics.hpp"
#include "dctscale/scaler.hpp"
#include "generators.hpp"

namespace dctscale {
namespace {

using testing::kSeed;

Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd e(m.size(), m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) e(r, c) = m(r, c);
  return e;
}

Eigen::MatrixXd ar1(std::size_t n, double rho) {
  Eigen::MatrixXd r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = std::pow(rho, std::abs(static_cast<double>(i) - j));
  return r;
}

// Coding gain through an LU inverse, a product form and no shared code.
double eigen_coding_gain(const RealMatrix& c, double rho) {
  const Eigen::MatrixXd m = to_eigen(c);
  const Eigen::MatrixXd y = m * ar1(c.size(), rho) * m.transpose();
  const Eigen::MatrixXd inv = m.inverse();
  double product = 1.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) product *= y(k, k) * inv.row(k).squaredNorm();
  return 10.0 * std::log10(1.0 / std::pow(product, 1.0 / static_cast<double>(m.rows())));
}

double klt_bound(std::size_t n, double rho) {
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ar1(n, rho)).eigenvalues();
  const double arith = ev.mean();
  const double geo = std::exp(ev.array().log().mean());
  return 10.0 * std::log10(arith / geo);
}

TEST(SignalModel, Covariance) {
  const RealMatrix r = SignalModel{0.5, 3}.covariance();
  EXPECT_DOUBLE_EQ(r(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(r(0, 2), 0.25);
  EXPECT_DOUBLE_EQ(r(2, 1), 0.5);
  EXPECT_THROW((void)SignalModel({1.0, 4}).covariance(), Error);
}

TEST(CodingGain, ExactDctAgainstOracle) {
  const SignalModel model{0.95, 8};
  const RealMatrix c8 = transform_matrix(TransformKind::Dct2, 8);
  EXPECT_NEAR(coding_gain(c8, model), 8.825909, 1e-6);
  EXPECT_NEAR(coding_gain(c8, model), eigen_coding_gain(c8, 0.95), 1e-10);
  EXPECT_NEAR(klt_bound(8, 0.95), 8.846210, 1e-6);
}

RealMatrix random_orthonormal(std::mt19937_64& rng, std::size_t n) {
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(to_eigen(testing::random_real_matrix(rng, n)))
                                .householderQ();
  RealMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = q(r, c);
  return out;
}

TEST(CodingGain, OrthonormalTransformsNeverExceedKltBound) {
  std::mt19937_64 rng(kSeed + 40);
  for (int trial = 0; trial < 50; ++trial) {
    const RealMatrix c = random_orthonormal(rng, 8);
    for (double rho : {0.5, 0.9, 0.95}) {
      const double cg = coding_gain(c, {rho, 8});
      EXPECT_NEAR(cg, eigen_coding_gain(c, rho), 1e-9);
      EXPECT_LE(cg, klt_bound(8, rho) + 1e-9);
    }
  }
}

TEST(CodingGain, IdentityHasZeroGain) { EXPECT_NEAR(coding_gain(RealMatrix::identity(8), {0.95, 8}), 0.0, 1e-12); }

TEST(Efficiency, KnownValues) {
  EXPECT_NEAR(transform_efficiency(RealMatrix::identity(8), {0.95, 8}), 14.234995, 1e-6);
  EXPECT_NEAR(transform_efficiency(transform_matrix(TransformKind::Dct2, 8), {0.95, 8}), 93.99, 0.01);
}

TEST(Efficiency, InvariantUnderRowPermutationAndSign) {
  std::mt19937_64 rng(kSeed + 41);
  const RealMatrix c = transform_matrix(TransformKind::Dct2, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix p = testing::random_orthogonal_rows(rng, 8).to_real();
    const RealMatrix unit = orthogonalize(p).c_hat;
    EXPECT_NEAR(transform_efficiency(unit * c, {0.95, 8}), transform_efficiency(c, {0.95, 8}), 1e-9);
    EXPECT_NEAR(coding_gain(unit * c, {0.95, 8}), coding_gain(c, {0.95, 8}), 1e-9);
  }
}

TEST(Deviation, ZeroExactlyForOrthogonalRows) {
  std::mt19937_64 rng(kSeed + 42);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix t = testing::random_orthogonal_rows(rng, 8).to_real();
    EXPECT_NEAR(deviation_from_orthogonality(t), 0.0, 1e-15);
    const RealMatrix dense = testing::random_real_matrix(rng, 8);
    EXPECT_GT(deviation_from_orthogonality(dense), 0.0);
    EXPECT_LT(deviation_from_orthogonality(dense), 1.0);
  }
}

TEST(ErrorMeasures, ZeroForTheReference) {
  const RealMatrix c = transform_matrix(TransformKind::Dct2, 16);
  EXPECT_DOUBLE_EQ(total_error_energy(c, c), 0.0);
  EXPECT_DOUBLE_EQ(mse(c, c, {0.95, 16}), 0.0);
  EXPECT_THROW((void)mse(c, RealMatrix::identity(8), {0.95, 16}), Error);
}

TEST(ErrorMeasures, EnergyScalesWithFrobeniusDistance) {
  std::mt19937_64 rng(kSeed + 43);
  const RealMatrix c = transform_matrix(TransformKind::Dct2, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix other = testing::random_real_matrix(rng, 8);
    EXPECT_NEAR(total_error_energy(other, c), std::numbers::pi * frobenius_distance(other, c), 1e-12);
    EXPECT_GE(mse(other, c, {0.95, 8}), 0.0);
  }
}

TEST(Evaluate, RoundedDctDoubledWithJam) {
  const Catalog cat = Catalog::open();
  const auto s = scale(BaseTransform::from_entry(cat.load("rdct")), Method::Jam);
  const MetricReport r = evaluate(s.c_hat, transform_matrix(TransformKind::Dct2, 16), 0.95, s.factored->cost());
  // Frozen from tests/oracle/oracle.py.
  EXPECT_NEAR(r.d, 0.0, 1e-12);
  EXPECT_NEAR(r.epsilon, 12.930417, 1e-6);
  EXPECT_NEAR(r.cg, 8.428519, 1e-6);
  EXPECT_NEAR(r.eta, 72.229614, 1e-6);
  EXPECT_NEAR(r.frob, 4.115880, 1e-6);
  EXPECT_EQ(r.adds, 60u);
  EXPECT_EQ(r.shifts, 0u);
  const auto& printed = golden::metric_table("rdct").rows[0];
  EXPECT_TRUE(golden::kEpsilonTolerance.accepts(r.epsilon, printed.epsilon));
  EXPECT_TRUE(golden::kCodingGainTolerance.accepts(r.cg, printed.cg));
  EXPECT_TRUE(golden::kEfficiencyTolerance.accepts(r.eta, printed.eta));
}

}  // namespace
}  // namespace dctscale
