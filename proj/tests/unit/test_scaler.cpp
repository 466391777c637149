#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "dctscale/catalog.hpp"
#include "dctscale/error.hpp"
#include "dctscale/exact.hpp"
#include "dctscale/golden.hpp"
#include "dctscale/scaler.hpp"
#include "generators.hpp"

namespace dctscale {
namespace {

using testing::kSeed;

double error_vs_dct(const ScaledTransform& s) {
  return frobenius_distance(s.c_hat, transform_matrix(TransformKind::Dct2, s.size()));
}

// Frozen from tests/oracle/oracle.py; rows JAM..VII, columns N = 8, 16, 32.
constexpr std::array<std::array<double, 3>, 8> kOneStepOracle = {{
    {3.994440, 5.652711, 7.997033},
    {3.825640, 5.532758, 7.911934},
    {4.000817, 5.657229, 8.000149},
    {4.000817, 5.657229, 8.000149},
    {3.825640, 5.532758, 7.911934},
    {4.005552, 5.660995, 8.002966},
    {1.953707, 3.032690, 4.515308},
    {1.953707, 3.032690, 4.515308},
}};

TEST(Methods, NamesRoundTrip) {
  for (Method m : approximate_methods()) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_EQ(parse_method("vii"), Method::VII);
  EXPECT_EQ(parse_method("exact"), Method::Exact);
  EXPECT_EQ(approximate_methods().size(), 8u);
  EXPECT_FALSE(is_dyadic(Method::Exact));
  EXPECT_THROW((void)parse_method("VIII"), Error);
}

TEST(Methods, ParametersAreDyadicSignedPermutations) {
  for (Method m : approximate_methods()) {
    for (std::size_t n : {1u, 8u, 32u}) {
      const DyadicMatrix b = std::get<DyadicMatrix>(parameter_b(m, n));
      const DyadicMatrix g = std::get<DyadicMatrix>(parameter_g(m, n));
      EXPECT_TRUE(is_generalized_permutation(b)) << method_name(m);
      EXPECT_TRUE(is_diagonal(g));
      EXPECT_EQ(g * g, DyadicMatrix::identity(n));
    }
  }
  EXPECT_TRUE(std::holds_alternative<RealMatrix>(parameter_b(Method::Exact, 4)));
  EXPECT_THROW((void)declared_b_cost(Method::Exact, 4), Error);
}

TEST(Scale, ExactMethodReproducesTheLargerDct) {
  for (std::size_t n : {2u, 4u, 8u, 32u}) {
    const auto s = scale(BaseTransform::exact_dct(n), Method::Exact);
    EXPECT_LE(max_abs_difference(s.c_hat, transform_matrix(TransformKind::Dct2, 2 * n)), 1e-10);
    EXPECT_FALSE(s.dyadic.has_value());
    EXPECT_FALSE(s.factored.has_value());
  }
}

TEST(Scale, OneStepErrorsMatchOracle) {
  for (std::size_t row = 0; row < 8; ++row) {
    const Method m = approximate_methods()[row];
    for (std::size_t col = 0; col < 3; ++col) {
      const std::size_t n = golden::kScalingSizes[col];
      EXPECT_NEAR(error_vs_dct(scale(BaseTransform::exact_dct(n), m)), kOneStepOracle[row][col], 5e-7)
          << method_name(m) << " N=" << n;
    }
  }
}

TEST(Scale, OneStepErrorsMatchPublishedTable) {
  for (const auto& g : golden::scaling_families()) {
    for (std::size_t col = 0; col < 3; ++col) {
      const double got = error_vs_dct(scale(BaseTransform::exact_dct(golden::kScalingSizes[col]), g.method));
      EXPECT_TRUE(golden::kScalingTolerance.accepts(got, g.error[col]))
          << method_name(g.method) << " col " << col << ": " << got << " vs " << g.error[col];
    }
  }
}

TEST(ScaleTo, RepeatedDoublingMatchesOracle) {
  const auto base = BaseTransform::exact_dct(8);
  EXPECT_NEAR(error_vs_dct(scale_to(base, 32, Method::Jam)), 6.025315, 5e-7);
  EXPECT_NEAR(error_vs_dct(scale_to(base, 64, Method::VII)), 5.987605, 5e-7);
  EXPECT_NEAR(error_vs_dct(scale_to(base, 32, Method::VI)), 3.601017, 5e-7);
}

TEST(ScaleTo, PerStepMethodList) {
  const auto base = BaseTransform::exact_dct(8);
  const Method same[] = {Method::VI, Method::VI};
  EXPECT_EQ(scale_to(base, 32, same).c_hat, scale_to(base, 32, Method::VI).c_hat);
  const Method mixed[] = {Method::Jam, Method::VI};
  const auto manual = scale(BaseTransform::from_dyadic(*scale(BaseTransform::from_dyadic(signed_dct8(), "s"),
                                                                Method::Jam).dyadic, "s16"),
                            Method::VI);
  EXPECT_EQ(scale_to(BaseTransform::from_dyadic(signed_dct8(), "s"), 32, mixed).dense, manual.dense);
}

TEST(ScaleTo, RejectsBadTargets) {
  const auto base = BaseTransform::exact_dct(8);
  for (std::size_t target : {8u, 12u, 24u, 4u}) {
    EXPECT_THROW((void)scale_to(base, target, Method::Jam), Error) << target;
  }
  const Method three[] = {Method::Jam, Method::I, Method::II};
  EXPECT_THROW((void)scale_to(base, 32, three), Error);
}

class CatalogScaling : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { catalog_ = new Catalog(Catalog::open()); }
  static void TearDownTestSuite() {
    delete catalog_;
    catalog_ = nullptr;
  }
  static BaseTransform base(std::string_view id) { return BaseTransform::from_entry(catalog_->load(id)); }
  static Catalog* catalog_;
};
Catalog* CatalogScaling::catalog_ = nullptr;

TEST_F(CatalogScaling, MethodPairsCoincideAfterOrthogonalization) {
  for (std::string_view id : catalog_ids()) {
    for (std::size_t n : {16u, 32u}) {
      const auto ii = scale_to(base(id), n, Method::II), iii = scale_to(base(id), n, Method::III);
      const auto vi = scale_to(base(id), n, Method::VI), vii = scale_to(base(id), n, Method::VII);
      EXPECT_LE(max_abs_difference(ii.c_hat, iii.c_hat), 1e-12) << id;
      EXPECT_LE(max_abs_difference(vi.c_hat, vii.c_hat), 1e-12) << id;
    }
  }
}

TEST_F(CatalogScaling, OrthogonalInputsStayOrthogonal) {
  for (std::string_view id : catalog_ids()) {
    if (id == "sdct") continue;
    for (Method m : approximate_methods()) {
      for (std::size_t n : {16u, 32u}) {
        const auto s = scale_to(base(id), n, m);
        EXPECT_LE(max_abs_difference(gram(s.c_hat), RealMatrix::identity(n)), 1e-10) << id << method_name(m);
        EXPECT_TRUE(is_diagonal(gram(*s.dyadic)));
      }
    }
  }
}

TEST_F(CatalogScaling, GramHasBlockStructure) {
  // T_2N T_2N^T = 2 P diag(T T^T, B T T^T B^T) P^T whenever G G^T = I.
  const auto doubled = [](const DyadicMatrix& x) {
    DyadicMatrix out(x.size());
    for (std::size_t r = 0; r < x.size(); ++r)
      for (std::size_t c = 0; c < x.size(); ++c) out(r, c) = x(r, c) * DyadicRational(2);
    return out;
  };
  const DyadicMatrix p = perfect_shuffle(8).to_dyadic();
  for (std::string_view id : {"rdct", "sdct", "abdct"}) {
    const auto t = base(id);
    const DyadicMatrix& c = std::get<DyadicMatrix>(t.matrix);
    for (Method m : approximate_methods()) {
      const DyadicMatrix b = std::get<DyadicMatrix>(parameter_b(m, 8));
      const DyadicMatrix expected =
          p * doubled(block_diag(gram(c), b * gram(c) * b.transpose())) * p.transpose();
      EXPECT_EQ(gram(*scale(t, m).dyadic), expected) << id << " " << method_name(m);
    }
  }
}

TEST_F(CatalogScaling, OrthogonalityConditions) {
  const auto rdct = check_orthogonality(base("rdct"), Method::III);
  EXPECT_TRUE(rdct.cond_i && rdct.cond_ii && rdct.cond_iii && rdct.orthogonal);
  const auto sdct = check_orthogonality(base("sdct"), Method::Jam);
  EXPECT_FALSE(sdct.cond_i);
  EXPECT_FALSE(sdct.orthogonal);
  const auto exact = check_orthogonality(BaseTransform::exact_dct(8), Method::Exact);
  EXPECT_TRUE(exact.cond_i);
}

TEST_F(CatalogScaling, DyadicStepsAddAtMostOneShiftBit) {
  std::mt19937_64 rng(kSeed + 30);
  for (int trial = 0; trial < 30; ++trial) {
    const DyadicMatrix t = testing::random_invertible_dyadic(rng, 4);
    for (Method m : approximate_methods()) {
      const auto s = scale(BaseTransform::from_dyadic(t, "random"), m);
      EXPECT_LE(s.dyadic->max_shift(), t.max_shift() + 1) << method_name(m);
    }
  }
}

TEST_F(CatalogScaling, RandomInputsMatchDenseDefinition) {
  // T_2N = P diag(I, B) diag(T, T) diag(I, G) H computed by plain products.
  std::mt19937_64 rng(kSeed + 31);
  for (int trial = 0; trial < 10; ++trial) {
    const DyadicMatrix t = testing::random_invertible_dyadic(rng, 4);
    for (Method m : approximate_methods()) {
      const DyadicMatrix eye = DyadicMatrix::identity(4);
      const DyadicMatrix expected = perfect_shuffle(4).to_dyadic() *
                                    block_diag(eye, std::get<DyadicMatrix>(parameter_b(m, 4))) *
                                    block_diag(t, t) *
                                    block_diag(eye, std::get<DyadicMatrix>(parameter_g(m, 4))) * butterfly(4);
      EXPECT_EQ(*scale(BaseTransform::from_dyadic(t, "r"), m).dyadic, expected) << method_name(m);
    }
  }
}

TEST_F(CatalogScaling, SignedDctIsOrthogonalizedByRowNorm) {
  const auto s = scale(base("sdct"), Method::Jam);
  for (std::size_t r = 0; r < 16; ++r) {
    double norm = 0.0;
    for (double v : s.c_hat.row(r)) norm += v * v;
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace dctscale
