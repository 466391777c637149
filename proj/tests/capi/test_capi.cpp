#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dctscale/dctscale.h"
#include "json.hpp"

namespace {

// Owns a C string returned by the library.
struct Text {
  char* p = nullptr;
  ~Text() { dcs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

class Api : public ::testing::Test {
 protected:
  void SetUp() override { ASSERT_EQ(dcs_catalog_open(nullptr, &cat_), DCS_OK) << dcs_last_error(); }
  void TearDown() override { dcs_catalog_free(cat_); }

  dcs_scaled* scaled(const char* approx, const char* methods, size_t target, size_t base = 0) {
    dcs_scaled* s = nullptr;
    EXPECT_EQ(dcs_scale(cat_, approx, base, methods, target, &s), DCS_OK) << dcs_last_error();
    return s;
  }

  dcs_catalog* cat_ = nullptr;
};

TEST(ApiBasics, VersionAndStatusNames) {
  EXPECT_STREQ(dcs_version(), "1.0.0");
  EXPECT_STREQ(dcs_status_name(DCS_OK), "ok");
  EXPECT_STREQ(dcs_status_name(DCS_ERR_CHECKSUM), "checksum mismatch");
}

TEST(ApiBasics, GenerateAndCopy) {
  dcs_matrix* m = nullptr;
  ASSERT_EQ(dcs_matrix_generate("dct2", 8, &m), DCS_OK);
  EXPECT_EQ(dcs_matrix_size(m), 8u);
  std::vector<double> buf(64);
  ASSERT_EQ(dcs_matrix_copy(m, buf.data(), buf.size()), DCS_OK);
  EXPECT_NEAR(buf[0], 1.0 / std::sqrt(8.0), 1e-15);
  EXPECT_EQ(dcs_matrix_copy(m, buf.data(), 10), DCS_ERR_DIMENSION_MISMATCH);

  Text csv, json;
  ASSERT_EQ(dcs_matrix_format(m, DCS_FORMAT_CSV, 3, &csv.p), DCS_OK);
  EXPECT_EQ(csv.str().substr(0, 6), "0.354,");
  ASSERT_EQ(dcs_matrix_format(m, DCS_FORMAT_JSON, 4, &json.p), DCS_OK);
  const auto doc = nlohmann::json::parse(json.str());
  EXPECT_EQ(doc.at("size"), 8);
  EXPECT_NEAR(doc.at("rows")[1][0].get<double>(), 0.4904, 1e-12);
  char* md = nullptr;
  EXPECT_EQ(dcs_matrix_format(m, DCS_FORMAT_MARKDOWN, 3, &md), DCS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(md, nullptr);
  dcs_matrix_free(m);
}

TEST(ApiBasics, GenerateErrors) {
  dcs_matrix* m = nullptr;
  EXPECT_EQ(dcs_matrix_generate("bitrev", 12, &m), DCS_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(dcs_last_error()).find("power-of-two"), std::string::npos);
  EXPECT_EQ(dcs_matrix_generate("shuffle", 7, &m), DCS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dcs_matrix_generate("nope", 4, &m), DCS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dcs_matrix_generate(nullptr, 4, &m), DCS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(m, nullptr);
}

TEST(ApiBasics, LastErrorIsThreadLocal) {
  dcs_matrix* m = nullptr;
  ASSERT_NE(dcs_matrix_generate("nope", 4, &m), DCS_OK);
  std::string other;
  std::thread([&] { other = dcs_last_error(); }).join();
  EXPECT_EQ(other, "");
  EXPECT_NE(std::string(dcs_last_error()), "");
}

TEST(ApiBasics, Identities) {
  ASSERT_EQ(dcs_identity_count(), 7u);
  for (size_t i = 0; i < dcs_identity_count(); ++i) {
    double r = 1.0;
    ASSERT_EQ(dcs_verify_identity(dcs_identity_name(i), 16, &r), DCS_OK) << dcs_last_error();
    EXPECT_LE(r, 1e-10) << dcs_identity_name(i);
  }
  EXPECT_EQ(dcs_identity_name(99), nullptr);
  double r = 0.0;
  EXPECT_EQ(dcs_verify_identity("nope", 4, &r), DCS_ERR_NOT_FOUND);
}

TEST(ApiBasics, CatalogErrors) {
  dcs_catalog* c = nullptr;
  EXPECT_EQ(dcs_catalog_open("/nonexistent/dctscale", &c), DCS_ERR_IO);
  EXPECT_EQ(c, nullptr);
}

TEST(ApiBasics, ExactScalingWithoutCatalog) {
  dcs_scaled* s = nullptr;
  ASSERT_EQ(dcs_scale(nullptr, "exact", 0, "VI", 16, &s), DCS_OK) << dcs_last_error();
  EXPECT_NEAR(dcs_scaled_error(s), 1.953707, 1e-6);
  EXPECT_EQ(dcs_scaled_is_dyadic(s), 0);
  dcs_cost cost{};
  EXPECT_EQ(dcs_scaled_cost(s, &cost), DCS_ERR_INVALID_ARGUMENT);
  dcs_scaled_free(s);
  EXPECT_EQ(dcs_scale(nullptr, "rdct", 0, "JAM", 16, &s), DCS_ERR_INVALID_ARGUMENT);
}

TEST_F(Api, CatalogListing) {
  ASSERT_EQ(dcs_catalog_count(cat_), 10u);
  EXPECT_STREQ(dcs_catalog_id(cat_, 0), "bas1");
  EXPECT_STREQ(dcs_catalog_id(cat_, 9), "imrdct");
  EXPECT_EQ(dcs_catalog_id(cat_, 10), nullptr);
  dcs_cost c{};
  ASSERT_EQ(dcs_catalog_baseline(cat_, "abdct", &c), DCS_OK);
  EXPECT_EQ(c.adds, 24u);
  EXPECT_EQ(c.shifts, 6u);
  EXPECT_EQ(dcs_catalog_baseline(cat_, "dct", &c), DCS_ERR_NOT_FOUND);
  dcs_matrix* m = nullptr;
  ASSERT_EQ(dcs_catalog_matrix(cat_, "rdct", &m), DCS_OK);
  std::vector<double> buf(64);
  ASSERT_EQ(dcs_matrix_copy(m, buf.data(), buf.size()), DCS_OK);
  EXPECT_EQ(buf[0], 1.0);
  dcs_matrix_free(m);
}

TEST_F(Api, ScaledCostAndMetrics) {
  dcs_scaled* s = scaled("rdct", "JAM", 16);
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(dcs_scaled_size(s), 16u);
  EXPECT_EQ(dcs_scaled_is_dyadic(s), 1);
  dcs_cost c{};
  ASSERT_EQ(dcs_scaled_cost(s, &c), DCS_OK);
  EXPECT_EQ(c.adds, 60u);
  dcs_metrics m{};
  ASSERT_EQ(dcs_scaled_metrics(s, 0.95, &m), DCS_OK);
  EXPECT_NEAR(m.epsilon, 12.930417, 1e-6);
  EXPECT_NEAR(m.cg, 8.428519, 1e-6);
  EXPECT_NEAR(m.eta, 72.229614, 1e-6);
  EXPECT_EQ(m.adds, 60u);
  EXPECT_EQ(dcs_scaled_metrics(s, 1.5, &m), DCS_ERR_INVALID_ARGUMENT);
  dcs_scaled_free(s);
}

TEST_F(Api, MethodListsAndBadTargets) {
  dcs_scaled* s = scaled("mrdct", "JAM,VII", 32);
  ASSERT_NE(s, nullptr);
  dcs_cost c{};
  ASSERT_EQ(dcs_scaled_cost(s, &c), DCS_OK);
  // 2 (2 * 14 + 16) + 32
  EXPECT_EQ(c.adds, 120u);
  dcs_scaled_free(s);
  dcs_scaled* bad = nullptr;
  EXPECT_EQ(dcs_scale(cat_, "mrdct", 0, "JAM", 24, &bad), DCS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dcs_scale(cat_, "mrdct", 0, "JAM,I,II", 32, &bad), DCS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dcs_scale(cat_, "mrdct", 0, "IX", 16, &bad), DCS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dcs_scale(cat_, "dct", 0, "JAM", 16, &bad), DCS_ERR_NOT_FOUND);
  EXPECT_EQ(bad, nullptr);
}

TEST_F(Api, ApplyMatchesDenseMatrix) {
  std::mt19937_64 rng(0x5eed0dc7ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  dcs_scaled* s = scaled("abdct", "III", 16);
  dcs_matrix *low = nullptr, *orth = nullptr;
  ASSERT_EQ(dcs_scaled_low_complexity(s, &low), DCS_OK);
  ASSERT_EQ(dcs_scaled_orthogonalized(s, &orth), DCS_OK);
  std::vector<double> t(256), c(256);
  dcs_matrix_copy(low, t.data(), t.size());
  dcs_matrix_copy(orth, c.data(), c.size());
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(16), y(16), z(16);
    for (auto& v : x) v = u(rng);
    ASSERT_EQ(dcs_scaled_apply(s, x.data(), 16, 0, y.data()), DCS_OK);
    ASSERT_EQ(dcs_scaled_apply(s, x.data(), 16, 1, z.data()), DCS_OK);
    for (int r = 0; r < 16; ++r) {
      double a = 0.0, b = 0.0;
      for (int k = 0; k < 16; ++k) {
        a += t[r * 16 + k] * x[k];
        b += c[r * 16 + k] * x[k];
      }
      EXPECT_NEAR(y[r], a, 1e-12);
      EXPECT_NEAR(z[r], b, 1e-12);
    }
  }
  std::vector<double> y(16);
  EXPECT_EQ(dcs_scaled_apply(s, t.data(), 8, 0, y.data()), DCS_ERR_DIMENSION_MISMATCH);
  dcs_matrix_free(low);
  dcs_matrix_free(orth);
  dcs_scaled_free(s);
}

TEST_F(Api, ExactApplyOnIntegers) {
  dcs_scaled* s = scaled("rdct", "III", 16);
  std::vector<int64_t> x(16, 0), num(16);
  std::vector<uint32_t> shift(16);
  x[0] = 1;
  ASSERT_EQ(dcs_scaled_apply_exact(s, x.data(), 16, num.data(), shift.data()), DCS_OK);
  dcs_matrix* low = nullptr;
  dcs_scaled_low_complexity(s, &low);
  std::vector<double> t(256);
  dcs_matrix_copy(low, t.data(), t.size());
  for (int r = 0; r < 16; ++r) EXPECT_EQ(std::ldexp(static_cast<double>(num[r]), -static_cast<int>(shift[r])), t[r * 16]);
  dcs_matrix_free(low);
  dcs_scaled_free(s);
}

TEST_F(Api, FactoredJson) {
  dcs_scaled* s = scaled("lodct", "VII", 32);
  Text json;
  ASSERT_EQ(dcs_scaled_factored_json(s, &json.p), DCS_OK);
  const auto doc = nlohmann::json::parse(json.str());
  EXPECT_EQ(doc.at("size"), 32);
  dcs_scaled_free(s);
}

TEST_F(Api, OrthogonalityConditions) {
  dcs_orthogonality o{};
  ASSERT_EQ(dcs_check_orthogonality(cat_, "rdct", 0, "VII", &o), DCS_OK);
  EXPECT_TRUE(o.cond_i && o.cond_ii && o.cond_iii && o.orthogonal);
  ASSERT_EQ(dcs_check_orthogonality(cat_, "sdct", 0, "JAM", &o), DCS_OK);
  EXPECT_FALSE(o.orthogonal);
}

TEST_F(Api, TablesRender) {
  ASSERT_EQ(dcs_table_count(), 14u);
  EXPECT_STREQ(dcs_table_id(0), "scaling-families");
  Text md;
  int ok = -1;
  ASSERT_EQ(dcs_tables_render(cat_, "metrics-rdct", DCS_FORMAT_MARKDOWN, &md.p, &ok), DCS_OK);
  EXPECT_EQ(ok, 1);
  EXPECT_NE(md.str().find("### metrics-rdct"), std::string::npos);
  char* none = nullptr;
  EXPECT_EQ(dcs_tables_render(cat_, "nope", DCS_FORMAT_CSV, &none, &ok), DCS_ERR_NOT_FOUND);
  EXPECT_EQ(none, nullptr);
}

}  // namespace
