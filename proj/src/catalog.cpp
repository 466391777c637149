#include "dctscale/catalog.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "dctscale/error.hpp"
#include "dctscale/exact.hpp"

#ifndef DCTSCALE_CATALOG_DIR
#define DCTSCALE_CATALOG_DIR "catalog"
#endif

namespace dctscale {

namespace {

constexpr std::array<std::string_view, 10> kIds = {
    "bas1", "bas2", "bas3", "bas4", "rdct", "mrdct", "abdct", "sdct", "lodct", "imrdct",
};

// Values of |C_8| entries below this are treated as exact zeros.
constexpr double kZeroCosine = 1e-12;

std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw Error(ErrorCode::Io, "SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::uint64_t parse_count(const std::string& token, const std::string& context) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != token.size() || token.empty() || token.front() == '-') {
    throw Error(ErrorCode::Parse, context + ": bad count '" + token + "'");
  }
  return v;
}

DyadicMatrix generated_matrix(std::string_view id) {
  if (id == "sdct") return signed_dct8();
  if (id == "rdct") return rounded_dct8();
  throw Error(ErrorCode::Parse, "manifest entry '" + std::string(id) + "' has no data file");
}

}  // namespace

std::span<const std::string_view> catalog_ids() { return kIds; }

DyadicMatrix signed_dct8() {
  const RealMatrix c = transform_matrix(TransformKind::Dct2, 8);
  DyadicMatrix m(8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t k = 0; k < 8; ++k) {
      const double v = c(r, k);
      m(r, k) = DyadicRational(std::abs(v) < kZeroCosine ? 0 : (v > 0 ? 1 : -1));
    }
  return m;
}

DyadicMatrix rounded_dct8() {
  const RealMatrix c = transform_matrix(TransformKind::Dct2, 8);
  DyadicMatrix m(8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t k = 0; k < 8; ++k) {
      m(r, k) = DyadicRational(static_cast<std::int64_t>(std::lround(2.0 * c(r, k))));
    }
  return m;
}

DyadicMatrix parse_matrix_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<DyadicRational>> rows;
  std::size_t n = 0;
  bool have_size = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(strip_comment(line));
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!have_size) {
      if (words.size() != 1) throw Error(ErrorCode::Parse, where + ": expected the matrix size");
      n = parse_count(words[0], where);
      if (n == 0) throw Error(ErrorCode::Parse, where + ": size must be positive");
      have_size = true;
      continue;
    }
    if (words.size() != n) {
      throw Error(ErrorCode::Parse, where + ": expected " + std::to_string(n) + " entries, got " +
                                        std::to_string(words.size()));
    }
    if (rows.size() == n) throw Error(ErrorCode::Parse, where + ": more than " + std::to_string(n) + " rows");
    std::vector<DyadicRational> row;
    for (const auto& w : words) row.push_back(DyadicRational::parse(w));
    rows.push_back(std::move(row));
  }
  if (!have_size) throw Error(ErrorCode::Parse, "empty matrix file");
  if (rows.size() != n) {
    throw Error(ErrorCode::Parse, "expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  }
  std::vector<DyadicRational> flat;
  flat.reserve(n * n);
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return DyadicMatrix(n, std::move(flat));
}

void self_test(const ApproximationEntry& e) {
  const auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, "catalog entry '" + e.id + "': " + what);
  };
  if (e.matrix.size() != 8) fail("matrix is not 8x8");
  bool has_non_unit = false;
  for (const DyadicRational& v : e.matrix.data()) {
    const DyadicRational a = v < DyadicRational(0) ? -v : v;
    if (!(a.is_zero() || a.is_unit() || a == DyadicRational(1, 1) || a == DyadicRational(2))) {
      fail("entry " + v.to_string() + " outside {0, +-1/2, +-1, +-2}");
    }
    has_non_unit = has_non_unit || (!a.is_zero() && !a.is_unit());
  }
  if (e.id != "sdct" && !is_diagonal(gram(e.matrix))) fail("Gram matrix is not diagonal");
  if ((e.baseline_shifts > 0) != has_non_unit) fail("declared shifts disagree with the entry set");
  if (e.baseline_adds > count_dense_dyadic(e.matrix).adds) fail("declared adds exceed the dense count");
}

std::filesystem::path Catalog::default_directory() { return DCTSCALE_CATALOG_DIR; }

Catalog Catalog::open(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / "MANIFEST";
  std::istringstream manifest(read_file(manifest_path));
  Catalog cat;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(manifest, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    std::istringstream fields(body);
    std::string id, adds, shifts, digest, file;
    if (!(fields >> id)) continue;
    const std::string where = manifest_path.string() + ":" + std::to_string(line_no);
    if (!(fields >> adds >> shifts >> digest >> file)) throw Error(ErrorCode::Parse, where + ": too few fields");
    std::string source;
    std::getline(fields >> std::ws, source);

    ApproximationEntry e;
    e.id = id;
    e.baseline_adds = parse_count(adds, where);
    e.baseline_shifts = parse_count(shifts, where);
    e.source = source;
    if (file == "-") {
      e.matrix = generated_matrix(id);
    } else {
      const std::string text = read_file(dir / file);
      if (sha256_hex(text) != digest) {
        throw Error(ErrorCode::Checksum, "checksum mismatch for " + (dir / file).string());
      }
      try {
        e.matrix = parse_matrix_text(text);
      } catch (const Error& err) {
        throw Error(err.code(), (dir / file).string() + ": " + err.what());
      }
    }
    self_test(e);
    if (cat.entries_.contains(id)) throw Error(ErrorCode::Parse, where + ": duplicate id '" + id + "'");
    cat.order_.push_back(id);
    cat.entries_.emplace(id, std::move(e));
  }
  return cat;
}

const ApproximationEntry& Catalog::load(std::string_view id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw Error(ErrorCode::NotFound, "unknown approximation '" + std::string(id) + "'");
  }
  return it->second;
}

std::vector<std::string> Catalog::ids() const { return order_; }

Orthogonalized orthogonalize(const RealMatrix& t, OrthoMode mode) {
  const RealMatrix g = gram(t);
  RealMatrix sigma;
  if (mode == OrthoMode::InverseGram) {
    sigma = diag_inv_sqrt(g);
  } else {
    (void)inverse(g);  // throws Singular
    std::vector<double> d(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) d[k] = 1.0 / std::sqrt(g(k, k));
    sigma = RealMatrix::diagonal(d);
  }
  RealMatrix c_hat = t;
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t.size(); ++c) c_hat(r, c) *= sigma(r, r);
  return {std::move(sigma), std::move(c_hat)};
}

Orthogonalized orthogonalize(const DyadicMatrix& t, OrthoMode mode) {
  return orthogonalize(t.to_real(), mode);
}

std::string_view ortho_mode_name(OrthoMode mode) {
  return mode == OrthoMode::RowNorm ? "row-norm" : "inverse-gram";
}

OrthoMode parse_ortho_mode(std::string_view name) {
  if (name == "row-norm") return OrthoMode::RowNorm;
  if (name == "inverse-gram") return OrthoMode::InverseGram;
  throw Error(ErrorCode::InvalidArgument, "unknown orthogonalization mode '" + std::string(name) + "'");
}

}  // namespace dctscale
