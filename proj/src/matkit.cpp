#include "dctscale/matkit.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "dctscale/error.hpp"

namespace dctscale {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                    std::to_string(b) + ")");
  }
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorCode::Overflow, "dyadic numerator overflow");
  }
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorCode::Overflow, "dyadic numerator overflow");
  }
  return r;
}

std::int64_t scale_up(std::int64_t num, unsigned by) {
  return by == 0 ? num : checked_mul(num, std::int64_t{1} << by);
}

}  // namespace

// ---------------------------------------------------------------- RealMatrix

RealMatrix::RealMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

RealMatrix::RealMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "RealMatrix: expected " + std::to_string(n * n) +
                                                  " entries, got " + std::to_string(data_.size()));
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::InvalidArgument, "RealMatrix: non-finite entry");
  }
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::diagonal(std::span<const double> entries) {
  RealMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix t(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<double> RealMatrix::diagonal_entries() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  require_same_size(a.n_, b.n_, "matrix product");
  const std::size_t n = a.n_;
  RealMatrix p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b) {
  require_same_size(a.n_, b.n_, "matrix sum");
  RealMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
  return s;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
  require_same_size(a.n_, b.n_, "matrix difference");
  RealMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
  return s;
}

RealMatrix operator*(double s, const RealMatrix& m) {
  RealMatrix r = m;
  for (auto& v : r.data_) v *= s;
  return r;
}

// ------------------------------------------------------------ DyadicRational

DyadicRational::DyadicRational(std::int64_t numerator, unsigned shift)
    : num_(numerator), shift_(shift) {
  while (shift_ > 0 && num_ % 2 == 0) {
    num_ /= 2;
    --shift_;
  }
  if (num_ == 0) shift_ = 0;
  if (shift_ > kMaxShift) throw Error(ErrorCode::Overflow, "dyadic shift exceeds 62");
}

DyadicRational DyadicRational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::Parse, "not a dyadic literal: '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return DyadicRational(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(den))) {
    throw Error(ErrorCode::Parse,
                "denominator is not a power of two: '" + std::string(text) + "'");
  }
  return DyadicRational(num, static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(den))));
}

double DyadicRational::to_double() const {
  return std::ldexp(static_cast<double>(num_), -static_cast<int>(shift_));
}

std::string DyadicRational::to_string() const {
  if (shift_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << shift_);
}

DyadicRational DyadicRational::operator-() const {
  return DyadicRational(checked_mul(num_, -1), shift_);
}

DyadicRational operator+(DyadicRational a, DyadicRational b) {
  const unsigned s = std::max(a.shift_, b.shift_);
  return DyadicRational(checked_add(scale_up(a.num_, s - a.shift_), scale_up(b.num_, s - b.shift_)),
                        s);
}

DyadicRational operator-(DyadicRational a, DyadicRational b) { return a + (-b); }

DyadicRational operator*(DyadicRational a, DyadicRational b) {
  if (a.shift_ + b.shift_ > DyadicRational::kMaxShift) {
    throw Error(ErrorCode::Overflow, "dyadic shift exceeds 62");
  }
  return DyadicRational(checked_mul(a.num_, b.num_), a.shift_ + b.shift_);
}

__extension__ using Wide = __int128;

std::strong_ordering operator<=>(DyadicRational a, DyadicRational b) {
  const unsigned s = std::max(a.shift_, b.shift_);
  const Wide lhs = static_cast<Wide>(a.num_) << (s - a.shift_);
  const Wide rhs = static_cast<Wide>(b.num_) << (s - b.shift_);
  return lhs <=> rhs;
}

// -------------------------------------------------------------- DyadicMatrix

DyadicMatrix::DyadicMatrix(std::size_t n) : n_(n), data_(n * n) {}

DyadicMatrix::DyadicMatrix(std::size_t n, std::vector<DyadicRational> row_major)
    : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "DyadicMatrix: expected " +
                                                  std::to_string(n * n) + " entries, got " +
                                                  std::to_string(data_.size()));
  }
}

DyadicMatrix DyadicMatrix::identity(std::size_t n) {
  DyadicMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = DyadicRational(1);
  return m;
}

DyadicMatrix DyadicMatrix::from_integers(std::size_t n, std::span<const std::int64_t> row_major) {
  std::vector<DyadicRational> d(row_major.begin(), row_major.end());
  return DyadicMatrix(n, std::move(d));
}

DyadicMatrix DyadicMatrix::transpose() const {
  DyadicMatrix t(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RealMatrix DyadicMatrix::to_real() const {
  std::vector<double> v(data_.size());
  std::transform(data_.begin(), data_.end(), v.begin(),
                 [](const DyadicRational& d) { return d.to_double(); });
  return RealMatrix(n_, std::move(v));
}

unsigned DyadicMatrix::max_shift() const {
  unsigned s = 0;
  for (const auto& d : data_) s = std::max(s, d.shift());
  return s;
}

DyadicMatrix operator*(const DyadicMatrix& a, const DyadicMatrix& b) {
  require_same_size(a.n_, b.n_, "dyadic matrix product");
  const std::size_t n = a.n_;
  DyadicMatrix p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const DyadicRational aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b(k, j).is_zero()) p(i, j) += aik * b(k, j);
      }
    }
  return p;
}

DyadicMatrix operator-(const DyadicMatrix& m) {
  DyadicMatrix r = m;
  for (auto& v : r.data_) v = -v;
  return r;
}

// --------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t v : map_) {
    if (v >= map_.size() || seen[v]) {
      throw Error(ErrorCode::InvalidArgument, "Permutation: map is not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::transpose() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t n = 0; n < map_.size(); ++n) inv[map_[n]] = n;
  return Permutation(std::move(inv));
}

DyadicMatrix Permutation::to_dyadic() const {
  DyadicMatrix m(map_.size());
  for (std::size_t n = 0; n < map_.size(); ++n) m(map_[n], n) = DyadicRational(1);
  return m;
}

RealMatrix Permutation::to_real() const { return to_dyadic().to_real(); }

Permutation operator*(const Permutation& a, const Permutation& b) {
  require_same_size(a.size(), b.size(), "permutation product");
  std::vector<std::size_t> m(a.size());
  for (std::size_t n = 0; n < m.size(); ++n) m[n] = a.map_[b.map_[n]];
  return Permutation(std::move(m));
}

// ------------------------------------------------------------ free functions

RealMatrix block_diag(const RealMatrix& upper, const RealMatrix& lower) {
  const std::size_t p = upper.size(), q = lower.size();
  RealMatrix m(p + q);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) m(r, c) = upper(r, c);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < q; ++c) m(p + r, p + c) = lower(r, c);
  return m;
}

DyadicMatrix block_diag(const DyadicMatrix& upper, const DyadicMatrix& lower) {
  const std::size_t p = upper.size(), q = lower.size();
  DyadicMatrix m(p + q);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) m(r, c) = upper(r, c);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < q; ++c) m(p + r, p + c) = lower(r, c);
  return m;
}

RealMatrix gram(const RealMatrix& m) { return m * m.transpose(); }
DyadicMatrix gram(const DyadicMatrix& m) { return m * m.transpose(); }

std::vector<double> multiply(const RealMatrix& m, std::span<const double> x) {
  require_same_size(m.size(), x.size(), "matrix-vector product");
  std::vector<double> y(m.size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m.size(); ++c) acc += m(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

std::vector<DyadicRational> multiply(const DyadicMatrix& m, std::span<const DyadicRational> x) {
  require_same_size(m.size(), x.size(), "matrix-vector product");
  std::vector<DyadicRational> y(m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (!m(r, c).is_zero()) y[r] += m(r, c) * x[c];
    }
  return y;
}

double frobenius_norm(const RealMatrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double frobenius_distance(const RealMatrix& a, const RealMatrix& b) {
  require_same_size(a.size(), b.size(), "frobenius_distance");
  return frobenius_norm(a - b);
}

double max_abs_difference(const RealMatrix& a, const RealMatrix& b) {
  require_same_size(a.size(), b.size(), "max_abs_difference");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

bool is_diagonal(const RealMatrix& m, double tol) {
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (r != c && std::abs(m(r, c)) > tol) return false;
    }
  return true;
}

bool is_diagonal(const DyadicMatrix& m) {
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (r != c && !m(r, c).is_zero()) return false;
    }
  return true;
}

namespace {

template <class NonZero>
bool one_nonzero_per_line(std::size_t n, NonZero nonzero) {
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t in_row = 0, in_col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      in_row += nonzero(i, j) ? 1 : 0;
      in_col += nonzero(j, i) ? 1 : 0;
    }
    if (in_row != 1 || in_col != 1) return false;
  }
  return true;
}

}  // namespace

bool is_generalized_permutation(const DyadicMatrix& m) {
  return one_nonzero_per_line(m.size(),
                              [&](std::size_t r, std::size_t c) { return !m(r, c).is_zero(); });
}

bool is_generalized_permutation(const RealMatrix& m, double tol) {
  return one_nonzero_per_line(m.size(),
                              [&](std::size_t r, std::size_t c) { return std::abs(m(r, c)) > tol; });
}

RealMatrix inverse(const RealMatrix& m) {
  const std::size_t n = m.size();
  RealMatrix a = m;
  RealMatrix inv = RealMatrix::identity(n);
  double scale = 0.0;
  for (double v : m.data()) scale = std::max(scale, std::abs(v));
  const double singular_tol = scale * static_cast<double>(n) * 1e-13;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) <= singular_tol) {
      throw Error(ErrorCode::Singular, "matrix is singular");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const double d = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= d;
      inv(col, c) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

RealMatrix diag_inv_sqrt(const RealMatrix& m) {
  const RealMatrix inv = inverse(m);
  std::vector<double> d(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (inv(k, k) < 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "diag_inv_sqrt: negative diagonal entry in the inverse");
    }
    d[k] = std::sqrt(inv(k, k));
  }
  return RealMatrix::diagonal(d);
}

}  // namespace dctscale
