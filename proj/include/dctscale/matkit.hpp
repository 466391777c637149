#pragma once

// Small dense square matrices over the reals and over the dyadic rationals,
// plus permutations. Sizes in this library never exceed 64, so everything is
// stored densely in row-major order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dctscale {

inline constexpr double kDefaultTolerance = 1e-10;

class RealMatrix {
 public:
  RealMatrix() = default;
  // n x n zero matrix.
  explicit RealMatrix(std::size_t n);
  // Takes ownership of n*n row-major entries; every entry must be finite.
  RealMatrix(std::size_t n, std::vector<double> row_major);

  static RealMatrix identity(std::size_t n);
  static RealMatrix diagonal(std::span<const double> entries);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }
  std::span<const double> data() const noexcept { return data_; }

  RealMatrix transpose() const;
  std::vector<double> diagonal_entries() const;

  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
  friend RealMatrix operator+(const RealMatrix& a, const RealMatrix& b);
  friend RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
  friend RealMatrix operator*(double s, const RealMatrix& m);
  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Exact number of the form numerator / 2^shift. Canonical: zero has shift 0,
// and any nonzero value with shift > 0 has an odd numerator.
class DyadicRational {
 public:
  static constexpr unsigned kMaxShift = 62;

  constexpr DyadicRational() = default;
  DyadicRational(std::int64_t numerator, unsigned shift = 0);

  // Accepts "p" or "p/q" with q a power of two, e.g. "-2", "1/2", "3/8".
  static DyadicRational parse(std::string_view text);

  std::int64_t numerator() const noexcept { return num_; }
  unsigned shift() const noexcept { return shift_; }
  bool is_zero() const noexcept { return num_ == 0; }
  // |value| == 1.
  bool is_unit() const noexcept { return shift_ == 0 && (num_ == 1 || num_ == -1); }
  double to_double() const;
  std::string to_string() const;

  DyadicRational operator-() const;
  friend DyadicRational operator+(DyadicRational a, DyadicRational b);
  friend DyadicRational operator-(DyadicRational a, DyadicRational b);
  friend DyadicRational operator*(DyadicRational a, DyadicRational b);
  DyadicRational& operator+=(DyadicRational o) { return *this = *this + o; }

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(DyadicRational a, DyadicRational b);

 private:
  std::int64_t num_ = 0;
  unsigned shift_ = 0;
};

class DyadicMatrix {
 public:
  DyadicMatrix() = default;
  explicit DyadicMatrix(std::size_t n);
  DyadicMatrix(std::size_t n, std::vector<DyadicRational> row_major);

  static DyadicMatrix identity(std::size_t n);
  static DyadicMatrix from_integers(std::size_t n, std::span<const std::int64_t> row_major);

  std::size_t size() const noexcept { return n_; }
  const DyadicRational& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  DyadicRational& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  std::span<const DyadicRational> data() const noexcept { return data_; }

  DyadicMatrix transpose() const;
  RealMatrix to_real() const;
  // Largest shift over all entries.
  unsigned max_shift() const;

  friend DyadicMatrix operator*(const DyadicMatrix& a, const DyadicMatrix& b);
  friend DyadicMatrix operator-(const DyadicMatrix& m);
  friend bool operator==(const DyadicMatrix&, const DyadicMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<DyadicRational> data_;
};

// map[n] is the row holding the single unit entry of column n, so applying
// the permutation to x moves x[n] to position map[n].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> map);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return map_.size(); }
  std::span<const std::size_t> map() const noexcept { return map_; }
  std::size_t operator[](std::size_t column) const { return map_[column]; }

  Permutation transpose() const;
  DyadicMatrix to_dyadic() const;
  RealMatrix to_real() const;

  template <class T>
  std::vector<T> apply(std::span<const T> x) const {
    std::vector<T> y(x.size());
    for (std::size_t n = 0; n < map_.size(); ++n) y[map_[n]] = x[n];
    return y;
  }

  // Matrix product (*this) * other.
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

RealMatrix block_diag(const RealMatrix& upper, const RealMatrix& lower);
DyadicMatrix block_diag(const DyadicMatrix& upper, const DyadicMatrix& lower);

// m * m^T
RealMatrix gram(const RealMatrix& m);
DyadicMatrix gram(const DyadicMatrix& m);

std::vector<double> multiply(const RealMatrix& m, std::span<const double> x);
std::vector<DyadicRational> multiply(const DyadicMatrix& m, std::span<const DyadicRational> x);

double frobenius_norm(const RealMatrix& m);
double frobenius_distance(const RealMatrix& a, const RealMatrix& b);
double max_abs_difference(const RealMatrix& a, const RealMatrix& b);

bool is_diagonal(const RealMatrix& m, double tol = kDefaultTolerance);
bool is_diagonal(const DyadicMatrix& m);
bool is_generalized_permutation(const DyadicMatrix& m);
bool is_generalized_permutation(const RealMatrix& m, double tol = kDefaultTolerance);

// Gauss-Jordan with partial pivoting; throws ErrorCode::Singular.
RealMatrix inverse(const RealMatrix& m);

// diag(sqrt(diag(m^-1))). Throws on a singular m or when a diagonal entry of
// the inverse is negative.
RealMatrix diag_inv_sqrt(const RealMatrix& m);

}  // namespace dctscale
