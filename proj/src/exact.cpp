#include "dctscale/exact.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "dctscale/error.hpp"

namespace dctscale {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": size must be >= 1");
}

// tril(u_N * [sqrt2/2, u_{N-1}^T])
RealMatrix lower_ones_with_scaled_first_column(std::size_t n) {
  RealMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c) m(r, c) = (c == 0) ? kHalfSqrt2 : 1.0;
  return m;
}

}  // namespace

RealMatrix transform_matrix(TransformKind kind, std::size_t n) {
  require_positive(n, "transform_matrix");
  const double N = static_cast<double>(n);
  const double norm = std::sqrt(2.0 / N);
  RealMatrix m(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      const double kk = static_cast<double>(k), jj = static_cast<double>(j);
      switch (kind) {
        case TransformKind::Dct2: {
          const double beta = (k == 0) ? 1.0 / std::numbers::sqrt2 : 1.0;
          m(k, j) = norm * beta * std::cos(kk * (2.0 * jj + 1.0) * kPi / (2.0 * N));
          break;
        }
        case TransformKind::Dct4:
          m(k, j) = norm * std::cos((2.0 * kk + 1.0) * (2.0 * jj + 1.0) * kPi / (4.0 * N));
          break;
        case TransformKind::Dst4:
          m(k, j) = norm * std::sin((2.0 * kk + 1.0) * (2.0 * jj + 1.0) * kPi / (4.0 * N));
          break;
      }
    }
  return m;
}

DyadicMatrix sign_alternation(std::size_t n) {
  require_positive(n, "J");
  DyadicMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = DyadicRational(i % 2 == 0 ? 1 : -1);
  return m;
}

DyadicMatrix counter_identity(std::size_t n) {
  require_positive(n, "IBar");
  DyadicMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = DyadicRational(1);
  return m;
}

DyadicMatrix halve_first(std::size_t n) {
  require_positive(n, "Z");
  DyadicMatrix m = DyadicMatrix::identity(n);
  m(0, 0) = DyadicRational(1, 1);
  return m;
}

DyadicMatrix butterfly(std::size_t half) {
  require_positive(half, "butterfly");
  DyadicMatrix m(2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    m(i, i) = DyadicRational(1);
    m(i, 2 * half - 1 - i) = DyadicRational(1);
    m(half + i, half - 1 - i) = DyadicRational(1);
    m(half + i, half + i) = DyadicRational(-1);
  }
  return m;
}

Permutation perfect_shuffle(std::size_t half) {
  require_positive(half, "perfect shuffle");
  const std::size_t n2 = 2 * half;
  std::vector<std::size_t> map(n2);
  for (std::size_t n = 0; n < n2; ++n) map[n] = (n < half) ? 2 * n : (2 * n) % n2 + 1;
  return Permutation(std::move(map));
}

Permutation bit_reversal(std::size_t n) {
  require_positive(n, "bit reversal");
  if (!std::has_single_bit(n)) {
    throw Error(ErrorCode::InvalidArgument,
                "bit reversal requires a power-of-two size, got " + std::to_string(n));
  }
  const int bits = std::countr_zero(n);
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    map[i] = r;
  }
  return Permutation(std::move(map));
}

RealMatrix dct4_left_factor(std::size_t n) {
  require_positive(n, "A");
  const RealMatrix j = sign_alternation(n).to_real();
  return j * lower_ones_with_scaled_first_column(n) * j;
}

RealMatrix dct4_right_factor(std::size_t n) {
  require_positive(n, "D");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = 2.0 * std::cos((2.0 * static_cast<double>(i) + 1.0) * kPi / (4.0 * static_cast<double>(n)));
  }
  return RealMatrix::diagonal(d);
}

RealMatrix exact_scaling_b(std::size_t n) {
  require_positive(n, "B");
  return -1.0 * counter_identity(n).to_real() * lower_ones_with_scaled_first_column(n) *
         sign_alternation(n).to_real();
}

RealMatrix exact_scaling_g(std::size_t n) {
  require_positive(n, "G");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    d[i] = 2.0 * sign *
           std::cos((2.0 * static_cast<double>(i) + 1.0) * kPi / (4.0 * static_cast<double>(n)));
  }
  return RealMatrix::diagonal(d);
}

StructuralMatrix structural_matrix(StructuralKind kind, std::size_t n) {
  switch (kind) {
    case StructuralKind::J: return sign_alternation(n);
    case StructuralKind::IBar: return counter_identity(n);
    case StructuralKind::Z: return halve_first(n);
    case StructuralKind::A: return dct4_left_factor(n);
    case StructuralKind::D: return dct4_right_factor(n);
    case StructuralKind::B: return exact_scaling_b(n);
    case StructuralKind::G: return exact_scaling_g(n);
    case StructuralKind::PerfectShuffle: return perfect_shuffle(n).to_dyadic();
    case StructuralKind::BitReversal: return bit_reversal(n).to_dyadic();
    case StructuralKind::Butterfly: return butterfly(n);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown structural kind");
}

RealMatrix to_real(const StructuralMatrix& m) {
  if (const auto* d = std::get_if<DyadicMatrix>(&m)) return d->to_real();
  return std::get<RealMatrix>(m);
}

// ----------------------------------------------------------------- identities

namespace {

constexpr std::array kIdentities = {
    Identity::DstIvFromDctIv,     Identity::DctIvCounterIdentity, Identity::DctIvFromDctII,
    Identity::ChenSimplified,     Identity::ShuffleBitReversal,   Identity::OriginalExactScaling,
    Identity::Prop1Factorization,
};

constexpr std::array<std::string_view, kIdentities.size()> kIdentityNames = {
    "dst4-from-dct4", "dct4-counter-identity", "dct4-from-dct2", "chen-simplified",
    "shuffle-bitrev", "original-exact-scaling", "prop1-factorization",
};

// sqrt2/2 * P_2N * lower_left_block * butterfly, with diag(upper, lower) in between.
RealMatrix half_sqrt2_scaled_split(const RealMatrix& upper, const RealMatrix& lower) {
  const std::size_t n = upper.size();
  return kHalfSqrt2 * (perfect_shuffle(n).to_real() * block_diag(upper, lower) *
                       butterfly(n).to_real());
}

}  // namespace

std::span<const Identity> all_identities() { return kIdentities; }

std::string_view identity_name(Identity id) {
  return kIdentityNames[static_cast<std::size_t>(id)];
}

Identity parse_identity(std::string_view name) {
  for (std::size_t i = 0; i < kIdentities.size(); ++i) {
    if (kIdentityNames[i] == name) return kIdentities[i];
  }
  throw Error(ErrorCode::NotFound, "unknown identity '" + std::string(name) + "'");
}

bool identity_requires_power_of_two(Identity id) { return id == Identity::ShuffleBitReversal; }

double verify_identity(Identity id, std::size_t n) {
  require_positive(n, "verify_identity");
  const auto c2 = [](std::size_t m) { return transform_matrix(TransformKind::Dct2, m); };
  const auto c4 = [](std::size_t m) { return transform_matrix(TransformKind::Dct4, m); };
  const auto s4 = [](std::size_t m) { return transform_matrix(TransformKind::Dst4, m); };
  const auto ibar = [](std::size_t m) { return counter_identity(m).to_real(); };
  const auto j = [](std::size_t m) { return sign_alternation(m).to_real(); };

  switch (id) {
    case Identity::DstIvFromDctIv:
      return max_abs_difference(s4(n), ibar(n) * c4(n) * j(n));
    case Identity::DctIvCounterIdentity:
      return max_abs_difference(c4(n) * ibar(n), j(n) * s4(n));
    case Identity::DctIvFromDctII:
      return max_abs_difference(c4(n), dct4_left_factor(n) * c2(n) * dct4_right_factor(n));
    case Identity::ChenSimplified:
      return max_abs_difference(c2(2 * n), half_sqrt2_scaled_split(c2(n), c4(n) * ibar(n)));
    case Identity::ShuffleBitReversal: {
      const Permutation rhs = bit_reversal(2 * n) * [&] {
        const Permutation r = bit_reversal(n);
        std::vector<std::size_t> map(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
          map[i] = r[i];
          map[n + i] = n + r[i];
        }
        return Permutation(std::move(map));
      }();
      return max_abs_difference(perfect_shuffle(n).to_real(), rhs.to_real());
    }
    case Identity::OriginalExactScaling:
      return max_abs_difference(c2(2 * n), half_sqrt2_scaled_split(c2(n), j(n) * s4(n)));
    case Identity::Prop1Factorization: {
      const RealMatrix eye = RealMatrix::identity(n);
      const RealMatrix rhs =
          kHalfSqrt2 * (perfect_shuffle(n).to_real() * block_diag(eye, exact_scaling_b(n)) *
                        block_diag(c2(n), c2(n)) * block_diag(eye, exact_scaling_g(n)) *
                        butterfly(n).to_real());
      return max_abs_difference(c2(2 * n), rhs);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown identity");
}

}  // namespace dctscale
