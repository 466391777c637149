#pragma once

// Exact transform matrices (DCT-II, DCT-IV, DST-IV) and the structural
// factors that relate a 2N-point DCT-II to N-point transforms.

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>

#include "dctscale/matkit.hpp"

namespace dctscale {

enum class TransformKind { Dct2, Dct4, Dst4 };

// Orthonormal n-point transform matrix (rows are basis functions).
RealMatrix transform_matrix(TransformKind kind, std::size_t n);

enum class StructuralKind {
  J,               // diag((-1)^n)
  IBar,            // counter-identity
  Z,               // diag(1/2, 1, ..., 1)
  A,               // DCT-IV = A * DCT-II * D
  D,               // diag(2 cos((2n+1)pi/4N))
  B,               // lower-left factor of the exact 2N-point scaling
  G,               // lower-right diagonal factor of the exact 2N-point scaling
  PerfectShuffle,  // 2N x 2N, n is the half size
  BitReversal,     // n must be a power of two
  Butterfly,       // [[I, IBar], [IBar, -I]], 2N x 2N, n is the half size
};

using StructuralMatrix = std::variant<DyadicMatrix, RealMatrix>;

StructuralMatrix structural_matrix(StructuralKind kind, std::size_t n);
RealMatrix to_real(const StructuralMatrix& m);

DyadicMatrix sign_alternation(std::size_t n);  // J
DyadicMatrix counter_identity(std::size_t n);  // IBar
DyadicMatrix halve_first(std::size_t n);       // Z
DyadicMatrix butterfly(std::size_t half);
Permutation perfect_shuffle(std::size_t half);
Permutation bit_reversal(std::size_t n);

RealMatrix dct4_left_factor(std::size_t n);    // A
RealMatrix dct4_right_factor(std::size_t n);   // D
RealMatrix exact_scaling_b(std::size_t n);     // B
RealMatrix exact_scaling_g(std::size_t n);     // G

// Identities used by the derivation of the 2N-point factorization. Each one
// is checked by evaluating both sides and returning the max abs residual.
enum class Identity {
  DstIvFromDctIv,        // S4 = IBar * C4 * J
  DctIvCounterIdentity,  // C4 * IBar = J * S4
  DctIvFromDctII,        // C4 = A * C2 * D
  ChenSimplified,        // C2_2N = sqrt2/2 * P * diag(C2, C4 * IBar) * butterfly
  ShuffleBitReversal,    // P_2N = R_2N * diag(R_N, R_N)
  OriginalExactScaling,  // C2_2N = sqrt2/2 * P * diag(C2, J * S4) * butterfly
  Prop1Factorization,    // C2_2N = sqrt2/2 * P * diag(I, B) * diag(C2, C2) * diag(I, G) * butterfly
};

std::span<const Identity> all_identities();
std::string_view identity_name(Identity id);
Identity parse_identity(std::string_view name);
bool identity_requires_power_of_two(Identity id);

// Max absolute entrywise residual between the two sides at size n (the half
// size for identities that produce a 2N-point matrix).
double verify_identity(Identity id, std::size_t n);

}  // namespace dctscale
