#pragma once

// Registry of published 8-point multiplierless DCT-II approximations and the
// orthogonalization operator that turns a low-complexity matrix into an
// (approximately) orthonormal transform.

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctscale/fastpath.hpp"
#include "dctscale/matkit.hpp"

namespace dctscale {

struct ApproximationEntry {
  std::string id;
  DyadicMatrix matrix;  // 8 x 8, entries in {0, +-1/2, +-1, +-2}
  std::uint64_t baseline_adds = 0;
  std::uint64_t baseline_shifts = 0;
  std::string source;

  Cost baseline() const { return {baseline_adds, baseline_shifts}; }
};

// Registry ids in table order.
std::span<const std::string_view> catalog_ids();

// Matrices that are computed rather than read from disk.
DyadicMatrix signed_dct8();   // sign(C_8)
DyadicMatrix rounded_dct8();  // round(2 C_8)

// Parses the plain-text matrix format: first line N, then N rows of N
// integer or p/2^k literals. '#' starts a comment.
DyadicMatrix parse_matrix_text(std::string_view text);

class Catalog {
 public:
  // Reads <dir>/MANIFEST, every data file it names, verifies each SHA-256 and
  // runs the entry self-tests. Throws Io, Parse, Checksum or InvalidArgument.
  static Catalog open(const std::filesystem::path& dir = default_directory());
  static std::filesystem::path default_directory();

  // Throws NotFound for an unknown id.
  const ApproximationEntry& load(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, ApproximationEntry, std::less<>> entries_;
  std::vector<std::string> order_;
};

// Entry-set, Gram-diagonality (all but sdct), cost-consistency checks.
// Throws InvalidArgument naming the failed check.
void self_test(const ApproximationEntry& entry);

enum class OrthoMode {
  RowNorm,      // sigma = diag(t t^T)^(-1/2)
  InverseGram,  // sigma = sqrt(diag((t t^T)^-1))
};

struct Orthogonalized {
  RealMatrix sigma;
  RealMatrix c_hat;  // sigma * t
};

// The two modes agree whenever t t^T is diagonal. Throws Singular when
// t t^T is not invertible.
Orthogonalized orthogonalize(const RealMatrix& t, OrthoMode mode = OrthoMode::RowNorm);
Orthogonalized orthogonalize(const DyadicMatrix& t, OrthoMode mode = OrthoMode::RowNorm);

std::string_view ortho_mode_name(OrthoMode mode);
OrthoMode parse_ortho_mode(std::string_view name);

}  // namespace dctscale
