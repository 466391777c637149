#pragma once

// Doubling map T_N -> T_2N = P_2N * diag(I, B) * diag(T, T) * diag(I, G) * butterfly
// for a family of parameter pairs (B, G), plus recursive scaling and the
// sufficient orthogonality conditions.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "dctscale/catalog.hpp"
#include "dctscale/exact.hpp"
#include "dctscale/fastpath.hpp"
#include "dctscale/matkit.hpp"

namespace dctscale {

enum class Method { Jam, I, II, III, IV, V, VI, VII, Exact };

// JAM through VII, in table order.
std::span<const Method> approximate_methods();
std::string_view method_name(Method m);
// Case-insensitive; accepts "jam", "i" .. "vii", "exact".
Method parse_method(std::string_view name);
bool is_dyadic(Method m);  // every method except Exact

StructuralMatrix parameter_b(Method m, std::size_t n);
StructuralMatrix parameter_g(Method m, std::size_t n);

// Declared cost of diag(I, B) and diag(I, G). B for III and VII carries a
// 1/2 that only rescales one output row, which the final Sigma absorbs, so it
// is declared free; count_dense_dyadic still reports one shift for it.
// Throws InvalidArgument for Exact.
Cost declared_b_cost(Method m, std::size_t n);
Cost declared_g_cost(Method m, std::size_t n);

struct BaseTransform {
  StructuralMatrix matrix;
  std::optional<Cost> cost;  // published fast-algorithm cost, when known
  std::string label;

  static BaseTransform exact_dct(std::size_t n);
  static BaseTransform from_entry(const ApproximationEntry& e);
  static BaseTransform from_dyadic(DyadicMatrix m, std::string label);

  std::size_t size() const;
  bool dyadic() const { return std::holds_alternative<DyadicMatrix>(matrix); }
};

struct ScaledTransform {
  RealMatrix dense;                       // T_2N before orthogonalization
  std::optional<DyadicMatrix> dyadic;     // same, exactly, when every stage is dyadic
  std::optional<FactoredTransform> factored;  // present iff dyadic is
  RealMatrix sigma;
  RealMatrix c_hat;                       // sigma * dense

  std::size_t size() const { return dense.size(); }
};

// One doubling step. Throws Singular when the Gram of T_2N is singular.
ScaledTransform scale(const BaseTransform& t, Method method, OrthoMode mode = OrthoMode::RowNorm);

// Doubles until `target`, using methods[k] at level k (a single method is
// reused at every level). Orthogonalizes once, at the end. `target` must be
// t.size() * 2^k with k >= 1.
ScaledTransform scale_to(const BaseTransform& t, std::size_t target, std::span<const Method> methods,
                         OrthoMode mode = OrthoMode::RowNorm);
ScaledTransform scale_to(const BaseTransform& t, std::size_t target, Method method,
                         OrthoMode mode = OrthoMode::RowNorm);

struct OrthogonalityCheck {
  bool cond_i = false;    // t t^T diagonal
  bool cond_ii = false;   // G G^T = a I
  bool cond_iii = false;  // B is a generalized permutation
  bool orthogonal = false;
};

OrthogonalityCheck check_orthogonality(const BaseTransform& t, Method method);

}  // namespace dctscale
