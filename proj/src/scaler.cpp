#include "dctscale/scaler.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <memory>

#include "dctscale/error.hpp"

namespace dctscale {

namespace {

constexpr std::array kApproximate = {Method::Jam, Method::I,  Method::II, Method::III,
                                     Method::IV,  Method::V,  Method::VI, Method::VII};
constexpr std::array<std::string_view, 9> kNames = {"JAM", "I",   "II",  "III",  "IV",
                                                    "V",   "VI",  "VII", "EXACT"};

DyadicMatrix negated_ibar_j(std::size_t n) { return -(counter_identity(n) * sign_alternation(n)); }

struct Stage {
  StructuralMatrix t;
  std::optional<FactoredTransform> factored;
};

Stage step(const Stage& in, Method method) {
  const std::size_t n = std::visit([](const auto& m) { return m.size(); }, in.t);
  const StructuralMatrix b = parameter_b(method, n);
  const StructuralMatrix g = parameter_g(method, n);
  const auto* td = std::get_if<DyadicMatrix>(&in.t);
  const auto* bd = std::get_if<DyadicMatrix>(&b);
  const auto* gd = std::get_if<DyadicMatrix>(&g);

  if (td && bd && gd) {
    const DyadicMatrix eye = DyadicMatrix::identity(n);
    const Permutation p = perfect_shuffle(n);
    const DyadicMatrix lower_b = block_diag(eye, *bd);
    const DyadicMatrix lower_g = block_diag(eye, *gd);
    Stage out{p.to_dyadic() * lower_b * block_diag(*td, *td) * lower_g * butterfly(n), std::nullopt};
    if (in.factored) {
      auto half = std::make_shared<const FactoredTransform>(*in.factored);
      std::vector<DyadicRational> g_diag(2 * n);
      for (std::size_t i = 0; i < 2 * n; ++i) g_diag[i] = lower_g(i, i);
      out.factored = FactoredTransform({
          PermutationFactor{p},
          SparseFactor{lower_b, declared_b_cost(method, n), "B_hat"},
          BlockDiagFactor{{half, half}},
          DiagonalFactor{std::move(g_diag)},
          ButterflyFactor{n},
      });
    }
    return out;
  }

  const RealMatrix t = to_real(in.t);
  const RealMatrix eye = RealMatrix::identity(n);
  return {perfect_shuffle(n).to_real() * block_diag(eye, to_real(b)) * block_diag(t, t) *
              block_diag(eye, to_real(g)) * butterfly(n).to_real(),
          std::nullopt};
}

ScaledTransform finish(Stage s, OrthoMode mode) {
  ScaledTransform out;
  out.dense = to_real(s.t);
  if (auto* d = std::get_if<DyadicMatrix>(&s.t)) out.dyadic = std::move(*d);
  out.factored = std::move(s.factored);
  Orthogonalized o = orthogonalize(out.dense, mode);
  out.sigma = std::move(o.sigma);
  out.c_hat = std::move(o.c_hat);
  return out;
}

Stage initial_stage(const BaseTransform& t) {
  Stage s{t.matrix, std::nullopt};
  if (const auto* d = std::get_if<DyadicMatrix>(&t.matrix)) {
    s.factored = FactoredTransform::leaf(*d, t.cost, t.label);
  }
  return s;
}

}  // namespace

std::span<const Method> approximate_methods() { return kApproximate; }

std::string_view method_name(Method m) { return kNames[static_cast<std::size_t>(m)]; }

Method parse_method(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == upper) return static_cast<Method>(i);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scaling method '" + std::string(name) + "'");
}

bool is_dyadic(Method m) { return m != Method::Exact; }

StructuralMatrix parameter_b(Method m, std::size_t n) {
  switch (m) {
    case Method::Jam:
    case Method::IV: return DyadicMatrix::identity(n);
    case Method::I:
    case Method::V: return counter_identity(n);
    case Method::II:
    case Method::VI: return negated_ibar_j(n);
    case Method::III:
    case Method::VII: return -(counter_identity(n) * halve_first(n) * sign_alternation(n));
    case Method::Exact: return exact_scaling_b(n);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scaling method");
}

StructuralMatrix parameter_g(Method m, std::size_t n) {
  switch (m) {
    case Method::Jam:
    case Method::I:
    case Method::II:
    case Method::III: return DyadicMatrix::identity(n);
    case Method::IV:
    case Method::V:
    case Method::VI:
    case Method::VII: return sign_alternation(n);
    case Method::Exact: return exact_scaling_g(n);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scaling method");
}

Cost declared_b_cost(Method m, std::size_t n) {
  if (!is_dyadic(m)) throw Error(ErrorCode::InvalidArgument, "EXACT parameters are not dyadic");
  if (m == Method::III || m == Method::VII) return {};
  return count_dense_dyadic(std::get<DyadicMatrix>(parameter_b(m, n)));
}

Cost declared_g_cost(Method m, std::size_t n) {
  if (!is_dyadic(m)) throw Error(ErrorCode::InvalidArgument, "EXACT parameters are not dyadic");
  return count_dense_dyadic(std::get<DyadicMatrix>(parameter_g(m, n)));
}

BaseTransform BaseTransform::exact_dct(std::size_t n) {
  return {transform_matrix(TransformKind::Dct2, n), std::nullopt, "C" + std::to_string(n)};
}

BaseTransform BaseTransform::from_entry(const ApproximationEntry& e) {
  return {e.matrix, e.baseline(), e.id};
}

BaseTransform BaseTransform::from_dyadic(DyadicMatrix m, std::string label) {
  return {std::move(m), std::nullopt, std::move(label)};
}

std::size_t BaseTransform::size() const {
  return std::visit([](const auto& m) { return m.size(); }, matrix);
}

ScaledTransform scale(const BaseTransform& t, Method method, OrthoMode mode) {
  if (t.size() == 0) throw Error(ErrorCode::InvalidArgument, "cannot scale an empty matrix");
  return finish(step(initial_stage(t), method), mode);
}

ScaledTransform scale_to(const BaseTransform& t, std::size_t target, std::span<const Method> methods,
                         OrthoMode mode) {
  const std::size_t n = t.size();
  if (n == 0 || target <= n || target % n != 0 || !std::has_single_bit(target / n)) {
    throw Error(ErrorCode::InvalidArgument, "target " + std::to_string(target) +
                                                " is not a power-of-two multiple of " +
                                                std::to_string(n));
  }
  const auto levels = static_cast<std::size_t>(std::countr_zero(target / n));
  if (methods.size() != 1 && methods.size() != levels) {
    throw Error(ErrorCode::InvalidArgument, "expected 1 or " + std::to_string(levels) +
                                                " methods, got " + std::to_string(methods.size()));
  }
  Stage s = initial_stage(t);
  for (std::size_t k = 0; k < levels; ++k) s = step(s, methods[methods.size() == 1 ? 0 : k]);
  return finish(std::move(s), mode);
}

ScaledTransform scale_to(const BaseTransform& t, std::size_t target, Method method, OrthoMode mode) {
  return scale_to(t, target, std::span<const Method>(&method, 1), mode);
}

OrthogonalityCheck check_orthogonality(const BaseTransform& t, Method method) {
  const std::size_t n = t.size();
  OrthogonalityCheck r;
  if (const auto* d = std::get_if<DyadicMatrix>(&t.matrix)) {
    r.cond_i = is_diagonal(gram(*d));
  } else {
    r.cond_i = is_diagonal(gram(std::get<RealMatrix>(t.matrix)));
  }

  const RealMatrix gg = gram(to_real(parameter_g(method, n)));
  r.cond_ii = is_diagonal(gg);
  for (std::size_t k = 1; k < n && r.cond_ii; ++k) {
    r.cond_ii = std::abs(gg(k, k) - gg(0, 0)) <= kDefaultTolerance;
  }

  const StructuralMatrix b = parameter_b(method, n);
  if (const auto* d = std::get_if<DyadicMatrix>(&b)) {
    r.cond_iii = is_generalized_permutation(*d);
  } else {
    r.cond_iii = is_generalized_permutation(std::get<RealMatrix>(b));
  }
  r.orthogonal = r.cond_i && r.cond_ii && r.cond_iii;
  return r;
}

}  // namespace dctscale
