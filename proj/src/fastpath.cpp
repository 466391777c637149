#include "dctscale/fastpath.hpp"

#include <string>

#include "dctscale/error.hpp"
#include "dctscale/exact.hpp"
#include "json.hpp"

namespace dctscale {

namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool costs_shift(const DyadicRational& v) { return !v.is_zero() && !v.is_unit(); }

template <class T>
T from_dyadic(const DyadicRational& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v.to_double();
  } else {
    return v;
  }
}

template <class T>
std::vector<T> apply_factor(const Factor& f, std::span<const T> x) {
  return std::visit(
      Overloaded{
          [&](const PermutationFactor& p) { return p.perm.apply(x); },
          [&](const DiagonalFactor& d) {
            std::vector<T> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = from_dyadic<T>(d.entries[i]) * x[i];
            return y;
          },
          [&](const ButterflyFactor& b) {
            const std::size_t h = b.half;
            std::vector<T> y(2 * h);
            for (std::size_t i = 0; i < h; ++i) {
              y[i] = x[i] + x[2 * h - 1 - i];
              y[h + i] = x[h - 1 - i] - x[h + i];
            }
            return y;
          },
          [&](const BlockDiagFactor& bd) {
            std::vector<T> y;
            y.reserve(x.size());
            std::size_t offset = 0;
            for (const auto& block : bd.blocks) {
              const std::vector<T> part = block->apply(x.subspan(offset, block->size()));
              y.insert(y.end(), part.begin(), part.end());
              offset += block->size();
            }
            return y;
          },
          [&](const SparseFactor& s) {
            const std::size_t n = s.matrix.size();
            std::vector<T> y(n);
            for (std::size_t r = 0; r < n; ++r) {
              T acc{};
              for (std::size_t c = 0; c < n; ++c) {
                const DyadicRational& v = s.matrix(r, c);
                if (!v.is_zero()) acc = acc + from_dyadic<T>(v) * x[c];
              }
              y[r] = acc;
            }
            return y;
          },
      },
      f);
}

json factor_json(const Factor& f);

json cost_json(Cost c) { return {{"adds", c.adds}, {"shifts", c.shifts}}; }

json transform_json(const FactoredTransform& t) {
  json factors = json::array();
  for (const Factor& f : t.factors()) factors.push_back(factor_json(f));
  return {{"size", t.size()}, {"cost", cost_json(t.cost())}, {"factors", std::move(factors)}};
}

json factor_json(const Factor& f) {
  json j = std::visit(
      Overloaded{
          [](const PermutationFactor& p) {
            return json{{"kind", "permutation"}, {"map", std::vector<std::size_t>(p.perm.map().begin(), p.perm.map().end())}};
          },
          [](const DiagonalFactor& d) {
            json entries = json::array();
            for (const auto& v : d.entries) entries.push_back(v.to_string());
            return json{{"kind", "diagonal"}, {"entries", std::move(entries)}};
          },
          [](const ButterflyFactor& b) { return json{{"kind", "butterfly"}, {"half", b.half}}; },
          [](const BlockDiagFactor& bd) {
            json blocks = json::array();
            for (const auto& block : bd.blocks) blocks.push_back(transform_json(*block));
            return json{{"kind", "block_diag"}, {"blocks", std::move(blocks)}};
          },
          [](const SparseFactor& s) {
            json rows = json::array();
            for (std::size_t r = 0; r < s.matrix.size(); ++r) {
              json row = json::array();
              for (std::size_t c = 0; c < s.matrix.size(); ++c) row.push_back(s.matrix(r, c).to_string());
              rows.push_back(std::move(row));
            }
            return json{{"kind", "sparse"},
                        {"label", s.label},
                        {"declared", s.declared ? cost_json(*s.declared) : json(nullptr)},
                        {"rows", std::move(rows)}};
          },
      },
      f);
  j["size"] = factor_size(f);
  j["cost"] = cost_json(factor_cost(f));
  return j;
}

}  // namespace

Cost count_dense_dyadic(const DyadicMatrix& m) {
  Cost c;
  for (std::size_t r = 0; r < m.size(); ++r) {
    std::uint64_t nonzeros = 0;
    for (std::size_t col = 0; col < m.size(); ++col) {
      const DyadicRational& v = m(r, col);
      if (!v.is_zero()) ++nonzeros;
      if (costs_shift(v)) ++c.shifts;
    }
    if (nonzeros > 1) c.adds += nonzeros - 1;
  }
  return c;
}

std::size_t factor_size(const Factor& f) {
  return std::visit(Overloaded{
                        [](const PermutationFactor& p) { return p.perm.size(); },
                        [](const DiagonalFactor& d) { return d.entries.size(); },
                        [](const ButterflyFactor& b) { return 2 * b.half; },
                        [](const BlockDiagFactor& bd) {
                          std::size_t n = 0;
                          for (const auto& block : bd.blocks) n += block->size();
                          return n;
                        },
                        [](const SparseFactor& s) { return s.matrix.size(); },
                    },
                    f);
}

Cost factor_cost(const Factor& f) {
  return std::visit(Overloaded{
                        [](const PermutationFactor&) { return Cost{}; },
                        [](const DiagonalFactor& d) {
                          Cost c;
                          for (const auto& v : d.entries) c.shifts += costs_shift(v) ? 1 : 0;
                          return c;
                        },
                        [](const ButterflyFactor& b) { return Cost{2 * b.half, 0}; },
                        [](const BlockDiagFactor& bd) {
                          Cost c;
                          for (const auto& block : bd.blocks) c += block->cost();
                          return c;
                        },
                        [](const SparseFactor& s) {
                          return s.declared ? *s.declared : count_dense_dyadic(s.matrix);
                        },
                    },
                    f);
}

DyadicMatrix factor_dense(const Factor& f) {
  return std::visit(Overloaded{
                        [](const PermutationFactor& p) { return p.perm.to_dyadic(); },
                        [](const DiagonalFactor& d) {
                          DyadicMatrix m(d.entries.size());
                          for (std::size_t i = 0; i < d.entries.size(); ++i) m(i, i) = d.entries[i];
                          return m;
                        },
                        [](const ButterflyFactor& b) { return butterfly(b.half); },
                        [](const BlockDiagFactor& bd) {
                          DyadicMatrix m;
                          bool first = true;
                          for (const auto& block : bd.blocks) {
                            m = first ? block->dense() : block_diag(m, block->dense());
                            first = false;
                          }
                          return m;
                        },
                        [](const SparseFactor& s) { return s.matrix; },
                    },
                    f);
}

FactoredTransform::FactoredTransform(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::InvalidArgument, "factored transform needs at least one factor");
  size_ = factor_size(factors_.front());
  for (const Factor& f : factors_) {
    if (factor_size(f) != size_) {
      throw Error(ErrorCode::DimensionMismatch, "factor sizes differ: " + std::to_string(size_) +
                                                    " vs " + std::to_string(factor_size(f)));
    }
  }
}

FactoredTransform FactoredTransform::leaf(DyadicMatrix m, std::optional<Cost> declared,
                                          std::string label) {
  return FactoredTransform({SparseFactor{std::move(m), declared, std::move(label)}});
}

Cost FactoredTransform::cost() const {
  Cost c;
  for (const Factor& f : factors_) c += factor_cost(f);
  return c;
}

DyadicMatrix FactoredTransform::dense() const {
  DyadicMatrix m = factor_dense(factors_.front());
  for (std::size_t i = 1; i < factors_.size(); ++i) m = m * factor_dense(factors_[i]);
  return m;
}

template <class T>
std::vector<T> FactoredTransform::apply_impl(std::span<const T> x) const {
  if (x.size() != size_) {
    throw Error(ErrorCode::DimensionMismatch, "input length " + std::to_string(x.size()) +
                                                  " does not match transform size " +
                                                  std::to_string(size_));
  }
  std::vector<T> v(x.begin(), x.end());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    v = apply_factor<T>(*it, std::span<const T>(v));
  }
  return v;
}

std::vector<double> FactoredTransform::apply(std::span<const double> x) const {
  return apply_impl(x);
}

std::vector<DyadicRational> FactoredTransform::apply(std::span<const DyadicRational> x) const {
  return apply_impl(x);
}

std::string FactoredTransform::to_json(int indent) const { return transform_json(*this).dump(indent); }

}  // namespace dctscale
