#include "jl/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace jl {

std::string ConstructionKind::name() const {
  switch (family) {
    case ConstructionFamily::kDenseGaussian:
      return "DenseGaussian";
    case ConstructionFamily::kRademacher:
      return "Rademacher";
    case ConstructionFamily::kAchlioptasSparse:
      return "AchlioptasSparse";
    case ConstructionFamily::kGraphSparse:
      return "GraphSparse(s=" + std::to_string(s) + ")";
  }
  return "Unknown";
}

DenseTransform DenseTransform::from_entries(std::size_t k, std::size_t d, std::vector<double> entries,
                                            ConstructionKind kind, std::optional<SeedSpec> seed) {
  if (k == 0 || d == 0) throw std::invalid_argument("DenseTransform: k and d must be positive");
  if (kind.is_graph()) throw std::invalid_argument("DenseTransform: GraphSparse is stored column-major");
  if (entries.size() != k * d) throw std::invalid_argument("DenseTransform: expected k*d entries");
  return DenseTransform(k, d, std::move(entries), kind, seed);
}

SparseColumnLayout::SparseColumnLayout(std::size_t k, std::size_t d, std::size_t s,
                                       std::vector<std::uint32_t> rows, std::vector<std::int8_t> signs,
                                       std::optional<SeedSpec> seed)
    : k_(k),
      d_(d),
      s_(s),
      value_scale_(1.0 / std::sqrt(static_cast<double>(s))),
      seed_(seed),
      rows_(std::move(rows)),
      signs_(std::move(signs)) {}

SparseColumnLayout SparseColumnLayout::from_columns(std::size_t k, std::size_t d, std::size_t s,
                                                    std::vector<std::uint32_t> rows,
                                                    std::vector<std::int8_t> signs,
                                                    std::optional<SeedSpec> seed) {
  if (k == 0 || d == 0) throw std::invalid_argument("SparseColumnLayout: k and d must be positive");
  if (s == 0 || s > k) throw std::invalid_argument("SparseColumnLayout: need 1 <= s <= k");
  if (rows.size() != d * s || signs.size() != d * s) {
    throw std::invalid_argument("SparseColumnLayout: expected d*s rows and signs");
  }
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t j = 0; j < s; ++j) {
      const std::size_t at = c * s + j;
      if (rows[at] >= k) throw std::invalid_argument("SparseColumnLayout: row index out of range");
      if (j > 0 && rows[at] <= rows[at - 1]) {
        throw std::invalid_argument("SparseColumnLayout: column rows must be strictly increasing");
      }
      if (signs[at] != 1 && signs[at] != -1) throw std::invalid_argument("SparseColumnLayout: sign must be +-1");
    }
  }
  return SparseColumnLayout(k, d, s, std::move(rows), std::move(signs), seed);
}

double SparseColumnLayout::at(std::size_t r, std::size_t c) const {
  const auto rows = column_rows(c);
  const auto it = std::lower_bound(rows.begin(), rows.end(), static_cast<std::uint32_t>(r));
  if (it == rows.end() || *it != r) return 0.0;
  return column_signs(c)[static_cast<std::size_t>(it - rows.begin())] * value_scale_;
}

std::size_t rows_of(const Transform& transform) {
  return std::visit([](const auto& t) { return t.k(); }, transform);
}

std::size_t cols_of(const Transform& transform) {
  return std::visit([](const auto& t) { return t.d(); }, transform);
}

ConstructionKind kind_of(const Transform& transform) {
  return std::visit([](const auto& t) -> ConstructionKind { return t.kind(); }, transform);
}

std::vector<std::uint32_t> sample_rows_without_replacement(std::size_t k, std::size_t s, RandomStream& stream) {
  if (s > k) throw std::invalid_argument("sample_rows_without_replacement: s exceeds k");
  std::vector<std::uint32_t> pool(k);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(stream.below(k - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(s);
  std::sort(pool.begin(), pool.end());
  return pool;
}

SparseColumnLayout sample_graph_layout(std::size_t k, std::size_t d, std::size_t s, const SeedSpec& seed) {
  if (k == 0 || d == 0) throw std::invalid_argument("sample_transform: k and d must be positive");
  if (s == 0 || s > k) {
    throw std::invalid_argument("sample_transform: GraphSparse needs 1 <= s <= k (s=" + std::to_string(s) +
                                ", k=" + std::to_string(k) + ")");
  }
  if (k > std::numeric_limits<std::uint32_t>::max()) throw std::length_error("sample_transform: k too large");
  if (d > std::vector<std::uint32_t>().max_size() / s) throw std::length_error("sample_transform: d*s too large");

  RandomStream stream(seed);
  std::vector<std::uint32_t> rows;
  std::vector<std::int8_t> signs;
  rows.reserve(d * s);
  signs.reserve(d * s);
  // Per column: s rows, then s signs, all from the one transform stream.
  for (std::size_t c = 0; c < d; ++c) {
    const auto column = sample_rows_without_replacement(k, s, stream);
    rows.insert(rows.end(), column.begin(), column.end());
    for (std::size_t i = 0; i < s; ++i) signs.push_back(static_cast<std::int8_t>(stream.sign()));
  }
  return SparseColumnLayout(k, d, s, std::move(rows), std::move(signs), seed);
}

Transform sample_transform(ConstructionKind kind, std::size_t k, std::size_t d, const SeedSpec& seed) {
  if (k == 0 || d == 0) throw std::invalid_argument("sample_transform: k and d must be positive");
  if (kind.is_graph()) return sample_graph_layout(k, d, kind.s, seed);

  if (d > std::vector<double>().max_size() / k) {
    throw std::length_error("sample_transform: k*d entries exceed addressable memory");
  }
  RandomStream stream(seed);
  std::vector<double> entries(k * d);
  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
  switch (kind.family) {
    case ConstructionFamily::kDenseGaussian:
      for (double& e : entries) e = stream.normal() * inv_sqrt_k;
      break;
    case ConstructionFamily::kRademacher:
      for (double& e : entries) e = stream.sign() * inv_sqrt_k;
      break;
    case ConstructionFamily::kAchlioptasSparse: {
      // +sqrt(3/k) w.p. 1/6, -sqrt(3/k) w.p. 1/6, 0 w.p. 2/3.
      const double magnitude = std::sqrt(3.0 / static_cast<double>(k));
      for (double& e : entries) {
        const auto u = stream.below(6);
        e = u == 0 ? magnitude : (u == 1 ? -magnitude : 0.0);
      }
      break;
    }
    case ConstructionFamily::kGraphSparse:
      break;
  }
  return DenseTransform::from_entries(k, d, std::move(entries), kind, seed);
}

std::size_t nnz(const Transform& transform) {
  if (const auto* graph = std::get_if<SparseColumnLayout>(&transform)) return graph->d() * graph->s();
  const auto& dense = std::get<DenseTransform>(transform);
  const auto e = dense.entries();
  return static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [](double v) { return v != 0.0; }));
}

}  // namespace jl
