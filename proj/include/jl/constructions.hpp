#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "jl/core.hpp"

namespace jl {

enum class ConstructionFamily : std::uint8_t {
  kDenseGaussian = 0,
  kRademacher = 1,
  kAchlioptasSparse = 2,
  kGraphSparse = 3,
};

/// A construction family plus its column sparsity (GraphSparse only).
struct ConstructionKind {
  ConstructionFamily family = ConstructionFamily::kDenseGaussian;
  std::size_t s = 0;

  static ConstructionKind dense_gaussian() { return {ConstructionFamily::kDenseGaussian, 0}; }
  static ConstructionKind rademacher() { return {ConstructionFamily::kRademacher, 0}; }
  static ConstructionKind achlioptas_sparse() { return {ConstructionFamily::kAchlioptasSparse, 0}; }
  static ConstructionKind graph_sparse(std::size_t s) { return {ConstructionFamily::kGraphSparse, s}; }

  bool is_graph() const { return family == ConstructionFamily::kGraphSparse; }

  /// "DenseGaussian", "Rademacher", "AchlioptasSparse", "GraphSparse(s=16)".
  std::string name() const;

  friend bool operator==(const ConstructionKind&, const ConstructionKind&) = default;
};

/// k x d matrix stored row-major with the 1/sqrt(k) scale already applied.
class DenseTransform {
 public:
  /// Wraps explicit entries. Intended for tests and deserialization; the
  /// result is tagged DenseGaussian unless a kind is given.
  static DenseTransform from_entries(std::size_t k, std::size_t d, std::vector<double> entries,
                                     ConstructionKind kind = ConstructionKind::dense_gaussian(),
                                     std::optional<SeedSpec> seed = std::nullopt);

  std::size_t k() const { return k_; }
  std::size_t d() const { return d_; }
  const ConstructionKind& kind() const { return kind_; }
  const std::optional<SeedSpec>& seed() const { return seed_; }

  std::span<const double> entries() const { return entries_; }
  std::span<const double> row(std::size_t r) const { return {entries_.data() + r * d_, d_}; }
  double at(std::size_t r, std::size_t c) const { return entries_[r * d_ + c]; }

 private:
  DenseTransform(std::size_t k, std::size_t d, std::vector<double> entries, ConstructionKind kind,
                 std::optional<SeedSpec> seed)
      : k_(k), d_(d), kind_(kind), seed_(seed), entries_(std::move(entries)) {}

  std::size_t k_;
  std::size_t d_;
  ConstructionKind kind_;
  std::optional<SeedSpec> seed_;
  std::vector<double> entries_;
};

/// Column-major storage for the graph construction: each column holds exactly
/// s distinct rows (ascending) and one sign per row. Every stored value is
/// sign * value_scale() with value_scale() = 1/sqrt(s).
class SparseColumnLayout {
 public:
  /// Validates the layout invariants; throws std::invalid_argument otherwise.
  static SparseColumnLayout from_columns(std::size_t k, std::size_t d, std::size_t s,
                                         std::vector<std::uint32_t> rows, std::vector<std::int8_t> signs,
                                         std::optional<SeedSpec> seed = std::nullopt);

  std::size_t k() const { return k_; }
  std::size_t d() const { return d_; }
  std::size_t s() const { return s_; }
  ConstructionKind kind() const { return ConstructionKind::graph_sparse(s_); }
  const std::optional<SeedSpec>& seed() const { return seed_; }
  double value_scale() const { return value_scale_; }

  std::span<const std::uint32_t> column_rows(std::size_t c) const { return {rows_.data() + c * s_, s_}; }
  std::span<const std::int8_t> column_signs(std::size_t c) const { return {signs_.data() + c * s_, s_}; }

  std::span<const std::uint32_t> all_rows() const { return rows_; }
  std::span<const std::int8_t> all_signs() const { return signs_; }

  /// Entry (r, c) as a dense value (0 when r is not in column c).
  double at(std::size_t r, std::size_t c) const;

 private:
  SparseColumnLayout(std::size_t k, std::size_t d, std::size_t s, std::vector<std::uint32_t> rows,
                     std::vector<std::int8_t> signs, std::optional<SeedSpec> seed);

  friend SparseColumnLayout sample_graph_layout(std::size_t k, std::size_t d, std::size_t s, const SeedSpec& seed);

  std::size_t k_;
  std::size_t d_;
  std::size_t s_;
  double value_scale_;
  std::optional<SeedSpec> seed_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::int8_t> signs_;
};

using Transform = std::variant<DenseTransform, SparseColumnLayout>;

std::size_t rows_of(const Transform& transform);
std::size_t cols_of(const Transform& transform);
ConstructionKind kind_of(const Transform& transform);

/// Samples a k x d transform of the given kind. Throws std::invalid_argument
/// for k == 0, d == 0, or a GraphSparse s outside [1, k]; std::length_error
/// if k * d entries cannot be addressed.
Transform sample_transform(ConstructionKind kind, std::size_t k, std::size_t d, const SeedSpec& seed);

SparseColumnLayout sample_graph_layout(std::size_t k, std::size_t d, std::size_t s, const SeedSpec& seed);

/// s distinct integers from [0, k), ascending, uniform over all C(k, s)
/// subsets (partial Fisher-Yates).
std::vector<std::uint32_t> sample_rows_without_replacement(std::size_t k, std::size_t s, RandomStream& stream);

/// Structurally nonzero entries.
std::size_t nnz(const Transform& transform);

/// Binary transform files. Layout (little-endian host order):
///   magic "JLTF" | u32 version | u8 family | u64 k | u64 d | u64 s |
///   u8 has_seed | u64 master_seed | u64 stream_id | payload
/// Dense payload: k*d f64 row-major. Graph payload: d*s u32 rows, d*s i8 signs.
inline constexpr std::uint32_t kTransformFormatVersion = 1;

void save_transform(const Transform& transform, std::ostream& out);
Transform load_transform(std::istream& in);

}  // namespace jl
