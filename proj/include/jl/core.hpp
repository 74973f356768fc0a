#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <variant>
#include <vector>

namespace jl {

/// Identifies one deterministic random stream.
///
/// A stream is a pure function of (master_seed, stream_id). Hierarchical
/// streams (experiment -> construction -> trial) are formed with child(),
/// which folds the current pair into a new master seed:
///
///   key(m, s)  = mix64(mix64(m ^ 0x6a09e667f3bcc909) + s * 0x9e3779b97f4a7c15)
///   child(id)  = SeedSpec{key(m, s), id}
///
/// where mix64 is the SplitMix64 finalizer. The generator state is seeded
/// from key(m, s), so no stream depends on how many draws another consumed.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  [[nodiscard]] SeedSpec child(std::uint64_t id) const;
  [[nodiscard]] std::uint64_t key() const;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// xoshiro256** seeded through SplitMix64 from SeedSpec::key().
///
/// Satisfies UniformRandomBitGenerator, but callers should prefer the member
/// samplers: std:: distributions are not bit-identical across standard
/// libraries.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(const SeedSpec& seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next(); }
  std::uint64_t next() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Unbiased integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal via the Box-Muller transform; draws are produced in
  /// pairs and the second of each pair is cached.
  double normal() noexcept;

  /// +1 or -1 with equal probability (one full 64-bit draw per call).
  int sign() noexcept { return (next() >> 63) != 0 ? -1 : 1; }

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Convenience: equivalent to RandomStream(seed).
RandomStream derive_stream(const SeedSpec& seed);

struct SparseEntry {
  std::size_t index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// A vector in R^d stored either densely or as sorted (index, value) pairs.
class InputVector {
 public:
  static InputVector dense(std::vector<double> values);

  /// Throws std::invalid_argument unless indices are strictly increasing and
  /// below dim.
  static InputVector sparse(std::size_t dim, std::vector<SparseEntry> entries);

  /// e_index in R^dim, stored sparse.
  static InputVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return dim_; }
  bool is_sparse() const { return std::holds_alternative<std::vector<SparseEntry>>(storage_); }

  /// Empty span when the vector is dense.
  std::span<const SparseEntry> entries() const;
  /// Empty span when the vector is sparse.
  std::span<const double> values() const;

  std::size_t nonzeros() const;
  double squared_norm() const;

  InputVector densified() const;
  InputVector scaled(double factor) const;

 private:
  InputVector(std::size_t dim, std::variant<std::vector<double>, std::vector<SparseEntry>> storage)
      : dim_(dim), storage_(std::move(storage)) {}

  std::size_t dim_;
  std::variant<std::vector<double>, std::vector<SparseEntry>> storage_;
};

struct DistortionSample {
  double delta;  // ||Rx||^2 - 1
  std::size_t transform_instance;
  std::size_t vector_id;
};

/// Uniform point on the unit sphere in R^d: i.i.d. standard normals, then
/// normalized.
InputVector sample_unit_sphere(std::size_t d, const SeedSpec& seed);

/// Unit vector with exactly t nonzeros at uniformly chosen distinct positions.
/// Nonzero values are i.i.d. standard normal, then normalized.
InputVector sample_sparse_unit(std::size_t d, std::size_t t, const SeedSpec& seed);

/// Uniform t-subset of [0, n) in ascending order (Floyd's algorithm).
std::vector<std::size_t> sample_subset(std::size_t n, std::size_t t, RandomStream& stream);

}  // namespace jl
