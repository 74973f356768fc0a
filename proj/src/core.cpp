#include "jl/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jl {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t SeedSpec::key() const {
  return mix64(mix64(master_seed ^ 0x6a09e667f3bcc909ULL) + stream_id * 0x9e3779b97f4a7c15ULL);
}

SeedSpec SeedSpec::child(std::uint64_t id) const { return SeedSpec{key(), id}; }

namespace {

std::uint64_t splitmix_next(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  return mix64(state);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

void normalize(std::span<double> values) {
  if (values.size() == 1) {
    values[0] = std::copysign(1.0, values[0]);  // exact, unlike v / |v| via sqrt
    return;
  }
  double sq = 0.0;
  for (double v : values) sq += v * v;
  const double inv = 1.0 / std::sqrt(sq);
  for (double& v : values) v *= inv;
}

}  // namespace

RandomStream::RandomStream(const SeedSpec& seed) {
  std::uint64_t state = seed.key();
  for (auto& word : s_) word = splitmix_next(state);
}

std::uint64_t RandomStream::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t RandomStream::below(std::uint64_t bound) noexcept {
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RandomStream::normal() noexcept {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

RandomStream derive_stream(const SeedSpec& seed) { return RandomStream(seed); }

InputVector InputVector::dense(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("InputVector: dimension must be positive");
  const std::size_t dim = values.size();
  return InputVector(dim, std::move(values));
}

InputVector InputVector::sparse(std::size_t dim, std::vector<SparseEntry> entries) {
  if (dim == 0) throw std::invalid_argument("InputVector: dimension must be positive");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].index >= dim) {
      throw std::invalid_argument("InputVector: index " + std::to_string(entries[i].index) +
                                  " out of range for dimension " + std::to_string(dim));
    }
    if (i > 0 && entries[i].index <= entries[i - 1].index) {
      throw std::invalid_argument("InputVector: sparse indices must be strictly increasing");
    }
  }
  return InputVector(dim, std::move(entries));
}

InputVector InputVector::basis(std::size_t dim, std::size_t index) {
  return sparse(dim, {SparseEntry{index, 1.0}});
}

std::span<const SparseEntry> InputVector::entries() const {
  if (const auto* e = std::get_if<std::vector<SparseEntry>>(&storage_)) return *e;
  return {};
}

std::span<const double> InputVector::values() const {
  if (const auto* v = std::get_if<std::vector<double>>(&storage_)) return *v;
  return {};
}

std::size_t InputVector::nonzeros() const {
  if (is_sparse()) return entries().size();
  const auto v = values();
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; }));
}

double InputVector::squared_norm() const {
  double sq = 0.0;
  if (is_sparse()) {
    for (const auto& e : entries()) sq += e.value * e.value;
  } else {
    for (double v : values()) sq += v * v;
  }
  return sq;
}

InputVector InputVector::densified() const {
  if (!is_sparse()) return *this;
  std::vector<double> out(dim_, 0.0);
  for (const auto& e : entries()) out[e.index] = e.value;
  return dense(std::move(out));
}

InputVector InputVector::scaled(double factor) const {
  if (is_sparse()) {
    std::vector<SparseEntry> out(entries().begin(), entries().end());
    for (auto& e : out) e.value *= factor;
    return InputVector(dim_, std::move(out));
  }
  std::vector<double> out(values().begin(), values().end());
  for (double& v : out) v *= factor;
  return InputVector(dim_, std::move(out));
}

std::vector<std::size_t> sample_subset(std::size_t n, std::size_t t, RandomStream& stream) {
  if (t > n) throw std::invalid_argument("sample_subset: subset size exceeds population");
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> chosen;
  chosen.reserve(t);
  for (std::size_t j = n - t; j < n; ++j) {
    const auto r = static_cast<std::size_t>(stream.below(j + 1));
    const std::size_t pick = taken[r] ? j : r;
    taken[pick] = true;
    chosen.push_back(pick);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

InputVector sample_unit_sphere(std::size_t d, const SeedSpec& seed) {
  if (d == 0) throw std::invalid_argument("sample_unit_sphere: d must be positive");
  RandomStream stream(seed);
  std::vector<double> values(d);
  for (double& v : values) v = stream.normal();
  normalize(values);
  return InputVector::dense(std::move(values));
}

InputVector sample_sparse_unit(std::size_t d, std::size_t t, const SeedSpec& seed) {
  if (t == 0 || t > d) {
    throw std::invalid_argument("sample_sparse_unit: need 1 <= t <= d (t=" + std::to_string(t) +
                                ", d=" + std::to_string(d) + ")");
  }
  RandomStream stream(seed);
  const auto support = sample_subset(d, t, stream);
  std::vector<double> values(t);
  for (double& v : values) v = stream.normal();
  normalize(values);
  std::vector<SparseEntry> entries(t);
  for (std::size_t i = 0; i < t; ++i) entries[i] = SparseEntry{support[i], values[i]};
  return InputVector::sparse(d, std::move(entries));
}

}  // namespace jl
