#include <array>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "jl/constructions.hpp"

namespace jl {
namespace {

constexpr std::array<char, 4> kMagic = {'J', 'L', 'T', 'F'};

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("load_transform: truncated input");
  return value;
}

template <typename T>
void write_array(std::ostream& out, std::span<const T> values) {
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
}

template <typename T>
std::vector<T> read_array(std::istream& in, std::size_t count) {
  std::vector<T> values(count);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(count * sizeof(T)));
  if (!in) throw std::runtime_error("load_transform: truncated payload");
  return values;
}

}  // namespace

void save_transform(const Transform& transform, std::ostream& out) {
  const ConstructionKind kind = kind_of(transform);
  const auto& seed = std::visit([](const auto& t) -> const std::optional<SeedSpec>& { return t.seed(); }, transform);

  out.write(kMagic.data(), kMagic.size());
  write_pod(out, kTransformFormatVersion);
  write_pod(out, static_cast<std::uint8_t>(kind.family));
  write_pod(out, static_cast<std::uint64_t>(rows_of(transform)));
  write_pod(out, static_cast<std::uint64_t>(cols_of(transform)));
  write_pod(out, static_cast<std::uint64_t>(kind.s));
  write_pod(out, static_cast<std::uint8_t>(seed.has_value()));
  write_pod(out, seed ? seed->master_seed : std::uint64_t{0});
  write_pod(out, seed ? seed->stream_id : std::uint64_t{0});

  if (const auto* graph = std::get_if<SparseColumnLayout>(&transform)) {
    write_array(out, graph->all_rows());
    write_array(out, graph->all_signs());
  } else {
    write_array(out, std::get<DenseTransform>(transform).entries());
  }
  if (!out) throw std::runtime_error("save_transform: write failed");
}

Transform load_transform(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("load_transform: not a transform file");
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kTransformFormatVersion) {
    throw std::runtime_error("load_transform: unsupported version " + std::to_string(version));
  }
  const auto family_tag = read_pod<std::uint8_t>(in);
  if (family_tag > static_cast<std::uint8_t>(ConstructionFamily::kGraphSparse)) {
    throw std::runtime_error("load_transform: unknown construction family");
  }
  const auto k = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
  const auto d = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
  const auto s = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
  const bool has_seed = read_pod<std::uint8_t>(in) != 0;
  const SeedSpec seed{read_pod<std::uint64_t>(in), read_pod<std::uint64_t>(in)};
  const std::optional<SeedSpec> maybe_seed = has_seed ? std::optional(seed) : std::nullopt;

  const ConstructionKind kind{static_cast<ConstructionFamily>(family_tag), s};
  if (kind.is_graph()) {
    if (s == 0 || s > k) throw std::runtime_error("load_transform: invalid column sparsity");
    auto rows = read_array<std::uint32_t>(in, d * s);
    auto signs = read_array<std::int8_t>(in, d * s);
    return SparseColumnLayout::from_columns(k, d, s, std::move(rows), std::move(signs), maybe_seed);
  }
  auto entries = read_array<double>(in, k * d);
  return DenseTransform::from_entries(k, d, std::move(entries), kind, maybe_seed);
}

}  // namespace jl
