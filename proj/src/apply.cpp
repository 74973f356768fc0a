#include "jl/apply.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "jl/parallel.hpp"

namespace jl {
namespace {

void check_dims(const Transform& transform, const InputVector& x) {
  if (x.dim() != cols_of(transform)) {
    throw std::invalid_argument("apply: input dimension " + std::to_string(x.dim()) +
                                " does not match transform dimension " + std::to_string(cols_of(transform)));
  }
}

void apply_dense(const DenseTransform& r, const InputVector& x, std::vector<double>& y, WorkCounter& counter) {
  const std::size_t k = r.k();
  if (x.is_sparse()) {
    // Strided column access on the row-major layout.
    for (const auto& e : x.entries()) {
      for (std::size_t row = 0; row < k; ++row) y[row] += r.at(row, e.index) * e.value;
    }
    counter.entries_touched += k * x.entries().size();
    return;
  }
  const auto xv = x.values();
  for (std::size_t row = 0; row < k; ++row) {
    const auto coeffs = r.row(row);
    double acc = 0.0;
    for (std::size_t c = 0; c < coeffs.size(); ++c) acc += coeffs[c] * xv[c];
    y[row] = acc;
  }
  counter.entries_touched += k * r.d();
}

void scatter_column(const SparseColumnLayout& r, std::size_t column, double value, std::vector<double>& y) {
  const auto rows = r.column_rows(column);
  const auto signs = r.column_signs(column);
  const double scaled = value * r.value_scale();
  for (std::size_t j = 0; j < rows.size(); ++j) y[rows[j]] += signs[j] * scaled;
}

void apply_graph(const SparseColumnLayout& r, const InputVector& x, std::vector<double>& y, WorkCounter& counter) {
  if (x.is_sparse()) {
    for (const auto& e : x.entries()) scatter_column(r, e.index, e.value, y);
    counter.entries_touched += x.entries().size() * r.s();
    return;
  }
  const auto xv = x.values();
  for (std::size_t c = 0; c < xv.size(); ++c) scatter_column(r, c, xv[c], y);
  counter.entries_touched += xv.size() * r.s();
}

double squared_norm(const std::vector<double>& y) {
  double sq = 0.0;
  for (double v : y) sq += v * v;
  return sq;
}

}  // namespace

std::vector<double> apply(const Transform& transform, const InputVector& x, WorkCounter& counter) {
  check_dims(transform, x);
  std::vector<double> y(rows_of(transform), 0.0);
  if (const auto* graph = std::get_if<SparseColumnLayout>(&transform)) {
    apply_graph(*graph, x, y, counter);
  } else {
    apply_dense(std::get<DenseTransform>(transform), x, y, counter);
  }
  return y;
}

std::vector<double> apply(const Transform& transform, const InputVector& x) {
  WorkCounter unused;
  return jl::apply(transform, x, unused);
}

double distortion(const Transform& transform, const InputVector& x) {
  const double norm = std::sqrt(x.squared_norm());
  if (!(std::abs(norm - 1.0) <= kUnitNormTolerance)) {
    throw std::invalid_argument("distortion: input must be a unit vector (norm " + std::to_string(norm) + ")");
  }
  return squared_norm(jl::apply(transform, x)) - 1.0;
}

std::vector<DistortionSample> distortion_batch(const Transform& transform, std::span<const InputVector> xs,
                                               std::size_t transform_instance, std::size_t threads) {
  const std::size_t d = cols_of(transform);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].dim() != d) {
      throw std::invalid_argument("distortion_batch: vector " + std::to_string(i) + " has dimension " +
                                  std::to_string(xs[i].dim()) + ", transform expects " + std::to_string(d));
    }
  }
  std::vector<DistortionSample> out(xs.size());
  parallel_for(xs.size(), threads == 0 ? resolve_threads() : threads, [&](std::size_t i) {
    out[i] = DistortionSample{distortion(transform, xs[i]), transform_instance, i};
  });
  return out;
}

}  // namespace jl
