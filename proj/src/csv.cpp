#include <charconv>
#include <ostream>
#include <stdexcept>

#include "jl/experiments.hpp"

namespace jl {

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "construction,input_family,axis_name,axis_value,probe,mean,std,trials\n";
  for (const auto& row : result.rows) {
    out << row.construction << ',' << row.input_family << ',' << result.axis_name << ',' << row.axis_value << ','
        << format_double(row.probe) << ',' << format_double(row.mean) << ',' << format_double(row.std) << ','
        << row.trials << '\n';
  }
}

void write_cdf_csv(const CdfResult& result, std::ostream& out) {
  out << "construction,grid,cdf\n";
  for (const auto& series : result.series) {
    for (std::size_t j = 0; j < result.grid.size(); ++j) {
      out << series.construction << ',' << format_double(result.grid[j]) << ',' << format_double(series.cdf[j])
          << '\n';
    }
  }
}

void write_tail_csv(const CdfResult& result, std::ostream& out) {
  out << "construction,threshold,tail\n";
  for (const auto& series : result.series) {
    for (std::size_t j = 0; j < result.tail_thresholds.size(); ++j) {
      out << series.construction << ',' << format_double(result.tail_thresholds[j]) << ','
          << format_double(series.tail[j]) << '\n';
    }
  }
}

}  // namespace jl
