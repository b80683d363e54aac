#pragma once

// Cached lookup tables shared by the translation kernels. Construction is
// thread-safe (function-local statics); lookups are unchecked.

#include <array>
#include <cmath>
#include <vector>

#include "fmmbound/coefficient_table.hpp"

namespace fmmbound::detail {

inline constexpr int kTableDegree = 256;

/// Pascal's triangle up to row kTableDegree.
const std::vector<double>& pascal_rows();

/// A_n^m for n <= kTableDegree in packed (n, m) layout.
const std::vector<double>& norm_table();

inline double binom_fast(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return pascal_rows()[static_cast<std::size_t>(n) * (n + 1) / 2 + k];
}

inline double a_fast(int n, int m) { return norm_table()[harmonic_offset(n, m)]; }

}  // namespace fmmbound::detail
