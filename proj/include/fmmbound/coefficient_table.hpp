#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fmmbound/errors.hpp"

namespace fmmbound {

using complex = std::complex<double>;

/// Packed offset of (n, m) in a triangular table: n*n + n + m.
constexpr std::size_t harmonic_offset(int n, int m) {
  return static_cast<std::size_t>(n * n + n + m);
}

constexpr std::size_t harmonic_count(int order) {
  return static_cast<std::size_t>((order + 1) * (order + 1));
}

/// Triangular complex array indexed by (n, m), 0 <= n <= order, |m| <= n,
/// stored row-major in n then m.
class CoefficientTable {
 public:
  CoefficientTable() = default;
  explicit CoefficientTable(int order) : order_(order) {
    if (order < 0) throw IndexError("CoefficientTable: negative order");
    data_.assign(harmonic_count(order), complex{});
  }

  int order() const { return order_; }
  std::size_t size() const { return data_.size(); }

  complex& operator()(int n, int m) { return data_[checked(n, m)]; }
  const complex& operator()(int n, int m) const { return data_[checked(n, m)]; }

  /// Unchecked packed access.
  complex& operator[](std::size_t i) { return data_[i]; }
  const complex& operator[](std::size_t i) const { return data_[i]; }

  std::span<complex> values() { return data_; }
  std::span<const complex> values() const { return data_; }

  /// Copy of the first (order+1)^2 entries; zero-padded when growing.
  CoefficientTable truncated(int order) const {
    CoefficientTable out(order);
    const std::size_t n = std::min(out.size(), size());
    std::copy_n(data_.begin(), n, out.data_.begin());
    return out;
  }

  CoefficientTable& operator+=(const CoefficientTable& o) {
    if (o.order_ != order_) throw IndexError("CoefficientTable: order mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  CoefficientTable& operator*=(complex s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  bool operator==(const CoefficientTable&) const = default;

 private:
  std::size_t checked(int n, int m) const {
    if (n < 0 || n > order_ || m < -n || m > n)
      throw IndexError("CoefficientTable: index out of range");
    return harmonic_offset(n, m);
  }

  int order_ = 0;
  std::vector<complex> data_ = std::vector<complex>(1);
};

inline CoefficientTable operator+(CoefficientTable a, const CoefficientTable& b) {
  a += b;
  return a;
}

}  // namespace fmmbound
