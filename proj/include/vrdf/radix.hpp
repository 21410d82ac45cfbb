#pragma once

#include <cstdint>
#include <vector>

namespace vrdf {

/// Bounded radix sequence p_1, p_2, ..., p_N together with the cumulative
/// products P_0 = 1, P_k = P_{k-1} * p_k.  All digit positions are 1-based
/// to match the usual mixed-radix notation; P(N) is the grid capacity.
class RadixSequence {
public:
  RadixSequence() = default;

  /// Throws std::invalid_argument unless 2 <= p_k <= cap for every k.
  explicit RadixSequence(std::vector<int> radices, int cap = 16);

  int depth() const { return static_cast<int>(p_.size()); }
  int cap() const { return cap_; }

  /// Radix at position k, 1 <= k <= depth().
  int p(int k) const { return p_[static_cast<size_t>(k) - 1]; }

  /// Cumulative product P_k, 0 <= k <= depth().  P(0) == 1.
  std::int64_t P(int k) const { return cum_[static_cast<size_t>(k)]; }

  std::int64_t capacity() const { return cum_.back(); }

  const std::vector<int>& radices() const { return p_; }

  bool operator==(const RadixSequence& o) const { return p_ == o.p_; }

private:
  std::vector<int> p_;
  std::vector<std::int64_t> cum_{1};
  int cap_ = 16;
};

/// Little-endian digit vector: value n = sum_k digit(k) * P_{k-1}.
struct DigitVec {
  std::vector<int> d;

  int digit(int k) const { return d[static_cast<size_t>(k) - 1]; }
  int& digit(int k) { return d[static_cast<size_t>(k) - 1]; }
  int size() const { return static_cast<int>(d.size()); }
};

/// Digits of n in the mixed-radix system, least significant first.
/// Throws std::out_of_range unless 0 <= n < capacity.
DigitVec digits_of_int(const RadixSequence& r, std::int64_t n);

/// Inverse of digits_of_int; validates digit ranges.
std::int64_t int_of_digits(const RadixSequence& r, const DigitVec& d);

/// Digitwise addition modulo p_k (the Vilenkin group operation).
std::int64_t group_add(const RadixSequence& r, std::int64_t n, std::int64_t m);

/// Digitwise subtraction modulo p_k.
std::int64_t group_sub(const RadixSequence& r, std::int64_t n, std::int64_t m);

/// Digits of the point j / P_N per x = sum_k x_k / P_k.  The k-th point
/// digit has place value P_N / P_k in j, so x_1 is read off first by
/// dividing by P_N / P_1 and the remainders are divided down from there.
DigitVec point_digits_of_index(const RadixSequence& r, std::int64_t j);

/// Inverse of point_digits_of_index.
std::int64_t index_of_point_digits(const RadixSequence& r, const DigitVec& d);

/// True when [lo, lo+len) in grid cells is a Vilenkin interval, i.e. equals
/// [q/P_m, (q+1)/P_m) for some level m and position q at full resolution.
bool is_vilenkin_block(const RadixSequence& r, std::int64_t lo, std::int64_t len);

/// Product system: one radix sequence per coordinate.
struct MultiRadix {
  std::vector<RadixSequence> dims;

  int D() const { return static_cast<int>(dims.size()); }
  const RadixSequence& dim(int d) const { return dims[static_cast<size_t>(d)]; }

  /// Per-dimension capacities P^{(d)}_{N_d}.
  std::vector<std::int64_t> shape() const;

  /// Total number of grid cells, prod_d P^{(d)}_{N_d}.
  std::int64_t cells() const;

  bool operator==(const MultiRadix& o) const { return dims == o.dims; }
};

using MultiIndex = std::vector<std::int64_t>;

/// Coordinatewise group_add; sizes must match.
MultiIndex multi_group_add(const MultiRadix& r, const MultiIndex& n, const MultiIndex& m);

/// Coordinatewise group_sub.
MultiIndex multi_group_sub(const MultiRadix& r, const MultiIndex& n, const MultiIndex& m);

/// Half-open integer box prod_d [lo_d, hi_d).
struct Rectangle {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;

  int D() const { return static_cast<int>(lo.size()); }
  bool empty() const;
  std::int64_t cells() const;
  bool contains(const MultiIndex& m) const;
  bool intersects(const Rectangle& o) const;
  bool operator==(const Rectangle& o) const { return lo == o.lo && hi == o.hi; }
};

/// Validates 0 <= lo_d <= hi_d <= capacity_d and matching dimension counts.
void validate_rectangle(const MultiRadix& r, const Rectangle& rect);

}  // namespace vrdf
