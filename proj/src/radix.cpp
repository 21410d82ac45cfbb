#include "vrdf/radix.hpp"

#include <stdexcept>
#include <string>

namespace vrdf {

RadixSequence::RadixSequence(std::vector<int> radices, int cap)
    : p_(std::move(radices)), cap_(cap) {
  cum_.assign(1, 1);
  cum_.reserve(p_.size() + 1);
  for (int pk : p_) {
    if (pk < 2 || pk > cap_)
      throw std::invalid_argument("radix entry " + std::to_string(pk) +
                                  " outside [2, " + std::to_string(cap_) + "]");
    cum_.push_back(cum_.back() * pk);
  }
}

DigitVec digits_of_int(const RadixSequence& r, std::int64_t n) {
  if (n < 0 || n >= r.capacity())
    throw std::out_of_range("integer " + std::to_string(n) +
                            " outside grid capacity " + std::to_string(r.capacity()));
  DigitVec d;
  d.d.resize(static_cast<size_t>(r.depth()));
  for (int k = 1; k <= r.depth(); ++k) {
    d.digit(k) = static_cast<int>(n % r.p(k));
    n /= r.p(k);
  }
  return d;
}

std::int64_t int_of_digits(const RadixSequence& r, const DigitVec& d) {
  if (d.size() != r.depth())
    throw std::invalid_argument("digit count does not match radix depth");
  std::int64_t n = 0;
  for (int k = r.depth(); k >= 1; --k) {
    int dk = d.digit(k);
    if (dk < 0 || dk >= r.p(k))
      throw std::out_of_range("digit " + std::to_string(dk) +
                              " out of range at position " + std::to_string(k));
    n = n * r.p(k) + dk;
  }
  return n;
}

std::int64_t group_add(const RadixSequence& r, std::int64_t n, std::int64_t m) {
  DigitVec a = digits_of_int(r, n), b = digits_of_int(r, m);
  for (int k = 1; k <= r.depth(); ++k)
    a.digit(k) = (a.digit(k) + b.digit(k)) % r.p(k);
  return int_of_digits(r, a);
}

std::int64_t group_sub(const RadixSequence& r, std::int64_t n, std::int64_t m) {
  DigitVec a = digits_of_int(r, n), b = digits_of_int(r, m);
  for (int k = 1; k <= r.depth(); ++k)
    a.digit(k) = (a.digit(k) - b.digit(k) + r.p(k)) % r.p(k);
  return int_of_digits(r, a);
}

DigitVec point_digits_of_index(const RadixSequence& r, std::int64_t j) {
  if (j < 0 || j >= r.capacity())
    throw std::out_of_range("grid index " + std::to_string(j) +
                            " outside capacity " + std::to_string(r.capacity()));
  DigitVec x;
  x.d.resize(static_cast<size_t>(r.depth()));
  for (int k = 1; k <= r.depth(); ++k) {
    std::int64_t w = r.capacity() / r.P(k);
    x.digit(k) = static_cast<int>(j / w);
    j %= w;
  }
  return x;
}

std::int64_t index_of_point_digits(const RadixSequence& r, const DigitVec& d) {
  if (d.size() != r.depth())
    throw std::invalid_argument("digit count does not match radix depth");
  std::int64_t j = 0;
  for (int k = 1; k <= r.depth(); ++k) {
    int dk = d.digit(k);
    if (dk < 0 || dk >= r.p(k))
      throw std::out_of_range("point digit out of range at position " + std::to_string(k));
    j += static_cast<std::int64_t>(dk) * (r.capacity() / r.P(k));
  }
  return j;
}

bool is_vilenkin_block(const RadixSequence& r, std::int64_t lo, std::int64_t len) {
  if (lo < 0 || len <= 0 || lo + len > r.capacity()) return false;
  for (int m = 0; m <= r.depth(); ++m) {
    std::int64_t block = r.capacity() / r.P(m);
    if (block == len) return lo % len == 0;
  }
  return false;
}

std::vector<std::int64_t> MultiRadix::shape() const {
  std::vector<std::int64_t> s;
  s.reserve(dims.size());
  for (const auto& r : dims) s.push_back(r.capacity());
  return s;
}

std::int64_t MultiRadix::cells() const {
  std::int64_t c = 1;
  for (const auto& r : dims) c *= r.capacity();
  return c;
}

MultiIndex multi_group_add(const MultiRadix& r, const MultiIndex& n, const MultiIndex& m) {
  if (static_cast<int>(n.size()) != r.D() || static_cast<int>(m.size()) != r.D())
    throw std::invalid_argument("multi-index dimension mismatch");
  MultiIndex out(n.size());
  for (int d = 0; d < r.D(); ++d) out[d] = group_add(r.dim(d), n[d], m[d]);
  return out;
}

MultiIndex multi_group_sub(const MultiRadix& r, const MultiIndex& n, const MultiIndex& m) {
  if (static_cast<int>(n.size()) != r.D() || static_cast<int>(m.size()) != r.D())
    throw std::invalid_argument("multi-index dimension mismatch");
  MultiIndex out(n.size());
  for (int d = 0; d < r.D(); ++d) out[d] = group_sub(r.dim(d), n[d], m[d]);
  return out;
}

bool Rectangle::empty() const {
  for (size_t d = 0; d < lo.size(); ++d)
    if (lo[d] >= hi[d]) return true;
  return lo.empty();
}

std::int64_t Rectangle::cells() const {
  if (empty()) return 0;
  std::int64_t c = 1;
  for (size_t d = 0; d < lo.size(); ++d) c *= hi[d] - lo[d];
  return c;
}

bool Rectangle::contains(const MultiIndex& m) const {
  if (m.size() != lo.size()) return false;
  for (size_t d = 0; d < lo.size(); ++d)
    if (m[d] < lo[d] || m[d] >= hi[d]) return false;
  return true;
}

bool Rectangle::intersects(const Rectangle& o) const {
  if (empty() || o.empty() || lo.size() != o.lo.size()) return false;
  for (size_t d = 0; d < lo.size(); ++d)
    if (hi[d] <= o.lo[d] || o.hi[d] <= lo[d]) return false;
  return true;
}

void validate_rectangle(const MultiRadix& r, const Rectangle& rect) {
  if (rect.D() != r.D() || static_cast<int>(rect.hi.size()) != r.D())
    throw std::invalid_argument("rectangle dimension mismatch");
  for (int d = 0; d < r.D(); ++d) {
    if (rect.lo[d] < 0 || rect.lo[d] > rect.hi[d] || rect.hi[d] > r.dim(d).capacity())
      throw std::out_of_range("rectangle side outside grid capacity");
  }
}

}  // namespace vrdf
