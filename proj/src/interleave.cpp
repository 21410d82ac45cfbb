#include "vrdf/interleave.hpp"

#include <algorithm>
#include <stdexcept>

namespace vrdf {

InterleavingMap make_interleaving(const MultiRadix& source) {
  if (source.D() < 1) throw std::invalid_argument("empty grid");
  const int K = source.dim(0).depth();
  for (int d = 1; d < source.D(); ++d)
    if (source.dim(d).depth() != K)
      throw std::invalid_argument("interleaving needs equal depths in every dimension");
  std::vector<int> radices;
  radices.reserve(static_cast<size_t>(K * source.D()));
  for (int k = 1; k <= K; ++k)
    for (int d = 0; d < source.D(); ++d) radices.push_back(source.dim(d).p(k));
  return InterleavingMap{source, RadixSequence(radices)};
}

namespace {

// shared shuffle: digit k of dim d goes to long position (k-1)*D + d + 1
std::int64_t weave(const InterleavingMap& map, const MultiIndex& v,
                   DigitVec (*split)(const RadixSequence&, std::int64_t),
                   std::int64_t (*join)(const RadixSequence&, const DigitVec&)) {
  const int D = map.D(), K = map.K();
  if (static_cast<int>(v.size()) != D) throw std::invalid_argument("index size mismatch");
  DigitVec out{std::vector<int>(static_cast<size_t>(K * D), 0)};
  for (int d = 0; d < D; ++d) {
    DigitVec digits = split(map.source.dim(d), v[static_cast<size_t>(d)]);
    for (int k = 1; k <= K; ++k) out.digit((k - 1) * D + d + 1) = digits.digit(k);
  }
  return join(map.target, out);
}

MultiIndex unweave(const InterleavingMap& map, std::int64_t n,
                   DigitVec (*split)(const RadixSequence&, std::int64_t),
                   std::int64_t (*join)(const RadixSequence&, const DigitVec&)) {
  const int D = map.D(), K = map.K();
  DigitVec all = split(map.target, n);
  MultiIndex out(static_cast<size_t>(D), 0);
  for (int d = 0; d < D; ++d) {
    DigitVec digits{std::vector<int>(static_cast<size_t>(K), 0)};
    for (int k = 1; k <= K; ++k) digits.digit(k) = all.digit((k - 1) * D + d + 1);
    out[static_cast<size_t>(d)] = join(map.source.dim(d), digits);
  }
  return out;
}

}  // namespace

std::int64_t psi_index(const InterleavingMap& map, const MultiIndex& n) {
  return weave(map, n, digits_of_int, int_of_digits);
}

MultiIndex psi_inverse(const InterleavingMap& map, std::int64_t n) {
  return unweave(map, n, digits_of_int, int_of_digits);
}

std::int64_t phi_point(const InterleavingMap& map, const MultiIndex& x) {
  return weave(map, x, point_digits_of_index, index_of_point_digits);
}

MultiIndex phi_inverse(const InterleavingMap& map, std::int64_t y) {
  return unweave(map, y, point_digits_of_index, index_of_point_digits);
}

std::vector<std::int64_t> exotic_interval(const InterleavingMap& map, const Rectangle& rect) {
  validate_rectangle(map.source, rect);
  std::vector<std::int64_t> out;
  MultiIndex n = rect.lo;
  for (;;) {
    out.push_back(psi_index(map, n));
    int d = map.D() - 1;
    for (; d >= 0; --d) {
      if (++n[static_cast<size_t>(d)] < rect.hi[static_cast<size_t>(d)]) break;
      n[static_cast<size_t>(d)] = rect.lo[static_cast<size_t>(d)];
    }
    if (d < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

GridFunction transport(const InterleavingMap& map, const GridFunction& f) {
  if (!(f.radix == map.source)) throw std::invalid_argument("function not on the source grid");
  validate_shape(f.radix, f.values.size());
  GridFunction g = make_zero_function(MultiRadix{{map.target}});
  const std::int64_t total = map.source.cells();
  for (std::int64_t flat = 0; flat < total; ++flat) {
    MultiIndex x = unflatten(map.source, flat);
    g.values[static_cast<size_t>(phi_point(map, x))] = f.values[static_cast<size_t>(flat)];
  }
  return g;
}

GridFunction transport_back(const InterleavingMap& map, const GridFunction& g) {
  if (g.radix.D() != 1 || !(g.radix.dim(0) == map.target))
    throw std::invalid_argument("function not on the target grid");
  validate_shape(g.radix, g.values.size());
  GridFunction f = make_zero_function(map.source);
  const std::int64_t total = map.source.cells();
  for (std::int64_t flat = 0; flat < total; ++flat) {
    MultiIndex x = unflatten(map.source, flat);
    f.values[static_cast<size_t>(flat)] = g.values[static_cast<size_t>(phi_point(map, x))];
  }
  return f;
}

}  // namespace vrdf
