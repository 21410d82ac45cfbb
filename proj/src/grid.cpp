#include "vrdf/grid.hpp"

#include <stdexcept>

namespace vrdf {

GridFunction make_zero_function(MultiRadix radix) {
  GridFunction f;
  f.values.assign(static_cast<size_t>(radix.cells()), cplx{});
  f.radix = std::move(radix);
  return f;
}

SpectrumCoeffs make_zero_spectrum(MultiRadix radix) {
  SpectrumCoeffs c;
  c.values.assign(static_cast<size_t>(radix.cells()), cplx{});
  c.radix = std::move(radix);
  return c;
}

std::int64_t flat_index(const MultiRadix& radix, const MultiIndex& m) {
  if (static_cast<int>(m.size()) != radix.D())
    throw std::invalid_argument("multi-index dimension mismatch");
  std::int64_t flat = 0;
  for (int d = 0; d < radix.D(); ++d) {
    std::int64_t side = radix.dim(d).capacity();
    if (m[d] < 0 || m[d] >= side) throw std::out_of_range("multi-index outside grid");
    flat = flat * side + m[d];
  }
  return flat;
}

MultiIndex unflatten(const MultiRadix& radix, std::int64_t flat) {
  MultiIndex m(static_cast<size_t>(radix.D()));
  for (int d = radix.D() - 1; d >= 0; --d) {
    std::int64_t side = radix.dim(d).capacity();
    m[static_cast<size_t>(d)] = flat % side;
    flat /= side;
  }
  if (flat != 0) throw std::out_of_range("flat index outside grid");
  return m;
}

void validate_shape(const MultiRadix& radix, size_t value_count) {
  if (static_cast<std::int64_t>(value_count) != radix.cells())
    throw std::invalid_argument("value count does not match grid shape");
}

}  // namespace vrdf
