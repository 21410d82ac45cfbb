#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "vrdf/radix.hpp"

namespace vrdf {

using cplx = std::complex<double>;

/// Sampled function on the product grid: value at the cell whose d-th grid
/// index is j_d represents f at the point (j_1/P^(1), ..., j_D/P^(D)).
/// Storage is row-major with dimension 0 slowest.
struct GridFunction {
  MultiRadix radix;
  std::vector<cplx> values;
};

/// Vilenkin-Fourier coefficients over the same index box, row-major.
struct SpectrumCoeffs {
  MultiRadix radix;
  std::vector<cplx> values;
};

GridFunction make_zero_function(MultiRadix radix);
SpectrumCoeffs make_zero_spectrum(MultiRadix radix);

/// Row-major flat offset of a multi-index; bounds-checked.
std::int64_t flat_index(const MultiRadix& radix, const MultiIndex& m);

/// Inverse of flat_index.
MultiIndex unflatten(const MultiRadix& radix, std::int64_t flat);

/// Throws std::invalid_argument if the value count does not match the grid.
void validate_shape(const MultiRadix& radix, size_t value_count);

}  // namespace vrdf
