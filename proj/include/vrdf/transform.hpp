#pragma once

#include "vrdf/grid.hpp"

namespace vrdf {

/// Generalized Rademacher function r_k evaluated at the grid point j/P_N:
/// exp(2*pi*i * x_k / p_k) where x_k is the k-th point digit of j.
cplx rademacher_eval(const RadixSequence& r, int k, std::int64_t j);

/// Vilenkin function v_n at grid point j: prod_k r_k(x)^{n_k} with n_k the
/// little-endian digits of n.
cplx vilenkin_eval(const RadixSequence& r, std::int64_t n, std::int64_t j);

/// Product of per-dimension Vilenkin functions at a grid multi-index.
cplx vilenkin_eval(const MultiRadix& r, const MultiIndex& n, const MultiIndex& j);

/// Fast forward transform: c_l = (1/cells) * sum_j f(j) * conj(v_l(j)).
/// Runs one dense p_k-point kernel per digit level and dimension, followed
/// by a digit-reversal permutation; O(cells * sum_k p_k) per dimension.
SpectrumCoeffs forward_transform(const GridFunction& f);

/// Fast inverse: f(j) = sum_l c_l * v_l(j).  No normalization factor.
GridFunction inverse_transform(const SpectrumCoeffs& c);

/// Quadratic-time oracle evaluating the defining sums term by term.
/// Retained for tests; do not use at scale.
SpectrumCoeffs naive_forward_transform(const GridFunction& f);
GridFunction naive_inverse_transform(const SpectrumCoeffs& c);

/// Keep coefficients inside the half-open index box, zero the rest, and
/// return the grid-domain result.
GridFunction spectral_project(const GridFunction& f, const Rectangle& box);

/// Multi-indices whose coefficient magnitude exceeds tol.
std::vector<MultiIndex> spectrum_of(const GridFunction& f, double tol);

/// Grid values of v_n, handy for modulation; |values| == 1 everywhere.
GridFunction character_function(const MultiRadix& r, const MultiIndex& n);

}  // namespace vrdf
