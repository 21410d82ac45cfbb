#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vrdf/grid.hpp"
#include "vrdf/martingale.hpp"

namespace vrdf {

/// Cell [pos / P(level), (pos+1) / P(level)) of one axis; level 0 with pos 0
/// is the whole axis.
struct VilenkinInterval {
  int level = 0;
  std::int64_t pos = 0;
};

/// Grid index range [lo, hi) covered by the interval.
std::pair<std::int64_t, std::int64_t> interval_range(const RadixSequence& r, VilenkinInterval I);

/// r-fold ancestor: the coarser cell containing I, r levels up, clamped at
/// the whole axis. Measure grows by the product of the radii crossed.
VilenkinInterval expand_interval(const RadixSequence& r, VilenkinInterval I, int rsteps);

/// Does this mask over a single axis describe exactly one Vilenkin cell?
std::optional<VilenkinInterval> mask_as_interval(const RadixSequence& r,
                                                 const std::vector<char>& mask);

/// Test function for operator locality: supported on I_1 x .. x I_j x A,
/// zero mean along each interval axis and across the mask group, L2 norm
/// equal to measure(support)^(1/2 - 1/p0).  The canonical coordinate i of
/// the definition lives at grid dimension perm[i].
struct SimpleAtom {
  GridFunction f;
  std::vector<VilenkinInterval> intervals;  // canonical dimensions 0..j-1
  std::vector<char> mask;  // cells of the trailing canonical dimensions, row-major
  double p0 = 1.0;
  std::vector<int> perm;
};

/// Random atom in canonical layout (identity perm). Resamples when the mean
/// projections annihilate the draw; throws std::runtime_error when the
/// support admits no atom at all (e.g. a one-cell interval axis).
SimpleAtom make_simple_atom(const MultiRadix& radix, const std::vector<VilenkinInterval>& intervals,
                            const std::vector<char>& mask, double p0, std::uint64_t seed);

/// Throws std::invalid_argument when the support, the mean conditions, or
/// the L2 bound fail beyond tol (scaled by the function's size).
void validate_atom(const SimpleAtom& atom, double tol = 1e-12);

/// Relabel grid dimensions: old dimension d becomes sigma[d]. Atom validity
/// is preserved.
SimpleAtom permute_atom(const SimpleAtom& atom, const std::vector<int>& sigma);

/// Largest violation of the difference-support containment: differences at
/// levels fine enough on every interval axis must live inside the interval
/// product (sharpened to the mask cell when only one trailing axis carries a
/// Vilenkin-interval mask), and all other differences must vanish.
double delta_support_leak(const SimpleAtom& atom);

bool verify_delta_support(const SimpleAtom& atom, double tol = 1e-12);

/// Union of the filtration cells one level coarser than n that meet the
/// support of the difference of f at n; the smallest admissible mask.
std::vector<char> minimal_mask(const GridFunction& f, const FiltrationIndex& n,
                               double tol = 1e-12);

/// Martingale whose differences are switched on by predictable sets: the
/// mask for enumerate_levels(f.radix)[i] sits at masks[i].
struct GundyMartingale {
  GridFunction f;
  std::vector<std::vector<char>> masks;
};

/// Minimal admissible masks for a mean-zero function.
GundyMartingale gundy_from_function(const GridFunction& f, double tol = 1e-12);

/// Checks mean-zero, mask measurability one level down, and that every
/// difference (blockwise included) vanishes off its mask. Throws on failure.
void validate_gundy(const GundyMartingale& m, double tol = 1e-12);

/// Largest |Vf| outside the union of the masks.
double gundy_leak(const GundyMartingale& m, const GridFunction& Vf);

/// True when the support of Vf stays inside the union of the masks; rejects
/// an invalid martingale first.
bool gundy_check(const GundyMartingale& m, const GridFunction& Vf, double tol = 1e-12);

/// Integral of |Tf|^p0 over comp(I_1^(r_1)) x .. x comp(I_j^(r_j)) x A,
/// normalized counting measure; complement_mask integrates over the
/// complement of A instead. Expansions clamp at the whole axis, so distant
/// regions simply vanish.
double quasi_locality_integral(const GridFunction& Tf, const SimpleAtom& atom,
                               const std::vector<int>& rsteps, double p0,
                               bool complement_mask = false);

/// Least-squares fit of log2(I) = log2_c - sum_d eta[d] * r[d] over positive
/// samples; diagnostic for operators that are not quasi-local.
struct DecayFit {
  double log2_c = 0.0;
  std::vector<double> eta;
};

DecayFit fit_decay(const std::vector<std::vector<int>>& rsteps,
                   const std::vector<double>& integrals);

}  // namespace vrdf
