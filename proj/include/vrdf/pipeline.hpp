#pragma once

#include <cstdint>
#include <vector>

#include "vrdf/grid.hpp"
#include "vrdf/martingale.hpp"
#include "vrdf/partition.hpp"
#include "vrdf/rng.hpp"

namespace vrdf {

/// One member of a spectrally separated family: spec(f) must sit inside
/// `rect`, and the rectangles of a family must be pairwise disjoint.
struct FamilyEntry {
  Rectangle rect;
  GridFunction f;
};

struct SpectralFamily {
  MultiRadix radix;
  std::vector<FamilyEntry> entries;
};

/// Throws std::invalid_argument when shapes disagree, rectangles overlap, or
/// any entry's relative spectral mass outside its rectangle exceeds `tol`.
void validate_family(const SpectralFamily& family, double tol = 1e-9);

/// Pointwise sum of the family members (zero function for an empty family).
GridFunction family_sum(const SpectralFamily& family);

/// Carrier for one summand of the synthesis operator: the contribution is
/// sum over lambda products l of v_shift * (restriction of h to block
/// (level, l)).  Across entries the shifted blocks must stay disjoint.
struct GEntry {
  GridFunction h;
  MultiIndex shift;
  FiltrationIndex level;
  std::vector<std::vector<int>> lambda;
};

struct GInput {
  MultiRadix radix;
  std::vector<GEntry> entries;
};

/// Index box occupied by shift + block under the digitwise group law; always
/// a contiguous product of intervals.
Rectangle shifted_block_rect(const MultiRadix& r, const MultiIndex& shift, const DeltaBlock& b);

/// Synthesis operator. One forward transform per entry, a scatter of each
/// used block through the digitwise shift, one inverse at the end. Throws
/// std::invalid_argument when two shifted blocks collide.
GridFunction apply_G(const GInput& input);

/// Same operator evaluated from the defining pointwise sum (character times
/// restricted difference); reference implementation for testing.
GridFunction apply_G_direct(const GInput& input);

/// Corner decomposition: partition each rectangle, cut the spectrum along
/// the pieces, and demodulate every piece to the origin of its corner
/// vertex. Pieces whose extracted coefficients all fall below
/// 1e-13 * max|spec| are dropped. apply_G inverts this exactly.
GInput rdf_decompose(const SpectralFamily& family, double tol = 1e-9);

struct InequalityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // 0 when both sides vanish
};

/// lhs = ||sum f_k||_p, rhs = ||{f_k}||_{Lp(l2)}. The estimate this probes
/// covers 0 < p <= 2; larger p is computed but carries no guarantee.
InequalityResult verify_main_inequality(const SpectralFamily& family, double p);

/// Same two norms for a bare function list (used for transported families
/// whose spectra are no longer rectangles).
InequalityResult verify_main_inequality(const std::vector<GridFunction>& fs, double p);

/// Endpoint variant for 0 < p <= 1: rhs sums, over all 2^D corner choices,
/// the Hardy norm of the family demodulated at the corresponding corner of
/// each rectangle (coordinates a_d or b_d - 1).
InequalityResult verify_weak_inequality(const SpectralFamily& family, double p);

enum class CoeffLaw { gaussian, rademacher };

/// Deterministic random family: recursive axis-aligned splitting of the full
/// index box with random stopping (at most max_rects leaves), then i.i.d.
/// coefficients on each leaf (complex standard normal, or +-1 signs).
SpectralFamily random_family(std::uint64_t seed, const MultiRadix& radix, int max_rects,
                             CoeffLaw law = CoeffLaw::gaussian);

/// D-fold tensor power of a one-parameter family: entries indexed by tuples
/// of base indices, each a product of base functions on the product grid.
/// Both inequality sides then factor, so ratio_D = ratio_1^D for every p.
SpectralFamily tensor_amplify(const SpectralFamily& base, int dims);

}  // namespace vrdf
