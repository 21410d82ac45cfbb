#pragma once

#include <vector>

#include "vrdf/grid.hpp"

namespace vrdf {

/// Per-dimension filtration levels n_d with 0 <= n_d <= depth_d.
using FiltrationIndex = std::vector<int>;

/// One spectral block delta_{n,l}: per dimension the coefficient range
/// [l_d * P_{n_d - 1}, (l_d + 1) * P_{n_d - 1}) for n_d >= 1 and
/// 1 <= l_d < p_{n_d}.  Level n_d = 0 carries the single block {0},
/// encoded by the sentinel l_d = 0 (only valid there).
struct DeltaBlock {
  FiltrationIndex n;
  std::vector<int> l;
};

void validate_level(const MultiRadix& r, const FiltrationIndex& n);
void validate_block(const MultiRadix& r, const DeltaBlock& b);

/// Coefficient box of delta_n = prod_d [P_{n_d - 1}, P_{n_d}), with the
/// convention P_{-1} = 0 so level 0 contributes {0}.
Rectangle delta_rect(const MultiRadix& r, const FiltrationIndex& n);

/// Coefficient box of one modified block delta_{n,l}.
Rectangle block_rect(const MultiRadix& r, const DeltaBlock& b);

/// All level vectors in prod_d {0..depth_d}, row-major order.
std::vector<FiltrationIndex> enumerate_levels(const MultiRadix& r);

/// All blocks (n, l) across levels; their boxes partition the index box.
std::vector<DeltaBlock> enumerate_blocks(const MultiRadix& r);

/// Conditional expectation onto the sigma-algebra generated by the cells of
/// side 1/P_{n_d}: implemented as spectral truncation to prod_d [0, P_{n_d}).
GridFunction cond_expectation(const GridFunction& f, const FiltrationIndex& n);

/// The same operator computed by averaging over atoms in the grid domain.
GridFunction cond_expectation_averaging(const GridFunction& f, const FiltrationIndex& n);

/// Martingale difference: spectral restriction to delta_n.
GridFunction diff(const GridFunction& f, const FiltrationIndex& n);

/// Difference as the alternating sum over E_{n - eps}, eps in {0,1}^D, with
/// E at a negative level taken to be 0.  Quadratic in transforms; oracle.
GridFunction diff_alternating(const GridFunction& f, const FiltrationIndex& n);

/// Modified difference: spectral restriction to one block delta_{n,l}.
GridFunction modified_diff(const GridFunction& f, const DeltaBlock& b);

/// Pointwise square function sqrt(sum_n |Delta_n f|^2); real-valued output.
GridFunction square_function(const GridFunction& f);

/// l2-valued version: the sum also runs over the family index.
GridFunction square_function(const std::vector<GridFunction>& fs);

/// Same with the modified differences over all blocks (n, l).
GridFunction modified_square_function(const GridFunction& f);
GridFunction modified_square_function(const std::vector<GridFunction>& fs);

/// ((1/cells) * sum |f|^p)^{1/p}; requires p > 0.
double lp_norm(const GridFunction& f, double p);

/// L^p norm of the pointwise l2 norm of the family.
double lp_l2_norm(const std::vector<GridFunction>& fs, double p);

/// Martingale Hardy norm ||S f||_p.
double hardy_norm(const GridFunction& f, double p);
double hardy_norm(const std::vector<GridFunction>& fs, double p);

}  // namespace vrdf
