#pragma once

#include <string>
#include <vector>

#include "vrdf/martingale.hpp"

namespace vrdf {

/// Plain pieces sit against the upper endpoint and shift by b; tilde pieces
/// sit against the lower endpoint and shift by a.
enum class PieceKind { plain, tilde };

/// One piece of the interval decomposition.  After subtracting `base`
/// digitwise, the piece becomes the union of the blocks delta_{level, l}
/// over l in `lambda`.  The level-0 singleton piece {a} carries the
/// sentinel lambda {0}.
struct IntervalPiece {
  std::int64_t lo = 0, hi = 0;
  PieceKind kind = PieceKind::tilde;
  int level = 0;
  std::vector<int> lambda;
  std::int64_t base = 0;

  std::int64_t size() const { return hi - lo; }
};

struct IntervalPartition {
  std::int64_t a = 0, b = 0;
  int t = 0;         // index of the piece of [0,b) that contains a
  int digits_b = 0;  // k+1, the digit length of b
  std::vector<IntervalPiece> pieces;  // nonempty pieces, sorted by lo
};

/// Decomposition of [a, b) into at most 2(k+1)+1 pieces, each of which is a
/// shifted union of spectral blocks at a single level.  Requires
/// 0 <= a < b <= capacity; b == capacity is allowed and yields tilde pieces
/// only.
IntervalPartition partition_interval(const RadixSequence& r, std::int64_t a, std::int64_t b);

/// Exhaustively checks {x (-) base : x in piece} == union of the lambda
/// blocks at the piece level.
bool verify_shift_property(const RadixSequence& r, const IntervalPiece& piece);

/// "J3" for plain level 3, "J~2" for tilde level 2.
std::string piece_label(const IntervalPiece& piece);

/// Product piece of a rectangle decomposition: one 1D piece per dimension.
/// `corner` holds one bit per dimension (0 = tilde, 1 = plain); `vertex` is
/// the demodulation point (a_d or b_d accordingly).
struct RectanglePiece {
  Rectangle box;
  std::vector<int> corner;
  MultiIndex vertex;
  FiltrationIndex level;
  std::vector<std::vector<int>> lambda;
};

struct RectanglePartition {
  Rectangle rect;
  std::vector<RectanglePiece> pieces;
};

/// Cartesian product of the per-dimension interval decompositions, labeled
/// by the 2^D corner classes.
RectanglePartition partition_rectangle(const MultiRadix& r, const Rectangle& rect);

}  // namespace vrdf
