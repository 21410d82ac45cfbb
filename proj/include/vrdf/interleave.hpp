#pragma once

#include <cstdint>
#include <vector>

#include "vrdf/grid.hpp"

namespace vrdf {

/// Digit interleaving between a D-dimensional grid with equal per-dimension
/// depth K and a one-dimensional grid of depth K*D.  Digit k of dimension d
/// lands at position (k-1)*D + d + 1 of the long sequence, so the target radix
/// cycles through the dimensions round-robin.  The same shuffle is applied to
/// spectral digits (psi) and to point digits (phi); this pairing makes the
/// character with index psi(n), evaluated at phi(x), equal the original
/// character n at x.
struct InterleavingMap {
  MultiRadix source;
  RadixSequence target;

  int D() const { return source.D(); }
  int K() const { return source.dim(0).depth(); }
};

/// Builds the map.  Requires every dimension to have the same depth.
InterleavingMap make_interleaving(const MultiRadix& source);

/// Spectral index shuffle and its inverse.
std::int64_t psi_index(const InterleavingMap& map, const MultiIndex& n);
MultiIndex psi_inverse(const InterleavingMap& map, std::int64_t n);

/// Point shuffle and its inverse.  Point digits carry place value
/// capacity/P(k), so the coarsest digit of every dimension comes first.
std::int64_t phi_point(const InterleavingMap& map, const MultiIndex& x);
MultiIndex phi_inverse(const InterleavingMap& map, std::int64_t y);

/// Sorted image under psi of all spectral indices in a box.  The image of a
/// rectangle is in general not an interval; this is the point of the map.
std::vector<std::int64_t> exotic_interval(const InterleavingMap& map, const Rectangle& rect);

/// Carries a function across: (transport f)(phi(x)) = f(x).
GridFunction transport(const InterleavingMap& map, const GridFunction& f);
GridFunction transport_back(const InterleavingMap& map, const GridFunction& g);

}  // namespace vrdf
