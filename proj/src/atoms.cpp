#include "vrdf/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vrdf/rng.hpp"
#include "vrdf/transform.hpp"

namespace vrdf {

namespace {

// fn(flat, coord) over the whole grid, row-major
template <class Fn>
void walk(const MultiRadix& r, Fn&& fn) {
  const std::int64_t total = r.cells();
  MultiIndex c(static_cast<size_t>(r.D()), 0);
  for (std::int64_t flat = 0; flat < total; ++flat) {
    fn(flat, c);
    int d = r.D();
    while (d > 0) {
      --d;
      if (++c[static_cast<size_t>(d)] < r.dim(d).capacity()) break;
      c[static_cast<size_t>(d)] = 0;
    }
  }
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& c : v) m = std::max(m, std::abs(c));
  return m;
}

// Resolved per-atom geometry in actual grid coordinates.
struct AtomGeom {
  int D = 0;
  int j = 0;
  std::vector<std::int64_t> ilo, ihi;  // per canonical interval dim, grid range
  std::vector<int> trailing;           // actual dims of the mask group, canonical order
  std::int64_t mask_cells = 1;         // product of trailing capacities
  std::int64_t mask_count = 1;         // set cells (1 when there is no mask group)
  double measure = 1.0;                // product measure of the support
  double bound = 0.0;                  // L2 budget
};

AtomGeom resolve_geometry(const SimpleAtom& atom) {
  AtomGeom g;
  const MultiRadix& r = atom.f.radix;
  g.D = r.D();
  g.j = static_cast<int>(atom.intervals.size());
  if (g.j < 1 || g.j > g.D) throw std::invalid_argument("atom needs 1..D interval axes");
  if (!(atom.p0 > 0.0)) throw std::invalid_argument("atom exponent must be positive");
  if (static_cast<int>(atom.perm.size()) != g.D)
    throw std::invalid_argument("atom permutation has wrong size");
  std::vector<char> seen(static_cast<size_t>(g.D), 0);
  for (int v : atom.perm) {
    if (v < 0 || v >= g.D || seen[static_cast<size_t>(v)])
      throw std::invalid_argument("atom permutation is not a permutation");
    seen[static_cast<size_t>(v)] = 1;
  }
  validate_shape(r, atom.f.values.size());

  for (int i = 0; i < g.j; ++i) {
    const RadixSequence& rs = r.dim(atom.perm[static_cast<size_t>(i)]);
    auto [lo, hi] = interval_range(rs, atom.intervals[static_cast<size_t>(i)]);
    g.ilo.push_back(lo);
    g.ihi.push_back(hi);
    g.measure *= static_cast<double>(hi - lo) / static_cast<double>(rs.capacity());
  }
  for (int i = g.j; i < g.D; ++i) {
    int ad = atom.perm[static_cast<size_t>(i)];
    g.trailing.push_back(ad);
    g.mask_cells *= r.dim(ad).capacity();
  }
  if (g.j == g.D) {
    if (!atom.mask.empty()) throw std::invalid_argument("mask must be empty without trailing axes");
  } else {
    if (static_cast<std::int64_t>(atom.mask.size()) != g.mask_cells)
      throw std::invalid_argument("mask size does not match the trailing axes");
    g.mask_count = 0;
    for (char c : atom.mask) g.mask_count += c ? 1 : 0;
    if (g.mask_count == 0) throw std::invalid_argument("mask is empty");
    g.measure *= static_cast<double>(g.mask_count) / static_cast<double>(g.mask_cells);
  }
  g.bound = std::pow(g.measure, 0.5 - 1.0 / atom.p0);
  return g;
}

std::int64_t mask_offset(const SimpleAtom& atom, const AtomGeom& g, const MultiIndex& coord) {
  std::int64_t t = 0;
  for (int ad : g.trailing)
    t = t * atom.f.radix.dim(ad).capacity() + coord[static_cast<size_t>(ad)];
  return t;
}

bool in_support(const SimpleAtom& atom, const AtomGeom& g, const MultiIndex& coord) {
  for (int i = 0; i < g.j; ++i) {
    std::int64_t y = coord[static_cast<size_t>(atom.perm[static_cast<size_t>(i)])];
    if (y < g.ilo[static_cast<size_t>(i)] || y >= g.ihi[static_cast<size_t>(i)]) return false;
  }
  if (g.j == g.D) return true;
  return atom.mask[static_cast<size_t>(mask_offset(atom, g, coord))] != 0;
}

// subtract, along canonical axis i, the mean over the supporting interval
void project_interval_mean(SimpleAtom& atom, const AtomGeom& g, int i) {
  const MultiRadix& r = atom.f.radix;
  int ad = atom.perm[static_cast<size_t>(i)];
  std::int64_t lo = g.ilo[static_cast<size_t>(i)], hi = g.ihi[static_cast<size_t>(i)];
  std::int64_t post = 1;
  for (int d = ad + 1; d < g.D; ++d) post *= r.dim(d).capacity();
  std::int64_t cap = r.dim(ad).capacity();
  std::int64_t lines = r.cells() / cap;
  std::vector<cplx> sums(static_cast<size_t>(lines), cplx{});
  auto line_of = [&](std::int64_t flat) { return (flat / (post * cap)) * post + flat % post; };
  walk(r, [&](std::int64_t flat, const MultiIndex& c) {
    std::int64_t y = c[static_cast<size_t>(ad)];
    if (y >= lo && y < hi) sums[static_cast<size_t>(line_of(flat))] += atom.f.values[static_cast<size_t>(flat)];
  });
  double len = static_cast<double>(hi - lo);
  walk(r, [&](std::int64_t flat, const MultiIndex& c) {
    std::int64_t y = c[static_cast<size_t>(ad)];
    if (y >= lo && y < hi)
      atom.f.values[static_cast<size_t>(flat)] -= sums[static_cast<size_t>(line_of(flat))] / len;
  });
}

// subtract, across the mask group, the mean over the masked cells
void project_mask_mean(SimpleAtom& atom, const AtomGeom& g) {
  if (g.j == g.D) return;
  const MultiRadix& r = atom.f.radix;
  std::int64_t groups = r.cells() / g.mask_cells;
  std::vector<cplx> sums(static_cast<size_t>(groups), cplx{});
  auto group_of = [&](const MultiIndex& c) {
    std::int64_t id = 0;
    for (int i = 0; i < g.j; ++i) {
      int ad = atom.perm[static_cast<size_t>(i)];
      id = id * r.dim(ad).capacity() + c[static_cast<size_t>(ad)];
    }
    return id;
  };
  walk(r, [&](std::int64_t flat, const MultiIndex& c) {
    if (atom.mask[static_cast<size_t>(mask_offset(atom, g, c))])
      sums[static_cast<size_t>(group_of(c))] += atom.f.values[static_cast<size_t>(flat)];
  });
  double count = static_cast<double>(g.mask_count);
  walk(r, [&](std::int64_t flat, const MultiIndex& c) {
    if (atom.mask[static_cast<size_t>(mask_offset(atom, g, c))])
      atom.f.values[static_cast<size_t>(flat)] -= sums[static_cast<size_t>(group_of(c))] / count;
  });
}

}  // namespace

std::pair<std::int64_t, std::int64_t> interval_range(const RadixSequence& r, VilenkinInterval I) {
  if (I.level < 0 || I.level > r.depth()) throw std::out_of_range("interval level out of range");
  if (I.pos < 0 || I.pos >= r.P(I.level)) throw std::out_of_range("interval position out of range");
  std::int64_t len = r.capacity() / r.P(I.level);
  return {I.pos * len, (I.pos + 1) * len};
}

VilenkinInterval expand_interval(const RadixSequence& r, VilenkinInterval I, int rsteps) {
  if (rsteps < 0) throw std::invalid_argument("expansion count must be nonnegative");
  (void)interval_range(r, I);
  int level = std::max(0, I.level - rsteps);
  return VilenkinInterval{level, I.pos / (r.P(I.level) / r.P(level))};
}

std::optional<VilenkinInterval> mask_as_interval(const RadixSequence& r,
                                                 const std::vector<char>& mask) {
  if (static_cast<std::int64_t>(mask.size()) != r.capacity()) return std::nullopt;
  std::int64_t lo = -1, hi = -1;
  for (std::int64_t i = 0; i < r.capacity(); ++i) {
    if (!mask[static_cast<size_t>(i)]) continue;
    if (lo < 0) lo = i;
    hi = i + 1;
  }
  if (lo < 0) return std::nullopt;
  for (std::int64_t i = lo; i < hi; ++i)
    if (!mask[static_cast<size_t>(i)]) return std::nullopt;
  std::int64_t len = hi - lo;
  for (int m = 0; m <= r.depth(); ++m)
    if (r.capacity() / r.P(m) == len && lo % len == 0) return VilenkinInterval{m, lo / len};
  return std::nullopt;
}

SimpleAtom make_simple_atom(const MultiRadix& radix, const std::vector<VilenkinInterval>& intervals,
                            const std::vector<char>& mask, double p0, std::uint64_t seed) {
  SimpleAtom atom;
  atom.f = make_zero_function(radix);
  atom.intervals = intervals;
  atom.mask = mask;
  atom.p0 = p0;
  atom.perm.resize(static_cast<size_t>(radix.D()));
  for (int d = 0; d < radix.D(); ++d) atom.perm[static_cast<size_t>(d)] = d;
  AtomGeom g = resolve_geometry(atom);

  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    walk(radix, [&](std::int64_t flat, const MultiIndex& c) {
      atom.f.values[static_cast<size_t>(flat)] =
          in_support(atom, g, c) ? rng.complex_normal() : cplx{};
    });
    for (int i = 0; i < g.j; ++i) project_interval_mean(atom, g, i);
    project_mask_mean(atom, g);
    double norm = lp_norm(atom.f, 2.0);
    if (norm <= 1e-12) continue;
    double scale = g.bound / norm;
    for (cplx& v : atom.f.values) v *= scale;
    validate_atom(atom);
    return atom;
  }
  throw std::runtime_error("support admits no simple atom: mean removal always annihilates it");
}

void validate_atom(const SimpleAtom& atom, double tol) {
  AtomGeom g = resolve_geometry(atom);
  const MultiRadix& r = atom.f.radix;
  double scale = std::max(1.0, max_abs(atom.f.values));

  walk(r, [&](std::int64_t flat, const MultiIndex& c) {
    if (!in_support(atom, g, c) && std::abs(atom.f.values[static_cast<size_t>(flat)]) > tol * scale)
      throw std::invalid_argument("atom has mass outside its support");
  });

  for (int i = 0; i < g.j; ++i) {
    int ad = atom.perm[static_cast<size_t>(i)];
    std::int64_t post = 1;
    for (int d = ad + 1; d < g.D; ++d) post *= r.dim(d).capacity();
    std::int64_t cap = r.dim(ad).capacity();
    std::vector<cplx> sums(static_cast<size_t>(r.cells() / cap), cplx{});
    walk(r, [&](std::int64_t flat, const MultiIndex& c) {
      std::int64_t y = c[static_cast<size_t>(ad)];
      if (y >= g.ilo[static_cast<size_t>(i)] && y < g.ihi[static_cast<size_t>(i)])
        sums[static_cast<size_t>((flat / (post * cap)) * post + flat % post)] +=
            atom.f.values[static_cast<size_t>(flat)];
    });
    double len = static_cast<double>(g.ihi[static_cast<size_t>(i)] - g.ilo[static_cast<size_t>(i)]);
    for (const cplx& s : sums)
      if (std::abs(s) / len > tol * scale)
        throw std::invalid_argument("atom interval mean does not vanish");
  }

  if (g.j < g.D) {
    std::int64_t groups = r.cells() / g.mask_cells;
    std::vector<cplx> sums(static_cast<size_t>(groups), cplx{});
    walk(r, [&](std::int64_t flat, const MultiIndex& c) {
      if (atom.mask[static_cast<size_t>(mask_offset(atom, g, c))]) {
        std::int64_t id = 0;
        for (int i = 0; i < g.j; ++i) {
          int ad = atom.perm[static_cast<size_t>(i)];
          id = id * r.dim(ad).capacity() + c[static_cast<size_t>(ad)];
        }
        sums[static_cast<size_t>(id)] += atom.f.values[static_cast<size_t>(flat)];
      }
    });
    for (const cplx& s : sums)
      if (std::abs(s) / static_cast<double>(g.mask_count) > tol * scale)
        throw std::invalid_argument("atom mask mean does not vanish");
  }

  if (lp_norm(atom.f, 2.0) > g.bound * (1.0 + 1e-10))
    throw std::invalid_argument("atom exceeds its L2 budget");
}

SimpleAtom permute_atom(const SimpleAtom& atom, const std::vector<int>& sigma) {
  const MultiRadix& r = atom.f.radix;
  const int D = r.D();
  if (static_cast<int>(sigma.size()) != D)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<char> seen(static_cast<size_t>(D), 0);
  for (int v : sigma) {
    if (v < 0 || v >= D || seen[static_cast<size_t>(v)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<size_t>(v)] = 1;
  }

  std::vector<RadixSequence> dims;
  dims.reserve(static_cast<size_t>(D));
  for (int d = 0; d < D; ++d) dims.push_back(r.dim(0));
  for (int d = 0; d < D; ++d) dims[static_cast<size_t>(sigma[static_cast<size_t>(d)])] = r.dim(d);
  MultiRadix nr{dims};

  SimpleAtom out;
  out.f = make_zero_function(nr);
  out.intervals = atom.intervals;
  out.mask = atom.mask;
  out.p0 = atom.p0;
  out.perm.resize(static_cast<size_t>(D));
  for (int i = 0; i < D; ++i)
    out.perm[static_cast<size_t>(i)] = sigma[static_cast<size_t>(atom.perm[static_cast<size_t>(i)])];

  MultiIndex nc(static_cast<size_t>(D));
  walk(r, [&](std::int64_t flat, const MultiIndex& c) {
    for (int d = 0; d < D; ++d)
      nc[static_cast<size_t>(sigma[static_cast<size_t>(d)])] = c[static_cast<size_t>(d)];
    out.f.values[static_cast<size_t>(flat_index(nr, nc))] = atom.f.values[static_cast<size_t>(flat)];
  });
  return out;
}

double delta_support_leak(const SimpleAtom& atom) {
  AtomGeom g = resolve_geometry(atom);
  const MultiRadix& r = atom.f.radix;

  // claimed support box in actual coordinates
  std::vector<std::int64_t> blo(static_cast<size_t>(g.D), 0), bhi(static_cast<size_t>(g.D));
  for (int d = 0; d < g.D; ++d) bhi[static_cast<size_t>(d)] = r.dim(d).capacity();
  for (int i = 0; i < g.j; ++i) {
    int ad = atom.perm[static_cast<size_t>(i)];
    blo[static_cast<size_t>(ad)] = g.ilo[static_cast<size_t>(i)];
    bhi[static_cast<size_t>(ad)] = g.ihi[static_cast<size_t>(i)];
  }
  if (g.j == g.D - 1) {
    int ad = g.trailing.front();
    if (auto ai = mask_as_interval(r.dim(ad), atom.mask)) {
      auto [lo, hi] = interval_range(r.dim(ad), *ai);
      blo[static_cast<size_t>(ad)] = lo;
      bhi[static_cast<size_t>(ad)] = hi;
    }
  }

  SpectrumCoeffs c = forward_transform(atom.f);
  const double cells = static_cast<double>(r.cells());
  double leak = 0.0;
  for (const FiltrationIndex& n : enumerate_levels(r)) {
    bool fine_enough = true;
    for (int i = 0; i < g.j; ++i)
      if (n[static_cast<size_t>(atom.perm[static_cast<size_t>(i)])] <=
          atom.intervals[static_cast<size_t>(i)].level) {
        fine_enough = false;
        break;
      }
    SpectrumCoeffs rc = make_zero_spectrum(r);
    Rectangle box = delta_rect(r, n);
    walk(r, [&](std::int64_t flat, const MultiIndex& m) {
      if (box.contains(m)) rc.values[static_cast<size_t>(flat)] = c.values[static_cast<size_t>(flat)];
    });
    GridFunction delta = inverse_transform(rc);
    double mass = 0.0;
    walk(r, [&](std::int64_t flat, const MultiIndex& y) {
      bool outside = false;
      if (fine_enough) {
        for (int d = 0; d < g.D && !outside; ++d)
          outside = y[static_cast<size_t>(d)] < blo[static_cast<size_t>(d)] ||
                    y[static_cast<size_t>(d)] >= bhi[static_cast<size_t>(d)];
      } else {
        outside = true;  // the whole difference must vanish
      }
      if (outside) mass += std::norm(delta.values[static_cast<size_t>(flat)]);
    });
    leak = std::max(leak, std::sqrt(mass / cells));
  }
  return leak;
}

bool verify_delta_support(const SimpleAtom& atom, double tol) {
  return delta_support_leak(atom) <= tol;
}

std::vector<char> minimal_mask(const GridFunction& f, const FiltrationIndex& n, double tol) {
  const MultiRadix& r = f.radix;
  validate_level(r, n);
  GridFunction delta = diff(f, n);

  std::vector<std::int64_t> len(n.size());
  for (size_t d = 0; d < n.size(); ++d) {
    const RadixSequence& rs = r.dim(static_cast<int>(d));
    len[d] = n[d] == 0 ? rs.capacity() : rs.capacity() / rs.P(n[d] - 1);
  }
  auto coarse_id = [&](const MultiIndex& c) {
    std::int64_t id = 0;
    for (size_t d = 0; d < n.size(); ++d)
      id = id * (r.dim(static_cast<int>(d)).capacity() / len[d]) + c[d] / len[d];
    return id;
  };
  std::int64_t ncoarse = 1;
  for (size_t d = 0; d < n.size(); ++d) ncoarse *= r.dim(static_cast<int>(d)).capacity() / len[d];

  std::vector<char> hot(static_cast<size_t>(ncoarse), 0);
  walk(r, [&](std::int64_t flat, const MultiIndex& c) {
    if (std::abs(delta.values[static_cast<size_t>(flat)]) > tol)
      hot[static_cast<size_t>(coarse_id(c))] = 1;
  });
  std::vector<char> mask(static_cast<size_t>(r.cells()), 0);
  walk(r, [&](std::int64_t flat, const MultiIndex& c) {
    mask[static_cast<size_t>(flat)] = hot[static_cast<size_t>(coarse_id(c))];
  });
  return mask;
}

GundyMartingale gundy_from_function(const GridFunction& f, double tol) {
  validate_shape(f.radix, f.values.size());
  cplx mean{};
  for (const cplx& v : f.values) mean += v;
  mean /= static_cast<double>(f.values.size());
  if (std::abs(mean) > tol)
    throw std::invalid_argument("martingale generator must have zero mean");
  GundyMartingale m{f, {}};
  for (const FiltrationIndex& n : enumerate_levels(f.radix))
    m.masks.push_back(minimal_mask(f, n, tol));
  return m;
}

void validate_gundy(const GundyMartingale& m, double tol) {
  const MultiRadix& r = m.f.radix;
  validate_shape(r, m.f.values.size());
  cplx mean{};
  for (const cplx& v : m.f.values) mean += v;
  if (std::abs(mean) / static_cast<double>(m.f.values.size()) > tol)
    throw std::invalid_argument("martingale has a level zero part");

  std::vector<FiltrationIndex> levels = enumerate_levels(r);
  if (m.masks.size() != levels.size())
    throw std::invalid_argument("one mask per filtration level required");

  SpectrumCoeffs c = forward_transform(m.f);
  for (size_t li = 0; li < levels.size(); ++li) {
    const FiltrationIndex& n = levels[li];
    const std::vector<char>& mask = m.masks[li];
    if (mask.size() != m.f.values.size()) throw std::invalid_argument("mask size mismatch");

    std::vector<std::int64_t> len(n.size());
    for (size_t d = 0; d < n.size(); ++d) {
      const RadixSequence& rs = r.dim(static_cast<int>(d));
      len[d] = n[d] == 0 ? rs.capacity() : rs.capacity() / rs.P(n[d] - 1);
    }
    std::vector<char> rep(mask.size(), 2);
    walk(r, [&](std::int64_t flat, const MultiIndex& co) {
      std::int64_t id = 0;
      for (size_t d = 0; d < n.size(); ++d)
        id = id * (r.dim(static_cast<int>(d)).capacity() / len[d]) + co[d] / len[d];
      if (rep[static_cast<size_t>(id)] == 2)
        rep[static_cast<size_t>(id)] = mask[static_cast<size_t>(flat)] ? 1 : 0;
      else if ((rep[static_cast<size_t>(id)] != 0) != (mask[static_cast<size_t>(flat)] != 0))
        throw std::invalid_argument("mask is not measurable one level down");
    });

    // the difference, and each of its blocks, must vanish off the mask
    Rectangle dbox = delta_rect(r, n);
    GridFunction delta = [&] {
      SpectrumCoeffs rc = make_zero_spectrum(r);
      walk(r, [&](std::int64_t flat, const MultiIndex& mi) {
        if (dbox.contains(mi)) rc.values[static_cast<size_t>(flat)] = c.values[static_cast<size_t>(flat)];
      });
      return inverse_transform(rc);
    }();
    walk(r, [&](std::int64_t flat, const MultiIndex&) {
      if (!mask[static_cast<size_t>(flat)] &&
          std::abs(delta.values[static_cast<size_t>(flat)]) > tol)
        throw std::invalid_argument("difference does not vanish off its mask");
    });
    for (const DeltaBlock& b : enumerate_blocks(r)) {
      if (b.n != n) continue;
      GridFunction part = modified_diff(m.f, b);
      walk(r, [&](std::int64_t flat, const MultiIndex&) {
        if (!mask[static_cast<size_t>(flat)] &&
            std::abs(part.values[static_cast<size_t>(flat)]) > tol)
          throw std::invalid_argument("block difference does not vanish off its mask");
      });
    }
  }
}

double gundy_leak(const GundyMartingale& m, const GridFunction& Vf) {
  validate_shape(m.f.radix, Vf.values.size());
  std::vector<char> any(Vf.values.size(), 0);
  for (const auto& mask : m.masks)
    for (size_t i = 0; i < mask.size(); ++i) any[i] |= static_cast<char>(mask[i] != 0);
  double leak = 0.0;
  for (size_t i = 0; i < Vf.values.size(); ++i)
    if (!any[i]) leak = std::max(leak, std::abs(Vf.values[i]));
  return leak;
}

bool gundy_check(const GundyMartingale& m, const GridFunction& Vf, double tol) {
  validate_gundy(m, tol);
  return gundy_leak(m, Vf) <= tol;
}

double quasi_locality_integral(const GridFunction& Tf, const SimpleAtom& atom,
                               const std::vector<int>& rsteps, double p0,
                               bool complement_mask) {
  AtomGeom g = resolve_geometry(atom);
  const MultiRadix& r = atom.f.radix;
  validate_shape(r, Tf.values.size());
  if (static_cast<int>(rsteps.size()) != g.j)
    throw std::invalid_argument("one expansion count per interval axis required");
  if (!(p0 > 0.0)) throw std::invalid_argument("exponent must be positive");

  std::vector<std::int64_t> elo(static_cast<size_t>(g.j)), ehi(static_cast<size_t>(g.j));
  for (int i = 0; i < g.j; ++i) {
    const RadixSequence& rs = r.dim(atom.perm[static_cast<size_t>(i)]);
    VilenkinInterval e = expand_interval(rs, atom.intervals[static_cast<size_t>(i)],
                                         rsteps[static_cast<size_t>(i)]);
    auto [lo, hi] = interval_range(rs, e);
    elo[static_cast<size_t>(i)] = lo;
    ehi[static_cast<size_t>(i)] = hi;
  }

  double sum = 0.0;
  walk(r, [&](std::int64_t flat, const MultiIndex& c) {
    for (int i = 0; i < g.j; ++i) {
      std::int64_t y = c[static_cast<size_t>(atom.perm[static_cast<size_t>(i)])];
      if (y >= elo[static_cast<size_t>(i)] && y < ehi[static_cast<size_t>(i)]) return;
    }
    if (g.j < g.D) {
      bool inA = atom.mask[static_cast<size_t>(mask_offset(atom, g, c))] != 0;
      if (inA == complement_mask) return;
    } else if (complement_mask) {
      return;
    }
    sum += std::pow(std::abs(Tf.values[static_cast<size_t>(flat)]), p0);
  });
  return sum / static_cast<double>(r.cells());
}

DecayFit fit_decay(const std::vector<std::vector<int>>& rsteps,
                   const std::vector<double>& integrals) {
  if (rsteps.size() != integrals.size() || rsteps.empty())
    throw std::invalid_argument("need matching, nonempty samples");
  const size_t j = rsteps.front().size();
  const size_t dim = j + 1;

  std::vector<double> ata(dim * dim, 0.0), atb(dim, 0.0);
  size_t used = 0;
  for (size_t s = 0; s < rsteps.size(); ++s) {
    if (rsteps[s].size() != j) throw std::invalid_argument("ragged expansion vectors");
    if (!(integrals[s] > 0.0)) continue;
    ++used;
    std::vector<double> row(dim);
    row[0] = 1.0;
    for (size_t i = 0; i < j; ++i) row[i + 1] = -static_cast<double>(rsteps[s][i]);
    double y = std::log2(integrals[s]);
    for (size_t a = 0; a < dim; ++a) {
      atb[a] += row[a] * y;
      for (size_t b = 0; b < dim; ++b) ata[a * dim + b] += row[a] * row[b];
    }
  }
  if (used < dim) throw std::invalid_argument("not enough positive samples for the fit");

  // gaussian elimination with partial pivoting
  for (size_t col = 0; col < dim; ++col) {
    size_t piv = col;
    for (size_t rr = col + 1; rr < dim; ++rr)
      if (std::abs(ata[rr * dim + col]) > std::abs(ata[piv * dim + col])) piv = rr;
    if (std::abs(ata[piv * dim + col]) < 1e-12)
      throw std::invalid_argument("degenerate expansion design");
    if (piv != col) {
      for (size_t b = 0; b < dim; ++b) std::swap(ata[piv * dim + b], ata[col * dim + b]);
      std::swap(atb[piv], atb[col]);
    }
    for (size_t rr = 0; rr < dim; ++rr) {
      if (rr == col) continue;
      double fct = ata[rr * dim + col] / ata[col * dim + col];
      for (size_t b = col; b < dim; ++b) ata[rr * dim + b] -= fct * ata[col * dim + b];
      atb[rr] -= fct * atb[col];
    }
  }
  DecayFit fit;
  fit.log2_c = atb[0] / ata[0];
  fit.eta.resize(j);
  for (size_t i = 0; i < j; ++i) fit.eta[i] = atb[i + 1] / ata[(i + 1) * dim + (i + 1)];
  return fit;
}

}  // namespace vrdf
