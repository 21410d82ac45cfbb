#include "vrdf/martingale.hpp"

#include <cmath>
#include <stdexcept>

#include "vrdf/transform.hpp"

namespace vrdf {

namespace {

// Applies fn(flat) to every flat offset inside the box.
template <typename Fn>
void for_each_in_rect(const MultiRadix& r, const Rectangle& box, Fn&& fn) {
  if (box.empty()) return;
  const int D = r.D();
  MultiIndex m = box.lo;
  auto shape = r.shape();
  for (;;) {
    std::int64_t flat = 0;
    for (int d = 0; d < D; ++d) flat = flat * shape[static_cast<size_t>(d)] + m[static_cast<size_t>(d)];
    fn(flat);
    int d = D - 1;
    for (; d >= 0; --d) {
      if (++m[static_cast<size_t>(d)] < box.hi[static_cast<size_t>(d)]) break;
      m[static_cast<size_t>(d)] = box.lo[static_cast<size_t>(d)];
    }
    if (d < 0) break;
  }
}

GridFunction inverse_of_restriction(const SpectrumCoeffs& c, const Rectangle& box) {
  SpectrumCoeffs masked = make_zero_spectrum(c.radix);
  for_each_in_rect(c.radix, box, [&](std::int64_t flat) {
    masked.values[static_cast<size_t>(flat)] = c.values[static_cast<size_t>(flat)];
  });
  return inverse_transform(masked);
}

void accumulate_sq(std::vector<double>& acc, const GridFunction& g) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(g.values[i]);
}

GridFunction sqrt_to_function(const MultiRadix& r, const std::vector<double>& acc) {
  GridFunction out = make_zero_function(r);
  for (size_t i = 0; i < acc.size(); ++i) out.values[i] = cplx{std::sqrt(acc[i]), 0.0};
  return out;
}

}  // namespace

void validate_level(const MultiRadix& r, const FiltrationIndex& n) {
  if (static_cast<int>(n.size()) != r.D())
    throw std::invalid_argument("filtration index dimension mismatch");
  for (int d = 0; d < r.D(); ++d) {
    if (n[static_cast<size_t>(d)] < 0 || n[static_cast<size_t>(d)] > r.dim(d).depth())
      throw std::out_of_range("filtration level outside [0, depth]");
  }
}

void validate_block(const MultiRadix& r, const DeltaBlock& b) {
  validate_level(r, b.n);
  if (b.l.size() != b.n.size())
    throw std::invalid_argument("block index dimension mismatch");
  for (int d = 0; d < r.D(); ++d) {
    int nd = b.n[static_cast<size_t>(d)];
    int ld = b.l[static_cast<size_t>(d)];
    if (nd == 0) {
      if (ld != 0) throw std::out_of_range("level-0 block index must be the sentinel 0");
    } else if (ld < 1 || ld >= r.dim(d).p(nd)) {
      throw std::out_of_range("block index outside [1, p_n)");
    }
  }
}

Rectangle delta_rect(const MultiRadix& r, const FiltrationIndex& n) {
  validate_level(r, n);
  Rectangle box;
  box.lo.resize(n.size());
  box.hi.resize(n.size());
  for (int d = 0; d < r.D(); ++d) {
    int nd = n[static_cast<size_t>(d)];
    box.lo[static_cast<size_t>(d)] = nd == 0 ? 0 : r.dim(d).P(nd - 1);
    box.hi[static_cast<size_t>(d)] = r.dim(d).P(nd);
  }
  return box;
}

Rectangle block_rect(const MultiRadix& r, const DeltaBlock& b) {
  validate_block(r, b);
  Rectangle box;
  box.lo.resize(b.n.size());
  box.hi.resize(b.n.size());
  for (int d = 0; d < r.D(); ++d) {
    int nd = b.n[static_cast<size_t>(d)];
    if (nd == 0) {
      box.lo[static_cast<size_t>(d)] = 0;
      box.hi[static_cast<size_t>(d)] = 1;
    } else {
      std::int64_t w = r.dim(d).P(nd - 1);
      box.lo[static_cast<size_t>(d)] = b.l[static_cast<size_t>(d)] * w;
      box.hi[static_cast<size_t>(d)] = (b.l[static_cast<size_t>(d)] + 1) * w;
    }
  }
  return box;
}

std::vector<FiltrationIndex> enumerate_levels(const MultiRadix& r) {
  std::vector<FiltrationIndex> out;
  FiltrationIndex n(static_cast<size_t>(r.D()), 0);
  for (;;) {
    out.push_back(n);
    int d = r.D() - 1;
    for (; d >= 0; --d) {
      if (++n[static_cast<size_t>(d)] <= r.dim(d).depth()) break;
      n[static_cast<size_t>(d)] = 0;
    }
    if (d < 0) break;
  }
  return out;
}

std::vector<DeltaBlock> enumerate_blocks(const MultiRadix& r) {
  // Per-dimension block lists (level, l), then their cartesian product.
  struct Dim1 {
    int n, l;
  };
  std::vector<std::vector<Dim1>> per_dim(static_cast<size_t>(r.D()));
  for (int d = 0; d < r.D(); ++d) {
    per_dim[static_cast<size_t>(d)].push_back({0, 0});
    for (int n = 1; n <= r.dim(d).depth(); ++n)
      for (int l = 1; l < r.dim(d).p(n); ++l) per_dim[static_cast<size_t>(d)].push_back({n, l});
  }
  std::vector<DeltaBlock> out;
  std::vector<size_t> idx(static_cast<size_t>(r.D()), 0);
  for (;;) {
    DeltaBlock b;
    b.n.resize(static_cast<size_t>(r.D()));
    b.l.resize(static_cast<size_t>(r.D()));
    for (int d = 0; d < r.D(); ++d) {
      const Dim1& e = per_dim[static_cast<size_t>(d)][idx[static_cast<size_t>(d)]];
      b.n[static_cast<size_t>(d)] = e.n;
      b.l[static_cast<size_t>(d)] = e.l;
    }
    out.push_back(std::move(b));
    int d = r.D() - 1;
    for (; d >= 0; --d) {
      if (++idx[static_cast<size_t>(d)] < per_dim[static_cast<size_t>(d)].size()) break;
      idx[static_cast<size_t>(d)] = 0;
    }
    if (d < 0) break;
  }
  return out;
}

GridFunction cond_expectation(const GridFunction& f, const FiltrationIndex& n) {
  validate_level(f.radix, n);
  Rectangle box;
  box.lo.assign(n.size(), 0);
  box.hi.resize(n.size());
  for (int d = 0; d < f.radix.D(); ++d)
    box.hi[static_cast<size_t>(d)] = f.radix.dim(d).P(n[static_cast<size_t>(d)]);
  return spectral_project(f, box);
}

GridFunction cond_expectation_averaging(const GridFunction& f, const FiltrationIndex& n) {
  validate_level(f.radix, n);
  validate_shape(f.radix, f.values.size());
  GridFunction out = f;
  auto shape = f.radix.shape();
  // One dimension at a time: replace every contiguous run of W_d values
  // (stride post_d) by its average.
  std::int64_t post = 1;
  for (int d = f.radix.D() - 1; d >= 0; --d) {
    const RadixSequence& rd = f.radix.dim(d);
    const std::int64_t P = rd.capacity();
    const std::int64_t W = P / rd.P(n[static_cast<size_t>(d)]);
    if (W > 1) {
      const std::int64_t pre = f.radix.cells() / (P * post);
      for (std::int64_t a = 0; a < pre; ++a)
        for (std::int64_t b = 0; b < post; ++b) {
          cplx* base = out.values.data() + a * P * post + b;
          for (std::int64_t blk = 0; blk < P; blk += W) {
            cplx sum{};
            for (std::int64_t i = 0; i < W; ++i) sum += base[(blk + i) * post];
            sum /= static_cast<double>(W);
            for (std::int64_t i = 0; i < W; ++i) base[(blk + i) * post] = sum;
          }
        }
    }
    post *= P;
  }
  return out;
}

GridFunction diff(const GridFunction& f, const FiltrationIndex& n) {
  SpectrumCoeffs c = forward_transform(f);
  return inverse_of_restriction(c, delta_rect(f.radix, n));
}

GridFunction diff_alternating(const GridFunction& f, const FiltrationIndex& n) {
  validate_level(f.radix, n);
  const int D = f.radix.D();
  GridFunction out = make_zero_function(f.radix);
  for (int mask = 0; mask < (1 << D); ++mask) {
    FiltrationIndex m = n;
    bool vanishes = false;
    int bits = 0;
    for (int d = 0; d < D; ++d) {
      if (mask & (1 << d)) {
        ++bits;
        if (--m[static_cast<size_t>(d)] < 0) vanishes = true;
      }
    }
    if (vanishes) continue;
    GridFunction e = cond_expectation_averaging(f, m);
    const double sgn = (bits % 2 == 0) ? 1.0 : -1.0;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += sgn * e.values[i];
  }
  return out;
}

GridFunction modified_diff(const GridFunction& f, const DeltaBlock& b) {
  SpectrumCoeffs c = forward_transform(f);
  return inverse_of_restriction(c, block_rect(f.radix, b));
}

GridFunction square_function(const GridFunction& f) {
  return square_function(std::vector<GridFunction>{f});
}

GridFunction square_function(const std::vector<GridFunction>& fs) {
  if (fs.empty()) throw std::invalid_argument("square function of an empty family");
  const MultiRadix& r = fs.front().radix;
  std::vector<double> acc(static_cast<size_t>(r.cells()), 0.0);
  auto levels = enumerate_levels(r);
  for (const auto& f : fs) {
    if (!(f.radix == r)) throw std::invalid_argument("family members on different grids");
    SpectrumCoeffs c = forward_transform(f);
    for (const auto& n : levels) accumulate_sq(acc, inverse_of_restriction(c, delta_rect(r, n)));
  }
  return sqrt_to_function(r, acc);
}

GridFunction modified_square_function(const GridFunction& f) {
  return modified_square_function(std::vector<GridFunction>{f});
}

GridFunction modified_square_function(const std::vector<GridFunction>& fs) {
  if (fs.empty()) throw std::invalid_argument("square function of an empty family");
  const MultiRadix& r = fs.front().radix;
  std::vector<double> acc(static_cast<size_t>(r.cells()), 0.0);
  auto blocks = enumerate_blocks(r);
  for (const auto& f : fs) {
    if (!(f.radix == r)) throw std::invalid_argument("family members on different grids");
    SpectrumCoeffs c = forward_transform(f);
    for (const auto& b : blocks) accumulate_sq(acc, inverse_of_restriction(c, block_rect(r, b)));
  }
  return sqrt_to_function(r, acc);
}

double lp_norm(const GridFunction& f, double p) {
  if (!(p > 0)) throw std::invalid_argument("exponent must be positive");
  double s = 0.0;
  for (auto v : f.values) s += std::pow(std::abs(v), p);
  s /= static_cast<double>(f.values.size());
  return std::pow(s, 1.0 / p);
}

double lp_l2_norm(const std::vector<GridFunction>& fs, double p) {
  if (!(p > 0)) throw std::invalid_argument("exponent must be positive");
  if (fs.empty()) throw std::invalid_argument("norm of an empty family");
  const size_t cells = fs.front().values.size();
  double s = 0.0;
  for (size_t i = 0; i < cells; ++i) {
    double sq = 0.0;
    for (const auto& f : fs) sq += std::norm(f.values[i]);
    s += std::pow(sq, p / 2.0);
  }
  s /= static_cast<double>(cells);
  return std::pow(s, 1.0 / p);
}

double hardy_norm(const GridFunction& f, double p) { return lp_norm(square_function(f), p); }

double hardy_norm(const std::vector<GridFunction>& fs, double p) {
  return lp_norm(square_function(fs), p);
}

}  // namespace vrdf
