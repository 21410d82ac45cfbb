#include "vrdf/transform.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace vrdf {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Dense p-point kernel, K[t*p + s] = exp(sign * i * 2*pi * t*s / p).
// Arguments are reduced mod p before calling exp so entries are clean
// roots of unity regardless of t*s magnitude.
std::vector<cplx> dft_kernel(int p, int sign) {
  std::vector<cplx> k(static_cast<size_t>(p) * p);
  for (int t = 0; t < p; ++t)
    for (int s = 0; s < p; ++s) {
      int m = (t * s) % p;
      double ang = sign * kTau * m / p;
      k[static_cast<size_t>(t) * p + s] = {std::cos(ang), std::sin(ang)};
    }
  return k;
}

std::map<int, std::vector<cplx>> kernels_for(const RadixSequence& r, int sign) {
  std::map<int, std::vector<cplx>> ks;
  for (int k = 1; k <= r.depth(); ++k)
    if (!ks.count(r.p(k))) ks.emplace(r.p(k), dft_kernel(r.p(k), sign));
  return ks;
}

// perm[l] = sum_k l_k * (P_N / P_k): position of coefficient l in the
// digit-axis layout the stage loop works in (point digit x_k pairs with
// coefficient digit l_k, but their place values differ).
std::vector<std::int64_t> digit_reversal(const RadixSequence& r) {
  const std::int64_t P = r.capacity();
  std::vector<std::int64_t> perm(static_cast<size_t>(P));
  std::vector<int> dig(static_cast<size_t>(r.depth()), 0);
  std::vector<std::int64_t> w(static_cast<size_t>(r.depth() + 1));
  for (int k = 1; k <= r.depth(); ++k) w[static_cast<size_t>(k)] = P / r.P(k);
  std::int64_t m = 0;
  for (std::int64_t l = 0; l < P; ++l) {
    perm[static_cast<size_t>(l)] = m;
    for (int k = 1; k <= r.depth(); ++k) {
      auto& dk = dig[static_cast<size_t>(k - 1)];
      m += w[static_cast<size_t>(k)];
      if (++dk < r.p(k)) break;
      m -= static_cast<std::int64_t>(dk) * w[static_cast<size_t>(k)];
      dk = 0;
    }
  }
  return perm;
}

// One pass of all digit-level kernels over a contiguous line of length P_N
// laid out by point digits (x_1 slowest).  Stage k views the line as
// [P_{k-1}][p_k][P_N/P_k] and transforms the middle axis.
void run_stages(const RadixSequence& r, const std::map<int, std::vector<cplx>>& kernels,
                std::vector<cplx>& a, std::vector<cplx>& b) {
  const std::int64_t P = r.capacity();
  for (int k = 1; k <= r.depth(); ++k) {
    const int p = r.p(k);
    const std::int64_t w = P / r.P(k);
    const cplx* K = kernels.at(p).data();
    for (std::int64_t o = 0; o < r.P(k - 1); ++o) {
      const cplx* in = a.data() + o * p * w;
      cplx* out = b.data() + o * p * w;
      for (int t = 0; t < p; ++t) {
        cplx* row = out + static_cast<std::int64_t>(t) * w;
        for (std::int64_t i = 0; i < w; ++i) row[i] = in[i];  // s = 0 entry is 1
        for (int s = 1; s < p; ++s) {
          const cplx ks = K[t * p + s];
          const cplx* src = in + static_cast<std::int64_t>(s) * w;
          for (std::int64_t i = 0; i < w; ++i) row[i] += ks * src[i];
        }
      }
    }
    a.swap(b);
  }
}

struct DimSplit {
  std::int64_t pre = 1, n = 1, post = 1;
};

DimSplit split_at(const MultiRadix& radix, int d) {
  DimSplit s;
  auto shape = radix.shape();
  for (int e = 0; e < radix.D(); ++e) {
    if (e < d) s.pre *= shape[static_cast<size_t>(e)];
    else if (e == d) s.n = shape[static_cast<size_t>(e)];
    else s.post *= shape[static_cast<size_t>(e)];
  }
  return s;
}

enum class Dir { forward, inverse };

// Shared per-dimension driver: gathers every 1D line along dimension d,
// runs the stage pipeline, and scatters back with the digit-reversal
// bookkeeping appropriate for the direction.
void transform_dim(std::vector<cplx>& values, const MultiRadix& radix, int d, Dir dir) {
  const RadixSequence& r = radix.dim(d);
  const std::int64_t P = r.capacity();
  const DimSplit sp = split_at(radix, d);
  const auto kernels = kernels_for(r, dir == Dir::forward ? -1 : +1);
  const auto perm = digit_reversal(r);
  const double scale = dir == Dir::forward ? 1.0 / static_cast<double>(P) : 1.0;

  std::vector<cplx> a(static_cast<size_t>(P)), b(static_cast<size_t>(P));
  for (std::int64_t pre = 0; pre < sp.pre; ++pre) {
    for (std::int64_t post = 0; post < sp.post; ++post) {
      cplx* base = values.data() + pre * P * sp.post + post;
      if (dir == Dir::forward) {
        for (std::int64_t j = 0; j < P; ++j) a[static_cast<size_t>(j)] = base[j * sp.post];
        run_stages(r, kernels, a, b);
        for (std::int64_t l = 0; l < P; ++l)
          base[l * sp.post] = a[static_cast<size_t>(perm[static_cast<size_t>(l)])] * scale;
      } else {
        for (std::int64_t l = 0; l < P; ++l)
          a[static_cast<size_t>(perm[static_cast<size_t>(l)])] = base[l * sp.post];
        run_stages(r, kernels, a, b);
        for (std::int64_t j = 0; j < P; ++j) base[j * sp.post] = a[static_cast<size_t>(j)];
      }
    }
  }
}

// Planar per-level tables W[a*p + x] = exp(sign * i * 2*pi * a*x / p).
struct LevelTable {
  std::vector<double> re, im;
  int p = 0;
};

LevelTable level_table(int p, int sign) {
  LevelTable t;
  t.p = p;
  t.re.resize(static_cast<size_t>(p) * p);
  t.im.resize(static_cast<size_t>(p) * p);
  for (int a = 0; a < p; ++a)
    for (int x = 0; x < p; ++x) {
      double ang = sign * kTau * ((a * x) % p) / p;
      t.re[static_cast<size_t>(a) * p + x] = std::cos(ang);
      t.im[static_cast<size_t>(a) * p + x] = std::sin(ang);
    }
  return t;
}

// Quadratic 1D evaluation of sum_idx coeff(idx) * chi_out(idx) for every
// output position, where chi is the character row built digit by digit.
// `msf_first` selects the row layout: point-digit layout (x_1 slowest) for
// the forward sum over j, coefficient layout (l_1 fastest) for the inverse
// sum over l.
std::vector<cplx> naive_pass(const RadixSequence& r, const std::vector<cplx>& in,
                             int sign, bool row_over_points, double scale) {
  const std::int64_t P = r.capacity();
  const int N = r.depth();
  std::vector<LevelTable> tables;
  tables.reserve(static_cast<size_t>(N));
  for (int k = 1; k <= N; ++k) tables.push_back(level_table(r.p(k), sign));

  std::vector<double> inRe(static_cast<size_t>(P)), inIm(static_cast<size_t>(P));
  for (std::int64_t i = 0; i < P; ++i) {
    inRe[static_cast<size_t>(i)] = in[static_cast<size_t>(i)].real();
    inIm[static_cast<size_t>(i)] = in[static_cast<size_t>(i)].imag();
  }

  std::vector<double> rowRe(static_cast<size_t>(P)), rowIm(static_cast<size_t>(P));
  std::vector<int> dig(static_cast<size_t>(N), 0);
  std::vector<cplx> out(static_cast<size_t>(P));

  for (std::int64_t o = 0; o < P; ++o) {
    // Expand the rank-one row in place, appending the fastest-varying digit
    // last.  For the forward sum that digit is x_N; for the inverse, l_1.
    rowRe[0] = 1.0;
    rowIm[0] = 0.0;
    std::int64_t sz = 1;
    for (int step = 0; step < N; ++step) {
      int k = row_over_points ? step + 1 : N - step;  // digit level appended now
      const LevelTable& t = tables[static_cast<size_t>(k - 1)];
      const int p = t.p;
      const int a = dig[static_cast<size_t>(k - 1)];
      const double* wr = t.re.data() + static_cast<size_t>(a) * p;
      const double* wi = t.im.data() + static_cast<size_t>(a) * p;
      for (std::int64_t i = sz - 1; i >= 0; --i) {
        const double cr = rowRe[static_cast<size_t>(i)];
        const double ci = rowIm[static_cast<size_t>(i)];
        for (int s = p - 1; s >= 0; --s) {
          rowRe[static_cast<size_t>(i * p + s)] = cr * wr[s] - ci * wi[s];
          rowIm[static_cast<size_t>(i * p + s)] = cr * wi[s] + ci * wr[s];
        }
      }
      sz *= p;
    }

    const double* rr = rowRe.data();
    const double* ri = rowIm.data();
    const double* fr = inRe.data();
    const double* fi = inIm.data();
    double accRe = 0.0, accIm = 0.0;
    for (std::int64_t i = 0; i < P; ++i) {
      accRe += fr[i] * rr[i] - fi[i] * ri[i];
      accIm += fr[i] * ri[i] + fi[i] * rr[i];
    }
    out[static_cast<size_t>(o)] = cplx{accRe * scale, accIm * scale};

    // Odometer over the output index digits: l little-endian for forward
    // output, point digits (x_N fastest) for inverse output.
    for (int step = 0; step < N; ++step) {
      int k = row_over_points ? step + 1 : N - step;
      auto& dk = dig[static_cast<size_t>(k - 1)];
      if (++dk < r.p(k)) break;
      dk = 0;
    }
  }
  return out;
}

}  // namespace

cplx rademacher_eval(const RadixSequence& r, int k, std::int64_t j) {
  if (k < 1 || k > r.depth()) throw std::out_of_range("rademacher level outside depth");
  if (j < 0 || j >= r.capacity()) throw std::out_of_range("grid index outside capacity");
  std::int64_t w = r.capacity() / r.P(k);
  int xk = static_cast<int>((j / w) % r.p(k));
  double ang = kTau * xk / r.p(k);
  return {std::cos(ang), std::sin(ang)};
}

cplx vilenkin_eval(const RadixSequence& r, std::int64_t n, std::int64_t j) {
  DigitVec nd = digits_of_int(r, n);
  DigitVec xd = point_digits_of_index(r, j);
  double phase = 0.0;
  for (int k = 1; k <= r.depth(); ++k)
    phase += static_cast<double>((nd.digit(k) * xd.digit(k)) % r.p(k)) / r.p(k);
  double ang = kTau * phase;
  return {std::cos(ang), std::sin(ang)};
}

cplx vilenkin_eval(const MultiRadix& r, const MultiIndex& n, const MultiIndex& j) {
  if (static_cast<int>(n.size()) != r.D() || static_cast<int>(j.size()) != r.D())
    throw std::invalid_argument("multi-index dimension mismatch");
  cplx v{1.0, 0.0};
  for (int d = 0; d < r.D(); ++d) v *= vilenkin_eval(r.dim(d), n[static_cast<size_t>(d)], j[static_cast<size_t>(d)]);
  return v;
}

SpectrumCoeffs forward_transform(const GridFunction& f) {
  validate_shape(f.radix, f.values.size());
  SpectrumCoeffs c;
  c.radix = f.radix;
  c.values = f.values;
  for (int d = 0; d < f.radix.D(); ++d) transform_dim(c.values, c.radix, d, Dir::forward);
  return c;
}

GridFunction inverse_transform(const SpectrumCoeffs& c) {
  validate_shape(c.radix, c.values.size());
  GridFunction f;
  f.radix = c.radix;
  f.values = c.values;
  for (int d = 0; d < c.radix.D(); ++d) transform_dim(f.values, f.radix, d, Dir::inverse);
  return f;
}

SpectrumCoeffs naive_forward_transform(const GridFunction& f) {
  validate_shape(f.radix, f.values.size());
  SpectrumCoeffs c;
  c.radix = f.radix;
  if (f.radix.D() == 1) {
    const RadixSequence& r = f.radix.dim(0);
    c.values = naive_pass(r, f.values, -1, /*row_over_points=*/true,
                          1.0 / static_cast<double>(r.capacity()));
    return c;
  }
  // Direct evaluation over all (coefficient, cell) pairs using per-dimension
  // character tables; only used on small multi-dimensional grids.
  const std::int64_t cells = f.radix.cells();
  std::vector<std::vector<cplx>> tab(static_cast<size_t>(f.radix.D()));
  for (int d = 0; d < f.radix.D(); ++d) {
    const RadixSequence& r = f.radix.dim(d);
    const std::int64_t P = r.capacity();
    tab[static_cast<size_t>(d)].resize(static_cast<size_t>(P) * P);
    for (std::int64_t n = 0; n < P; ++n)
      for (std::int64_t j = 0; j < P; ++j)
        tab[static_cast<size_t>(d)][static_cast<size_t>(n * P + j)] =
            std::conj(vilenkin_eval(r, n, j));
  }
  // Flattened coordinate lists so the pair loop stays allocation-free.
  const int D = f.radix.D();
  std::vector<std::int64_t> coord(static_cast<size_t>(cells) * D);
  for (std::int64_t i = 0; i < cells; ++i) {
    MultiIndex m = unflatten(f.radix, i);
    for (int d = 0; d < D; ++d) coord[static_cast<size_t>(i * D + d)] = m[static_cast<size_t>(d)];
  }
  c.values.assign(static_cast<size_t>(cells), cplx{});
  for (std::int64_t l = 0; l < cells; ++l) {
    const std::int64_t* lm = coord.data() + l * D;
    cplx acc{};
    for (std::int64_t j = 0; j < cells; ++j) {
      const std::int64_t* jm = coord.data() + j * D;
      cplx chi{1.0, 0.0};
      for (int d = 0; d < D; ++d) {
        const std::int64_t P = f.radix.dim(d).capacity();
        chi *= tab[static_cast<size_t>(d)][static_cast<size_t>(lm[d] * P + jm[d])];
      }
      acc += f.values[static_cast<size_t>(j)] * chi;
    }
    c.values[static_cast<size_t>(l)] = acc / static_cast<double>(cells);
  }
  return c;
}

GridFunction naive_inverse_transform(const SpectrumCoeffs& c) {
  validate_shape(c.radix, c.values.size());
  GridFunction f;
  f.radix = c.radix;
  if (c.radix.D() == 1) {
    f.values = naive_pass(c.radix.dim(0), c.values, +1, /*row_over_points=*/false, 1.0);
    return f;
  }
  const std::int64_t cells = c.radix.cells();
  const int D = c.radix.D();
  std::vector<std::vector<cplx>> tab(static_cast<size_t>(D));
  for (int d = 0; d < D; ++d) {
    const RadixSequence& r = c.radix.dim(d);
    const std::int64_t P = r.capacity();
    tab[static_cast<size_t>(d)].resize(static_cast<size_t>(P) * P);
    for (std::int64_t n = 0; n < P; ++n)
      for (std::int64_t j = 0; j < P; ++j)
        tab[static_cast<size_t>(d)][static_cast<size_t>(n * P + j)] = vilenkin_eval(r, n, j);
  }
  std::vector<std::int64_t> coord(static_cast<size_t>(cells) * D);
  for (std::int64_t i = 0; i < cells; ++i) {
    MultiIndex m = unflatten(c.radix, i);
    for (int d = 0; d < D; ++d) coord[static_cast<size_t>(i * D + d)] = m[static_cast<size_t>(d)];
  }
  f.values.assign(static_cast<size_t>(cells), cplx{});
  for (std::int64_t j = 0; j < cells; ++j) {
    const std::int64_t* jm = coord.data() + j * D;
    cplx acc{};
    for (std::int64_t l = 0; l < cells; ++l) {
      const std::int64_t* lm = coord.data() + l * D;
      cplx chi{1.0, 0.0};
      for (int d = 0; d < D; ++d) {
        const std::int64_t P = c.radix.dim(d).capacity();
        chi *= tab[static_cast<size_t>(d)][static_cast<size_t>(lm[d] * P + jm[d])];
      }
      acc += c.values[static_cast<size_t>(l)] * chi;
    }
    f.values[static_cast<size_t>(j)] = acc;
  }
  return f;
}

GridFunction spectral_project(const GridFunction& f, const Rectangle& box) {
  validate_rectangle(f.radix, box);
  SpectrumCoeffs c = forward_transform(f);
  const std::int64_t cells = c.radix.cells();
  for (std::int64_t l = 0; l < cells; ++l) {
    if (!box.contains(unflatten(c.radix, l))) c.values[static_cast<size_t>(l)] = cplx{};
  }
  return inverse_transform(c);
}

std::vector<MultiIndex> spectrum_of(const GridFunction& f, double tol) {
  SpectrumCoeffs c = forward_transform(f);
  std::vector<MultiIndex> out;
  const std::int64_t cells = c.radix.cells();
  for (std::int64_t l = 0; l < cells; ++l)
    if (std::abs(c.values[static_cast<size_t>(l)]) > tol) out.push_back(unflatten(c.radix, l));
  return out;
}

GridFunction character_function(const MultiRadix& r, const MultiIndex& n) {
  GridFunction f = make_zero_function(r);
  // Per-dimension rows, then an odometer fill of the outer product.
  std::vector<std::vector<cplx>> rows(static_cast<size_t>(r.D()));
  for (int d = 0; d < r.D(); ++d) {
    const RadixSequence& rd = r.dim(d);
    rows[static_cast<size_t>(d)].resize(static_cast<size_t>(rd.capacity()));
    for (std::int64_t j = 0; j < rd.capacity(); ++j)
      rows[static_cast<size_t>(d)][static_cast<size_t>(j)] =
          vilenkin_eval(rd, n[static_cast<size_t>(d)], j);
  }
  const std::int64_t cells = r.cells();
  MultiIndex jm(static_cast<size_t>(r.D()), 0);
  for (std::int64_t flat = 0; flat < cells; ++flat) {
    cplx v{1.0, 0.0};
    for (int d = 0; d < r.D(); ++d)
      v *= rows[static_cast<size_t>(d)][static_cast<size_t>(jm[static_cast<size_t>(d)])];
    f.values[static_cast<size_t>(flat)] = v;
    for (int d = r.D() - 1; d >= 0; --d) {
      auto& jd = jm[static_cast<size_t>(d)];
      if (++jd < r.dim(d).capacity()) break;
      jd = 0;
    }
  }
  return f;
}

}  // namespace vrdf
