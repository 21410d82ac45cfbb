#include "vrdf/pipeline.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "vrdf/transform.hpp"

namespace vrdf {

namespace {

bool same_radix(const MultiRadix& a, const MultiRadix& b) {
  if (a.D() != b.D()) return false;
  for (int d = 0; d < a.D(); ++d) {
    if (a.dim(d).depth() != b.dim(d).depth()) return false;
    for (int k = 1; k <= a.dim(d).depth(); ++k)
      if (a.dim(d).p(k) != b.dim(d).p(k)) return false;
  }
  return true;
}

// Visit every multi-index of a nonempty box, row-major.
template <class Fn>
void for_each_cell(const Rectangle& box, Fn&& fn) {
  if (box.empty()) return;
  MultiIndex m = box.lo;
  const size_t D = box.lo.size();
  for (;;) {
    fn(m);
    size_t d = D;
    while (d > 0) {
      --d;
      if (++m[d] < box.hi[d]) break;
      m[d] = box.lo[d];
      if (d == 0) return;
    }
  }
}

// Visit every choice of one lambda value per dimension.
template <class Fn>
void for_each_lambda(const std::vector<std::vector<int>>& lambda, Fn&& fn) {
  const size_t D = lambda.size();
  for (const auto& lam : lambda)
    if (lam.empty()) return;
  std::vector<size_t> pos(D, 0);
  std::vector<int> l(D);
  for (;;) {
    for (size_t d = 0; d < D; ++d) l[d] = lambda[d][pos[d]];
    fn(l);
    size_t d = D;
    while (d > 0) {
      --d;
      if (++pos[d] < lambda[d].size()) break;
      pos[d] = 0;
      if (d == 0) return;
    }
  }
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

void validate_family(const SpectralFamily& family, double tol) {
  for (const auto& e : family.entries) {
    if (!same_radix(e.f.radix, family.radix))
      throw std::invalid_argument("family entry grid does not match the family radix");
    validate_shape(e.f.radix, e.f.values.size());
    validate_rectangle(family.radix, e.rect);
    if (e.rect.empty()) throw std::invalid_argument("family rectangle is empty");
  }
  for (size_t i = 0; i < family.entries.size(); ++i)
    for (size_t j = i + 1; j < family.entries.size(); ++j)
      if (family.entries[i].rect.intersects(family.entries[j].rect))
        throw std::invalid_argument("family rectangles overlap");
  for (const auto& e : family.entries) {
    SpectrumCoeffs c = forward_transform(e.f);
    double total = 0.0;
    for (const cplx& v : c.values) total += std::norm(v);
    double inside = 0.0;
    for_each_cell(e.rect, [&](const MultiIndex& m) {
      inside += std::norm(c.values[static_cast<size_t>(flat_index(family.radix, m))]);
    });
    double outside = total - inside;
    if (total > 0.0 && std::sqrt(std::max(outside, 0.0) / total) > tol)
      throw std::invalid_argument("spectrum leaks outside its rectangle");
  }
}

GridFunction family_sum(const SpectralFamily& family) {
  GridFunction out = make_zero_function(family.radix);
  for (const auto& e : family.entries) {
    validate_shape(family.radix, e.f.values.size());
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += e.f.values[i];
  }
  return out;
}

Rectangle shifted_block_rect(const MultiRadix& r, const MultiIndex& shift, const DeltaBlock& b) {
  validate_block(r, b);
  const int D = r.D();
  if (static_cast<int>(shift.size()) != D)
    throw std::invalid_argument("shift dimension mismatch");
  Rectangle out{MultiIndex(D), MultiIndex(D)};
  for (int d = 0; d < D; ++d) {
    const RadixSequence& rs = r.dim(d);
    std::int64_t a = shift[d];
    if (a < 0 || a >= rs.capacity()) throw std::out_of_range("shift outside the index box");
    int n = b.n[static_cast<size_t>(d)];
    if (n == 0) {
      out.lo[d] = a;
      out.hi[d] = a + 1;
      continue;
    }
    std::int64_t w = rs.P(n - 1);
    std::int64_t low = a % w;
    std::int64_t mid = (a / w) % rs.p(n);
    std::int64_t high = a - low - mid * w;
    std::int64_t base = high + ((mid + b.l[static_cast<size_t>(d)]) % rs.p(n)) * w;
    out.lo[d] = base;
    out.hi[d] = base + w;
  }
  return out;
}

GridFunction apply_G(const GInput& input) {
  SpectrumCoeffs acc = make_zero_spectrum(input.radix);
  std::vector<char> painted(acc.values.size(), 0);
  for (const auto& e : input.entries) {
    if (!same_radix(e.h.radix, input.radix))
      throw std::invalid_argument("entry grid does not match the input radix");
    validate_shape(e.h.radix, e.h.values.size());
    validate_level(input.radix, e.level);
    if (e.lambda.size() != static_cast<size_t>(input.radix.D()))
      throw std::invalid_argument("lambda list dimension mismatch");
    SpectrumCoeffs c = forward_transform(e.h);
    for_each_lambda(e.lambda, [&](const std::vector<int>& l) {
      DeltaBlock block{e.level, l};
      Rectangle src = block_rect(input.radix, block);
      (void)shifted_block_rect(input.radix, e.shift, block);  // validates block and shift
      for_each_cell(src, [&](const MultiIndex& m) {
        MultiIndex t = multi_group_add(input.radix, m, e.shift);
        size_t ti = static_cast<size_t>(flat_index(input.radix, t));
        if (painted[ti]) throw std::invalid_argument("shifted blocks are not disjoint");
        painted[ti] = 1;
        acc.values[ti] = c.values[static_cast<size_t>(flat_index(input.radix, m))];
      });
    });
  }
  return inverse_transform(acc);
}

GridFunction apply_G_direct(const GInput& input) {
  GridFunction out = make_zero_function(input.radix);
  for (const auto& e : input.entries) {
    GridFunction vchar = character_function(input.radix, e.shift);
    for_each_lambda(e.lambda, [&](const std::vector<int>& l) {
      GridFunction piece = modified_diff(e.h, DeltaBlock{e.level, l});
      for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += vchar.values[i] * piece.values[i];
    });
  }
  return out;
}

GInput rdf_decompose(const SpectralFamily& family, double tol) {
  validate_family(family, tol);
  GInput out{family.radix, {}};
  for (const auto& e : family.entries) {
    SpectrumCoeffs c = forward_transform(e.f);
    double fmax = max_abs(c.values);
    RectanglePartition part = partition_rectangle(family.radix, e.rect);
    for (const auto& piece : part.pieces) {
      SpectrumCoeffs hc = make_zero_spectrum(family.radix);
      double pmax = 0.0;
      for_each_cell(piece.box, [&](const MultiIndex& m) {
        cplx v = c.values[static_cast<size_t>(flat_index(family.radix, m))];
        pmax = std::max(pmax, std::abs(v));
        MultiIndex t = multi_group_sub(family.radix, m, piece.vertex);
        hc.values[static_cast<size_t>(flat_index(family.radix, t))] = v;
      });
      if (pmax <= 1e-13 * fmax) continue;
      out.entries.push_back(
          GEntry{inverse_transform(hc), piece.vertex, piece.level, piece.lambda});
    }
  }
  return out;
}

namespace {

InequalityResult make_result(double lhs, double rhs) {
  InequalityResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  if (rhs == 0.0)
    r.ratio = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  else
    r.ratio = lhs / rhs;
  return r;
}

void require_positive_p(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent p must be positive");
}

}  // namespace

InequalityResult verify_main_inequality(const SpectralFamily& family, double p) {
  require_positive_p(p);
  if (family.entries.empty()) return InequalityResult{};
  std::vector<GridFunction> fs;
  fs.reserve(family.entries.size());
  for (const auto& e : family.entries) fs.push_back(e.f);
  return make_result(lp_norm(family_sum(family), p), lp_l2_norm(fs, p));
}

InequalityResult verify_main_inequality(const std::vector<GridFunction>& fs, double p) {
  require_positive_p(p);
  if (fs.empty()) return InequalityResult{};
  GridFunction sum = make_zero_function(fs.front().radix);
  for (const auto& f : fs) {
    validate_shape(sum.radix, f.values.size());
    for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += f.values[i];
  }
  return make_result(lp_norm(sum, p), lp_l2_norm(fs, p));
}

InequalityResult verify_weak_inequality(const SpectralFamily& family, double p) {
  require_positive_p(p);
  if (p > 1.0) throw std::invalid_argument("weak form requires p <= 1");
  if (family.entries.empty()) return InequalityResult{};
  const int D = family.radix.D();
  double rhs = 0.0;
  for (int eps = 0; eps < (1 << D); ++eps) {
    std::vector<GridFunction> demod;
    demod.reserve(family.entries.size());
    for (const auto& e : family.entries) {
      MultiIndex tau(D);
      for (int d = 0; d < D; ++d)
        tau[d] = (eps >> d & 1) ? e.rect.hi[d] - 1 : e.rect.lo[d];
      GridFunction vchar = character_function(family.radix, tau);
      GridFunction g = e.f;
      for (size_t i = 0; i < g.values.size(); ++i)
        g.values[i] *= std::conj(vchar.values[i]);
      demod.push_back(std::move(g));
    }
    rhs += hardy_norm(demod, p);
  }
  return make_result(lp_norm(family_sum(family), p), rhs);
}

SpectralFamily random_family(std::uint64_t seed, const MultiRadix& radix, int max_rects,
                             CoeffLaw law) {
  if (max_rects < 1) throw std::invalid_argument("max_rects must be at least 1");
  Rng rng(seed);
  const int D = radix.D();
  Rectangle full{MultiIndex(D, 0), MultiIndex(D)};
  for (int d = 0; d < D; ++d) full.hi[d] = radix.dim(d).capacity();

  std::vector<Rectangle> leaves;
  std::deque<Rectangle> work{full};
  int count = 1;
  while (!work.empty()) {
    Rectangle r = work.front();
    work.pop_front();
    std::vector<int> splittable;
    for (int d = 0; d < D; ++d)
      if (r.hi[d] - r.lo[d] >= 2) splittable.push_back(d);
    if (count >= max_rects || splittable.empty() || rng.uniform01() < 0.3) {
      leaves.push_back(r);
      continue;
    }
    int d = splittable[static_cast<size_t>(rng.below(static_cast<std::int64_t>(splittable.size())))];
    std::int64_t cut = r.lo[d] + 1 + rng.below(r.hi[d] - r.lo[d] - 1);
    Rectangle left = r, right = r;
    left.hi[d] = cut;
    right.lo[d] = cut;
    work.push_back(left);
    work.push_back(right);
    ++count;
  }

  SpectralFamily fam{radix, {}};
  for (const Rectangle& r : leaves) {
    SpectrumCoeffs c = make_zero_spectrum(radix);
    for_each_cell(r, [&](const MultiIndex& m) {
      cplx v = law == CoeffLaw::gaussian ? rng.complex_normal() : cplx(rng.sign(), 0.0);
      c.values[static_cast<size_t>(flat_index(radix, m))] = v;
    });
    fam.entries.push_back(FamilyEntry{r, inverse_transform(c)});
  }
  return fam;
}

SpectralFamily tensor_amplify(const SpectralFamily& base, int dims) {
  if (base.radix.D() != 1) throw std::invalid_argument("tensor base must be one-parameter");
  if (dims < 1) throw std::invalid_argument("dims must be at least 1");
  if (dims == 1) return base;

  const RadixSequence& rs = base.radix.dim(0);
  const std::int64_t P = rs.capacity();
  const size_t K = base.entries.size();
  double cells = std::pow(static_cast<double>(P), dims);
  double count = std::pow(static_cast<double>(K), dims);
  if (cells > double(1 << 24) || count > 2e5) throw std::length_error("tensor power too large");

  MultiRadix radix{std::vector<RadixSequence>(static_cast<size_t>(dims), rs)};
  SpectralFamily out{radix, {}};
  if (K == 0) return out;

  const std::int64_t total = radix.cells();
  std::vector<size_t> k(static_cast<size_t>(dims), 0);
  for (;;) {
    FamilyEntry entry;
    entry.rect.lo.resize(static_cast<size_t>(dims));
    entry.rect.hi.resize(static_cast<size_t>(dims));
    for (int d = 0; d < dims; ++d) {
      entry.rect.lo[d] = base.entries[k[static_cast<size_t>(d)]].rect.lo[0];
      entry.rect.hi[d] = base.entries[k[static_cast<size_t>(d)]].rect.hi[0];
    }
    entry.f = make_zero_function(radix);
    for (std::int64_t flat = 0; flat < total; ++flat) {
      cplx v = 1.0;
      std::int64_t rest = flat;
      for (int d = dims - 1; d >= 0; --d) {
        std::int64_t j = rest % P;
        rest /= P;
        v *= base.entries[k[static_cast<size_t>(d)]].f.values[static_cast<size_t>(j)];
      }
      entry.f.values[static_cast<size_t>(flat)] = v;
    }
    out.entries.push_back(std::move(entry));

    size_t d = static_cast<size_t>(dims);
    bool done = true;
    while (d > 0) {
      --d;
      if (++k[d] < K) {
        done = false;
        break;
      }
      k[d] = 0;
    }
    if (done) break;
  }
  return out;
}

}  // namespace vrdf
