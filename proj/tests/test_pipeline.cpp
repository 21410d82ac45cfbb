#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "vrdf/pipeline.hpp"
#include "vrdf/transform.hpp"

using namespace vrdf;

namespace {

MultiRadix uniform_grid(int p, int depth, int dims) {
  return MultiRadix{std::vector<RadixSequence>(static_cast<size_t>(dims),
                                               RadixSequence(std::vector<int>(depth, p)))};
}

double max_cell_error(const GridFunction& a, const GridFunction& b) {
  REQUIRE(a.values.size() == b.values.size());
  double m = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

GridFunction scaled_character(const MultiRadix& r, const MultiIndex& n, cplx c) {
  GridFunction f = character_function(r, n);
  for (auto& v : f.values) v *= c;
  return f;
}

}  // namespace

TEST_CASE("synthesis of the empty input is zero") {
  GInput input{uniform_grid(2, 3, 1), {}};
  GridFunction out = apply_G(input);
  for (const cplx& v : out.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("unshifted single block passes a character through") {
  MultiRadix r{{RadixSequence({2, 3, 2})}};
  // index 5 lies in the block of level 2 with top digit 2, i.e. [4, 6)
  GInput input{r, {GEntry{character_function(r, {5}), {0}, {2}, {{2}}}}};
  GridFunction out = apply_G(input);
  CHECK(max_cell_error(out, character_function(r, {5})) < 1e-12);
}

TEST_CASE("spectral synthesis matches the pointwise definition") {
  MultiRadix r{{RadixSequence({2, 3, 2}), RadixSequence({3, 2})}};
  SpectralFamily fam = random_family(41, r, 5);
  GInput input = rdf_decompose(fam);
  CHECK(max_cell_error(apply_G(input), apply_G_direct(input)) < 1e-11);
}

TEST_CASE("synthesis contracts the l2 aggregate norm") {
  MultiRadix r{{RadixSequence({2, 3, 4})}};
  SpectralFamily fam = random_family(7, r, 4);
  GInput input = rdf_decompose(fam);

  std::vector<GridFunction> hs;
  for (const auto& e : input.entries) hs.push_back(e.h);
  double lhs = lp_norm(apply_G(input), 2.0);
  double rhs = lp_l2_norm(hs, 2.0);
  // decomposition output carries no spectral mass outside its own blocks,
  // so the contraction saturates
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  // piling a constant onto a level >= 1 carrier adds unused spectrum:
  // strict inequality
  size_t pick = 0;
  while (input.entries[pick].level[0] == 0) ++pick;
  for (auto& v : input.entries[pick].h.values) v += 3.0;
  hs.clear();
  for (const auto& e : input.entries) hs.push_back(e.h);
  double lhs2 = lp_norm(apply_G(input), 2.0);
  double rhs2 = lp_l2_norm(hs, 2.0);
  CHECK(lhs2 == doctest::Approx(lhs).epsilon(1e-12));
  CHECK(rhs2 > rhs + 0.1);
}

TEST_CASE("colliding shifted blocks are rejected") {
  MultiRadix r{{RadixSequence({2, 3, 2})}};
  GEntry e{character_function(r, {5}), {0}, {2}, {{2}}};
  GInput input{r, {e, e}};
  CHECK_THROWS_AS(apply_G(input), std::invalid_argument);
}

TEST_CASE("single block rectangle decomposes into one demodulated entry") {
  MultiRadix r{{RadixSequence({2, 3, 2})}};
  cplx c{0.3, -0.4};
  SpectralFamily fam{r, {FamilyEntry{Rectangle{{4}, {6}}, scaled_character(r, {5}, c)}}};
  GInput input = rdf_decompose(fam);
  REQUIRE(input.entries.size() == 1);
  const GEntry& e = input.entries.front();
  CHECK(e.shift == MultiIndex{4});
  CHECK(e.level == FiltrationIndex{1});
  CHECK(e.lambda == std::vector<std::vector<int>>{{1}});
  // 5 with vertex 4 removed is digit (1,0,0), so the carrier is c * v_1
  CHECK(max_cell_error(e.h, scaled_character(r, {1}, c)) < 1e-12);
  CHECK(max_cell_error(apply_G(input), fam.entries[0].f) < 1e-12);
}

TEST_CASE("decomposition and synthesis reconstruct the family sum") {
  SUBCASE("one parameter, decimal digits") {
    MultiRadix r = uniform_grid(10, 4, 1);
    SpectrumCoeffs c = make_zero_spectrum(r);
    Rng rng(99);
    for (std::int64_t m = 567; m < 1234; ++m)
      c.values[static_cast<size_t>(m)] = rng.complex_normal();
    SpectralFamily fam{r, {FamilyEntry{Rectangle{{567}, {1234}}, inverse_transform(c)}}};
    GridFunction rec = apply_G(rdf_decompose(fam));
    CHECK(max_cell_error(rec, fam.entries[0].f) < 1e-10);
  }
  SUBCASE("two parameters, sixteen rectangles on a 64x64 grid") {
    MultiRadix r = uniform_grid(2, 6, 2);
    SpectralFamily fam = random_family(4242, r, 16);
    CHECK(fam.entries.size() <= 16);
    GridFunction rec = apply_G(rdf_decompose(fam));
    CHECK(max_cell_error(rec, family_sum(fam)) < 1e-10);
  }
  SUBCASE("three parameters") {
    MultiRadix r{{RadixSequence({2, 3}), RadixSequence({3, 2}), RadixSequence({2, 2})}};
    SpectralFamily fam = random_family(5, r, 6);
    GridFunction rec = apply_G(rdf_decompose(fam));
    CHECK(max_cell_error(rec, family_sum(fam)) < 1e-10);
  }
}

TEST_CASE("each carrier is reproduced by its own blocks") {
  MultiRadix r{{RadixSequence({3, 4}), RadixSequence({2, 2, 2})}};
  SpectralFamily fam = random_family(17, r, 4);
  GInput input = rdf_decompose(fam);
  REQUIRE(!input.entries.empty());
  for (const auto& e : input.entries) {
    GridFunction acc = make_zero_function(r);
    std::vector<size_t> pos(e.lambda.size(), 0);
    // odometer over the lambda product
    for (;;) {
      std::vector<int> l(e.lambda.size());
      for (size_t d = 0; d < e.lambda.size(); ++d) l[d] = e.lambda[d][pos[d]];
      GridFunction part = modified_diff(e.h, DeltaBlock{e.level, l});
      for (size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += part.values[i];
      size_t d = e.lambda.size();
      bool done = true;
      while (d > 0) {
        --d;
        if (++pos[d] < e.lambda[d].size()) {
          done = false;
          break;
        }
        pos[d] = 0;
      }
      if (done) break;
    }
    CHECK(max_cell_error(acc, e.h) < 1e-11);
  }
}

TEST_CASE("square aggregate of corner pieces is dominated pointwise") {
  MultiRadix r = uniform_grid(2, 5, 2);
  SpectrumCoeffs c = make_zero_spectrum(r);
  Rng rng(314);
  Rectangle rect{{5, 3}, {27, 30}};
  GridFunction probe = make_zero_function(r);
  for (std::int64_t x = rect.lo[0]; x < rect.hi[0]; ++x)
    for (std::int64_t y = rect.lo[1]; y < rect.hi[1]; ++y)
      c.values[static_cast<size_t>(flat_index(r, {x, y}))] = rng.complex_normal();
  SpectralFamily fam{r, {FamilyEntry{rect, inverse_transform(c)}}};
  GInput input = rdf_decompose(fam);

  // group the pieces by demodulation vertex (one group per corner class)
  std::map<MultiIndex, std::vector<const GEntry*>> groups;
  for (const auto& e : input.entries) groups[e.shift].push_back(&e);
  CHECK(groups.size() == 4);

  for (const auto& [vertex, entries] : groups) {
    GridFunction acc = make_zero_function(r);
    for (const GEntry* e : entries) {
      std::vector<size_t> pos(e->lambda.size(), 0);
      for (;;) {
        std::vector<int> l(e->lambda.size());
        for (size_t d = 0; d < e->lambda.size(); ++d) l[d] = e->lambda[d][pos[d]];
        GridFunction part = modified_diff(e->h, DeltaBlock{e->level, l});
        for (size_t i = 0; i < acc.values.size(); ++i)
          acc.values[i] += std::norm(part.values[i]);
        size_t d = e->lambda.size();
        bool done = true;
        while (d > 0) {
          --d;
          if (++pos[d] < e->lambda[d].size()) {
            done = false;
            break;
          }
          pos[d] = 0;
        }
        if (done) break;
      }
    }
    GridFunction g = fam.entries[0].f;
    GridFunction vchar = character_function(r, vertex);
    for (size_t i = 0; i < g.values.size(); ++i) g.values[i] *= std::conj(vchar.values[i]);
    GridFunction sm = modified_square_function(g);
    for (size_t i = 0; i < acc.values.size(); ++i)
      CHECK(acc.values[i].real() <= std::norm(sm.values[i]) + 1e-11);
  }
}

TEST_CASE("p=2 ratio is one for disjoint spectra") {
  for (int dims : {1, 2}) {
    MultiRadix r = uniform_grid(2, dims == 1 ? 6 : 4, dims);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      SpectralFamily fam = random_family(seed, r, 8);
      InequalityResult res = verify_main_inequality(fam, 2.0);
      CHECK(std::abs(res.ratio - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("single member family has ratio one at every exponent") {
  MultiRadix r{{RadixSequence({3, 2, 2})}};
  SpectralFamily fam = random_family(8, r, 1);
  REQUIRE(fam.entries.size() == 1);
  for (double p : {0.7, 1.0, 1.3, 2.0, 3.0}) {
    InequalityResult res = verify_main_inequality(fam, p);
    CHECK(res.ratio == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("exponent validation") {
  MultiRadix r{{RadixSequence({2, 2})}};
  SpectralFamily fam = random_family(1, r, 2);
  CHECK_THROWS_AS(verify_main_inequality(fam, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(verify_main_inequality(fam, -1.5), std::invalid_argument);
  CHECK_THROWS_AS(verify_weak_inequality(fam, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(verify_weak_inequality(fam, 0.0), std::invalid_argument);
}

TEST_CASE("weak form on a single character counts every corner") {
  cplx c{-1.2, 0.5};
  SUBCASE("one parameter") {
    MultiRadix r{{RadixSequence({2, 3, 2})}};
    SpectralFamily fam{r, {FamilyEntry{Rectangle{{5}, {6}}, scaled_character(r, {5}, c)}}};
    for (double p : {0.5, 1.0}) {
      InequalityResult res = verify_weak_inequality(fam, p);
      CHECK(res.lhs == doctest::Approx(std::abs(c)).epsilon(1e-12));
      CHECK(res.rhs == doctest::Approx(2.0 * std::abs(c)).epsilon(1e-12));
    }
  }
  SUBCASE("two parameters") {
    MultiRadix r{{RadixSequence({2, 3}), RadixSequence({2, 2})}};
    SpectralFamily fam{r, {FamilyEntry{Rectangle{{1, 2}, {2, 3}}, scaled_character(r, {1, 2}, c)}}};
    InequalityResult res = verify_weak_inequality(fam, 1.0);
    CHECK(res.lhs == doctest::Approx(std::abs(c)).epsilon(1e-12));
    CHECK(res.rhs == doctest::Approx(4.0 * std::abs(c)).epsilon(1e-12));
  }
}

TEST_CASE("empty family gives the zero result") {
  MultiRadix r{{RadixSequence({2, 2})}};
  SpectralFamily fam{r, {}};
  InequalityResult res = verify_weak_inequality(fam, 1.0);
  CHECK(res.lhs == 0.0);
  CHECK(res.rhs == 0.0);
  CHECK(res.ratio == 0.0);
}

TEST_CASE("random families are deterministic and valid") {
  MultiRadix r{{RadixSequence({2, 3, 2}), RadixSequence({4, 2})}};
  SpectralFamily a = random_family(1234, r, 7);
  SpectralFamily b = random_family(1234, r, 7);
  REQUIRE(a.entries.size() == b.entries.size());
  CHECK(a.entries.size() <= 7);
  for (size_t k = 0; k < a.entries.size(); ++k) {
    CHECK(a.entries[k].rect.lo == b.entries[k].rect.lo);
    CHECK(a.entries[k].rect.hi == b.entries[k].rect.hi);
    CHECK(a.entries[k].f.values == b.entries[k].f.values);
  }
  CHECK_NOTHROW(validate_family(a));

  SpectralFamily c = random_family(77, r, 1);
  REQUIRE(c.entries.size() == 1);
  CHECK(c.entries[0].rect.lo == MultiIndex({0, 0}));
  CHECK(c.entries[0].rect.hi == MultiIndex({12, 8}));

  SpectralFamily d = random_family(1235, r, 7);
  bool differs = d.entries.size() != a.entries.size();
  if (!differs) differs = d.entries[0].f.values != a.entries[0].f.values;
  CHECK(differs);

  SpectralFamily s = random_family(3, r, 6, CoeffLaw::rademacher);
  SpectrumCoeffs sc = forward_transform(s.entries[0].f);
  bool sign_found = false;
  for (const cplx& v : sc.values)
    if (std::abs(v) > 0.5) {
      CHECK(std::abs(std::abs(v.real()) - 1.0) < 1e-12);
      CHECK(std::abs(v.imag()) < 1e-12);
      sign_found = true;
    }
  CHECK(sign_found);
}

TEST_CASE("family validation rejects bad input") {
  MultiRadix r{{RadixSequence({2, 3})}};
  GridFunction f = character_function(r, {4});
  SpectralFamily leak{r, {FamilyEntry{Rectangle{{0}, {2}}, f}}};
  CHECK_THROWS_AS(validate_family(leak), std::invalid_argument);
  SpectralFamily overlap{r,
                         {FamilyEntry{Rectangle{{0}, {3}}, character_function(r, {1})},
                          FamilyEntry{Rectangle{{2}, {5}}, character_function(r, {4})}}};
  CHECK_THROWS_AS(validate_family(overlap), std::invalid_argument);
  CHECK_THROWS_AS(rdf_decompose(leak), std::invalid_argument);
}

TEST_CASE("tensor power reproduces the closed form of the two point base") {
  MultiRadix r1{{RadixSequence({2, 2})}};
  SpectralFamily base{r1,
                      {FamilyEntry{Rectangle{{0}, {1}}, character_function(r1, {0})},
                       FamilyEntry{Rectangle{{1}, {2}}, character_function(r1, {1})}}};
  for (double p : {1.1, 1.5, 2.0}) {
    double r_1 = verify_main_inequality(base, p).ratio;
    CHECK(r_1 == doctest::Approx(std::pow(2.0, 0.5 - 1.0 / p)).epsilon(1e-12));
    SpectralFamily amp = tensor_amplify(base, 2);
    CHECK(amp.entries.size() == 4);
    double r_2 = verify_main_inequality(amp, p).ratio;
    CHECK(std::abs(r_2 - r_1 * r_1) < 1e-9);
  }
}

TEST_CASE("tensor power of a random base keeps the ratio identity") {
  MultiRadix r1{{RadixSequence({2, 3})}};
  SpectralFamily base = random_family(2024, r1, 3);
  double r_1 = verify_main_inequality(base, 1.3).ratio;

  SpectralFamily same = tensor_amplify(base, 1);
  CHECK(same.entries.size() == base.entries.size());
  CHECK(verify_main_inequality(same, 1.3).ratio == doctest::Approx(r_1));

  SpectralFamily amp = tensor_amplify(base, 3);
  CHECK(amp.entries.size() == base.entries.size() * base.entries.size() * base.entries.size());
  CHECK_NOTHROW(validate_family(amp));
  double r_3 = verify_main_inequality(amp, 1.3).ratio;
  CHECK(std::abs(r_3 - r_1 * r_1 * r_1) < 1e-9);
}

TEST_CASE("tensor power rejects oversized requests") {
  MultiRadix r1 = uniform_grid(2, 10, 1);
  SpectralFamily base = random_family(1, r1, 4);
  CHECK_THROWS_AS(tensor_amplify(base, 3), std::length_error);
  MultiRadix r2 = uniform_grid(2, 2, 2);
  SpectralFamily multi = random_family(1, r2, 2);
  CHECK_THROWS_AS(tensor_amplify(multi, 2), std::invalid_argument);
}
