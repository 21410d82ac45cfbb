#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vrdf/rng.hpp"
#include "vrdf/transform.hpp"

using namespace vrdf;

namespace {

MultiRadix uniform1(int p, int n) { return MultiRadix{{RadixSequence(std::vector<int>(n, p))}}; }

GridFunction random_function(MultiRadix radix, Rng& rng) {
  GridFunction f = make_zero_function(std::move(radix));
  for (auto& v : f.values) v = rng.complex_normal();
  return f;
}

double max_coeff_diff(const SpectrumCoeffs& a, const SpectrumCoeffs& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

double max_value_diff(const GridFunction& a, const GridFunction& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

double l2_sq_grid(const GridFunction& f) {
  double s = 0.0;
  for (auto v : f.values) s += std::norm(v);
  return s / static_cast<double>(f.values.size());
}

double l2_sq_spec(const SpectrumCoeffs& c) {
  double s = 0.0;
  for (auto v : c.values) s += std::norm(v);
  return s;
}

}  // namespace

TEST_CASE("rademacher frozen values") {
  RadixSequence w(std::vector<int>(6, 2));
  CHECK(rademacher_eval(w, 1, w.capacity() / 2).real() == doctest::Approx(-1.0));
  CHECK(rademacher_eval(w, 1, 0) == cplx{1.0, 0.0});

  RadixSequence t(std::vector<int>(4, 3));
  cplx v = rademacher_eval(t, 1, t.capacity() / 3);
  CHECK(v.real() == doctest::Approx(std::cos(2 * M_PI / 3)));
  CHECK(v.imag() == doctest::Approx(std::sin(2 * M_PI / 3)));

  // r_2 in the (2,3) system only sees the second point digit: j = x_1*3 + x_2.
  RadixSequence m({2, 3});
  for (std::int64_t j = 0; j < 6; ++j) {
    cplx got = rademacher_eval(m, 2, j);
    double ang = 2 * M_PI * static_cast<double>(j % 3) / 3.0;
    CHECK(got.real() == doctest::Approx(std::cos(ang)));
    CHECK(got.imag() == doctest::Approx(std::sin(ang)));
  }
}

TEST_CASE("vilenkin functions are orthonormal characters") {
  RadixSequence r({2, 3, 4});
  const std::int64_t P = r.capacity();
  for (std::int64_t n = 0; n < P; ++n) {
    for (std::int64_t m = 0; m < P; ++m) {
      cplx ip{};
      for (std::int64_t j = 0; j < P; ++j)
        ip += vilenkin_eval(r, n, j) * std::conj(vilenkin_eval(r, m, j));
      ip /= static_cast<double>(P);
      CHECK(std::abs(ip - (n == m ? cplx{1, 0} : cplx{})) < 1e-13);
    }
  }
}

TEST_CASE("character multiplication law") {
  RadixSequence r({3, 2, 5});
  const std::int64_t P = r.capacity();
  for (std::int64_t n = 0; n < P; n += 2)
    for (std::int64_t m = 0; m < P; m += 3) {
      std::int64_t s = group_add(r, n, m);
      for (std::int64_t j = 0; j < P; j += 1)
        CHECK(std::abs(vilenkin_eval(r, n, j) * vilenkin_eval(r, m, j) -
                       vilenkin_eval(r, s, j)) < 1e-13);
    }
  // dyadic spot value from the xor law: v_5 * v_3 = v_6
  RadixSequence w(std::vector<int>(3, 2));
  for (std::int64_t j = 0; j < 8; ++j)
    CHECK(std::abs(vilenkin_eval(w, 5, j) * vilenkin_eval(w, 3, j) - vilenkin_eval(w, 6, j)) <
          1e-14);
}

TEST_CASE("transform of a single character is a unit coefficient") {
  MultiRadix r = uniform1(2, 3);
  GridFunction f = character_function(r, {5});
  SpectrumCoeffs c = forward_transform(f);
  for (std::int64_t l = 0; l < 8; ++l)
    CHECK(std::abs(c.values[static_cast<size_t>(l)] - (l == 5 ? cplx{1, 0} : cplx{})) < 1e-14);
}

TEST_CASE("fast matches naive across radix profiles") {
  Rng rng(2024);
  std::vector<std::vector<int>> profiles = {
      {2, 2, 2, 2, 2, 2}, {3, 3, 3, 3}, {2, 3, 4, 5, 2, 3}, {10, 10}, {16, 5}};
  for (const auto& ps : profiles) {
    MultiRadix r{{RadixSequence(ps)}};
    for (int rep = 0; rep < 3; ++rep) {
      GridFunction f = random_function(r, rng);
      SpectrumCoeffs fast = forward_transform(f);
      SpectrumCoeffs slow = naive_forward_transform(f);
      CHECK(max_coeff_diff(fast, slow) < 1e-12);

      GridFunction back_fast = inverse_transform(fast);
      GridFunction back_slow = naive_inverse_transform(fast);
      CHECK(max_value_diff(back_fast, f) < 1e-12);
      CHECK(max_value_diff(back_slow, f) < 1e-12);
    }
  }
}

TEST_CASE("fast matches naive in two dimensions") {
  Rng rng(77);
  MultiRadix r{{RadixSequence({2, 3, 2}), RadixSequence({4, 3})}};
  GridFunction f = random_function(r, rng);
  SpectrumCoeffs fast = forward_transform(f);
  SpectrumCoeffs slow = naive_forward_transform(f);
  CHECK(max_coeff_diff(fast, slow) < 1e-12);
  CHECK(max_value_diff(inverse_transform(fast), f) < 1e-12);
  CHECK(max_value_diff(naive_inverse_transform(fast), f) < 1e-12);
}

TEST_CASE("parseval identity") {
  Rng rng(5);
  for (auto ps : {std::vector<int>{2, 3, 4, 5}, std::vector<int>{7, 7, 7}}) {
    MultiRadix r{{RadixSequence(ps)}};
    GridFunction f = random_function(r, rng);
    SpectrumCoeffs c = forward_transform(f);
    CHECK(l2_sq_spec(c) == doctest::Approx(l2_sq_grid(f)).epsilon(1e-13));
  }
}

TEST_CASE("spectrum shift law under modulation") {
  Rng rng(11);
  MultiRadix r{{RadixSequence({3, 4, 2})}};
  GridFunction f = random_function(r, rng);
  SpectrumCoeffs c = forward_transform(f);
  const std::int64_t a = 13;
  GridFunction va = character_function(r, {a});
  GridFunction g = f;
  for (size_t i = 0; i < g.values.size(); ++i) g.values[i] *= va.values[i];
  SpectrumCoeffs cg = forward_transform(g);
  for (std::int64_t l = 0; l < r.cells(); ++l) {
    std::int64_t shifted = group_add(r.dim(0), a, l);
    CHECK(std::abs(cg.values[static_cast<size_t>(shifted)] - c.values[static_cast<size_t>(l)]) <
          1e-12);
  }
}

TEST_CASE("spectral projection keeps the box") {
  MultiRadix r = uniform1(2, 3);
  GridFunction f = character_function(r, {2});
  GridFunction v7 = character_function(r, {7});
  for (size_t i = 0; i < f.values.size(); ++i) f.values[i] += v7.values[i];
  GridFunction proj = spectral_project(f, Rectangle{{0}, {4}});
  GridFunction expect = character_function(r, {2});
  CHECK(max_value_diff(proj, expect) < 1e-13);

  auto spec = spectrum_of(f, 1e-8);
  REQUIRE(spec.size() == 2);
  CHECK(spec[0] == MultiIndex{2});
  CHECK(spec[1] == MultiIndex{7});
}

TEST_CASE("transform rejects malformed input") {
  GridFunction f;
  f.radix = uniform1(2, 3);
  f.values.assign(5, cplx{});
  CHECK_THROWS_AS(forward_transform(f), std::invalid_argument);
}
