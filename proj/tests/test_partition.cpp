#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "vrdf/martingale.hpp"
#include "vrdf/partition.hpp"
#include "vrdf/rng.hpp"

using namespace vrdf;

namespace {

RadixSequence uniform(int p, int n) { return RadixSequence(std::vector<int>(n, p)); }

// The partition must cover [a, b) exactly, without overlap.
void check_cover(const RadixSequence& r, const IntervalPartition& part) {
  std::vector<char> hit(static_cast<size_t>(r.capacity()), 0);
  for (const auto& piece : part.pieces) {
    REQUIRE(piece.lo < piece.hi);
    for (std::int64_t x = piece.lo; x < piece.hi; ++x) {
      REQUIRE(hit[static_cast<size_t>(x)] == 0);
      hit[static_cast<size_t>(x)] = 1;
    }
  }
  for (std::int64_t x = 0; x < r.capacity(); ++x)
    CHECK(static_cast<bool>(hit[static_cast<size_t>(x)]) == (x >= part.a && x < part.b));
}

void check_structure(const RadixSequence& r, const IntervalPartition& part) {
  CHECK(static_cast<int>(part.pieces.size()) <= 2 * part.digits_b + 1);
  for (const auto& piece : part.pieces) {
    CHECK(piece.level >= 0);
    CHECK(piece.size() ==
          static_cast<std::int64_t>(piece.lambda.size()) * (piece.level == 0 ? 1 : r.P(piece.level - 1)));
    if (piece.level == 0) {
      CHECK(piece.lambda == std::vector<int>{0});
    } else {
      CHECK(piece.level <= r.depth());
      for (int l : piece.lambda) {
        CHECK(l >= 1);
        CHECK(l < r.p(piece.level));
      }
    }
    CHECK(piece.base == (piece.kind == PieceKind::tilde ? part.a : part.b));
    CHECK(verify_shift_property(r, piece));
  }
}

const IntervalPiece* find_piece(const IntervalPartition& part, const std::string& label) {
  for (const auto& piece : part.pieces)
    if (piece_label(piece) == label) return &piece;
  return nullptr;
}

}  // namespace

TEST_CASE("decimal figure regression") {
  RadixSequence r = uniform(10, 4);
  IntervalPartition part = partition_interval(r, 567, 1234);
  CHECK(part.t == 4);
  CHECK(part.digits_b == 4);
  REQUIRE(part.pieces.size() == 7);

  struct Expect {
    const char* label;
    std::int64_t lo, hi;
    std::vector<int> lambda;
  };
  const Expect table[] = {
      {"J~0", 567, 568, {0}},
      {"J~1", 568, 570, {1, 2}},
      {"J~2", 570, 600, {1, 2, 3}},
      {"J~3", 600, 1000, {1, 2, 3, 4}},
      {"J3", 1000, 1200, {8, 9}},
      {"J2", 1200, 1230, {7, 8, 9}},
      {"J1", 1230, 1234, {6, 7, 8, 9}},
  };
  for (size_t i = 0; i < part.pieces.size(); ++i) {
    const auto& piece = part.pieces[i];
    CHECK(piece_label(piece) == table[i].label);
    CHECK(piece.lo == table[i].lo);
    CHECK(piece.hi == table[i].hi);
    CHECK(piece.lambda == table[i].lambda);
  }
  CHECK(find_piece(part, "J4") == nullptr);  // the piece containing a is replaced
  check_cover(r, part);
  check_structure(r, part);
}

TEST_CASE("dyadic example splits into singleton and tail") {
  RadixSequence r = uniform(2, 3);
  IntervalPartition part = partition_interval(r, 3, 6);
  CHECK(part.t == 3);
  REQUIRE(part.pieces.size() == 2);
  CHECK(part.pieces[0].lo == 3);
  CHECK(part.pieces[0].hi == 4);
  CHECK(piece_label(part.pieces[0]) == "J~0");
  CHECK(part.pieces[1].lo == 4);
  CHECK(part.pieces[1].hi == 6);
  CHECK(piece_label(part.pieces[1]) == "J2");
  CHECK(part.pieces[1].lambda == std::vector<int>{1});
  check_cover(r, part);
  check_structure(r, part);
}

TEST_CASE("shift property in the decimal example") {
  RadixSequence r = uniform(10, 4);
  IntervalPartition part = partition_interval(r, 567, 1234);
  const IntervalPiece* j2 = find_piece(part, "J2");
  REQUIRE(j2 != nullptr);
  CHECK(j2->lambda == std::vector<int>{7, 8, 9});
  // directly: [1200,1230) shifted by 1234 lands on digits-2 blocks 7..9
  std::vector<char> seen(static_cast<size_t>(r.capacity()), 0);
  for (std::int64_t x = 1200; x < 1230; ++x) seen[static_cast<size_t>(group_sub(r, x, 1234))] = 1;
  for (std::int64_t y = 0; y < r.capacity(); ++y) {
    bool in_blocks = (y >= 70 && y < 100);
    CHECK(static_cast<bool>(seen[static_cast<size_t>(y)]) == in_blocks);
  }
}

TEST_CASE("exhaustive over all pairs in small systems") {
  for (const auto& ps : {std::vector<int>{2, 3, 4}, std::vector<int>{2, 2, 2}}) {
    RadixSequence r(ps);
    for (std::int64_t a = 0; a < r.capacity(); ++a)
      for (std::int64_t b = a + 1; b <= r.capacity(); ++b) {
        IntervalPartition part = partition_interval(r, a, b);
        check_cover(r, part);
        check_structure(r, part);
      }
  }
}

TEST_CASE("randomized larger systems") {
  Rng rng(123);
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<int> ps;
    int depth = 3 + static_cast<int>(rng.below(4));
    for (int i = 0; i < depth; ++i) ps.push_back(2 + static_cast<int>(rng.below(8)));
    RadixSequence r(ps);
    std::int64_t a = rng.below(r.capacity());
    std::int64_t b = a + 1 + rng.below(r.capacity() - a);
    IntervalPartition part = partition_interval(r, a, b);
    check_cover(r, part);
    check_structure(r, part);
  }
}

TEST_CASE("upper endpoint at capacity leaves only tilde pieces") {
  RadixSequence r({3, 4, 2});
  for (std::int64_t a : {std::int64_t{0}, std::int64_t{5}, std::int64_t{17}, r.capacity() - 1}) {
    IntervalPartition part = partition_interval(r, a, r.capacity());
    for (const auto& piece : part.pieces) CHECK(piece.kind == PieceKind::tilde);
    check_cover(r, part);
    check_structure(r, part);
  }
}

TEST_CASE("zero lower endpoint reproduces the block ladder") {
  RadixSequence r({2, 3, 2});
  IntervalPartition part = partition_interval(r, 0, r.capacity());
  // {0}, [1,2), [2,6), [6,12): one tilde piece per level
  REQUIRE(part.pieces.size() == 4);
  const std::int64_t lo_expect[] = {0, 1, 2, 6};
  for (size_t i = 0; i < 4; ++i) {
    CHECK(part.pieces[i].level == static_cast<int>(i));
    CHECK(part.pieces[i].lo == lo_expect[i]);
    CHECK(part.pieces[i].hi == (i == 3 ? 12 : lo_expect[i + 1]));
  }
  check_cover(r, part);
}

TEST_CASE("input validation") {
  RadixSequence r({2, 3});
  CHECK_THROWS_AS(partition_interval(r, 3, 3), std::out_of_range);
  CHECK_THROWS_AS(partition_interval(r, 4, 2), std::out_of_range);
  CHECK_THROWS_AS(partition_interval(r, 0, 7), std::out_of_range);
  CHECK_THROWS_AS(partition_interval(r, -1, 3), std::out_of_range);
}

TEST_CASE("rectangle decomposition is the product of the pieces") {
  MultiRadix mr{{uniform(2, 3), uniform(3, 2)}};
  Rectangle rect{{3, 2}, {6, 7}};
  RectanglePartition part = partition_rectangle(mr, rect);

  IntervalPartition p0 = partition_interval(mr.dim(0), 3, 6);
  IntervalPartition p1 = partition_interval(mr.dim(1), 2, 7);
  CHECK(part.pieces.size() == p0.pieces.size() * p1.pieces.size());

  // pieces tile the rectangle
  std::vector<char> hit(static_cast<size_t>(mr.cells()), 0);
  for (const auto& piece : part.pieces) {
    for (std::int64_t x = piece.box.lo[0]; x < piece.box.hi[0]; ++x)
      for (std::int64_t y = piece.box.lo[1]; y < piece.box.hi[1]; ++y) {
        size_t idx = static_cast<size_t>(x * mr.dim(1).capacity() + y);
        REQUIRE(hit[idx] == 0);
        hit[idx] = 1;
      }
    // corner class determines the vertex coordinates
    for (int d = 0; d < 2; ++d) {
      if (piece.corner[static_cast<size_t>(d)] == 0)
        CHECK(piece.vertex[static_cast<size_t>(d)] == rect.lo[static_cast<size_t>(d)]);
      else
        CHECK(piece.vertex[static_cast<size_t>(d)] == rect.hi[static_cast<size_t>(d)]);
    }
  }
  std::int64_t covered = 0;
  for (char h : hit) covered += h;
  CHECK(covered == rect.cells());
}

TEST_CASE("product pieces shift onto product blocks") {
  MultiRadix mr{{RadixSequence({2, 3}), RadixSequence({3, 2})}};
  Rectangle rect{{1, 2}, {5, 6}};
  RectanglePartition part = partition_rectangle(mr, rect);
  for (const auto& piece : part.pieces) {
    // enumerate the shifted piece and the union of product blocks
    std::vector<char> shifted(static_cast<size_t>(mr.cells()), 0);
    for (std::int64_t x = piece.box.lo[0]; x < piece.box.hi[0]; ++x)
      for (std::int64_t y = piece.box.lo[1]; y < piece.box.hi[1]; ++y) {
        MultiIndex s = multi_group_sub(mr, {x, y}, piece.vertex);
        shifted[static_cast<size_t>(s[0] * mr.dim(1).capacity() + s[1])] = 1;
      }
    std::vector<char> blocks(static_cast<size_t>(mr.cells()), 0);
    for (int l0 : piece.lambda[0])
      for (int l1 : piece.lambda[1]) {
        DeltaBlock b{piece.level, {l0, l1}};
        Rectangle br = block_rect(mr, b);
        for (std::int64_t x = br.lo[0]; x < br.hi[0]; ++x)
          for (std::int64_t y = br.lo[1]; y < br.hi[1]; ++y)
            blocks[static_cast<size_t>(x * mr.dim(1).capacity() + y)] = 1;
      }
    CHECK(shifted == blocks);
  }
}
