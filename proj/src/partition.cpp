#include "vrdf/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace vrdf {

namespace {

// Digits with one virtual position above the truncation depth, so that
// b == P_N (digit 1 at position N+1) is representable.  Index 1-based.
std::vector<int> extended_digits(const RadixSequence& r, std::int64_t v) {
  std::vector<int> d(static_cast<size_t>(r.depth()) + 2, 0);
  if (v == r.capacity()) {
    d[static_cast<size_t>(r.depth()) + 1] = 1;
    return d;
  }
  DigitVec dv = digits_of_int(r, v);
  for (int k = 1; k <= r.depth(); ++k) d[static_cast<size_t>(k)] = dv.digit(k);
  return d;
}

void push_if_nonempty(std::vector<IntervalPiece>& out, IntervalPiece piece) {
  if (piece.hi > piece.lo && !piece.lambda.empty()) out.push_back(std::move(piece));
}

std::vector<int> lambda_range(int lo, int hi) {
  std::vector<int> l;
  for (int v = lo; v < hi; ++v) l.push_back(v);
  return l;
}

}  // namespace

IntervalPartition partition_interval(const RadixSequence& r, std::int64_t a, std::int64_t b) {
  if (a < 0 || a >= b || b > r.capacity())
    throw std::out_of_range("need 0 <= a < b <= capacity");

  const int N = r.depth();
  const std::vector<int> beta = extended_digits(r, b);
  const std::vector<int> alpha = extended_digits(r, a);

  int digits_b = 0;  // k+1: most significant nonzero position of b
  for (int j = N + 1; j >= 1; --j)
    if (beta[static_cast<size_t>(j)] > 0) {
      digits_b = j;
      break;
    }

  // b_j: b with its j least significant digits zeroed.  Place values only
  // reach P_N: digits_b == N+1 happens for b == P_N alone, and then j-1 <= N.
  std::vector<std::int64_t> bj(static_cast<size_t>(digits_b) + 1);
  bj[0] = b;
  for (int j = 1; j <= digits_b; ++j)
    bj[static_cast<size_t>(j)] =
        bj[static_cast<size_t>(j - 1)] - beta[static_cast<size_t>(j)] * r.P(j - 1);

  // t: the piece J_t = [b_t, b_{t-1}) containing a.
  int t = 0;
  for (int j = 1; j <= digits_b; ++j)
    if (bj[static_cast<size_t>(j)] <= a && a < bj[static_cast<size_t>(j - 1)]) {
      t = j;
      break;
    }

  // a_j: a with its j least significant digits zeroed.
  std::vector<std::int64_t> aj(static_cast<size_t>(t) + 1);
  aj[0] = a;
  for (int j = 1; j <= t; ++j)
    aj[static_cast<size_t>(j)] =
        aj[static_cast<size_t>(j - 1)] - alpha[static_cast<size_t>(j)] * r.P(j - 1);

  IntervalPartition out;
  out.a = a;
  out.b = b;
  out.t = t;
  out.digits_b = digits_b;

  // The singleton {a}, the level-0 block after shifting by a.
  out.pieces.push_back(IntervalPiece{a, a + 1, PieceKind::tilde, 0, {0}, a});

  // Tilde pieces 1..t-1 climb from a to the top of its level-j cell; the
  // t-th stops below the digit of b.
  for (int j = 1; j < t; ++j) {
    IntervalPiece piece;
    piece.kind = PieceKind::tilde;
    piece.level = j;
    piece.base = a;
    piece.lo = aj[static_cast<size_t>(j)] + (alpha[static_cast<size_t>(j)] + 1) * r.P(j - 1);
    piece.hi = aj[static_cast<size_t>(j)] + r.P(j);
    piece.lambda = lambda_range(1, r.p(j) - alpha[static_cast<size_t>(j)]);
    push_if_nonempty(out.pieces, std::move(piece));
  }
  {
    IntervalPiece piece;
    piece.kind = PieceKind::tilde;
    piece.level = t;
    piece.base = a;
    piece.lo = aj[static_cast<size_t>(t)] + (alpha[static_cast<size_t>(t)] + 1) * r.P(t - 1);
    piece.hi = aj[static_cast<size_t>(t)] + beta[static_cast<size_t>(t)] * r.P(t - 1);
    piece.lambda = lambda_range(1, beta[static_cast<size_t>(t)] - alpha[static_cast<size_t>(t)]);
    push_if_nonempty(out.pieces, std::move(piece));
  }

  // Plain pieces 1..t-1 descend from b.
  for (int j = 1; j < t; ++j) {
    IntervalPiece piece;
    piece.kind = PieceKind::plain;
    piece.level = j;
    piece.base = b;
    piece.lo = bj[static_cast<size_t>(j)];
    piece.hi = bj[static_cast<size_t>(j - 1)];
    piece.lambda = lambda_range(r.p(j) - beta[static_cast<size_t>(j)], r.p(j));
    push_if_nonempty(out.pieces, std::move(piece));
  }

  std::sort(out.pieces.begin(), out.pieces.end(),
            [](const IntervalPiece& x, const IntervalPiece& y) { return x.lo < y.lo; });
  return out;
}

bool verify_shift_property(const RadixSequence& r, const IntervalPiece& piece) {
  if (piece.lo < 0 || piece.hi > r.capacity() || piece.lo >= piece.hi) return false;
  std::vector<char> shifted(static_cast<size_t>(r.capacity()), 0);
  for (std::int64_t x = piece.lo; x < piece.hi; ++x)
    shifted[static_cast<size_t>(group_sub(r, x, piece.base))] = 1;

  std::vector<char> blocks(static_cast<size_t>(r.capacity()), 0);
  for (int l : piece.lambda) {
    std::int64_t lo, hi;
    if (piece.level == 0) {
      if (l != 0) return false;
      lo = 0;
      hi = 1;
    } else {
      if (piece.level > r.depth() || l < 1 || l >= r.p(piece.level)) return false;
      lo = static_cast<std::int64_t>(l) * r.P(piece.level - 1);
      hi = lo + r.P(piece.level - 1);
    }
    if (hi > r.capacity()) return false;
    for (std::int64_t x = lo; x < hi; ++x) blocks[static_cast<size_t>(x)] = 1;
  }
  return shifted == blocks;
}

std::string piece_label(const IntervalPiece& piece) {
  return (piece.kind == PieceKind::tilde ? "J~" : "J") + std::to_string(piece.level);
}

RectanglePartition partition_rectangle(const MultiRadix& r, const Rectangle& rect) {
  validate_rectangle(r, rect);
  const int D = r.D();
  for (int d = 0; d < D; ++d)
    if (rect.lo[static_cast<size_t>(d)] >= rect.hi[static_cast<size_t>(d)])
      throw std::invalid_argument("rectangle side is empty");

  std::vector<IntervalPartition> per_dim;
  per_dim.reserve(static_cast<size_t>(D));
  for (int d = 0; d < D; ++d)
    per_dim.push_back(partition_interval(r.dim(d), rect.lo[static_cast<size_t>(d)],
                                         rect.hi[static_cast<size_t>(d)]));

  RectanglePartition out;
  out.rect = rect;
  std::vector<size_t> idx(static_cast<size_t>(D), 0);
  for (;;) {
    RectanglePiece piece;
    piece.box.lo.resize(static_cast<size_t>(D));
    piece.box.hi.resize(static_cast<size_t>(D));
    piece.corner.resize(static_cast<size_t>(D));
    piece.vertex.resize(static_cast<size_t>(D));
    piece.level.resize(static_cast<size_t>(D));
    piece.lambda.resize(static_cast<size_t>(D));
    for (int d = 0; d < D; ++d) {
      const IntervalPiece& p = per_dim[static_cast<size_t>(d)].pieces[idx[static_cast<size_t>(d)]];
      piece.box.lo[static_cast<size_t>(d)] = p.lo;
      piece.box.hi[static_cast<size_t>(d)] = p.hi;
      piece.corner[static_cast<size_t>(d)] = p.kind == PieceKind::plain ? 1 : 0;
      piece.vertex[static_cast<size_t>(d)] = p.base;
      piece.level[static_cast<size_t>(d)] = p.level;
      piece.lambda[static_cast<size_t>(d)] = p.lambda;
    }
    out.pieces.push_back(std::move(piece));
    int d = D - 1;
    for (; d >= 0; --d) {
      if (++idx[static_cast<size_t>(d)] < per_dim[static_cast<size_t>(d)].pieces.size()) break;
      idx[static_cast<size_t>(d)] = 0;
    }
    if (d < 0) break;
  }
  return out;
}

}  // namespace vrdf
