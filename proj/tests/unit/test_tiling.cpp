#include <doctest.h>

#include <set>

#include "selfsim/expand.hpp"
#include "selfsim/scenarios.hpp"
#include "selfsim/tiling.hpp"
#include "unit/oracles.hpp"

using namespace selfsim;

namespace {

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

Poly sp(const char* text, std::uint32_t p, std::size_t n = 2) { return parse_poly(text, n, CoeffKind::scalar(PrimeField(p))); }

TilingBox sierpinski(int side) { return expand_quotient(sp("1", 2), sp("1+x+y", 2), Side::Right, {side, side}); }

std::vector<fp_t> values(const WindowValue& w) { return w.values; }

}  // namespace

TEST_CASE("window shapes enumerate offsets lexicographically") {
  WindowShape J = WindowShape::J(2, 2, 3, 1);  // {-1..2}^2
  CHECK(J.size() == 16);
  CHECK(J[0] == MultiIndex{-1, -1});
  CHECK(J[1] == MultiIndex{-1, 0});
  CHECK(J[15] == MultiIndex{2, 2});
  CHECK(J.index_of({0, 0}) == std::optional<std::size_t>(5));
  CHECK_FALSE(J.index_of({3, 0}).has_value());
  WindowShape I = WindowShape::I(1, 5, 2);
  CHECK(I.size() == 25);
  CHECK(I[24] == MultiIndex{24});
  CHECK(WindowShape::J(3, 1, 2, 0).size() == 1);
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { WindowShape::J(2, 0, 2, 1); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { WindowShape({MultiIndex{0}, MultiIndex{0}}); }));
}

TEST_CASE("window examples") {
  TilingBox T = sierpinski(8);
  WindowShape J0 = WindowShape::J(2, 2, 2, 0);
  WindowValue w0 = window(T, {0, 0}, J0);
  CHECK(values(w0) == std::vector<fp_t>{0, 0, 0, 1});
  WindowValue one = window(T, {1, 1}, WindowShape({MultiIndex{0, 0}}));
  CHECK(one.values == std::vector<fp_t>{T.scalar_at({1, 1})});
  WindowValue w = window(T, {2, 0}, WindowShape::I(2, 2, 1));
  CHECK(values(w) == std::vector<fp_t>{1, 1, 1, 0});
  std::vector<fp_t> via_lucas{oracle::lucas_binomial(2, 2, 2), oracle::lucas_binomial(3, 2, 2),
                              oracle::lucas_binomial(3, 3, 2), oracle::lucas_binomial(4, 3, 2)};
  CHECK(values(w) == via_lucas);
  CHECK(throws_code(ErrorCode::OutOfWindow, [&] { window(T, {7, 7}, WindowShape::I(2, 2, 1)); }));
  CHECK(throws_code(ErrorCode::DimensionMismatch, [&] { window(T, {0}, WindowShape::I(1, 2, 1)); }));
}

TEST_CASE("tbar examples") {
  TilingBox T = sierpinski(8);
  CHECK(tbar(T, 1).data().size() == T.data().size());
  CHECK(std::equal(T.data().begin(), T.data().end(), tbar(T, 1).data().begin()));
  TilingBox Tb = tbar(T, 2);
  CHECK(Tb.color_dim() == 4);
  auto origin = Tb.at({0, 0});
  CHECK(std::vector<fp_t>(origin.begin(), origin.end()) == std::vector<fp_t>{0, 0, 0, 1});

  Poly q = sp("1 + x1^2 + x2^2 + x1*x2 + x1^2*x2^2", 2);
  TilingBox T2 = scalar_reciprocal(q, {16, 16});
  TilingBox Tb2 = tbar(T2, 2);
  auto c = Tb2.at({1, 1});
  std::vector<fp_t> expect{T2.scalar_at({0, 0}), T2.scalar_at({0, 1}), T2.scalar_at({1, 0}), T2.scalar_at({1, 1})};
  CHECK(std::vector<fp_t>(c.begin(), c.end()) == expect);
  // the last offset (0,...,0) recovers T pointwise
  for (std::size_t i = 0; i < T2.cell_count(); ++i) CHECK(Tb2.cell(i)[3] == T2.cell(i)[0]);
}

TEST_CASE("block_tiling examples") {
  TilingBox T = sierpinski(8);
  CHECK(block_tiling(T, 1).data().size() == T.data().size());
  TilingBox B = block_tiling(T, 2);
  auto b = B.at({1, 0});
  CHECK(std::vector<fp_t>(b.begin(), b.end()) == std::vector<fp_t>{1, 1, 1, 0});
  TilingBox Z(PrimeField(3), {6, 6}, ColorSpec::scalar());
  TilingBox ZB = block_tiling(Z, 3);
  CHECK(count_colors(ZB) == 1);
  CHECK(throws_code(ErrorCode::NotDivisible, [&] { block_tiling(T, 3); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { block_tiling(T, 0); }));
}

TEST_CASE("block tilings compose under regrouping") {
  std::mt19937 rng(3);
  for (std::uint32_t p : {2u, 3u}) {
    Poly q = oracle::random_unit_poly(rng, 2, PrimeField(p), 5, 2);
    TilingBox T = scalar_reciprocal(q, {36, 36});
    for (auto [l, m] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{1, 6}}) {
      TilingBox nested = block_tiling(block_tiling(T, l), m);
      TilingBox direct = block_tiling(T, l * m);
      bool ok = true;
      for_each_index(direct.extents(), [&](const MultiIndex& a) {
        auto outer = nested.at(a);
        auto flat = direct.at(a);
        // nested offset (u, v) in I(m)^2, inner (s, t) in I(l)^2 -> flat (l u + s, l v + t)
        for (int u = 0; u < m; ++u)
          for (int v = 0; v < m; ++v)
            for (int s = 0; s < l; ++s)
              for (int t = 0; t < l; ++t) {
                std::size_t nk = (std::size_t(u) * m + v) * l * l + std::size_t(s) * l + t;
                std::size_t fk = std::size_t(l * u + s) * (l * m) + (l * v + t);
                ok = ok && outer[nk] == flat[fk];
              }
      });
      CHECK(ok);
    }
  }
}

TEST_CASE("count_colors examples") {
  TilingBox T = sierpinski(8);
  CHECK(count_colors(T) == 2);
  TilingBox B = block_tiling(T, 2);
  // direct enumeration of the 16 blocks
  std::set<std::vector<fp_t>> seen;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::vector<fp_t> blk;
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) blk.push_back(oracle::lucas_binomial(2 * a + s + 2 * b + t, 2 * a + s, 2));
      seen.insert(blk);
    }
  CHECK(count_colors(B) == seen.size());
  CHECK(count_colors(B) == 2);  // the zero block and [1,1,1,0]
  TilingBox Z(PrimeField(5), {3, 3}, ColorSpec::scalar());
  CHECK(count_colors(Z) == 1);
}

TEST_CASE("tiling box reads outside the box") {
  TilingBox T = sierpinski(4);
  auto neg = T.at({-1, 2});
  CHECK(neg.size() == 1);
  CHECK(neg[0] == 0);
  CHECK(throws_code(ErrorCode::OutOfWindow, [&] { T.at({4, 0}); }));
  CHECK(throws_code(ErrorCode::KindMismatch, [&] { T.matrix_at({0, 0}); }));
  CHECK(throws_code(ErrorCode::BoxTooLarge, [] { TilingBox(PrimeField(2), {1 << 13, 1 << 13, 2}, ColorSpec::scalar()); }));
}
