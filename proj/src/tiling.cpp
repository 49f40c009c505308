#include "selfsim/tiling.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace selfsim {

WindowValue window(const TilingBox& T, const MultiIndex& a, const WindowShape& K) {
  if (K.n() != T.n() || a.size() != T.n()) throw Error(ErrorCode::DimensionMismatch, "window rank differs from n");
  WindowValue w{K, T.color_dim(), std::vector<fp_t>(K.size() * T.color_dim())};
  for (std::size_t k = 0; k < K.size(); ++k) {
    auto v = T.at(a + K[k]);
    std::copy(v.begin(), v.end(), w.values.begin() + k * T.color_dim());
  }
  return w;
}

TilingBox tbar(const TilingBox& T, int D) {
  WindowShape shape = WindowShape::cube(T.n(), -D + 1, 0);
  const std::size_t cd = T.color_dim();
  std::vector<MultiIndex> offsets = shape.offsets();
  TilingBox out(T.field(), T.extents(), ColorSpec::window(T.color(), std::move(shape)));
  std::size_t idx = 0;
  MultiIndex b(T.n());
  for_each_index(T.extents(), [&](const MultiIndex& a) {
    auto dst = out.cell(idx++);
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      for (std::size_t i = 0; i < a.size(); ++i) b[i] = a[i] + offsets[k][i];
      auto v = T.at(b);
      std::copy(v.begin(), v.end(), dst.begin() + k * cd);
    }
  });
  return out;
}

TilingBox block_tiling(const TilingBox& T, int l) {
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "block length must be >= 1");
  std::vector<int> ext = T.extents();
  for (auto& e : ext) {
    if (e % l != 0)
      throw Error(ErrorCode::NotDivisible, "extent " + std::to_string(e) + " is not a multiple of " + std::to_string(l));
    e /= l;
  }
  WindowShape shape = WindowShape::cube(T.n(), 0, l - 1);
  std::vector<MultiIndex> offsets = shape.offsets();
  const std::size_t cd = T.color_dim();
  TilingBox out(T.field(), ext, ColorSpec::window(T.color(), std::move(shape)));
  std::size_t idx = 0;
  MultiIndex b(T.n());
  for_each_index(ext, [&](const MultiIndex& a) {
    auto dst = out.cell(idx++);
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      for (std::size_t i = 0; i < a.size(); ++i) b[i] = l * a[i] + offsets[k][i];
      auto v = T.cell(T.linear_index(b));
      std::copy(v.begin(), v.end(), dst.begin() + k * cd);
    }
  });
  return out;
}

std::size_t count_colors(const TilingBox& T) {
  std::set<std::vector<fp_t>> seen;
  for (std::size_t i = 0; i < T.cell_count(); ++i) {
    auto c = T.cell(i);
    seen.emplace(c.begin(), c.end());
  }
  return seen.size();
}

}  // namespace selfsim
