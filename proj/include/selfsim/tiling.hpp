#pragma once

#include <vector>

#include "selfsim/tiling_box.hpp"

namespace selfsim {

struct WindowValue {
  WindowShape shape;
  std::size_t base_dim = 1;
  std::vector<fp_t> values;  // offset-major: values[k * base_dim + c]

  std::span<const fp_t> at(std::size_t k) const { return {values.data() + k * base_dim, base_dim}; }
};

// T|_{a+K}: b -> T(a + b). Throws OutOfWindow for reads in N^n beyond the box.
WindowValue window(const TilingBox& T, const MultiIndex& a, const WindowShape& K);

// Tbar(a) = T|_{a + J(0)^n}, J(0) = {-D+1, ..., 0}. Every read lies at or below
// a, so Tbar is valid on the whole box of T.
TilingBox tbar(const TilingBox& T, int D);

// T^l(a) = T|_{l a + I^n}, I = {0, ..., l-1}. Throws NotDivisible unless every
// extent is a multiple of l.
TilingBox block_tiling(const TilingBox& T, int l);

// Number of distinct colors occurring in the box.
std::size_t count_colors(const TilingBox& T);

}  // namespace selfsim
