#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "selfsim/tiling_box.hpp"

namespace selfsim {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kZeroColor{255, 0, 0};
inline constexpr std::size_t kHueCount = 24;
inline constexpr std::size_t kBrightnessLevels = 7;
extern const std::array<Rgb, kHueCount> kHueTable;

// Colors are keyed by their coordinates read as base-p digits (first
// coordinate most significant). Key 0 is red; keys 1..168 walk the hue table
// at decreasing brightness; larger keys go through a fixed bijection of the
// 24-bit RGB cube that avoids the 169 colors above. Injective for keys below
// 2^24.
Rgb palette_color(std::span<const fp_t> color, std::uint32_t p);
Rgb palette_color_for_key(std::uint64_t key);

// Binary PPM (P6). Pixel (column x, row y) shows T(x, y); the origin is the
// top-left corner. Two-dimensional boxes only.
std::string encode_ppm(const TilingBox& T);
void render_ppm(const TilingBox& T, const std::string& path);

}  // namespace selfsim
