#include "selfsim/render.hpp"

#include <algorithm>
#include <vector>

#include "selfsim/config.hpp"

namespace selfsim {

const std::array<Rgb, kHueCount> kHueTable = {{
    {255, 187, 51}, {102, 255, 166}, {85, 51, 255},   {255, 102, 115},
    {119, 255, 51}, {102, 191, 255}, {255, 51, 221},  {255, 242, 102},
    {51, 255, 187}, {166, 102, 255}, {255, 85, 51},   {115, 255, 102},
    {51, 119, 255}, {255, 102, 191}, {221, 255, 51},  {102, 255, 242},
    {187, 51, 255}, {255, 166, 102}, {51, 255, 85},   {102, 115, 255},
    {255, 51, 119}, {191, 255, 102}, {51, 221, 255},  {242, 102, 255},
}};

namespace {

constexpr std::uint32_t kMask = 0xFFFFFF;
constexpr std::uint32_t kMul = 0x5BD1E5;

constexpr std::uint32_t fold(std::uint32_t x) { return x ^ (x >> 12); }

constexpr std::uint32_t inverse_mul() {
  std::uint32_t inv = kMul;  // Newton iteration for the inverse mod 2^24
  for (int i = 0; i < 5; ++i) inv = (inv * (2 - kMul * inv)) & kMask;
  return inv;
}

constexpr std::uint32_t scramble(std::uint32_t x) { return fold((kMul * fold(x)) & kMask); }
constexpr std::uint32_t unscramble(std::uint32_t y) { return fold((inverse_mul() * fold(y)) & kMask); }

static_assert(unscramble(scramble(0x123456)) == 0x123456);

constexpr std::uint32_t pack(Rgb c) { return (std::uint32_t(c.r) << 16) | (std::uint32_t(c.g) << 8) | c.b; }

Rgb table_color(std::size_t i) {
  const Rgb base = kHueTable[i % kHueCount];
  const unsigned level = static_cast<unsigned>(i / kHueCount);
  auto dim = [&](std::uint8_t v) { return static_cast<std::uint8_t>(v * (8 - level) / 8); };
  return {dim(base.r), dim(base.g), dim(base.b)};
}

// Preimages under scramble() of the red and table colors, sorted.
const std::vector<std::uint32_t>& reserved_preimages() {
  static const std::vector<std::uint32_t> pre = [] {
    std::vector<std::uint32_t> v{unscramble(pack(kZeroColor))};
    for (std::size_t i = 0; i < kHueCount * kBrightnessLevels; ++i) v.push_back(unscramble(pack(table_color(i))));
    std::sort(v.begin(), v.end());
    return v;
  }();
  return pre;
}

}  // namespace

Rgb palette_color_for_key(std::uint64_t key) {
  if (key == 0) return kZeroColor;
  const std::uint64_t i = key - 1;
  if (i < kHueCount * kBrightnessLevels) return table_color(static_cast<std::size_t>(i));
  // j-th 24-bit value (in scramble order) that is not reserved.
  const std::uint64_t j = i - kHueCount * kBrightnessLevels;
  const auto& pre = reserved_preimages();
  std::uint64_t x = j;
  while (true) {
    std::uint64_t skipped = std::upper_bound(pre.begin(), pre.end(), x) - pre.begin();
    if (j + skipped == x) break;
    x = j + skipped;
  }
  const std::uint32_t v = scramble(static_cast<std::uint32_t>(x & kMask));
  return {static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

Rgb palette_color(std::span<const fp_t> color, std::uint32_t p) {
  std::uint64_t key = 0;
  for (fp_t c : color) key = key * p + c;
  return palette_color_for_key(key);
}

std::string encode_ppm(const TilingBox& T) {
  if (T.n() != 2) throw Error(ErrorCode::DimensionMismatch, "only 2-dimensional boxes can be rendered");
  const int width = T.extents()[0], height = T.extents()[1];
  std::string header = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::string out = header;
  out.resize(header.size() + std::size_t(width) * height * 3);
  std::size_t pos = header.size();
  const std::uint32_t p = T.field().p();
  // Storage has y fastest; the image wants x fastest.
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      Rgb c = palette_color(T.cell(std::size_t(x) * height + y), p);
      out[pos++] = static_cast<char>(c.r);
      out[pos++] = static_cast<char>(c.g);
      out[pos++] = static_cast<char>(c.b);
    }
  return out;
}

void render_ppm(const TilingBox& T, const std::string& path) { write_text_file(path, encode_ppm(T)); }

}  // namespace selfsim
