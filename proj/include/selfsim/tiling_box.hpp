#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "selfsim/ffcore.hpp"
#include "selfsim/polyring.hpp"

namespace selfsim {

// Finite set of offsets in Z^n, enumerated in lexicographic order. The
// enumeration fixes the coordinate isomorphism F_p^K = F_p^{|K|} used by every
// matrix that acts on window values.
class WindowShape {
 public:
  explicit WindowShape(std::vector<MultiIndex> offsets);

  // {lo, ..., hi}^n
  static WindowShape cube(std::size_t n, int lo, int hi);
  // J(r) = {-D+1, ..., p^r - 1}
  static WindowShape J(std::size_t n, int D, std::uint32_t p, unsigned r);
  // I(r) = {0, ..., p^r - 1}
  static WindowShape I(std::size_t n, std::uint32_t p, unsigned r);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return offsets_.size(); }
  const std::vector<MultiIndex>& offsets() const noexcept { return offsets_; }
  const MultiIndex& operator[](std::size_t k) const { return offsets_[k]; }
  std::optional<std::size_t> index_of(const MultiIndex& offset) const;

  friend bool operator==(const WindowShape& a, const WindowShape& b) { return a.offsets_ == b.offsets_; }

 private:
  std::size_t n_ = 0;
  std::vector<MultiIndex> offsets_;
  std::map<MultiIndex, std::size_t> index_;
};

enum class ColorKind {
  Scalar,  // F_p
  Matrix,  // Mat_{d x d}(F_p), row-major entries
  Window,  // (base color)^K for a WindowShape K, offset-major
  Vector,  // F_p^dim without further structure
};

struct ColorSpec {
  ColorKind kind = ColorKind::Scalar;
  std::size_t d = 1;                         // matrix size of the base color (1 for scalars)
  bool base_matrix = false;                  // Window only: base colors are matrices
  std::shared_ptr<const WindowShape> shape;  // Window only
  std::size_t vector_dim = 0;                // Vector only

  static ColorSpec scalar() { return {}; }
  static ColorSpec matrix(std::size_t d) { return {ColorKind::Matrix, d, true, nullptr, 0}; }
  static ColorSpec window(const ColorSpec& base, WindowShape shape);
  static ColorSpec vector(std::size_t dim) { return {ColorKind::Vector, 1, false, nullptr, dim}; }

  std::size_t base_dim() const noexcept { return base_matrix ? d * d : 1; }
  std::size_t dim() const noexcept;
};

// Largest number of cells a box may hold.
inline constexpr std::size_t kMaxCells = std::size_t(1) << 26;

// Dense window [0, N_1) x ... x [0, N_n) of a tiling Z^n -> colors whose
// support lies in N^n. Reads at points with a negative coordinate return the
// zero color; reads inside N^n beyond the extents throw OutOfWindow.
// Storage is row-major with the last axis fastest.
class TilingBox {
 public:
  TilingBox(PrimeField field, std::vector<int> extents, ColorSpec color);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return extents_.size(); }
  const std::vector<int>& extents() const noexcept { return extents_; }
  const ColorSpec& color() const noexcept { return color_; }
  std::size_t color_dim() const noexcept { return color_dim_; }
  std::size_t cell_count() const noexcept { return cells_; }

  bool in_extents(const MultiIndex& a) const;
  std::size_t linear_index(const MultiIndex& a) const;
  MultiIndex index_of(std::size_t linear) const;

  std::span<const fp_t> at(const MultiIndex& a) const;
  std::span<const fp_t> cell(std::size_t linear) const { return {data_.data() + linear * color_dim_, color_dim_}; }
  std::span<fp_t> cell(std::size_t linear) { return {data_.data() + linear * color_dim_, color_dim_}; }
  std::span<const fp_t> data() const noexcept { return data_; }
  std::span<fp_t> data() noexcept { return data_; }

  // Scalar-colored boxes only.
  fp_t scalar_at(const MultiIndex& a) const { return at(a)[0]; }
  // Matrix-colored boxes only.
  FpMatrix matrix_at(const MultiIndex& a) const;

  friend bool operator==(const TilingBox& a, const TilingBox& b) {
    return a.field_ == b.field_ && a.extents_ == b.extents_ && a.color_dim_ == b.color_dim_ &&
           a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::vector<int> extents_;
  std::vector<std::size_t> strides_;
  ColorSpec color_;
  std::size_t color_dim_;
  std::size_t cells_;
  std::vector<fp_t> data_;
  std::vector<fp_t> zero_;
};

// Calls fn(alpha) for every alpha in [0, extents) in row-major order.
template <typename Fn>
void for_each_index(const std::vector<int>& extents, Fn&& fn) {
  for (int e : extents)
    if (e <= 0) return;
  MultiIndex a(extents.size());
  while (true) {
    fn(static_cast<const MultiIndex&>(a));
    std::size_t i = extents.size();
    while (i > 0) {
      --i;
      if (++a[i] < extents[i]) break;
      a[i] = 0;
      if (i == 0) return;
    }
    if (extents.empty()) return;
  }
}

}  // namespace selfsim
