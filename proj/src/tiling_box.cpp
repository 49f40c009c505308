#include "selfsim/tiling_box.hpp"

#include <algorithm>
#include <string>

namespace selfsim {

WindowShape::WindowShape(std::vector<MultiIndex> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw Error(ErrorCode::InvalidArgument, "empty window shape");
  n_ = offsets_.front().size();
  std::sort(offsets_.begin(), offsets_.end());
  for (std::size_t k = 0; k < offsets_.size(); ++k) {
    if (offsets_[k].size() != n_) throw Error(ErrorCode::DimensionMismatch, "window offsets differ in length");
    if (k && offsets_[k] == offsets_[k - 1]) throw Error(ErrorCode::InvalidArgument, "duplicate window offset");
    index_.emplace(offsets_[k], k);
  }
}

WindowShape WindowShape::cube(std::size_t n, int lo, int hi) {
  std::vector<int> ext(n, hi - lo + 1);
  std::vector<MultiIndex> offs;
  for_each_index(ext, [&](const MultiIndex& a) {
    MultiIndex o = a;
    for (std::size_t i = 0; i < n; ++i) o[i] += lo;
    offs.push_back(std::move(o));
  });
  return WindowShape(std::move(offs));
}

namespace {
int ipow(std::uint32_t p, unsigned r) {
  long long v = 1;
  for (unsigned i = 0; i < r; ++i) {
    v *= p;
    if (v > (1 << 24)) throw Error(ErrorCode::BoxTooLarge, "p^r exceeds the supported window size");
  }
  return static_cast<int>(v);
}
}  // namespace

WindowShape WindowShape::J(std::size_t n, int D, std::uint32_t p, unsigned r) {
  if (D < 1) throw Error(ErrorCode::InvalidArgument, "window radius D must be >= 1");
  return cube(n, -D + 1, ipow(p, r) - 1);
}

WindowShape WindowShape::I(std::size_t n, std::uint32_t p, unsigned r) { return cube(n, 0, ipow(p, r) - 1); }

std::optional<std::size_t> WindowShape::index_of(const MultiIndex& offset) const {
  auto it = index_.find(offset);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ColorSpec ColorSpec::window(const ColorSpec& base, WindowShape shape) {
  if (base.kind == ColorKind::Window || base.kind == ColorKind::Vector) {
    // Nested windows are flattened to plain vectors of the right size.
    ColorSpec c;
    c.kind = ColorKind::Window;
    c.d = 1;
    c.base_matrix = false;
    c.vector_dim = base.dim();
    c.shape = std::make_shared<const WindowShape>(std::move(shape));
    return c;
  }
  ColorSpec c;
  c.kind = ColorKind::Window;
  c.d = base.d;
  c.base_matrix = base.kind == ColorKind::Matrix;
  c.shape = std::make_shared<const WindowShape>(std::move(shape));
  return c;
}

std::size_t ColorSpec::dim() const noexcept {
  switch (kind) {
    case ColorKind::Scalar: return 1;
    case ColorKind::Matrix: return d * d;
    case ColorKind::Vector: return vector_dim;
    case ColorKind::Window: return shape->size() * (vector_dim ? vector_dim : base_dim());
  }
  return 1;
}

TilingBox::TilingBox(PrimeField field, std::vector<int> extents, ColorSpec color)
    : field_(field), extents_(std::move(extents)), color_(std::move(color)) {
  color_dim_ = color_.dim();
  cells_ = 1;
  for (int e : extents_) {
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative box extent");
    cells_ *= static_cast<std::size_t>(e);
    if (cells_ > kMaxCells)
      throw Error(ErrorCode::BoxTooLarge, "box exceeds " + std::to_string(kMaxCells) + " cells");
  }
  strides_.assign(extents_.size(), 1);
  for (std::size_t i = extents_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * extents_[i];
  data_.assign(cells_ * color_dim_, 0);
  zero_.assign(color_dim_, 0);
}

bool TilingBox::in_extents(const MultiIndex& a) const {
  for (std::size_t i = 0; i < extents_.size(); ++i)
    if (a[i] < 0 || a[i] >= extents_[i]) return false;
  return true;
}

std::size_t TilingBox::linear_index(const MultiIndex& a) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < extents_.size(); ++i) idx += static_cast<std::size_t>(a[i]) * strides_[i];
  return idx;
}

MultiIndex TilingBox::index_of(std::size_t linear) const {
  MultiIndex a(extents_.size());
  for (std::size_t i = 0; i < extents_.size(); ++i) {
    a[i] = static_cast<int>(linear / strides_[i]);
    linear %= strides_[i];
  }
  return a;
}

std::span<const fp_t> TilingBox::at(const MultiIndex& a) const {
  if (a.size() != extents_.size()) throw Error(ErrorCode::DimensionMismatch, "index length differs from n");
  if (!a.is_nonnegative()) return zero_;
  if (!in_extents(a)) throw Error(ErrorCode::OutOfWindow, "read at " + a.to_string() + " outside the computed box");
  return cell(linear_index(a));
}

FpMatrix TilingBox::matrix_at(const MultiIndex& a) const {
  if (color_.kind != ColorKind::Matrix) throw Error(ErrorCode::KindMismatch, "box is not matrix-colored");
  auto c = at(a);
  return FpMatrix::from_data(field_, color_.d, color_.d, std::vector<fp_t>(c.begin(), c.end()));
}

}  // namespace selfsim
