#include "selfsim/ffcore.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

namespace selfsim {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= kMaxPrime || !is_prime(p))
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime below 65536");
}

fp_t PrimeField::pow(fp_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1 % p_;
  std::uint32_t base = a % p_;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return fp_t(result);
}

fp_t fp_inv(const PrimeField& field, fp_t a) {
  if (a % field.p() == 0) throw Error(ErrorCode::ZeroInverse, "0 has no inverse");
  // Extended Euclid on (a, p).
  long long r0 = field.p(), r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  return field.from_int(s0);
}

// ---------------------------------------------------------------------------
// FpMatrix

FpMatrix FpMatrix::identity(PrimeField field, std::size_t n) {
  FpMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = fp_t(1 % field.p());
  return m;
}

FpMatrix FpMatrix::from_rows(PrimeField field,
                             std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  FpMatrix m(field, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    std::size_t j = 0;
    for (long long v : row) m(i, j++) = field.from_int(v);
    ++i;
  }
  return m;
}

FpMatrix FpMatrix::from_data(PrimeField field, std::size_t rows, std::size_t cols,
                             std::vector<fp_t> data) {
  if (data.size() != rows * cols)
    throw Error(ErrorCode::DimensionMismatch, "data length does not match rows*cols");
  FpMatrix m(field, 0, 0);
  m.rows_ = rows;
  m.cols_ = cols;
  for (auto& v : data) v = fp_t(v % field.p());
  m.data_ = std::move(data);
  return m;
}

FpMatrix FpMatrix::column(PrimeField field, std::span<const fp_t> values) {
  return from_data(field, values.size(), 1, std::vector<fp_t>(values.begin(), values.end()));
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](fp_t v) { return v == 0; });
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

FpMatrix FpMatrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw Error(ErrorCode::DimensionMismatch, "row block out of range");
  FpMatrix out(field_, count, cols_);
  std::copy_n(data_.begin() + first * cols_, count * cols_, out.data_.begin());
  return out;
}

void FpMatrix::apply(std::span<const fp_t> x, std::span<fp_t> out) const {
  if (x.size() != cols_ || out.size() != rows_)
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
  for (std::size_t i = 0; i < rows_; ++i) {
    const fp_t* r = data_.data() + i * cols_;
    fp_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (r[j] && x[j]) acc = field_.mul_add(acc, r[j], x[j]);
    out[i] = acc;
  }
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.field_ != b.field_ || a.cols_ != b.rows_)
    throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  const PrimeField& f = a.field_;
  FpMatrix c(f, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      fp_t aik = a(i, k);
      if (!aik) continue;
      const fp_t* brow = b.data_.data() + k * b.cols_;
      fp_t* crow = c.data_.data() + i * c.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (brow[j]) crow[j] = f.mul_add(crow[j], aik, brow[j]);
    }
  return c;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  if (a.field_ != b.field_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  FpMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
  return c;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
  if (a.field_ != b.field_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  FpMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
  return c;
}

FpMatrix FpMatrix::scaled(fp_t s) const {
  FpMatrix c = *this;
  for (auto& v : c.data_) v = field_.mul(v, s);
  return c;
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

// Incrementally maintained reduced row-echelon basis. Rows are kept fully
// reduced and sorted by pivot, so membership tests cost O(rank * cols).
class EchelonBuilder {
 public:
  EchelonBuilder(PrimeField field, std::size_t cols) : field_(field), cols_(cols) {}

  // Reduces v in place against the basis; returns the pivot of the remainder
  // or cols_ if it reduced to zero.
  std::size_t reduce(std::vector<fp_t>& v) const {
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      fp_t c = v[pivots_[k]];
      if (!c) continue;
      fp_t m = field_.neg(c);
      const auto& b = rows_[k];
      for (std::size_t j = pivots_[k]; j < cols_; ++j)
        if (b[j]) v[j] = field_.mul_add(v[j], m, b[j]);
    }
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j]) return j;
    return cols_;
  }

  bool add(std::span<const fp_t> row) {
    std::vector<fp_t> v(row.begin(), row.end());
    std::size_t piv = reduce(v);
    if (piv == cols_) return false;
    fp_t inv = fp_inv(field_, v[piv]);
    for (std::size_t j = piv; j < cols_; ++j) v[j] = field_.mul(v[j], inv);
    // Clear the new pivot column from the existing rows.
    for (auto& b : rows_) {
      fp_t c = b[piv];
      if (!c) continue;
      fp_t m = field_.neg(c);
      for (std::size_t j = piv; j < cols_; ++j)
        if (v[j]) b[j] = field_.mul_add(b[j], m, v[j]);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  bool full() const { return pivots_.size() == cols_; }

  Echelon finish() && {
    FpMatrix reduced(field_, rows_.size(), cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      std::copy(rows_[i].begin(), rows_[i].end(), reduced.row(i).begin());
    return Echelon{std::move(reduced), std::move(pivots_)};
  }

 private:
  PrimeField field_;
  std::size_t cols_;
  std::vector<std::vector<fp_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

Echelon rref(const FpMatrix& m) {
  EchelonBuilder builder(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows() && !builder.full(); ++i) builder.add(m.row(i));
  return std::move(builder).finish();
}

std::size_t rank(const FpMatrix& m) { return rref(m).rank(); }

FpMatrix mat_inv(const FpMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  if (rank(m) < m.rows()) throw Error(ErrorCode::Singular, "matrix is singular");
  return solve_linear(m, FpMatrix::identity(m.field(), m.rows()));
}

Subspace Subspace::span(const FpMatrix& generators) {
  Echelon e = rref(generators);
  return Subspace(std::move(e.reduced), std::move(e.pivots));
}

Subspace Subspace::zero(PrimeField field, std::size_t ambient_dim) {
  return Subspace(FpMatrix(field, 0, ambient_dim), {});
}

Subspace Subspace::full(PrimeField field, std::size_t ambient_dim) {
  std::vector<std::size_t> piv(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) piv[i] = i;
  return Subspace(FpMatrix::identity(field, ambient_dim), std::move(piv));
}

bool Subspace::contains(std::span<const fp_t> v) const {
  if (v.size() != ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "vector length");
  const PrimeField& f = basis_.field();
  std::vector<fp_t> r(v.begin(), v.end());
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    fp_t c = r[pivots_[k]];
    if (!c) continue;
    fp_t m = f.neg(c);
    auto b = basis_.row(k);
    for (std::size_t j = pivots_[k]; j < r.size(); ++j)
      if (b[j]) r[j] = f.mul_add(r[j], m, b[j]);
  }
  return std::all_of(r.begin(), r.end(), [](fp_t x) { return x == 0; });
}

Subspace kernel_basis(const FpMatrix& m) {
  const PrimeField& f = m.field();
  Echelon e = rref(m);
  std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  FpMatrix gens(f, n - e.rank(), n);
  std::size_t g = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    gens(g, free) = 1;
    for (std::size_t i = 0; i < e.rank(); ++i) gens(g, e.pivots[i]) = f.neg(e.reduced(i, free));
    ++g;
  }
  return Subspace::span(gens);
}

bool subspace_leq(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces");
  if (u.dim() > v.dim()) return false;
  for (std::size_t i = 0; i < u.dim(); ++i)
    if (!v.contains(u.basis().row(i))) return false;
  return true;
}

FpMatrix solve_linear(const FpMatrix& a, const FpMatrix& b) {
  if (a.field() != b.field() || a.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "solve_linear: row counts differ");
  const PrimeField& f = a.field();
  const std::size_t rows = a.rows(), k = a.cols(), q = b.cols(), width = k + q;

  // Gauss-Jordan on [a | b] with pivots restricted to the a-part.
  std::vector<std::vector<fp_t>> aug(rows, std::vector<fp_t>(width));
  for (std::size_t i = 0; i < rows; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug[i].begin());
    std::copy(b.row(i).begin(), b.row(i).end(), aug[i].begin() + k);
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < k && r < rows; ++col) {
    std::size_t sel = r;
    while (sel < rows && aug[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(aug[r], aug[sel]);
    fp_t inv = fp_inv(f, aug[r][col]);
    for (std::size_t j = col; j < width; ++j) aug[r][j] = f.mul(aug[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug[i][col] == 0) continue;
      fp_t m = f.neg(aug[i][col]);
      for (std::size_t j = col; j < width; ++j)
        if (aug[r][j]) aug[i][j] = f.mul_add(aug[i][j], m, aug[r][j]);
    }
    pivots.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    for (std::size_t j = k; j < width; ++j)
      if (aug[i][j])
        throw Error(ErrorCode::Inconsistent,
                    "column " + std::to_string(j - k) + " of b is outside the column space of a");

  FpMatrix x(f, k, q);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    std::copy(aug[i].begin() + k, aug[i].end(), x.row(pivots[i]).begin());
  return x;
}

}  // namespace selfsim
