#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "selfsim/error.hpp"

namespace selfsim {

// Residues are stored in 16 bits: the modulus is capped below 2^16.
using fp_t = std::uint16_t;

inline constexpr std::uint32_t kMaxPrime = 1u << 16;

// The prime field F_p. The modulus is validated once, here; every other type
// carries a PrimeField by value and trusts it.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  fp_t add(fp_t a, fp_t b) const noexcept {
    std::uint32_t s = std::uint32_t(a) + b;
    return fp_t(s >= p_ ? s - p_ : s);
  }
  fp_t sub(fp_t a, fp_t b) const noexcept { return fp_t(a >= b ? a - b : a + p_ - b); }
  fp_t neg(fp_t a) const noexcept { return fp_t(a == 0 ? 0 : p_ - a); }
  fp_t mul(fp_t a, fp_t b) const noexcept { return fp_t(std::uint32_t(a) * b % p_); }
  // acc + a*b, reduced.
  fp_t mul_add(fp_t acc, fp_t a, fp_t b) const noexcept {
    return fp_t((std::uint32_t(a) * b + acc) % p_);
  }
  fp_t from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    return fp_t(r < 0 ? r + p_ : r);
  }
  fp_t pow(fp_t a, std::uint64_t e) const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t p);

// a^{-1} mod p. Throws ZeroInverse for a = 0.
fp_t fp_inv(const PrimeField& field, fp_t a);

// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FpMatrix identity(PrimeField field, std::size_t n);
  // Entries are reduced mod p; negative literals are allowed.
  static FpMatrix from_rows(PrimeField field, std::initializer_list<std::initializer_list<long long>> rows);
  static FpMatrix from_data(PrimeField field, std::size_t rows, std::size_t cols, std::vector<fp_t> data);
  static FpMatrix column(PrimeField field, std::span<const fp_t> values);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  fp_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  fp_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const fp_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<fp_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const fp_t> data() const noexcept { return data_; }

  bool is_zero() const;
  FpMatrix transpose() const;
  // Rows [first, first+count) as a new matrix.
  FpMatrix row_block(std::size_t first, std::size_t count) const;

  // y = this * x, written into out (out.size() == rows()).
  void apply(std::span<const fp_t> x, std::span<fp_t> out) const;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
  FpMatrix scaled(fp_t s) const;

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<fp_t> data_;
};

// Reduced row-echelon form with its pivot columns (strictly increasing).
struct Echelon {
  FpMatrix reduced;  // only the nonzero rows
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

Echelon rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);

FpMatrix mat_inv(const FpMatrix& m);

// A subspace of F_p^ambient_dim given by an RREF basis (rows).
class Subspace {
 public:
  // Row space of `generators`.
  static Subspace span(const FpMatrix& generators);
  static Subspace zero(PrimeField field, std::size_t ambient_dim);
  static Subspace full(PrimeField field, std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const FpMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const fp_t> v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Subspace(FpMatrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

// {x : m x = 0}.
Subspace kernel_basis(const FpMatrix& m);

// u <= v. Throws DimensionMismatch on differing ambient dimensions.
bool subspace_leq(const Subspace& u, const Subspace& v);

// Canonical solution x of a x = b: free coordinates are zero.
// Throws Inconsistent if some column of b is outside the column space of a.
FpMatrix solve_linear(const FpMatrix& a, const FpMatrix& b);

}  // namespace selfsim
