#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/ffcore.hpp"

namespace selfsim {

// Exponent vector / lattice point in Z^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : c_(n, 0) {}
  MultiIndex(std::initializer_list<int> c) : c_(c) {}
  explicit MultiIndex(std::vector<int> c) : c_(std::move(c)) {}

  std::size_t size() const noexcept { return c_.size(); }
  int operator[](std::size_t i) const { return c_[i]; }
  int& operator[](std::size_t i) { return c_[i]; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }
  const std::vector<int>& components() const noexcept { return c_; }

  long total() const;
  bool is_zero() const;
  bool is_nonnegative() const;
  // Componentwise this >= other.
  bool dominates(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;
  MultiIndex operator*(int k) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  // Plain lexicographic order.
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.c_ <=> b.c_; }

  std::string to_string() const;

 private:
  std::vector<int> c_;
};

// Total degree first, then lexicographic.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    long ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a < b;
  }
};

// Coefficient ring: F_p (scalar) or Mat_{d x d}(F_p) (matrix). Scalars are
// stored as 1x1 matrices so that every coefficient is an FpMatrix.
struct CoeffKind {
  PrimeField field;
  std::size_t d = 1;
  bool matrix = false;

  static CoeffKind scalar(PrimeField f) { return {f, 1, false}; }
  static CoeffKind mat(PrimeField f, std::size_t d) { return {f, d, true}; }

  std::size_t coeff_rows() const noexcept { return matrix ? d : 1; }
  FpMatrix zero() const { return FpMatrix(field, coeff_rows(), coeff_rows()); }
  FpMatrix one() const { return FpMatrix::identity(field, coeff_rows()); }

  friend bool operator==(const CoeffKind&, const CoeffKind&) = default;
};

class Poly {
 public:
  using Terms = std::map<MultiIndex, FpMatrix, GradedLexLess>;

  Poly(std::size_t n, CoeffKind kind) : n_(n), kind_(kind) {}

  static Poly constant(std::size_t n, CoeffKind kind, const FpMatrix& c);
  static Poly monomial(std::size_t n, CoeffKind kind, const MultiIndex& e, const FpMatrix& c);
  static Poly scalar_constant(std::size_t n, PrimeField f, long long c);
  // c * x^e with a scalar coefficient.
  static Poly scalar_monomial(std::size_t n, PrimeField f, const MultiIndex& e, long long c);

  std::size_t n() const noexcept { return n_; }
  const CoeffKind& kind() const noexcept { return kind_; }
  const PrimeField& field() const noexcept { return kind_.field; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  // Coefficient at e; the zero coefficient when absent.
  FpMatrix coeff(const MultiIndex& e) const;
  // Scalar polynomials only.
  fp_t scalar_coeff(const MultiIndex& e) const;

  // Adds c to the coefficient at e, dropping the term if it cancels.
  void add_term(const MultiIndex& e, const FpMatrix& c);

  Poly scaled(fp_t s) const;
  Poly negated() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.n_ == b.n_ && a.kind_ == b.kind_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_;
  CoeffKind kind_;
  Terms terms_;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
// Coefficient products are taken in argument order (a's coefficient on the left).
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, unsigned e);

inline Poly operator+(const Poly& a, const Poly& b) { return poly_add(a, b); }
inline Poly operator-(const Poly& a, const Poly& b) { return poly_sub(a, b); }
inline Poly operator*(const Poly& a, const Poly& b) { return poly_mul(a, b); }

struct Degree {
  std::vector<int> per_variable;  // -1 for the zero polynomial
  int overall = -1;
};

Degree poly_deg(const Poly& a);

FpMatrix independent_term(const Poly& a);
// Lemma: invertible as a power series iff the independent term is invertible.
bool is_series_unit(const Poly& a);

// d x d matrix of scalar polynomials (the matrix-of-series view of a
// matrix-coefficient polynomial).
class PolyMatrix {
 public:
  PolyMatrix(std::size_t d, std::vector<Poly> entries);
  static PolyMatrix identity(std::size_t d, std::size_t n, PrimeField f);

  std::size_t d() const noexcept { return d_; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * d_ + j]; }
  Poly& operator()(std::size_t i, std::size_t j) { return entries_[i * d_ + j]; }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t d_;
  std::vector<Poly> entries_;
};

inline constexpr std::size_t kMaxDeterminantSize = 6;

// Split a matrix-coefficient polynomial into its d x d scalar entries, and back.
PolyMatrix to_poly_matrix(const Poly& a);
Poly from_poly_matrix(const PolyMatrix& m);

// Cofactor expansion; d <= kMaxDeterminantSize.
Poly det_poly(const PolyMatrix& m);
PolyMatrix adjugate_poly(const PolyMatrix& m);

// Grammar (whitespace-insensitive):
//   expr   := ['+'|'-'] term { ('+'|'-') term }
//   term   := factor { '*' factor }
//   factor := integer | '[' '[' int {',' int} ']' {',' '[' ... ']'} ']'
//           | var [ '^' integer ] | '(' expr ')'
//   var    := 'x' digits   (also 'x', 'y', 'z' for x1, x2, x3)
// An integer in a matrix-coefficient polynomial denotes that multiple of the
// identity. Throws SyntaxError (with position) or KindMismatch.
Poly parse_poly(std::string_view text, std::size_t n, CoeffKind kind);

// Inverse of parse_poly: terms in graded-lex order, "x1^2*x2" monomials.
std::string to_string(const Poly& a);
std::string to_string(const FpMatrix& coeff, bool matrix);

}  // namespace selfsim
