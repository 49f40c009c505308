#include "selfsim/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace selfsim {

// ---------------------------------------------------------------------------
// MultiIndex

long MultiIndex::total() const { return std::accumulate(c_.begin(), c_.end(), 0L); }

bool MultiIndex::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](int v) { return v == 0; });
}

bool MultiIndex::is_nonnegative() const {
  return std::all_of(c_.begin(), c_.end(), [](int v) { return v >= 0; });
}

bool MultiIndex::dominates(const MultiIndex& other) const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] < other.c_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  MultiIndex r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  MultiIndex r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

MultiIndex MultiIndex::operator*(int k) const {
  MultiIndex r = *this;
  for (auto& v : r.c_) v *= k;
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Poly

namespace {

void require_same_kind(const Poly& a, const Poly& b) {
  if (a.n() != b.n() || !(a.kind() == b.kind()))
    throw Error(ErrorCode::KindMismatch, "polynomials differ in indeterminates or coefficient ring");
}

void require_coeff_shape(const CoeffKind& kind, const FpMatrix& c) {
  if (c.field() != kind.field || c.rows() != kind.coeff_rows() || c.cols() != kind.coeff_rows())
    throw Error(ErrorCode::KindMismatch, "coefficient does not belong to the coefficient ring");
}

}  // namespace

Poly Poly::constant(std::size_t n, CoeffKind kind, const FpMatrix& c) {
  return monomial(n, kind, MultiIndex(n), c);
}

Poly Poly::monomial(std::size_t n, CoeffKind kind, const MultiIndex& e, const FpMatrix& c) {
  Poly p(n, kind);
  p.add_term(e, c);
  return p;
}

Poly Poly::scalar_constant(std::size_t n, PrimeField f, long long c) {
  return scalar_monomial(n, f, MultiIndex(n), c);
}

Poly Poly::scalar_monomial(std::size_t n, PrimeField f, const MultiIndex& e, long long c) {
  FpMatrix m(f, 1, 1);
  m(0, 0) = f.from_int(c);
  return monomial(n, CoeffKind::scalar(f), e, m);
}

FpMatrix Poly::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? kind_.zero() : it->second;
}

fp_t Poly::scalar_coeff(const MultiIndex& e) const {
  if (kind_.matrix) throw Error(ErrorCode::KindMismatch, "scalar_coeff on a matrix polynomial");
  auto it = terms_.find(e);
  return it == terms_.end() ? fp_t(0) : it->second(0, 0);
}

void Poly::add_term(const MultiIndex& e, const FpMatrix& c) {
  if (e.size() != n_) throw Error(ErrorCode::DimensionMismatch, "exponent length differs from n");
  if (!e.is_nonnegative()) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  require_coeff_shape(kind_, c);
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::scaled(fp_t s) const {
  Poly r(n_, kind_);
  for (const auto& [e, c] : terms_) r.add_term(e, c.scaled(s));
  return r;
}

Poly Poly::negated() const { return scaled(field().neg(1)); }

Poly poly_add(const Poly& a, const Poly& b) {
  require_same_kind(a, b);
  Poly r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, c);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, b.negated()); }

Poly poly_mul(const Poly& a, const Poly& b) {
  require_same_kind(a, b);
  Poly r(a.n(), a.kind());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) r.add_term(ea + eb, ca * cb);
  return r;
}

Poly poly_pow(const Poly& a, unsigned e) {
  Poly r = Poly::constant(a.n(), a.kind(), a.kind().one());
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

Degree poly_deg(const Poly& a) {
  Degree d{std::vector<int>(a.n(), -1), -1};
  for (const auto& [e, c] : a.terms())
    for (std::size_t i = 0; i < a.n(); ++i) d.per_variable[i] = std::max(d.per_variable[i], e[i]);
  for (int v : d.per_variable) d.overall = std::max(d.overall, v);
  return d;
}

FpMatrix independent_term(const Poly& a) { return a.coeff(MultiIndex(a.n())); }

bool is_series_unit(const Poly& a) {
  FpMatrix c = independent_term(a);
  return rank(c) == c.rows();
}

// ---------------------------------------------------------------------------
// PolyMatrix, determinant, adjugate

PolyMatrix::PolyMatrix(std::size_t d, std::vector<Poly> entries) : d_(d), entries_(std::move(entries)) {
  if (entries_.size() != d * d) throw Error(ErrorCode::DimensionMismatch, "PolyMatrix needs d*d entries");
  for (const auto& e : entries_) {
    if (e.kind().matrix) throw Error(ErrorCode::KindMismatch, "PolyMatrix entries must be scalar");
    require_same_kind(e, entries_.front());
  }
}

PolyMatrix PolyMatrix::identity(std::size_t d, std::size_t n, PrimeField f) {
  std::vector<Poly> e;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) e.push_back(Poly::scalar_constant(n, f, i == j ? 1 : 0));
  return PolyMatrix(d, std::move(e));
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.d_ != b.d_) throw Error(ErrorCode::DimensionMismatch, "PolyMatrix product");
  const Poly& ref = a.entries_.front();
  std::vector<Poly> e;
  for (std::size_t i = 0; i < a.d_; ++i)
    for (std::size_t j = 0; j < a.d_; ++j) {
      Poly s(ref.n(), ref.kind());
      for (std::size_t k = 0; k < a.d_; ++k) s = s + a(i, k) * b(k, j);
      e.push_back(std::move(s));
    }
  return PolyMatrix(a.d_, std::move(e));
}

PolyMatrix to_poly_matrix(const Poly& a) {
  if (!a.kind().matrix) throw Error(ErrorCode::KindMismatch, "to_poly_matrix needs matrix coefficients");
  const std::size_t d = a.kind().d;
  std::vector<Poly> e(d * d, Poly(a.n(), CoeffKind::scalar(a.field())));
  for (const auto& [ex, c] : a.terms())
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (c(i, j)) e[i * d + j].add_term(ex, FpMatrix::from_data(a.field(), 1, 1, {c(i, j)}));
  return PolyMatrix(d, std::move(e));
}

Poly from_poly_matrix(const PolyMatrix& m) {
  const Poly& ref = m(0, 0);
  CoeffKind kind = CoeffKind::mat(ref.field(), m.d());
  Poly r(ref.n(), kind);
  for (std::size_t i = 0; i < m.d(); ++i)
    for (std::size_t j = 0; j < m.d(); ++j)
      for (const auto& [e, c] : m(i, j).terms()) {
        FpMatrix unit(ref.field(), m.d(), m.d());
        unit(i, j) = c(0, 0);
        r.add_term(e, unit);
      }
  return r;
}

namespace {

Poly det_rec(const PolyMatrix& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
  const Poly& ref = m(0, 0);
  if (rows.size() == 1) return m(rows[0], cols[0]);
  Poly acc(ref.n(), ref.kind());
  const std::size_t r0 = rows.front();
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Poly& entry = m(r0, cols[k]);
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (c != k) sub_cols.push_back(cols[c]);
    Poly term = entry * det_rec(m, sub_rows, sub_cols);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly minor_det(const PolyMatrix& m, std::size_t skip_row, std::size_t skip_col) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < m.d(); ++i) {
    if (i != skip_row) rows.push_back(i);
    if (i != skip_col) cols.push_back(i);
  }
  if (rows.empty()) return Poly::scalar_constant(m(0, 0).n(), m(0, 0).field(), 1);
  return det_rec(m, rows, cols);
}

}  // namespace

Poly det_poly(const PolyMatrix& m) {
  if (m.d() > kMaxDeterminantSize)
    throw Error(ErrorCode::DimensionMismatch, "determinant size capped at 6");
  std::vector<std::size_t> idx(m.d());
  std::iota(idx.begin(), idx.end(), 0);
  auto rows = idx, cols = idx;
  return det_rec(m, rows, cols);
}

PolyMatrix adjugate_poly(const PolyMatrix& m) {
  if (m.d() > kMaxDeterminantSize)
    throw Error(ErrorCode::DimensionMismatch, "adjugate size capped at 6");
  std::vector<Poly> e;
  for (std::size_t i = 0; i < m.d(); ++i)
    for (std::size_t j = 0; j < m.d(); ++j) {
      Poly c = minor_det(m, j, i);
      e.push_back((i + j) % 2 == 0 ? c : c.negated());
    }
  return PolyMatrix(m.d(), std::move(e));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t n, CoeffKind kind) : s_(text), n_(n), kind_(kind) {}

  Poly parse() {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "empty polynomial");
    Poly r = expr();
    skip_ws();
    if (!at_end()) throw SyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return r;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (!at_end() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("expected '") + c + "'");
  }

  Poly expr() {
    Poly acc(n_, kind_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Poly t = term();
    acc = negate ? acc - t : acc + t;
    while (true) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Poly term() {
    Poly r = factor();
    while (accept('*')) r = r * factor();
    return r;
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    long long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (pos_ - start >= 18) throw SyntaxError(start, "integer literal too long");
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError(pos_, "expected an integer");
    return v;
  }

  long long signed_integer() {
    bool neg = accept('-');
    long long v = integer();
    return neg ? -v : v;
  }

  Poly factor() {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = expr();
      expect(')');
      if (accept('^')) {
        const long long e = integer();
        if (e > 64) throw SyntaxError(pos_, "exponent of a group above 64");
        r = poly_pow(r, static_cast<unsigned>(e));
      }
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = integer();
      return Poly::constant(n_, kind_, kind_.one().scaled(kind_.field.from_int(v)));
    }
    if (c == '[') return Poly::constant(n_, kind_, matrix_literal());
    if (c == 'x' || c == 'y' || c == 'z') return variable();
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  FpMatrix matrix_literal() {
    const std::size_t start = pos_;
    if (!kind_.matrix) throw Error(ErrorCode::KindMismatch, "matrix literal in a scalar polynomial");
    expect('[');
    std::vector<std::vector<long long>> rows;
    do {
      expect('[');
      std::vector<long long> row;
      do {
        row.push_back(signed_integer());
      } while (accept(','));
      expect(']');
      rows.push_back(std::move(row));
    } while (accept(','));
    expect(']');
    const std::size_t d = kind_.d;
    if (rows.size() != d || std::any_of(rows.begin(), rows.end(), [d](const auto& r) { return r.size() != d; }))
      throw Error(ErrorCode::KindMismatch,
                  "matrix literal at position " + std::to_string(start) + " is not " + std::to_string(d) + "x" +
                      std::to_string(d));
    FpMatrix m(kind_.field, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = kind_.field.from_int(rows[i][j]);
    return m;
  }

  Poly variable() {
    const std::size_t start = pos_;
    char c = s_[pos_++];
    std::size_t index;
    if (c == 'x' && !at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      index = static_cast<std::size_t>(integer());
    } else {
      index = c == 'x' ? 1 : c == 'y' ? 2 : 3;
    }
    if (index == 0 || index > n_)
      throw SyntaxError(start, "unknown indeterminate for n=" + std::to_string(n_));
    long long e = 1;
    if (accept('^')) e = integer();
    if (e > (1 << 20)) throw SyntaxError(pos_, "exponent too large");
    MultiIndex ex(n_);
    ex[index - 1] = static_cast<int>(e);
    return Poly::monomial(n_, kind_, ex, kind_.one());
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t n_;
  CoeffKind kind_;
};

}  // namespace

Poly parse_poly(std::string_view text, std::size_t n, CoeffKind kind) {
  return PolyParser(text, n, kind).parse();
}

std::string to_string(const FpMatrix& coeff, bool matrix) {
  if (!matrix) return std::to_string(coeff(0, 0));
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeff.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < coeff.cols(); ++j) {
      if (j) os << ',';
      os << coeff(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string to_string(const Poly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += '*';
      mono += 'x' + std::to_string(i + 1);
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    bool unit = c == a.kind().one();
    if (mono.empty()) out += to_string(c, a.kind().matrix);
    else if (unit) out += mono;
    else out += to_string(c, a.kind().matrix) + '*' + mono;
  }
  return out;
}

}  // namespace selfsim
