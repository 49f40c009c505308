#include "unit/oracles.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oracle {

using namespace selfsim;

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// C(n, k) mod p for n < p, through factorials and Fermat inverses.
std::uint64_t small_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  return num * powmod(den, p - 2, p) % p;
}

}  // namespace

fp_t lucas_binomial(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  std::uint64_t r = 1;
  while (n || k) {
    r = r * small_binomial(n % p, k % p, p) % p;
    if (r == 0) return 0;
    n /= p;
    k /= p;
  }
  return static_cast<fp_t>(r);
}

std::uint64_t delannoy(unsigned m, unsigned k) {
  auto choose = [](unsigned n, unsigned r) {
    std::uint64_t c = 1;
    for (unsigned i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return c;
  };
  std::uint64_t s = 0;
  for (unsigned j = 0; j <= std::min(m, k); ++j) s += choose(m, j) * choose(k, j) << j;
  return s;
}

fp_t leibniz_det(const FpMatrix& m) {
  const std::size_t d = m.rows();
  const PrimeField& f = m.field();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  fp_t total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inversions;
    fp_t prod = 1;
    for (std::size_t i = 0; i < d; ++i) prod = f.mul(prod, m(i, perm[i]));
    total = inversions % 2 ? f.sub(total, prod) : f.add(total, prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::uint64_t count_kernel(const FpMatrix& m) {
  const std::uint32_t p = m.field().p();
  const std::size_t cols = m.cols();
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < cols; ++i) {
    space *= p;
    if (space > (1u << 20)) throw std::invalid_argument("count_kernel: space too large");
  }
  std::vector<fp_t> x(cols, 0);
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < space; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < cols; ++i) {
      x[i] = static_cast<fp_t>(c % p);
      c /= p;
    }
    bool zero = true;
    for (std::size_t r = 0; r < m.rows() && zero; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols; ++j) acc += std::uint64_t(m(r, j)) * x[j];
      zero = acc % p == 0;
    }
    count += zero;
  }
  return count;
}

std::vector<fp_t> series_product_at(const TilingBox& M, const Poly& Q, bool left, const MultiIndex& alpha) {
  const std::size_t rows = Q.kind().coeff_rows();
  const PrimeField& f = M.field();
  FpMatrix acc(f, rows, rows);
  for (const auto& [delta, q] : Q.terms()) {
    MultiIndex src = alpha - delta;
    if (!src.is_nonnegative()) continue;
    auto v = M.at(src);
    FpMatrix m = FpMatrix::from_data(f, rows, rows, std::vector<fp_t>(v.begin(), v.end()));
    acc = acc + (left ? q * m : m * q);
  }
  auto d = acc.data();
  return {d.begin(), d.end()};
}

std::vector<std::vector<fp_t>> reciprocal_2d(const Poly& Q0, int rows, int cols) {
  const PrimeField& f = Q0.field();
  const fp_t inv0 = static_cast<fp_t>(powmod(Q0.scalar_coeff({0, 0}), f.p() - 2, f.p()));
  std::vector<std::vector<fp_t>> T(rows, std::vector<fp_t>(cols, 0));
  // Row-major order also respects the componentwise order, so every
  // T(m - i, k - j) with (i, j) != 0 is final when T(m, k) is computed.
  for (int m = 0; m < rows; ++m)
    for (int k = 0; k < cols; ++k) {
      std::int64_t s = (m == 0 && k == 0) ? 1 : 0;
      for (const auto& [e, c] : Q0.terms()) {
        if (e[0] == 0 && e[1] == 0) continue;
        if (e[0] > m || e[1] > k) continue;
        s -= std::int64_t(c(0, 0)) * T[m - e[0]][k - e[1]];
      }
      T[m][k] = f.mul(f.from_int(s), inv0);
    }
  return T;
}

FpMatrix random_matrix(std::mt19937& rng, PrimeField f, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> dist(0, static_cast<int>(f.p()) - 1);
  FpMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<fp_t>(dist(rng));
  return m;
}

Poly random_poly(std::mt19937& rng, std::size_t n, CoeffKind kind, int terms, int max_exp) {
  std::uniform_int_distribution<int> ex(0, max_exp);
  Poly out(n, kind);
  for (int t = 0; t < terms; ++t) {
    MultiIndex e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = ex(rng);
    out.add_term(e, random_matrix(rng, kind.field, kind.coeff_rows(), kind.coeff_rows()));
  }
  return out;
}

Poly random_unit_poly(std::mt19937& rng, std::size_t n, PrimeField f, int terms, int max_exp) {
  Poly q = random_poly(rng, n, CoeffKind::scalar(f), terms, max_exp);
  const MultiIndex zero(n);
  fp_t c0 = q.scalar_coeff(zero);
  if (c0 == 0) {
    std::uniform_int_distribution<int> dist(1, static_cast<int>(f.p()) - 1);
    q.add_term(zero, FpMatrix::from_rows(f, {{dist(rng)}}));
  }
  return q;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

}  // namespace oracle
