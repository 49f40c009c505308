#include "selfsim/expand.hpp"

#include <string>

namespace selfsim {

namespace {

struct FlatTerm {
  MultiIndex exponent;
  std::size_t offset;  // exponent . strides
  std::vector<fp_t> coeff;
};

std::vector<std::size_t> strides_of(const std::vector<int>& extents) {
  std::vector<std::size_t> s(extents.size(), 1);
  for (std::size_t i = extents.size(); i-- > 1;) s[i - 1] = s[i] * extents[i];
  return s;
}

std::size_t dot(const MultiIndex& a, const std::vector<std::size_t>& strides) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < strides.size(); ++i) r += static_cast<std::size_t>(a[i]) * strides[i];
  return r;
}

// out += sign * (a * b) for d x d row-major blocks.
void mul_acc(const PrimeField& f, std::size_t d, const fp_t* a, const fp_t* b, fp_t* out, bool subtract) {
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      fp_t aik = a[i * d + k];
      if (!aik) continue;
      if (subtract) aik = f.neg(aik);
      for (std::size_t j = 0; j < d; ++j)
        if (b[k * d + j]) out[i * d + j] = f.mul_add(out[i * d + j], aik, b[k * d + j]);
    }
}

}  // namespace

TilingBox expand_quotient(const Poly& P, const Poly& Q, Side side, const std::vector<int>& extents) {
  if (P.n() != Q.n() || !(P.kind() == Q.kind()))
    throw Error(ErrorCode::KindMismatch, "P and Q differ in indeterminates or coefficient ring");
  if (extents.size() != Q.n()) throw Error(ErrorCode::DimensionMismatch, "box rank differs from n");
  if (!is_series_unit(Q)) throw Error(ErrorCode::NotAUnit, "independent term of Q is not invertible");

  const PrimeField& f = Q.field();
  const CoeffKind& kind = Q.kind();
  const std::size_t d = kind.coeff_rows();
  const std::size_t dd = d * d;
  ColorSpec color = kind.matrix ? ColorSpec::matrix(d) : ColorSpec::scalar();
  TilingBox box(f, extents, color);
  if (box.cell_count() == 0) return box;

  const auto strides = strides_of(extents);
  std::vector<FlatTerm> q_terms;
  for (const auto& [e, c] : Q.terms()) {
    if (e.is_zero()) continue;
    q_terms.push_back({e, dot(e, strides), std::vector<fp_t>(c.data().begin(), c.data().end())});
  }
  const FpMatrix q0_inv = mat_inv(independent_term(Q));

  // P is sparse: write its coefficients into the box first, then fill in place.
  for (const auto& [e, c] : P.terms()) {
    if (!box.in_extents(e)) continue;
    auto cell = box.cell(box.linear_index(e));
    std::copy(c.data().begin(), c.data().end(), cell.begin());
  }

  std::vector<fp_t> acc(dd);
  auto data = box.data();
  std::size_t idx = 0;
  for_each_index(extents, [&](const MultiIndex& a) {
    fp_t* cell = data.data() + idx * dd;
    std::copy(cell, cell + dd, acc.begin());
    for (const auto& t : q_terms) {
      if (!a.dominates(t.exponent)) continue;
      const fp_t* prev = data.data() + (idx - t.offset) * dd;
      if (side == Side::Right) mul_acc(f, d, prev, t.coeff.data(), acc.data(), true);
      else mul_acc(f, d, t.coeff.data(), prev, acc.data(), true);
    }
    std::fill(cell, cell + dd, fp_t(0));
    if (side == Side::Right) mul_acc(f, d, acc.data(), q0_inv.data().data(), cell, false);
    else mul_acc(f, d, q0_inv.data().data(), acc.data(), cell, false);
    ++idx;
  });
  return box;
}

TilingBox scalar_reciprocal(const Poly& Q0, const std::vector<int>& extents) {
  if (Q0.kind().matrix) throw Error(ErrorCode::KindMismatch, "scalar_reciprocal needs a scalar polynomial");
  if (Q0.scalar_coeff(MultiIndex(Q0.n())) == 0)
    throw Error(ErrorCode::NotAUnit, "independent term of the denominator is zero");
  return expand_quotient(Poly::scalar_constant(Q0.n(), Q0.field(), 1), Q0, Side::Right, extents);
}

Poly compute_h(const Poly& R) {
  if (R.kind().matrix) throw Error(ErrorCode::KindMismatch, "compute_h needs a scalar polynomial");
  if (R.scalar_coeff(MultiIndex(R.n())) != 0)
    throw Error(ErrorCode::NonzeroConstantTerm, "R must have a zero independent term");
  Poly power = Poly::scalar_constant(R.n(), R.field(), 1);
  Poly h = power;
  for (std::uint32_t i = 1; i < R.field().p(); ++i) {
    power = power * R;
    h = h + power;
  }
  return h;
}

TilingBox frobenius_expand(const Poly& R, const std::vector<int>& extents) {
  const Poly h = compute_h(R);
  const PrimeField& f = R.field();
  const std::uint32_t p = f.p();
  const std::size_t n = R.n();
  if (extents.size() != n) throw Error(ErrorCode::DimensionMismatch, "box rank differs from n");
  TilingBox box(f, extents, ColorSpec::scalar());
  if (box.cell_count() == 0) return box;

  // Bucket the terms of h by residue class mod p so each cell only visits the
  // terms that can contribute to it.
  std::size_t classes = 1;
  for (std::size_t i = 0; i < n; ++i) classes *= p;
  auto residue_class = [&](const MultiIndex& a) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k = k * p + static_cast<std::size_t>(a[i] % static_cast<int>(p));
    return k;
  };
  std::vector<std::vector<std::pair<MultiIndex, fp_t>>> buckets(classes);
  for (const auto& [e, c] : h.terms()) buckets[residue_class(e)].emplace_back(e, c(0, 0));

  auto data = box.data();
  data[0] = 1;
  std::size_t idx = 0;
  MultiIndex g(n);
  for_each_index(extents, [&](const MultiIndex& a) {
    if (idx++ == 0) return;
    fp_t acc = 0;
    for (const auto& [e, c] : buckets[residue_class(a)]) {
      if (!a.dominates(e)) continue;
      for (std::size_t i = 0; i < n; ++i) g[i] = (a[i] - e[i]) / static_cast<int>(p);
      fp_t t = data[box.linear_index(g)];
      if (t) acc = f.mul_add(acc, c, t);
    }
    data[idx - 1] = acc;
  });
  return box;
}

}  // namespace selfsim
