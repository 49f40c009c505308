#include "selfsim/substitution.hpp"

#include <algorithm>
#include <sstream>

#include "selfsim/tiling.hpp"

namespace selfsim {

namespace {

std::size_t checked_pow(std::size_t base, std::size_t e) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    v *= base;
    if (v > kMaxCells) throw Error(ErrorCode::BoxTooLarge, "substitution block exceeds the cell cap");
  }
  return v;
}

// Lexicographic index of b inside {0..side-1}^n.
std::size_t cube_index(const MultiIndex& b, std::size_t side) {
  std::size_t k = 0;
  for (int v : b) k = k * side + static_cast<std::size_t>(v);
  return k;
}

MultiIndex cube_cell(std::size_t k, std::size_t side, std::size_t n) {
  MultiIndex b(n);
  for (std::size_t i = n; i-- > 0;) {
    b[i] = static_cast<int>(k % side);
    k /= side;
  }
  return b;
}

// Yields S^0, S^1, ... one level at a time.
class PowerLadder {
 public:
  explicit PowerLadder(const LinearSubstitution& S) : S_(S), cur_{FpMatrix::identity(S.field(), S.in_dim())} {}

  const std::vector<FpMatrix>& current() const { return cur_; }
  std::vector<FpMatrix> take() && { return std::move(cur_); }

  void step() {
    const std::uint32_t p = S_.field().p();
    const std::size_t n = S_.n();
    ++level_;
    const std::size_t side = checked_pow(p, level_), prev_side = side / p;
    const std::size_t cells = checked_pow(side, n);
    std::vector<FpMatrix> next;
    next.reserve(cells);
    MultiIndex hi(n), lo(n);
    for (std::size_t k = 0; k < cells; ++k) {
      MultiIndex b = cube_cell(k, side, n);
      for (std::size_t i = 0; i < n; ++i) {
        hi[i] = b[i] / static_cast<int>(p);
        lo[i] = b[i] % static_cast<int>(p);
      }
      next.push_back(S_.map(lo) * cur_[cube_index(hi, prev_side)]);
    }
    cur_ = std::move(next);
  }

 private:
  const LinearSubstitution& S_;
  unsigned level_ = 0;
  std::vector<FpMatrix> cur_;
};

}  // namespace

// ---------------------------------------------------------------------------
// LinearSubstitution

LinearSubstitution::LinearSubstitution(PrimeField field, std::size_t n, unsigned t, std::vector<FpMatrix> maps)
    : field_(field), n_(n), t_(t), length_(checked_pow(field.p(), t)), maps_(std::move(maps)) {
  if (maps_.size() != checked_pow(length_, n_))
    throw Error(ErrorCode::DimensionMismatch, "a substitution of length l needs l^n maps");
  for (const auto& m : maps_)
    if (m.field() != field_ || m.rows() != maps_.front().rows() || m.cols() != maps_.front().cols())
      throw Error(ErrorCode::DimensionMismatch, "substitution maps differ in shape");
}

std::size_t LinearSubstitution::cell_index(const MultiIndex& b) const {
  if (b.size() != n_) throw Error(ErrorCode::DimensionMismatch, "cell index length differs from n");
  for (int v : b)
    if (v < 0 || static_cast<std::size_t>(v) >= length_)
      throw Error(ErrorCode::InvalidArgument, "cell " + b.to_string() + " outside the block");
  return cube_index(b, length_);
}

MultiIndex LinearSubstitution::cell_of(std::size_t k) const { return cube_cell(k, length_, n_); }

const FpMatrix& LinearSubstitution::map(const MultiIndex& b) const { return maps_[cell_index(b)]; }

std::vector<fp_t> LinearSubstitution::block(std::span<const fp_t> color) const {
  std::vector<fp_t> out(maps_.size() * out_dim());
  for (std::size_t k = 0; k < maps_.size(); ++k)
    maps_[k].apply(color, std::span<fp_t>(out.data() + k * out_dim(), out_dim()));
  return out;
}

// ---------------------------------------------------------------------------
// Phi_1 and S

int degree_window_bound(const Poly& P, const Poly& Q) {
  const int d = static_cast<int>(Q.kind().coeff_rows());
  return std::max({1, 1 + poly_deg(P).overall, d * poly_deg(Q).overall});
}

FpMatrix build_phi1(const Poly& h, int D, std::uint32_t p, std::size_t n) {
  if (h.kind().matrix || h.n() != n) throw Error(ErrorCode::KindMismatch, "h must be a scalar polynomial in n variables");
  if (h.field().p() != p) throw Error(ErrorCode::KindMismatch, "h lives over a different field");
  const WindowShape J0 = WindowShape::J(n, D, p, 0);
  const WindowShape J1 = WindowShape::J(n, D, p, 1);
  const int bound = static_cast<int>(p - 1) * D;
  for (const auto& [e, c] : h.terms())
    for (int v : e)
      if (v > bound)
        throw Error(ErrorCode::DegreeTooLarge, "h has support beyond (p-1)D at " + e.to_string());

  const int ip = static_cast<int>(p);
  FpMatrix phi(h.field(), J1.size(), J0.size());
  MultiIndex g(n);
  for (std::size_t row = 0; row < J1.size(); ++row) {
    const MultiIndex& b = J1[row];
    for (const auto& [e, c] : h.terms()) {
      bool match = true;
      for (std::size_t i = 0; i < n && match; ++i) {
        int diff = b[i] - e[i];
        if (((diff % ip) + ip) % ip != 0) match = false;
        else g[i] = diff / ip;
      }
      if (!match) continue;
      auto col = J0.index_of(g);
      if (!col) throw Error(ErrorCode::DegreeTooLarge, "Phi_1 reads outside J(0)^n");
      phi(row, *col) = h.field().add(phi(row, *col), c(0, 0));
    }
  }
  return phi;
}

LinearSubstitution build_substitution(const FpMatrix& phi1, int D, std::uint32_t p, std::size_t n) {
  const WindowShape J0 = WindowShape::J(n, D, p, 0);
  const WindowShape J1 = WindowShape::J(n, D, p, 1);
  if (phi1.rows() != J1.size() || phi1.cols() != J0.size())
    throw Error(ErrorCode::DimensionMismatch, "Phi_1 shape does not match (D, p, n)");
  const std::size_t cells = checked_pow(p, n);
  std::vector<FpMatrix> maps;
  maps.reserve(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    MultiIndex b = cube_cell(k, p, n);
    FpMatrix m(phi1.field(), J0.size(), J0.size());
    for (std::size_t g = 0; g < J0.size(); ++g) {
      auto src = J1.index_of(b + J0[g]);
      auto row = phi1.row(*src);
      std::copy(row.begin(), row.end(), m.row(g).begin());
    }
    maps.push_back(std::move(m));
  }
  return LinearSubstitution(phi1.field(), n, 1, std::move(maps));
}

TilingBox apply_substitution(const LinearSubstitution& S, const TilingBox& T) {
  if (T.n() != S.n() || T.color_dim() != S.in_dim())
    throw Error(ErrorCode::DimensionMismatch, "substitution does not act on this tiling's colors");
  const int l = static_cast<int>(S.length());
  std::vector<int> ext = T.extents();
  for (auto& e : ext) e *= l;
  ColorSpec color = S.out_dim() == S.in_dim() ? T.color() : ColorSpec::vector(S.out_dim());
  TilingBox out(T.field(), ext, color);
  MultiIndex target(T.n());
  std::size_t idx = 0;
  for_each_index(T.extents(), [&](const MultiIndex& a) {
    auto c = T.cell(idx++);
    for (std::size_t k = 0; k < S.cell_count(); ++k) {
      MultiIndex b = S.cell_of(k);
      for (std::size_t i = 0; i < a.size(); ++i) target[i] = l * a[i] + b[i];
      S.map(k).apply(c, out.cell(out.linear_index(target)));
    }
  });
  return out;
}

LinearSubstitution iterate_substitution(const LinearSubstitution& S, unsigned s) {
  if (S.t() != 1) throw Error(ErrorCode::InvalidArgument, "iterate_substitution expects a length-p substitution");
  if (S.in_dim() != S.out_dim()) throw Error(ErrorCode::DimensionMismatch, "only square substitutions iterate");
  PowerLadder ladder(S);
  for (unsigned level = 0; level < s; ++level) ladder.step();
  return LinearSubstitution(S.field(), S.n(), s, std::move(ladder).take());
}

// ---------------------------------------------------------------------------
// tau

TauBuild build_tau(const Poly& P, const Poly& Q, Side side) { return build_tau(P, Q, side, 0); }

TauBuild build_tau(const Poly& P, const Poly& Q, Side side, int D) {
  if (P.n() != Q.n() || !(P.kind() == Q.kind()))
    throw Error(ErrorCode::KindMismatch, "P and Q differ in indeterminates or coefficient ring");
  if (!is_series_unit(Q)) throw Error(ErrorCode::NotAUnit, "independent term of Q is not invertible");
  const std::size_t n = Q.n();
  const PrimeField f = Q.field();

  TauBuild out{TauMap{FpMatrix(f, 0, 0)}, 1, degree_window_bound(P, Q), Poly(n, CoeffKind::scalar(f)), {}};
  if (!Q.kind().matrix) {
    out.Q0 = Q;
    out.numerators = {P};
  } else {
    PolyMatrix qm = to_poly_matrix(Q);
    PolyMatrix pm = to_poly_matrix(P);
    out.Q0 = det_poly(qm);
    PolyMatrix adj = adjugate_poly(qm);
    PolyMatrix num = side == Side::Right ? pm * adj : adj * pm;
    for (std::size_t i = 0; i < num.d(); ++i)
      for (std::size_t j = 0; j < num.d(); ++j) out.numerators.push_back(num(i, j));
  }

  int needed = std::max(out.D_bound, poly_deg(out.Q0).overall);
  for (const auto& num : out.numerators) needed = std::max(needed, 1 + poly_deg(num).overall);
  if (D == 0) D = needed;
  if (D < 1) throw Error(ErrorCode::InvalidArgument, "window radius must be >= 1");
  if (poly_deg(out.Q0).overall > D)
    throw Error(ErrorCode::DegreeTooLarge, "window radius below deg(Q0)");
  out.D = D;

  const WindowShape J0 = WindowShape::J(n, D, f.p(), 0);
  FpMatrix tau(f, out.numerators.size(), J0.size());
  for (std::size_t k = 0; k < out.numerators.size(); ++k)
    for (const auto& [e, c] : out.numerators[k].terms()) {
      auto col = J0.index_of(e * -1);
      if (!col) throw Error(ErrorCode::DegreeTooLarge, "numerator term " + e.to_string() + " outside the window");
      tau(k, *col) = c(0, 0);
    }
  out.tau = TauMap{std::move(tau), D, n, Q.kind().coeff_rows(), Q.kind().matrix};
  return out;
}

// ---------------------------------------------------------------------------
// Phi_s and the block substitution search

namespace {

FpMatrix stack_tau(const TauMap& tau, const std::vector<FpMatrix>& blocks) {
  const std::size_t v = tau.target_dim();
  FpMatrix phi(tau.matrix.field(), blocks.size() * v, tau.source_dim());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    FpMatrix part = tau.matrix * blocks[k];
    for (std::size_t i = 0; i < v; ++i) {
      auto src = part.row(i);
      std::copy(src.begin(), src.end(), phi.row(k * v + i).begin());
    }
  }
  return phi;
}

void check_tau_fits(const TauMap& tau, const LinearSubstitution& S) {
  if (S.t() != 1) throw Error(ErrorCode::InvalidArgument, "expected a length-p substitution");
  if (tau.source_dim() != S.in_dim() || S.in_dim() != S.out_dim())
    throw Error(ErrorCode::DimensionMismatch, "tau and S act on different window spaces");
}

}  // namespace

FpMatrix compose_tau_blocks(const TauMap& tau, const LinearSubstitution& S, unsigned s) {
  check_tau_fits(tau, S);
  PowerLadder ladder(S);
  for (unsigned i = 0; i < s; ++i) ladder.step();
  return stack_tau(tau, ladder.current());
}

KernelChain kernel_chain(const TauMap& tau, const LinearSubstitution& S, unsigned s_max) {
  check_tau_fits(tau, S);
  KernelChain chain;
  PowerLadder ladder(S);
  std::optional<Subspace> prev;
  for (unsigned s = 0; s <= s_max; ++s) {
    if (s) ladder.step();
    Subspace ker = kernel_basis(stack_tau(tau, ladder.current()));
    chain.dims.push_back(ker.dim());
    if (prev) chain.nested.push_back(subspace_leq(*prev, ker));
    prev = std::move(ker);
  }
  return chain;
}

BlockSubstitution find_block_substitution(const TauMap& tau, const LinearSubstitution& S, unsigned s_max) {
  check_tau_fits(tau, S);
  if (s_max < 1) throw Error(ErrorCode::InvalidArgument, "s_max must be >= 1");
  const PrimeField& f = S.field();
  const std::uint32_t p = f.p();
  const std::size_t n = S.n();
  const std::size_t v = tau.target_dim();

  PowerLadder ladder(S);
  std::vector<FpMatrix> phis{stack_tau(tau, ladder.current())};
  std::vector<Subspace> kernels{kernel_basis(phis.front())};

  for (unsigned r2 = 1; r2 <= s_max; ++r2) {
    ladder.step();
    phis.push_back(stack_tau(tau, ladder.current()));
    kernels.push_back(kernel_basis(phis.back()));
    for (unsigned r = 0; r < r2; ++r) {
      if (!subspace_leq(kernels[r], kernels[r2])) continue;

      // rho^T solves Phi_r^T X = Phi_r'^T; free rows of X are zero, so rho
      // only reads the pivot coordinates of its argument.
      FpMatrix rho = solve_linear(phis[r].transpose(), phis[r2].transpose()).transpose();
      const unsigned t = r2 - r;
      const std::size_t side_r = checked_pow(p, r), side_r2 = checked_pow(p, r2), side_t = checked_pow(p, t);
      const std::size_t cells_r = checked_pow(side_r, n), cells_t = checked_pow(side_t, n);
      const std::size_t dim_r = cells_r * v;

      std::vector<FpMatrix> maps;
      maps.reserve(cells_t);
      MultiIndex pos(n);
      for (std::size_t kb = 0; kb < cells_t; ++kb) {
        MultiIndex b = cube_cell(kb, side_t, n);
        FpMatrix m(f, dim_r, dim_r);
        for (std::size_t kd = 0; kd < cells_r; ++kd) {
          MultiIndex dl = cube_cell(kd, side_r, n);
          for (std::size_t i = 0; i < n; ++i) pos[i] = static_cast<int>(side_r) * b[i] + dl[i];
          const std::size_t src_cell = cube_index(pos, side_r2);
          for (std::size_t c = 0; c < v; ++c) {
            auto src = rho.row(src_cell * v + c);
            std::copy(src.begin(), src.end(), m.row(kd * v + c).begin());
          }
        }
        maps.push_back(std::move(m));
      }

      std::vector<std::size_t> dims;
      for (const auto& k : kernels) dims.push_back(k.dim());
      std::size_t rho_rank = rank(rho.transpose());
      return BlockSubstitution{r, t, LinearSubstitution(f, n, t, std::move(maps)), std::move(rho), rho_rank,
                               std::move(dims)};
    }
  }
  std::ostringstream os;
  os << "no r < r' <= " << s_max << " with ker(Phi_r) <= ker(Phi_r'); kernel dims:";
  for (const auto& k : kernels) os << ' ' << k.dim();
  throw Error(ErrorCode::SearchExhausted, os.str());
}

// ---------------------------------------------------------------------------
// Invariance

std::string InvarianceReport::summary() const {
  std::ostringstream os;
  os << (ok ? "ok" : "FAILED") << ": " << checked << " blocks checked, " << failure_count << " mismatches";
  if (first_failure)
    os << "; first at alpha=" << first_failure->alpha.to_string() << " beta=" << first_failure->beta.to_string();
  return os.str();
}

InvarianceReport verify_invariance(const TilingBox& T, const LinearSubstitution& S, std::size_t report_limit) {
  if (T.n() != S.n() || T.color_dim() != S.in_dim() || S.in_dim() != S.out_dim())
    throw Error(ErrorCode::DimensionMismatch, "substitution does not act on this tiling's colors");
  const int l = static_cast<int>(S.length());
  std::vector<int> shrunk = T.extents();
  for (auto& e : shrunk) e /= l;

  InvarianceReport rep;
  const std::size_t cd = T.color_dim();
  std::vector<fp_t> expected(cd);
  MultiIndex target(T.n());
  GradedLexLess less;
  for_each_index(shrunk, [&](const MultiIndex& a) {
    auto c = T.cell(T.linear_index(a));
    ++rep.checked;
    bool zero = std::all_of(c.begin(), c.end(), [](fp_t x) { return x == 0; });
    for (std::size_t k = 0; k < S.cell_count(); ++k) {
      MultiIndex b = S.cell_of(k);
      for (std::size_t i = 0; i < a.size(); ++i) target[i] = l * a[i] + b[i];
      auto actual = T.cell(T.linear_index(target));
      bool match;
      if (zero) {
        match = std::all_of(actual.begin(), actual.end(), [](fp_t x) { return x == 0; });
      } else {
        S.map(k).apply(c, expected);
        match = std::equal(expected.begin(), expected.end(), actual.begin());
      }
      if (match) continue;
      ++rep.failure_count;
      rep.ok = false;
      if (rep.failures.size() < report_limit) rep.failures.push_back({a, b});
      if (!rep.first_failure || less(a, rep.first_failure->alpha)) rep.first_failure = InvarianceFailure{a, b};
    }
  });
  return rep;
}

std::string TauReport::summary() const {
  std::ostringstream os;
  os << (ok ? "ok" : "FAILED") << ": " << checked << " cells checked, " << failure_count << " mismatches";
  if (first_failure) os << "; first at alpha=" << first_failure->to_string();
  return os.str();
}

TauReport verify_tau(const TilingBox& M, const TilingBox& Tbar, const TauMap& tau) {
  if (M.extents() != Tbar.extents()) throw Error(ErrorCode::DimensionMismatch, "M and Tbar cover different boxes");
  if (Tbar.color_dim() != tau.source_dim() || M.color_dim() != tau.target_dim())
    throw Error(ErrorCode::DimensionMismatch, "tau does not map Tbar colors to M colors");
  TauReport rep;
  std::vector<fp_t> image(tau.target_dim());
  for (std::size_t i = 0; i < M.cell_count(); ++i) {
    ++rep.checked;
    tau.matrix.apply(Tbar.cell(i), image);
    auto actual = M.cell(i);
    if (std::equal(image.begin(), image.end(), actual.begin())) continue;
    ++rep.failure_count;
    rep.ok = false;
    // Row-major order visits a graded-lex minimum only by accident; compare explicitly.
    MultiIndex a = M.index_of(i);
    if (!rep.first_failure || GradedLexLess{}(a, *rep.first_failure)) rep.first_failure = a;
  }
  return rep;
}

// ---------------------------------------------------------------------------

Synthesis synthesize(const Poly& P, const Poly& Q, Side side) {
  TauBuild tb = build_tau(P, Q, side);
  const PrimeField f = Q.field();
  const std::size_t n = Q.n();
  fp_t a_inv = fp_inv(f, tb.Q0.scalar_coeff(MultiIndex(n)));
  Poly R = Poly::scalar_constant(n, f, 1) - tb.Q0.scaled(a_inv);
  Poly h = compute_h(R);
  FpMatrix phi1 = build_phi1(h, tb.D, f.p(), n);
  LinearSubstitution S = build_substitution(phi1, tb.D, f.p(), n);
  return Synthesis{std::move(tb), a_inv, std::move(R), std::move(h), std::move(phi1), std::move(S)};
}

TilingBox base_tiling(const Synthesis& syn, const std::vector<int>& extents) {
  TilingBox T = frobenius_expand(syn.R, extents);
  if (syn.q0_const_inv != 1) {
    const PrimeField& f = T.field();
    for (auto& v : T.data()) v = f.mul(v, syn.q0_const_inv);
  }
  return T;
}

}  // namespace selfsim
