#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/expand.hpp"
#include "selfsim/ffcore.hpp"
#include "selfsim/polyring.hpp"
#include "selfsim/tiling_box.hpp"

namespace selfsim {

// A linear substitution of length p^t in n dimensions: one F_p-linear map per
// cell b of I(t)^n, enumerated lexicographically. The substituted tiling is
//   (^S T)(l a + b) = maps[b] * T(a).
class LinearSubstitution {
 public:
  LinearSubstitution(PrimeField field, std::size_t n, unsigned t, std::vector<FpMatrix> maps);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return n_; }
  unsigned t() const noexcept { return t_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t in_dim() const noexcept { return maps_.front().cols(); }
  std::size_t out_dim() const noexcept { return maps_.front().rows(); }
  std::size_t cell_count() const noexcept { return maps_.size(); }

  const std::vector<FpMatrix>& maps() const noexcept { return maps_; }
  const FpMatrix& map(std::size_t k) const { return maps_[k]; }
  const FpMatrix& map(const MultiIndex& b) const;
  std::size_t cell_index(const MultiIndex& b) const;
  MultiIndex cell_of(std::size_t k) const;

  // The block S_c as a vector of length cell_count() * out_dim(), cell-major.
  std::vector<fp_t> block(std::span<const fp_t> color) const;

  friend bool operator==(const LinearSubstitution&, const LinearSubstitution&) = default;

 private:
  PrimeField field_;
  std::size_t n_;
  unsigned t_;
  std::size_t length_;
  std::vector<FpMatrix> maps_;
};

// Linear map tau: W -> A on windows W = F_p^{J(0)^n}. Rows are the entries of
// the target color (1 for F_p, d*d row-major for matrices).
struct TauMap {
  FpMatrix matrix;
  int D = 1;
  std::size_t n = 1;
  std::size_t d = 1;
  bool matrix_target = false;

  std::size_t source_dim() const noexcept { return matrix.cols(); }
  std::size_t target_dim() const noexcept { return matrix.rows(); }
};

// Window radius bound from the degrees: max{1, 1 + deg P, d deg Q}.
int degree_window_bound(const Poly& P, const Poly& Q);

// Matrix of Phi_1 : F_p^{J(0)^n} -> F_p^{J(1)^n},
//   Phi_1(f)(b) = sum_{0 <= e <= (p-1)D, e = b mod p} h(e) f((b - e) / p).
// Throws DegreeTooLarge if supp(h) leaves [0, (p-1)D]^n.
FpMatrix build_phi1(const Poly& h, int D, std::uint32_t p, std::size_t n);

// S = sigma o Phi_1: S_b selects the offsets b + J(0)^n inside J(1)^n.
LinearSubstitution build_substitution(const FpMatrix& phi1, int D, std::uint32_t p, std::size_t n);

// ^S T. Output extents are length * input extents.
TilingBox apply_substitution(const LinearSubstitution& S, const TilingBox& T);

// S^s, with (S^s)_{p b' + b0} = S_{b0} o (S^{s-1})_{b'}.
LinearSubstitution iterate_substitution(const LinearSubstitution& S, unsigned s);

struct TauBuild {
  TauMap tau;
  int D = 1;          // window radius actually used
  int D_bound = 1;  // max{1, 1 + deg P, d deg Q}
  Poly Q0;            // scalar denominator: Q itself, or det Q
  std::vector<Poly> numerators;  // scalar numerators, one per target entry
};

// Scalar case: numerator P, denominator Q. Matrix case: M = P adj(Q) / det(Q)
// (Right) or adj(Q) P / det(Q) (Left); tau stacks one linear form per entry.
// D = max{1, 1 + deg of numerators, deg Q0, D_bound}.
TauBuild build_tau(const Poly& P, const Poly& Q, Side side);
// Same with a caller-chosen radius; throws DegreeTooLarge if a numerator does
// not fit in the window.
TauBuild build_tau(const Poly& P, const Poly& Q, Side side, int D);

// Phi_s = tau^{I(s)^n} o S^s as a matrix W -> V^{I(s)^n} (cell-major rows).
FpMatrix compose_tau_blocks(const TauMap& tau, const LinearSubstitution& S, unsigned s);

struct BlockSubstitution {
  unsigned r = 0;
  unsigned t = 1;
  LinearSubstitution substitution;  // on colors V^{I(r)^n}
  FpMatrix rho;                     // V^{I(r)^n} -> V^{I(r+t)^n}
  std::size_t rho_rank = 0;
  std::vector<std::size_t> kernel_dims;  // dim ker(Phi_s), s = 0..r+t
};

// Searches the smallest r' (then the smallest r < r') with
// ker(Phi_r) <= ker(Phi_r'); builds rho with rho o Phi_r = Phi_r' reading only
// pivot coordinates, and regroups sigma o rho into p^{t n} maps.
// Throws SearchExhausted if no pair exists with r' <= s_max.
BlockSubstitution find_block_substitution(const TauMap& tau, const LinearSubstitution& S, unsigned s_max);

// dim ker(Phi_s) for s = 0..s_max, and whether each kernel sits in the next.
struct KernelChain {
  std::vector<std::size_t> dims;
  std::vector<bool> nested;  // nested[s]: ker(Phi_s) <= ker(Phi_{s+1})
};
KernelChain kernel_chain(const TauMap& tau, const LinearSubstitution& S, unsigned s_max);

struct InvarianceFailure {
  MultiIndex alpha;
  MultiIndex beta;
};

struct InvarianceReport {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  std::optional<InvarianceFailure> first_failure;  // lowest graded-lex alpha
  std::vector<InvarianceFailure> failures;          // up to report_limit

  std::string summary() const;
};

// Checks T(l a + b) = S_b T(a) for every a with l a + I^n inside the box.
InvarianceReport verify_invariance(const TilingBox& T, const LinearSubstitution& S, std::size_t report_limit = 8);

struct TauReport {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  std::optional<MultiIndex> first_failure;  // lowest graded-lex alpha

  std::string summary() const;
};

// Checks M(a) = tau(Tbar(a)) at every a of the common box.
TauReport verify_tau(const TilingBox& M, const TilingBox& Tbar, const TauMap& tau);

// Everything the construction builds for P and Q.
struct Synthesis {
  TauBuild tau;
  fp_t q0_const_inv = 1;  // inverse of the independent term of Q0
  Poly R;                 // 1 - q0^{-1} Q0
  Poly h;
  FpMatrix phi1;
  LinearSubstitution S;
};

Synthesis synthesize(const Poly& P, const Poly& Q, Side side);

// T = coefficients of 1 / Q0 on the box, via the Frobenius recursion.
TilingBox base_tiling(const Synthesis& syn, const std::vector<int>& extents);

}  // namespace selfsim
