#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfsim/expand.hpp"
#include "selfsim/ffcore.hpp"
#include "selfsim/polyring.hpp"
#include "selfsim/tiling_box.hpp"

namespace selfsim {

// M(m, k) = a M(m-1, k) + b M(m, k-1) + c M(m-1, k-1), M(0,0) = 1, zero off N^2.
struct RecurrenceSpec {
  PrimeField field;
  FpMatrix a, b, c;

  std::size_t d() const { return a.rows(); }
  // Scalar spec (d = 1) from integer weights.
  static RecurrenceSpec scalar(PrimeField f, long long a, long long b, long long c);
  // Q = 1 - (a x + b y + c x y), with matrix coefficients when matrix_kind.
  Poly denominator(bool matrix_kind) const;
};

// Fills the box directly from the recurrence (left multiplication). Matrix
// colors when d > 1 or as_matrix, scalar colors otherwise.
TilingBox recurrence_tiling(const RecurrenceSpec& spec, const std::vector<int>& extents, bool as_matrix = false);

// Pascal-rule table of C(m + k, m) mod p. Never touches series expansion.
TilingBox binomial_tiling(PrimeField field, const std::vector<int>& extents);

struct RazpetReport {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t violations = 0;
  // First violation: (alpha, gamma, beta, delta) in the order visited.
  std::optional<std::vector<int>> first_violation;
};

// w(p a + b, p g + e) = w(a, g) w(b, e) for all a, g < side/p and 0 <= b, e < p,
// checked on a scalar 2-d table of side >= p^2.
RazpetReport razpet_check_table(const TilingBox& w);
// Builds the recurrence table on a box of side p^e and checks it.
RazpetReport razpet_check(const RecurrenceSpec& spec, unsigned e);

struct PresetConfig {
  std::string name;
  std::string description;
  std::uint32_t p = 2;
  std::size_t d = 1;
  std::size_t n = 2;
  std::string P_text;
  std::string Q_text;
  Side side = Side::Right;
  std::vector<int> box;
  std::optional<RecurrenceSpec> recurrence;  // figures built from the 2-d recurrence

  CoeffKind kind() const;
  Poly P() const;
  Poly Q() const;
};

std::vector<std::string> preset_names();
// Throws UnknownPreset.
PresetConfig figure_preset(const std::string& name);

}  // namespace selfsim
