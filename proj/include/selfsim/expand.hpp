#pragma once

#include <vector>

#include "selfsim/polyring.hpp"
#include "selfsim/tiling_box.hpp"

namespace selfsim {

// Which quotient to expand: P Q^{-1} (Right) or Q^{-1} P (Left).
enum class Side { Right, Left };

// Coefficients of P Q^{-1} (or Q^{-1} P) on the box. Cells are filled so that
// every cell read by the recurrence
//   right: M(a) = (P(a) - sum_{d != 0} M(a - d) Q(d)) q0^{-1}
//   left:  M(a) = q0^{-1} (P(a) - sum_{d != 0} Q(d) M(a - d))
// has already been filled. Throws NotAUnit if Q(0) is not invertible.
TilingBox expand_quotient(const Poly& P, const Poly& Q, Side side, const std::vector<int>& extents);

// Coefficients of 1 / Q0 for a scalar polynomial Q0.
TilingBox scalar_reciprocal(const Poly& Q0, const std::vector<int>& extents);

// h = 1 + R + ... + R^{p-1}. Throws NonzeroConstantTerm unless R(0) = 0.
Poly compute_h(const Poly& R);

// Coefficients of 1 / (1 - R) via T(a) = sum_{p g + d = a} h(d) T(g), T(0) = 1.
TilingBox frobenius_expand(const Poly& R, const std::vector<int>& extents);

}  // namespace selfsim
