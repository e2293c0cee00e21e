#pragma once

#include "torus_cauchy/symbol.hpp"

namespace torus::presets {

/// D_t + i Lap, i.e. u_t = Lap u: a2 = -i, everything else zero.
SymbolSpec heat(int dimension, double horizon = 1.0);

/// P = D_t + i t^k d_xx + i t^l D_x on the circle. Since d_xx = -Lap and the
/// operator is D_t - a2 Lap + a1 D_x, this is a2 = -i t^k and a1 = i t^l.
SymbolSpec intro_example(int k, int l, double horizon = 1.0);

/// One-dimensional fourth-order operator with symbol
/// i xi^2 + 2i t xi + 3i t^2 xi^3 - 5i t^4 xi^4.
SymbolSpec fourth_order_remark(double horizon = 1.0);

/// Leading coefficient with imaginary part -2 e^{-1/t^2} / t^3 (so C2 = -e^{-1/t^2})
/// and drift with C1 = e^{-drift_rate / t^2}. drift_rate = 1/5 is the ill-posed
/// variant, drift_rate = 1 the well-posed one.
SymbolSpec flat_profile(double drift_rate, double horizon = 1.0);

/// a2 = -i Gamma |t - t_k|^p and a1 = i gamma |t - t_k|^q on the circle, with
/// declared vanishing profiles.
SymbolSpec degenerate_single_zero(double p, double q, double t_k, double Gamma, double gamma,
                                  double horizon = 1.0);

}  // namespace torus::presets
