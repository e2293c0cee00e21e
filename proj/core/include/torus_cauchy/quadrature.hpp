#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "torus_cauchy/error.hpp"

namespace torus::quadrature {

/// Absolute tolerance and evaluation budget used for every primitive that has
/// no closed form. Primitives are later scaled by |xi|^2, so the tolerance is
/// deliberately tight.
inline constexpr double kPrimitiveTolerance = 1e-10;
inline constexpr std::size_t kNodeBudget = std::size_t{1} << 20;

namespace detail {

template <class F>
struct SimpsonState {
  const F& f;
  std::size_t evaluations = 0;
  std::size_t budget = kNodeBudget;
};

template <class F>
std::complex<double> simpson_step(SimpsonState<F>& st, double a, double b,
                                  std::complex<double> fa, std::complex<double> fm,
                                  std::complex<double> fb, std::complex<double> whole,
                                  double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  st.evaluations += 2;
  if (st.evaluations > st.budget) {
    throw Error(ErrorCode::QuadratureFailure,
                "adaptive Simpson exceeded node budget of " + std::to_string(st.budget));
  }
  const std::complex<double> flm = st.f(lm);
  const std::complex<double> frm = st.f(rm);
  const std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const std::complex<double> delta = left + right - whole;
  // Always split a few times so that a symmetric integrand cannot fool the
  // first error estimate.
  if (depth >= 4 && (std::abs(delta) <= 15.0 * tol || depth >= 60 || b - a < 1e-15 * std::abs(a + b))) {
    return left + right + delta / 15.0;
  }
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive Simpson for complex integrands on [a, b] (a <= b not required).
/// Throws QuadratureFailure when the evaluation budget is exhausted.
template <class F>
std::complex<double> adaptive_simpson(const F& f, double a, double b,
                                      double abs_tol = kPrimitiveTolerance,
                                      std::size_t budget = kNodeBudget) {
  if (a == b) return {0.0, 0.0};
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  detail::SimpsonState<F> st{f, 3, budget};
  const std::complex<double> fa = f(a);
  const std::complex<double> fb = f(b);
  const std::complex<double> fm = f(0.5 * (a + b));
  const std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return sign * detail::simpson_step(st, a, b, fa, fm, fb, whole, abs_tol, 0);
}

/// Gauss-Kronrod 7/15 rule on [-1, 1]. Kronrod abscissae are listed from the
/// outside in; the odd-indexed ones are also the 7-point Gauss-Legendre nodes.
struct GaussKronrod15 {
  static constexpr std::array<double, 8> abscissae = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> kronrod_weights = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  // Weights of the embedded Gauss rule at abscissae[1], [3], [5], [7].
  static constexpr std::array<double, 4> gauss_weights = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  /// The 15 nodes mapped to [a, b], ordered left to right.
  static std::array<double, 15> nodes(double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, 15> x{};
    for (int i = 0; i < 7; ++i) {
      x[i] = c - h * abscissae[i];
      x[14 - i] = c + h * abscissae[i];
    }
    x[7] = c;
    return x;
  }
  /// Kronrod weight for node index 0..14 (as returned by nodes()).
  static double kronrod_weight(int i) { return kronrod_weights[i <= 7 ? i : 14 - i]; }
  /// Gauss weight for node index 0..14, zero for Kronrod-only nodes.
  static double gauss_weight(int i) {
    const int k = i <= 7 ? i : 14 - i;
    return (k % 2 == 1) ? gauss_weights[k / 2] : 0.0;
  }
};

}  // namespace torus::quadrature
