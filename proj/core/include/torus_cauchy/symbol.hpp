#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "torus_cauchy/log_complex.hpp"
#include "torus_cauchy/time_coeffs.hpp"

namespace torus {

/// Integer frequency on the N-torus.
using Frequency = std::vector<int>;

double norm_squared(const Frequency& xi);
double norm(const Frequency& xi);

/// One-dimensional higher-order term a_m(t) xi^m of the symbol.
struct ExtraMonomial {
  int degree = 3;
  TimeCoefficient coefficient = TimeCoefficient::zero(1.0);
};

/// Coefficients of the symbol
///   q(t, xi) = a2(t) |xi|^2 + sum_j a1[j](t) xi_j + a0(t) [+ sum_m a_m(t) xi^m]
/// in the per-frequency equation D_t u + q u = f, D_t = -i d/dt. The operator
/// D_t - a2 Lap + sum_j a1_j D_j + a0 has exactly these coefficients.
struct SymbolSpec {
  int dimension = 1;
  double horizon = 1.0;
  TimeCoefficient a2 = TimeCoefficient::zero(1.0);
  std::vector<TimeCoefficient> a1;
  TimeCoefficient a0 = TimeCoefficient::zero(1.0);
  std::vector<ExtraMonomial> extra_monomials;

  /// Throws MalformedStructure on mismatched horizons, wrong a1 length,
  /// extra monomials with N != 1 or degree < 3.
  void validate() const;
};

/// q(t, xi).
Complex symbol_value(const SymbolSpec& spec, double t, const Frequency& xi);

/// E(s, t) = int_s^t q(r, xi) dr, assembled from per-coefficient primitive
/// differences.
Complex exponent_increment(const SymbolSpec& spec, double s, double t, const Frequency& xi);

/// exp(-i E(0, t)): logmag = Im E, phase = -Re E.
LogComplex homogeneous_exponent(const SymbolSpec& spec, double t, const Frequency& xi);

struct QuadratureOptions {
  /// Initial node density of the Duhamel quadrature.
  int nodes_per_unit = 64;
  /// Relative tolerance of the adaptive rule.
  double rel_tol = 1e-11;
  /// When false, a fixed composite 7-point Gauss-Legendre rule is used.
  bool adaptive = true;
  std::size_t max_panels = std::size_t{1} << 16;
};

/// Forcing coefficient s -> f(s, xi) for a fixed frequency.
using Forcing = std::function<LogComplex(double)>;

/// u(t, xi) = g exp(-i E(0,t)) + i int_0^t f(s) exp(-i E(s,t)) ds, with the
/// integral summed in log form. An empty forcing means f = 0. Throws
/// QuadratureFailure when the adaptive rule runs out of panels.
LogComplex duhamel_coefficient(const SymbolSpec& spec, const LogComplex& g, const Forcing& f, double t,
                               const Frequency& xi, const QuadratureOptions& options = {});

struct Rk4Result {
  Complex value;
  /// Halving the step count changed the result by more than 1e-6 relative.
  bool steps_too_coarse = false;
};

/// Classical fixed-step RK4 for u' = -i q u + i f from u(0) = g, in ordinary
/// complex arithmetic. Throws OverflowGuard if the trajectory leaves the
/// representable range.
Rk4Result rk4_oracle(const SymbolSpec& spec, Complex g, const std::function<Complex(double)>& f, double t,
                     const Frequency& xi, int steps);

}  // namespace torus
