#include "torus_cauchy/gauge.hpp"

#include <cmath>

namespace torus {

Complex gauge_phase(const SymbolSpec& spec, double t, const Frequency& xi) {
  if (t == 0.0) return {0.0, 0.0};
  double b = spec.a2.primitive_diff(0.0, t).real() * norm_squared(xi);
  for (std::size_t j = 0; j < spec.a1.size(); ++j) {
    if (xi[j] != 0) b += spec.a1[j].primitive_diff(0.0, t).real() * static_cast<double>(xi[j]);
  }
  for (const auto& m : spec.extra_monomials) {
    b += m.coefficient.primitive_diff(0.0, t).real() * std::pow(static_cast<double>(xi[0]), m.degree);
  }
  return Complex{-b, 0.0} - spec.a0.primitive_diff(0.0, t);
}

LogComplex gauge_factor(const SymbolSpec& spec, double t, const Frequency& xi) {
  const Complex j = gauge_phase(spec, t, xi);
  // i J = -Im J + i Re J.
  return LogComplex::polar(-j.imag(), j.real());
}

namespace {

SpectralField apply_gauge(const SpectralField& field, const SymbolSpec& spec, bool forward) {
  SpectralField out = field;
  for (auto& [xi, v] : out.coefficients) {
    if (v.is_zero()) continue;
    const LogComplex g = gauge_factor(spec, field.time, xi);
    v = forward ? v * g : v / g;
  }
  return out;
}

}  // namespace

SpectralField gauge_forward(const SpectralField& field, const SymbolSpec& spec) {
  return apply_gauge(field, spec, true);
}

SpectralField gauge_inverse(const SpectralField& field, const SymbolSpec& spec) {
  return apply_gauge(field, spec, false);
}

SymbolSpec reduce_to_normal_form(const SymbolSpec& spec) {
  SymbolSpec out = spec;
  out.a2 = spec.a2.imaginary_only();
  for (auto& c : out.a1) c = c.imaginary_only();
  out.a0 = TimeCoefficient::zero(spec.horizon);
  for (auto& m : out.extra_monomials) m.coefficient = m.coefficient.imaginary_only();
  return out;
}

}  // namespace torus
