#pragma once

#include "torus_cauchy/log_complex.hpp"
#include "torus_cauchy/spectral_field.hpp"
#include "torus_cauchy/symbol.hpp"

namespace torus {

/// J(t, xi) = -B2 |xi|^2 - sum_j B1j xi_j - A0 (minus B_m xi^m for extra
/// monomials), where B = Re A. J(0, xi) = 0.
Complex gauge_phase(const SymbolSpec& spec, double t, const Frequency& xi);

/// exp(i J(t, xi)) in log form: logmag C0(t), phase -(B2|xi|^2 + sum B1j xi_j + B0).
LogComplex gauge_factor(const SymbolSpec& spec, double t, const Frequency& xi);

/// Multiplies every coefficient by exp(i J(field.time, xi)).
SpectralField gauge_forward(const SpectralField& field, const SymbolSpec& spec);
/// Multiplies every coefficient by exp(-i J(field.time, xi)).
SpectralField gauge_inverse(const SpectralField& field, const SymbolSpec& spec);

/// Keeps only the imaginary parts of a2, a1 and the extra monomials, and
/// drops a0. If u solves the original problem with data (g, f), then
/// exp(-iJ) u solves the reduced one with data (g, exp(-iJ) f).
SymbolSpec reduce_to_normal_form(const SymbolSpec& spec);

}  // namespace torus
