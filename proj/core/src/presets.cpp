#include "torus_cauchy/presets.hpp"

#include <vector>

namespace torus::presets {
namespace {

TimeCoefficient monomial(double horizon, Complex c, int degree) {
  std::vector<Complex> coeffs(static_cast<std::size_t>(degree) + 1, Complex{0.0, 0.0});
  coeffs.back() = c;
  return TimeCoefficient::polynomial(horizon, std::move(coeffs));
}

}  // namespace

SymbolSpec heat(int dimension, double horizon) {
  SymbolSpec s;
  s.dimension = dimension;
  s.horizon = horizon;
  s.a2 = TimeCoefficient::constant(horizon, {0.0, -1.0});
  s.a1.assign(static_cast<std::size_t>(dimension), TimeCoefficient::zero(horizon));
  s.a0 = TimeCoefficient::zero(horizon);
  return s;
}

SymbolSpec intro_example(int k, int l, double horizon) {
  SymbolSpec s;
  s.dimension = 1;
  s.horizon = horizon;
  s.a2 = monomial(horizon, {0.0, -1.0}, k);
  s.a1 = {monomial(horizon, {0.0, 1.0}, l)};
  s.a0 = TimeCoefficient::zero(horizon);
  return s;
}

SymbolSpec fourth_order_remark(double horizon) {
  SymbolSpec s;
  s.dimension = 1;
  s.horizon = horizon;
  s.a2 = TimeCoefficient::constant(horizon, {0.0, 1.0});
  s.a1 = {monomial(horizon, {0.0, 2.0}, 1)};
  s.a0 = TimeCoefficient::zero(horizon);
  s.extra_monomials = {{3, monomial(horizon, {0.0, 3.0}, 2)}, {4, monomial(horizon, {0.0, -5.0}, 4)}};
  return s;
}

SymbolSpec flat_profile(double drift_rate, double horizon) {
  SymbolSpec s;
  s.dimension = 1;
  s.horizon = horizon;
  s.a2 = TimeCoefficient::named(horizon, coeff::NamedProfile::FlatExpDerivative, {0.0, -1.0}, 1.0);
  s.a1 = {TimeCoefficient::named(horizon, coeff::NamedProfile::FlatExpDerivative, {0.0, 1.0}, drift_rate)};
  s.a0 = TimeCoefficient::zero(horizon);
  return s;
}

SymbolSpec degenerate_single_zero(double p, double q, double t_k, double Gamma, double gamma,
                                  double horizon) {
  SymbolSpec s;
  s.dimension = 1;
  s.horizon = horizon;
  VanishingProfile lead{t_k, p, Gamma, Gamma, FactorSign::Negative};
  s.a2 = TimeCoefficient::factored(horizon, {lead}, {Complex{0.0, -Gamma}});
  if (q > 0.0) {
    VanishingProfile drift{t_k, q, gamma, gamma, FactorSign::Positive};
    s.a1 = {TimeCoefficient::factored(horizon, {drift}, {Complex{0.0, gamma}})};
  } else {
    s.a1 = {TimeCoefficient::constant(horizon, {0.0, gamma})};
  }
  s.a0 = TimeCoefficient::zero(horizon);
  return s;
}

}  // namespace torus::presets
