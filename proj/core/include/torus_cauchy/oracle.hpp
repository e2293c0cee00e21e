#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "torus_cauchy/symbol.hpp"

namespace torus {

struct RandomSpecOptions {
  /// Dimension drawn uniformly from [min_dimension, max_dimension].
  int min_dimension = 1;
  int max_dimension = 2;
  /// Polynomial degree of each coefficient drawn uniformly from [0, max_degree].
  int max_degree = 3;
  double horizon = 1.0;
};

/// Polynomial coefficients a2, a1j, a0, each coefficient uniform in the
/// closed unit disk.
SymbolSpec random_polynomial_spec(std::mt19937_64& rng, const RandomSpecOptions& options = {});

/// Frequency uniform in the box |xi|_inf <= max_frequency.
Frequency random_frequency(std::mt19937_64& rng, int dimension, int max_frequency);

struct OracleCase {
  double t = 0.0;
  Frequency xi;
  Complex closed_form;
  Complex rk4;
  double rel_error = 0.0;
  bool skipped_overflow = false;
  bool steps_too_coarse = false;
};

/// Compares duhamel_coefficient against rk4_oracle at every time for one
/// spec and frequency, with g = 1 and f(s) = exp(i s). Cases where the RK4
/// trajectory overflows are marked skipped.
std::vector<OracleCase> oracle_compare(const SymbolSpec& spec, const Frequency& xi, const std::vector<double>& times,
                                       int steps, const QuadratureOptions& quadrature = {}, Complex g = 1.0,
                                       bool unit_forcing = true);

struct OracleSuiteOptions {
  int trials = 100;
  int steps = 10000;
  double threshold = 1e-6;
  int max_frequency = 16;
  std::vector<double> times{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  RandomSpecOptions random;
  QuadratureOptions quadrature;
};

struct OracleSummary {
  int trials = 0;
  /// Trials whose every non-skipped case met the threshold.
  int trials_passed = 0;
  int cases = 0;
  int failures = 0;
  int skipped_overflow = 0;
  /// Cases where halving the RK4 step count moved the result by > 1e-6.
  int steps_too_coarse = 0;
  double max_rel_error = 0.0;
  std::vector<OracleCase> failing;

  bool pass() const { return failures == 0; }
};

/// One random spec and one random frequency per trial, all drawn from
/// mt19937_64(seed) before any comparison runs.
OracleSummary oracle_random_suite(std::uint64_t seed, const OracleSuiteOptions& options);

/// Fixed spec, one random frequency per trial.
OracleSummary oracle_frequency_suite(const SymbolSpec& spec, std::uint64_t seed, const OracleSuiteOptions& options);

}  // namespace torus
