#include "torus_cauchy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "torus_cauchy/error.hpp"
#include "torus_cauchy/parallel.hpp"

namespace torus {
namespace {

Complex unit_disk(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::sqrt(u(rng));
  const double theta = 2.0 * std::numbers::pi * u(rng);
  return std::polar(r, theta);
}

TimeCoefficient random_poly(std::mt19937_64& rng, const RandomSpecOptions& o) {
  std::uniform_int_distribution<int> deg(0, o.max_degree);
  const int d = deg(rng);
  std::vector<Complex> c;
  for (int k = 0; k <= d; ++k) c.push_back(unit_disk(rng));
  return TimeCoefficient::polynomial(o.horizon, std::move(c));
}

}  // namespace

SymbolSpec random_polynomial_spec(std::mt19937_64& rng, const RandomSpecOptions& options) {
  std::uniform_int_distribution<int> dim(options.min_dimension, options.max_dimension);
  SymbolSpec s;
  s.dimension = dim(rng);
  s.horizon = options.horizon;
  s.a2 = random_poly(rng, options);
  s.a1.clear();
  for (int j = 0; j < s.dimension; ++j) s.a1.push_back(random_poly(rng, options));
  s.a0 = random_poly(rng, options);
  return s;
}

Frequency random_frequency(std::mt19937_64& rng, int dimension, int max_frequency) {
  std::uniform_int_distribution<int> u(-max_frequency, max_frequency);
  Frequency xi(static_cast<std::size_t>(dimension));
  for (auto& v : xi) v = u(rng);
  return xi;
}

std::vector<OracleCase> oracle_compare(const SymbolSpec& spec, const Frequency& xi, const std::vector<double>& times,
                                       int steps, const QuadratureOptions& quadrature, Complex g,
                                       bool unit_forcing) {
  Forcing f_log;
  std::function<Complex(double)> f_lin;
  if (unit_forcing) {
    f_log = [](double s) { return LogComplex{0.0, reduce_phase(s)}; };
    f_lin = [](double s) { return std::polar(1.0, s); };
  }
  const LogComplex g_log = LogComplex::from_complex(g);
  std::vector<OracleCase> out;
  for (double t : times) {
    OracleCase c;
    c.t = t;
    c.xi = xi;
    try {
      const Rk4Result r = rk4_oracle(spec, g, f_lin, t, xi, steps);
      c.rk4 = r.value;
      c.steps_too_coarse = r.steps_too_coarse;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OverflowGuard) throw;
      c.skipped_overflow = true;
      out.push_back(c);
      continue;
    }
    const LogComplex u = duhamel_coefficient(spec, g_log, f_log, t, xi, quadrature);
    c.closed_form = u.to_complex();
    const double scale = std::abs(c.rk4);
    c.rel_error = scale > 0.0 ? std::abs(c.closed_form - c.rk4) / scale : std::abs(c.closed_form);
    out.push_back(c);
  }
  return out;
}

namespace {

OracleSummary run_suite(const std::vector<SymbolSpec>& specs, const std::vector<Frequency>& xis,
                        const OracleSuiteOptions& options) {
  std::vector<std::vector<OracleCase>> results(specs.size());
  parallel_for(specs.size(), [&](std::size_t k) {
    results[k] = oracle_compare(specs[k], xis[k], options.times, options.steps, options.quadrature);
  });
  OracleSummary sum;
  sum.trials = static_cast<int>(specs.size());
  for (const auto& cases : results) {
    bool ok = true;
    for (const auto& c : cases) {
      ++sum.cases;
      if (c.skipped_overflow) {
        ++sum.skipped_overflow;
        continue;
      }
      if (c.steps_too_coarse) ++sum.steps_too_coarse;
      sum.max_rel_error = std::max(sum.max_rel_error, c.rel_error);
      if (!(c.rel_error <= options.threshold)) {
        ok = false;
        ++sum.failures;
        sum.failing.push_back(c);
      }
    }
    if (ok) ++sum.trials_passed;
  }
  return sum;
}

}  // namespace

OracleSummary oracle_random_suite(std::uint64_t seed, const OracleSuiteOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<SymbolSpec> specs;
  std::vector<Frequency> xis;
  for (int k = 0; k < options.trials; ++k) {
    specs.push_back(random_polynomial_spec(rng, options.random));
    xis.push_back(random_frequency(rng, specs.back().dimension, options.max_frequency));
  }
  return run_suite(specs, xis, options);
}

OracleSummary oracle_frequency_suite(const SymbolSpec& spec, std::uint64_t seed, const OracleSuiteOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<SymbolSpec> specs(static_cast<std::size_t>(options.trials), spec);
  std::vector<Frequency> xis;
  for (int k = 0; k < options.trials; ++k) xis.push_back(random_frequency(rng, spec.dimension, options.max_frequency));
  return run_suite(specs, xis, options);
}

}  // namespace torus
