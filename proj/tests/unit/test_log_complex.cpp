#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "torus_cauchy/error.hpp"
#include "torus_cauchy/log_complex.hpp"

using namespace torus;

TEST_SUITE("log_complex") {
  TEST_CASE("zero is canonical") {
    const auto z = LogComplex::from_complex(0.0);
    CHECK(z.is_zero());
    CHECK(z.phase == 0.0);
    CHECK(LogComplex::polar(-INFINITY, 2.0) == LogComplex::zero());
    CHECK(LogComplex::zero().to_complex() == Complex{0.0, 0.0});
  }

  TEST_CASE("phase is reduced into (-pi, pi]") {
    CHECK(reduce_phase(std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(reduce_phase(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(reduce_phase(1e6) == doctest::Approx(std::remainder(1e6, 2.0 * std::numbers::pi)));
    const auto z = LogComplex::polar(0.0, 7.0);
    CHECK(z.phase > -std::numbers::pi);
    CHECK(z.phase <= std::numbers::pi);
  }

  TEST_CASE("round trip through ordinary complex numbers") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 10.0);
    for (int k = 0; k < 100; ++k) {
      const Complex z{n(rng), n(rng)};
      CHECK(std::abs(LogComplex::from_complex(z).to_complex() - z) <= 1e-14 * std::abs(z));
    }
  }

  TEST_CASE("overflow guard") {
    CHECK(kOverflowGuard == doctest::Approx(std::log(std::numeric_limits<double>::max()) - 2.0));
    const LogComplex big{1000.0, 0.0};
    try {
      big.to_complex();
      FAIL("expected OverflowGuard");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OverflowGuard);
    }
    CHECK_NOTHROW(LogComplex{700.0, 0.0}.to_complex());
  }

  TEST_CASE("arithmetic matches linear arithmetic") {
    const Complex a{1.5, -2.0}, b{-0.25, 0.75};
    const auto la = LogComplex::from_complex(a), lb = LogComplex::from_complex(b);
    CHECK(std::abs((la * lb).to_complex() - a * b) < 1e-14);
    CHECK(std::abs((la / lb).to_complex() - a / b) < 1e-13);
    CHECK(std::abs((la + lb).to_complex() - (a + b)) < 1e-14);
    CHECK(std::abs((la - lb).to_complex() - (a - b)) < 1e-14);
    CHECK(std::abs((-la).to_complex() + a) < 1e-14);
    CHECK((la - la).is_zero());
  }

  TEST_CASE("huge magnitudes add without overflow") {
    const LogComplex x{5000.0, 0.3};
    const auto s = x + x;
    CHECK(s.logmag == doctest::Approx(5000.0 + std::log(2.0)));
    CHECK(s.phase == doctest::Approx(0.3));
    // A term 100 log-units down does not move the sum.
    const auto t = x + LogComplex{4900.0, 1.0};
    CHECK(t.logmag == doctest::Approx(5000.0));
  }

  TEST_CASE("exp_log") {
    const auto e = exp_log({800.0, 3.0});
    CHECK(e.logmag == 800.0);
    CHECK(e.phase == doctest::Approx(3.0));
  }

  TEST_CASE("LogSum drops terms far below the running maximum") {
    LogSum s;
    s.add({0.0, 0.0});
    s.add({-70.0, 0.0});
    CHECK(s.value().logmag == 0.0);
    s.add({100.0, 0.0});
    s.add({100.0, 0.0});
    CHECK(s.value().logmag == doctest::Approx(100.0 + std::log(2.0)));
    LogSum empty;
    CHECK(empty.value().is_zero());
  }
}
