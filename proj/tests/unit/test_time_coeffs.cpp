#include <cmath>
#include <random>

#include "doctest.h"
#include "torus_cauchy/error.hpp"
#include "torus_cauchy/time_coeffs.hpp"

using namespace torus;

namespace {

const Complex I{0.0, 1.0};

TimeCoefficient flat_derivative(Complex amplitude, double rate = 1.0) {
  return TimeCoefficient::named(1.0, coeff::NamedProfile::FlatExpDerivative, amplitude, rate);
}

std::vector<TimeCoefficient> every_form() {
  VanishingProfile z{0.4, 3.0, 1.0, 1.0, FactorSign::Negative};
  std::vector<Complex> samples;
  for (int m = 0; m <= 40; ++m) {
    const double t = m / 40.0;
    samples.push_back({std::cos(3.0 * t), -1.0 - t * t});
  }
  return {
      TimeCoefficient::polynomial(1.0, {{0.3, -0.2}, {-0.7, 0.5}, {0.25, 0.9}, {-0.6, -0.1}}),
      TimeCoefficient::factored(1.0, {z}, {{0.5, -1.0}, {0.0, 0.3}}),
      flat_derivative(-I, 0.2),
      TimeCoefficient::named(1.0, coeff::NamedProfile::FlatExp, {0.5, -1.0}, 1.0),
      TimeCoefficient::sampled(1.0, samples),
  };
}

}  // namespace

TEST_SUITE("time_coeffs") {
  TEST_CASE("eval examples") {
    CHECK(TimeCoefficient::constant(1.0, -I).eval(0.7) == -I);
    const Complex v = flat_derivative(-1.0).eval(1.0);
    CHECK(v.real() == doctest::Approx(-0.7357588823).epsilon(1e-10));
    CHECK(v.imag() == 0.0);
    const auto sq = TimeCoefficient::polynomial(2.0, {0.0, 0.0, I});
    CHECK(sq.eval(2.0) == 4.0 * I);
  }

  TEST_CASE("eval outside the horizon throws") {
    const auto c = TimeCoefficient::constant(1.0, 1.0);
    CHECK_THROWS_AS(c.eval(1.5), Error);
    CHECK_THROWS_AS(c.eval(-0.1), Error);
    try {
      c.eval(2.0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfHorizon);
    }
  }

  TEST_CASE("primitive examples") {
    CHECK(std::abs(TimeCoefficient::constant(1.0, -I).primitive(0.5) - (-0.5 * I)) < 1e-15);
    CHECK(std::abs(TimeCoefficient::polynomial(1.0, {0.0, 0.0, I}).primitive(1.0) - I / 3.0) < 1e-15);
    const Complex C = flat_derivative(-1.0).primitive(1.0);
    CHECK(C.real() == doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));
  }

  TEST_CASE("primitive_diff examples and orientation") {
    CHECK(std::abs(TimeCoefficient::constant(1.0, -I).primitive_diff(0.2, 0.7) - (-0.5 * I)) < 1e-15);
    CHECK(std::abs(TimeCoefficient::polynomial(1.0, {0.0, 0.0, I}).primitive_diff(1.0, 0.0) + I / 3.0) < 1e-15);
  }

  TEST_CASE("polynomial primitive_diff matches composite Simpson at 2^16 panels") {
    // Simpson at 2^16 panels computed offline in 20-digit arithmetic.
    const auto c = TimeCoefficient::polynomial(1.0, {{0.3, -0.2}, {-0.7, 0.5}, {0.25, 0.9}, {-0.6, -0.1}});
    const Complex expected{-0.1107, 0.2544};
    CHECK(std::abs(c.primitive_diff(0.3, 0.9) - expected) < 1e-12);
  }

  TEST_CASE("factored primitive against the exact antiderivative") {
    VanishingProfile z{0.5, 4.0, 1.0, 1.0, FactorSign::Negative};
    const auto c = TimeCoefficient::factored(1.0, {z}, {-I});
    for (double t : {0.1, 0.5, 0.73, 1.0}) {
      const double exact = -(std::pow(t - 0.5, 5) + std::pow(0.5, 5)) / 5.0;
      CHECK(std::abs(c.primitive(t) - exact * I) < 1e-10);
      CHECK(c.eval(t).imag() == doctest::Approx(-std::pow(std::abs(t - 0.5), 4)));
    }
    REQUIRE(c.table() != nullptr);
  }

  TEST_CASE("sampled interpolation is exact on cubics and refuses extrapolation") {
    std::vector<Complex> v;
    for (int m = 0; m <= 10; ++m) {
      const double t = m / 10.0;
      v.push_back({t * t * t, -t});
    }
    const auto c = TimeCoefficient::sampled(1.0, v);
    CHECK(c.eval(0.35).real() == doctest::Approx(0.35 * 0.35 * 0.35).epsilon(1e-12));
    CHECK(c.eval(0.35).imag() == doctest::Approx(-0.35).epsilon(1e-12));
    CHECK(std::abs(c.primitive(1.0) - Complex{0.25, -0.5}) < 1e-10);
    CHECK_THROWS_AS(c.eval(1.01), Error);
  }

  TEST_CASE("estimate_order") {
    const auto cube = TimeCoefficient::polynomial(1.0, {0.0, 0.0, 0.0, -1.0});
    const auto e3 = estimate_order(cube, 0.0);
    CHECK(e3.order == doctest::Approx(3.0).epsilon(1e-3));
    CHECK_FALSE(e3.infinite_order_suspect);

    // -(t - 1/2)^2 (2 + sin t) with sin replaced by its degree-13 Taylor
    // polynomial (error < 1e-12 on [0, 1]); the order is 2 by construction.
    const std::vector<Complex> p{-0.5,
                                 1.75,
                                 -1.0,
                                 -0.9583333333333334,
                                 -0.16666666666666666,
                                 0.16458333333333333,
                                 0.008333333333333333,
                                 -0.008283730158730159,
                                 -0.0001984126984126984,
                                 0.00019772376543209877,
                                 2.7557319223985893e-06,
                                 -2.749468895302229e-06,
                                 -2.505210838544172e-08,
                                 2.5011960775849665e-08,
                                 1.6059043836821613e-10,
                                 -1.6059043836821613e-10};
    const auto e2 = estimate_order(TimeCoefficient::polynomial(1.0, p), 0.5);
    CHECK(e2.order == doctest::Approx(2.0).epsilon(1e-2));

    const auto flat = TimeCoefficient::named(1.0, coeff::NamedProfile::FlatExp, -1.0, 1.0);
    CHECK(estimate_order(flat, 0.0).infinite_order_suspect);
  }

  TEST_CASE("estimate_order rejects points where the coefficient does not vanish") {
    const auto c = TimeCoefficient::polynomial(1.0, {1.0, 1.0});
    try {
      estimate_order(c, 0.5);
      FAIL("expected NonVanishing");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonVanishing);
    }
  }

  TEST_CASE("vanishing profile validation") {
    VanishingProfile bad{0.5, 2.0, 2.0, 1.0, FactorSign::Negative};
    CHECK_THROWS_AS(bad.validate(true), Error);
    VanishingProfile zero_order{0.5, 0.0, 1.0, 1.0, FactorSign::Negative};
    CHECK_THROWS_AS(zero_order.validate(true), Error);
    CHECK_NOTHROW(zero_order.validate(false));
    VanishingProfile outside{1.5, 2.0, 1.0, 1.0, FactorSign::Negative};
    CHECK_THROWS_AS(TimeCoefficient::factored(1.0, {outside}, {1.0}), Error);
  }

  TEST_CASE("structural real and imaginary tests") {
    const auto c = TimeCoefficient::polynomial(1.0, {{1.0, 2.0}, {3.0, 0.0}});
    CHECK_FALSE(c.real_part_is_zero());
    CHECK_FALSE(c.imag_part_is_zero());
    const auto im = c.imaginary_only();
    CHECK(im.real_part_is_zero());
    CHECK(im.eval(0.5) == Complex{0.0, 2.0});
    CHECK(TimeCoefficient::constant(1.0, 4.0).imag_part_is_zero());
  }

  TEST_CASE("primitive vanishes at zero for every representation") {
    for (const auto& c : every_form()) CHECK(c.primitive(0.0) == Complex{0.0, 0.0});
  }

  TEST_CASE("primitive_diff is additive") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& c : every_form()) {
      for (int k = 0; k < 50; ++k) {
        const double s = u(rng), t = u(rng), w = u(rng);
        const Complex lhs = c.primitive_diff(s, t) + c.primitive_diff(t, w);
        CHECK(std::abs(lhs - c.primitive_diff(s, w)) <= 2e-10);
      }
    }
  }

  TEST_CASE("polynomial primitive matches the symbolic antiderivative") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<Complex> a{{0.3, -0.2}, {-0.7, 0.5}, {0.25, 0.9}, {-0.6, -0.1}};
    const auto c = TimeCoefficient::polynomial(1.0, a);
    for (int k = 0; k < 100; ++k) {
      const double t = u(rng);
      Complex exact = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) exact += a[j] * std::pow(t, static_cast<double>(j + 1)) / double(j + 1);
      CHECK(std::abs(c.primitive(t) - exact) <= 1e-13 * std::max(std::abs(exact), 1e-300));
    }
  }

  TEST_CASE("strictly negative imaginary part gives a decreasing imaginary primitive") {
    // Im a <= -eps on the grid => Im int_s^t a <= -eps (t - s) + tol.
    std::vector<Complex> v;
    for (int m = 0; m <= 64; ++m) {
      const double t = m / 64.0;
      v.push_back({std::sin(5.0 * t), -0.5 - 0.4 * std::cos(7.0 * t) * std::cos(7.0 * t)});
    }
    const auto c = TimeCoefficient::sampled(1.0, v);
    double eps = 1.0;
    for (int i = 0; i <= 4096; ++i) eps = std::min(eps, -c.eval(i / 4096.0).imag());
    REQUIRE(eps > 0.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      double s = u(rng), t = u(rng);
      if (s > t) std::swap(s, t);
      CHECK(c.primitive_diff(s, t).imag() <= -eps * (t - s) + 1e-10);
    }
  }
}
