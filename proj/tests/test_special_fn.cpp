#include <cmath>

#include "doctest.h"
#include "hardy/special_fn.hpp"

using namespace hardy;
using namespace hardy::special;

TEST_CASE("hermite functions: low orders in closed form") {
  for (double x : {-2.5, -0.3, 0.0, 1.1, 4.0}) {
    const double p0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    CHECK(hermite_phi(0, x) == doctest::Approx(p0).epsilon(1e-14));
    CHECK(hermite_phi(1, x) == doctest::Approx(std::sqrt(2.0) * x * p0).epsilon(1e-14));
    CHECK(hermite_phi(2, x) == doctest::Approx((2 * x * x - 1) / std::sqrt(2.0) * p0).epsilon(1e-13));
  }
}

TEST_CASE("hermite functions: bounded by the Cramer constant") {
  for (int k : {0, 5, 50, 500, 3000})
    for (double x = -80.0; x <= 80.0; x += 0.37) CHECK(std::fabs(hermite_phi(k, x)) <= std::pow(kPi, -0.25) + 1e-12);
}

TEST_CASE("hermite functions: eigenfunctions of the harmonic oscillator") {
  const double h = 1e-3;
  for (int k : {0, 3, 10, 25})
    for (double x : {-3.0, -0.7, 0.2, 1.9, 4.5}) {
      const double d2 = (hermite_phi(k, x + h) - 2 * hermite_phi(k, x) + hermite_phi(k, x - h)) / (h * h);
      const double lhs = -d2 + x * x * hermite_phi(k, x);
      CHECK(lhs == doctest::Approx((2 * k + 1) * hermite_phi(k, x)).epsilon(1e-5).scale(1e-4));
    }
}

TEST_CASE("laguerre polynomials: generating function") {
  const double t = 0.3;
  for (double delta : {0.0, 0.5, 1.0, 2.5})
    for (double x : {0.0, 0.4, 2.0, 5.0}) {
      double sum = 0.0;
      for (int k = 0; k <= 80; ++k) sum += laguerre_L(k, delta, x) * std::pow(t, k);
      const double ref = std::pow(1 - t, -delta - 1) * std::exp(-x * t / (1 - t));
      CHECK(sum == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("laguerre functions and varphi agree with the polynomials") {
  for (int k : {0, 1, 7, 30})
    for (double s : {0.0, 0.5, 2.0, 3.3}) {
      CHECK(laguerre_psi(k, 1.0, s) == doctest::Approx(laguerre_L(k, 1.0, s * s) * std::exp(-0.5 * s * s)).epsilon(1e-11));
      const double z2 = 2.0 * s * s;
      CHECK(varphi(k, 2, z2) == doctest::Approx(laguerre_psi(k, 1.0, s)).epsilon(1e-14));
    }
}

TEST_CASE("bessel ratio: half-integer order is elementary") {
  // J_{1/2}(w) / w^{1/2} = sqrt(2/pi) sin(w) / w
  for (cplx w : {cplx(0.0), cplx(1e-3), cplx(0.7), cplx(3.0, 0.0), cplx(9.0, 0.0), cplx(30.0, 0.0), cplx(2.0, 1.5),
                 cplx(12.0, -3.0), cplx(-40.0, 5.0), cplx(0.5, 20.0)}) {
    const cplx ref = std::abs(w) == 0.0 ? cplx(std::sqrt(2.0 / kPi)) : std::sqrt(2.0 / kPi) * std::sin(w) / w;
    const cplx v = bessel_ratio(0.5, w);
    CHECK(std::abs(v - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("bessel ratio: integer order against the standard library") {
  for (double x : {0.5, 3.0, 7.5, 25.0, 60.0}) CHECK(bessel_ratio(1.0, x).real() == doctest::Approx(std::cyl_bessel_j(1.0, x) / x).epsilon(1e-12).scale(1e-14));
}

TEST_CASE("modified bessel K at half-integer order") {
  for (double x : {1e-3, 0.1, 1.0, 5.0, 20.0}) CHECK(bessel_k(0.5, x) == doctest::Approx(std::sqrt(kPi / (2 * x)) * std::exp(-x)).epsilon(1e-13));
}

TEST_CASE("c constants and log gamma") {
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-15));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-15));
  // m = k: Gamma(n/2 + 2k) / Gamma(2k + 1)
  for (int k : {1, 4, 9}) CHECK(c_constant(k, k, 2) == doctest::Approx(std::exp(std::lgamma(1.0 + 2 * k) - std::lgamma(2.0 * k + 1))).epsilon(1e-13));
  CHECK(c_constant(0, 0, 2) == doctest::Approx(1.0));
}

TEST_CASE("circular harmonics are orthonormal on the circle") {
  const int N = 64;
  for (int m1 = 0; m1 <= 3; ++m1)
    for (int m2 = 0; m2 <= 3; ++m2)
      for (int j1 = 1; j1 <= harmonic_dim(m1); ++j1)
        for (int j2 = 1; j2 <= harmonic_dim(m2); ++j2) {
          cplx s = 0.0;
          for (int i = 0; i < N; ++i) {
            const double th = 2 * kPi * i / N;
            s += circular_harmonic(m1, j1, th) * std::conj(circular_harmonic(m2, j2, th)) * (2 * kPi / N);
          }
          CHECK(std::abs(s - (m1 == m2 && j1 == j2 ? 1.0 : 0.0)) < 1e-13);
        }
}

TEST_CASE("special functions reject invalid arguments") {
  CHECK_THROWS_AS(hermite_phi(-1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(laguerre_psi(2, -0.6, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_ratio(0.0, cplx(200.0)), std::invalid_argument);
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(c_constant(2, 3, 2), std::invalid_argument);
}
