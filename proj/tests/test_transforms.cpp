#include <cmath>

#include "doctest.h"
#include "hardy/registry.hpp"
#include "hardy/special_fn.hpp"
#include "hardy/transforms.hpp"

using namespace hardy;

TEST_CASE("fourier transform of a gaussian") {
  for (double b : {0.5, 1.0, 2.0}) {
    auto f = make_function("gaussian:b=" + std::to_string(b) + ",n=1");
    for (double xi : {0.0, 0.8, 2.5}) {
      cplx v = xform::fourier(f, {0}, &xi);
      CHECK(std::abs(v - std::pow(b, -0.5) * std::exp(-xi * xi / (2 * b))) < 1e-12);
    }
  }
}

TEST_CASE("hermite functions are fourier eigenfunctions") {
  for (int k = 0; k <= 6; ++k) {
    auto f = make_function("hermite:n=1,k=" + std::to_string(k));
    const cplx ev = std::pow(cplx(0, -1), k);
    for (double xi : {-1.5, 0.3, 2.0}) CHECK(std::abs(xform::fourier(f, {0}, &xi) - ev * special::hermite_phi(k, xi)) < 1e-12);
  }
}

TEST_CASE("hankel transform of a gaussian") {
  for (double delta : {0.0, 0.5, 1.0, 2.0}) {
    auto g = make_profile("gauss:c=0.8");
    for (double r : {0.0, 0.7, 3.0}) {
      const double ref = std::pow(1.6, -delta - 1) * std::exp(-r * r / 3.2);
      CHECK(std::abs(xform::hankel(g, delta, r) - ref) < 1e-12);
    }
  }
}

TEST_CASE("laguerre projections of a laguerre function") {
  auto g = make_profile("psi:k=3,delta=1");
  auto c = xform::laguerre_projections(g, 1.0, 6);
  // ||psi_k^delta||^2 = Gamma(k + delta + 1) / (2 k!)
  for (int k = 0; k <= 6; ++k) CHECK(std::abs(c[k] - (k == 3 ? std::tgamma(5.0) / (2 * std::tgamma(4.0)) : 0.0)) < 1e-12);
}

TEST_CASE("u_delta: series and integral routes agree") {
  auto g = make_profile("mix:c1=1,c2=2,w=0.5");
  auto coef = xform::u_delta_series_coeffs(g, 1.0, 4.0);
  for (cplx w : {cplx(0.5, 0.0), cplx(1.0, 2.0), cplx(-2.0, 3.0)}) {
    cplx s = xform::u_delta_series_eval(coef, 1.0, w);
    cplx q = xform::u_delta(g, 1.0, w, xform::URoute::integral);
    CHECK(std::abs(s - q) < 1e-9 * std::max(1.0, std::abs(s)));
  }
}

TEST_CASE("fourier-wigner transform: converged and fixed-resolution values agree") {
  auto f = make_function("shifted:b=0.6,c=0.5");
  auto g = make_function("gaussian:b=0.7,n=1");
  for (cplx z : {cplx(0.0), cplx(1.0, -0.5), cplx(-2.0, 1.5)}) {
    auto rep = xform::fourier_wigner_report(f, g, &z);
    CHECK(rep.converged(1e-10));
    double x = z.real(), y = z.imag();
    CHECK(std::abs(xform::fourier_wigner_fixed(f, g, &x, &y, 256) - rep.value) < 1e-12);
  }
}

TEST_CASE("bargmann transform of the ground state is constant") {
  auto f = make_function("hermite:n=1,k=0");
  const cplx b0 = xform::bargmann_1d(f, 0.0);
  for (cplx z : {cplx(1.0, 0.5), cplx(-2.0, 1.0)}) CHECK(std::abs(xform::bargmann_1d(f, z) - b0) < 1e-11);
}

TEST_CASE("cauchy taylor coefficients of the exponential") {
  auto c = xform::taylor_coeffs_cauchy([](cplx z) { return std::exp(z); }, 1.0, 10);
  for (int k = 0; k < 10; ++k) CHECK(std::abs(c[k] - 1.0 / std::tgamma(k + 1.0)) < 1e-14);
}

TEST_CASE("transforms reject invalid input") {
  auto f = make_function("gaussian:b=0.5,n=2");
  auto g = make_function("gaussian:b=0.5,n=1");
  cplx z[2] = {0.0, 0.0};
  CHECK_THROWS_AS(xform::fourier_wigner(f, g, z), std::invalid_argument);
  CHECK_THROWS(xform::hankel(make_profile("gauss:c=1"), -0.7, 1.0));
}
