#include <cmath>

#include "doctest.h"
#include "hardy/hermite_analysis.hpp"

using namespace hardy;
using namespace hardy::expansion;

TEST_CASE("a hermite function lives on a single level") {
  auto f = make_function("hermite:n=2,a1=2,a2=1");
  auto t = proj_norms_direct(f, 6);
  for (int k = 0; k <= 6; ++k) CHECK(t.value[k] == doctest::Approx(k == 3 ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("gaussian levels in closed form") {
  // exp(-b x^2/2): ||P_k f||^2 = 2 sqrt(pi) / sqrt(1+b) * C(2j, j) 4^{-j} ((1-b)/(1+b))^{2j} at k = 2j
  const double b = 0.5;
  auto f = make_function("gaussian:b=0.5,n=1");
  auto t = proj_norms_direct(f, 12);
  const double q = (1 - b) / (1 + b);
  for (int k = 0; k <= 12; ++k) {
    double ref = 0.0;
    if (k % 2 == 0) {
      int j = k / 2;
      ref = std::sqrt(2 * std::sqrt(kPi) / (1 + b) * std::exp(std::lgamma(2.0 * j + 1) - 2 * std::lgamma(j + 1.0)) * std::pow(0.25, j) * std::pow(q, 2 * j));
    }
    CHECK(std::fabs(t.value[k] - ref) <= 1e-10 * std::max(ref, 1e-6));
  }
}

TEST_CASE("plancherel: level norms add up to the L2 norm") {
  for (auto id : {"gaussian:b=0.7,n=1", "harmonic:m=2,b=0.6", "example44"}) {
    auto f = make_function(id);
    CHECK(plancherel_sum(proj_norms_direct(f, kDirectMax)) == doctest::Approx(f.norm_sq).epsilon(1e-10));
  }
}

TEST_CASE("direct, wigner and spherical routes agree") {
  auto f = make_function("harmonic:m=2,b=0.6");
  auto d = proj_norms_direct(f, 10);
  auto w = proj_norms_wigner(f, 10);
  auto s = proj_norms_spherical(f, 10);
  for (int k = 0; k <= 10; ++k) {
    CHECK(std::fabs(w.value[k] - d.value[k]) < 1e-6);
    CHECK(std::fabs(s.value[k] - d.value[k]) < 1e-8);
  }
}

TEST_CASE("wigner sphere mean at the origin") {
  // V(f,f)(0) = (2 pi)^{-n/2} ||f||^2 and the sphere mean at r = 0 is |S^{2n-1}| times that
  auto f = make_function("gaussian:b=0.5,n=2");
  auto t = proj_norms_direct(f, 40);
  CHECK(wigner_sphere_mean(t, 0.0) == doctest::Approx(2 * kPi * kPi / (2 * kPi) * f.norm_sq).epsilon(1e-10));
}

TEST_CASE("coefficient tables serialize") {
  auto t = proj_norms_direct(make_function("gaussian:b=0.5,n=1"), 3);
  CHECK(t.to_csv().find("k,") == 0);
  CHECK(t.to_json().find("\"function\"") != std::string::npos);
}

TEST_CASE("routes reject unsupported input") {
  CHECK_THROWS_AS(route_from_string("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(proj_norms_spherical(make_function("gaussian:b=0.5,n=1"), 4), std::invalid_argument);
}
