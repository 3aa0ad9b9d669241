#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "hardy/quadrature.hpp"

using namespace hardy;
using namespace hardy::quad;

TEST_CASE("gauss-hermite integrates polynomial moments exactly") {
  auto r = gauss_hermite(30);
  double m0 = 0, m2 = 0, m4 = 0, plain = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double x = r.nodes[i];
    m0 += r.weights[i];
    m2 += r.weights[i] * x * x;
    m4 += r.weights[i] * x * x * x * x;
    plain += r.unweighted[i] * std::exp(-x * x);
  }
  CHECK(m0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-14));
  CHECK(m4 == doctest::Approx(3 * std::sqrt(kPi) / 4).epsilon(1e-13));
  CHECK(plain == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("mapped legendre is exact for degree 2N-1") {
  auto r = mapped_legendre(6, -1.0, 3.0);
  cplx s = integrate_1d(r, [](double x) { return std::pow(x, 11); });
  CHECK(s.real() == doctest::Approx((std::pow(3.0, 12) - 1.0) / 12.0).epsilon(1e-13));
}

TEST_CASE("radial rule carries the s^(2 delta + 1) weight") {
  for (double delta : {-0.25, 0.0, 1.0, 2.5}) {
    auto r = radial_rule(delta, 12.0, 200);
    cplx s = integrate_1d(r, [](double x) { return std::exp(-x * x); });
    CHECK(s.real() == doctest::Approx(0.5 * std::tgamma(delta + 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("sphere rules have the right total measure") {
  auto s1 = sphere_rule(1, 32);
  auto s3 = sphere_rule(2, 16);
  double w1 = 0, w3 = 0;
  for (double w : s1.weights) w1 += w;
  for (double w : s3.weights) w3 += w;
  CHECK(w1 == doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(w3 == doctest::Approx(2 * kPi * kPi).epsilon(1e-13));
  // |w_1|^2 averages to 1/2 on S^3
  double m = 0;
  for (std::size_t i = 0; i < s3.weights.size(); ++i) {
    double v[4];
    s3.node(i, v);
    m += s3.weights[i] * (v[0] * v[0] + v[1] * v[1]);
  }
  CHECK(m / w3 == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("gaussian tensor rule integrates a 2-D gaussian") {
  auto r = gaussian_tensor_rule(1, 40, 0.5);
  double s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double x[2];
    r.node(i, x);
    s += r.weight(i) * std::exp(-(x[0] * x[0] + x[1] * x[1]));
  }
  CHECK(s == doctest::Approx(kPi).epsilon(1e-13));
}

TEST_CASE("rules survive a json round trip bit for bit") {
  auto r = mapped_legendre(17, 0.5, 2.0);
  auto back = rule_from_json(rule_to_json(r));
  REQUIRE(back.nodes.size() == r.nodes.size());
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    CHECK(back.nodes[i] == r.nodes[i]);
    CHECK(back.weights[i] == r.weights[i]);
  }
}

TEST_CASE("cached rules match freshly computed ones") {
  auto dir = std::filesystem::temp_directory_path() / "hardy_rule_cache_test";
  std::filesystem::remove_all(dir);
  const std::string old = cache_dir();
  set_cache_dir(dir.string());
  auto a = gauss_hermite(77);
  auto b = gauss_hermite(77);
  set_cache_dir(old);
  std::filesystem::remove_all(dir);
  for (std::size_t i = 0; i < a.nodes.size(); ++i) CHECK(a.nodes[i] == b.nodes[i]);
}

TEST_CASE("truncation radius keeps the requested digits") {
  const double R = truncation_radius(0.5, 16);
  CHECK(std::exp(-0.5 * R * R) <= 1.000001e-16);
}

TEST_CASE("convergence report") {
  auto rep = make_report(1.0, 1.0 + 1e-12, 1.0, 64);
  CHECK(rep.converged(1e-10));
  CHECK_FALSE(rep.converged(1e-14));
}

TEST_CASE("quadrature rejects invalid sizes") {
  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
  CHECK_THROWS_AS(mapped_legendre(10, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(radial_rule(-0.5, 1.0, 10), std::invalid_argument);
}
