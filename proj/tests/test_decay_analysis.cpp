#include <cmath>

#include "doctest.h"
#include "hardy/decay_analysis.hpp"

using namespace hardy;
using namespace hardy::decay;

namespace {
expansion::CoefficientTable synthetic(double C, double p, double t, int n, int K) {
  expansion::CoefficientTable tab;
  tab.n = n;
  for (int k = 0; k <= K; ++k) {
    const double x = 2.0 * k + n;
    tab.push(k, C * std::pow(x, p) * std::exp(-x * t / 2), 0.0);
  }
  return tab;
}
}  // namespace

TEST_CASE("decay fit recovers a synthetic rate") {
  auto tab = synthetic(3.0, 0.25, 0.4, 2, 60);
  auto fit = decay_fit(tab, 2, PMode::free);
  CHECK(fit.t == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(fit.p == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(fit.C == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.implied_a == doctest::Approx(std::tanh(0.8)).epsilon(1e-8));
  auto fixed = decay_fit(tab, 2, PMode::fixed, 0.25);
  CHECK(fixed.t == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("decay fit needs enough points") {
  auto tab = synthetic(1.0, 0.0, 0.5, 1, 3);
  CHECK_THROWS_AS(decay_fit(tab, 1, PMode::free), FitError);
}

TEST_CASE("bound check holds below the true rate and fails above it") {
  auto tab = synthetic(1.0, 0.0, 0.5, 1, 60);
  CHECK(bound_check(tab, 1, 0.0, 0.45).holds);
  CHECK_FALSE(bound_check(tab, 1, 0.0, 0.6).holds);
}

TEST_CASE("a single hermite function is a degenerate case") {
  auto r = theorem_check(make_function("hermite:n=1,k=5"), Theorem::T1_1);
  CHECK(r.status == "degenerate");
}

TEST_CASE("gaussian envelope exponent") {
  auto e = hardy_envelope(make_function("gaussian:b=0.5,n=1"));
  CHECK(e.gamma_star == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(e.a_half() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("theorem names round trip") {
  for (auto t : {Theorem::T1_1, Theorem::T1_2, Theorem::T1_3, Theorem::T1_4, Theorem::T4_1, Theorem::T5_2})
    CHECK(theorem_from_string(to_string(t)) == t);
  CHECK_THROWS_AS(theorem_from_string("T9_9"), std::invalid_argument);
}
