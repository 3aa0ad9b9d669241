#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hardy/common.hpp"

namespace hardy {

// A registered closed-form test function on R^n.
struct FunctionSpec {
  std::string id;      // canonical "family:key=val,..."
  std::string family;
  int n = 1;
  std::map<std::string, double> params;
  std::function<cplx(const double*)> eval;
  double gamma = 0.0;      // |f(x)| <= C exp(-gamma |x|^2)
  double gamma_hat = 0.0;  // same for the Fourier transform, 0 if unknown
  bool even = false, odd = false;
  bool radial = false;
  int harmonic_max = -1;  // n = 2: largest circular-harmonic degree, -1 if infinite
  double norm_sq = std::numeric_limits<double>::quiet_NaN();

  cplx operator()(const double* x) const { return eval(x); }
  double param(const std::string& k) const;
  // envelope exponent of the Hardy pair (f, f^)
  double hardy_gamma() const { return gamma_hat > 0.0 ? std::min(gamma, gamma_hat) : gamma; }
};

// g(s) on [0, inf) with |g(s)| <= C exp(-gamma s^2).
struct RadialProfile {
  std::string id;
  std::function<cplx(double)> eval;
  double gamma = 0.0;
  cplx operator()(double s) const { return eval(s); }
};

struct ParsedName {
  std::string family;
  std::map<std::string, double> params;
};
ParsedName parse_name(const std::string& s);

FunctionSpec make_function(const std::string& spec);
RadialProfile make_profile(const std::string& spec);

struct FamilyInfo {
  std::string name;
  std::string params;
  std::string description;
};
std::vector<FamilyInfo> function_families();
std::vector<FamilyInfo> profile_families();

// Registered Hardy-class battery used by the verification suites.
std::vector<std::string> hardy_battery(int n);

}  // namespace hardy
