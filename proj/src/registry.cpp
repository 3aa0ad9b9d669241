#include "hardy/registry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hardy/special_fn.hpp"

namespace hardy {

double FunctionSpec::param(const std::string& k) const {
  auto it = params.find(k);
  if (it == params.end()) throw std::invalid_argument(id + ": missing parameter " + k);
  return it->second;
}

ParsedName parse_name(const std::string& s) {
  ParsedName p;
  auto colon = s.find(':');
  p.family = s.substr(0, colon);
  if (p.family.empty()) throw std::invalid_argument("empty function name");
  if (colon == std::string::npos) return p;
  std::stringstream ss(s.substr(colon + 1));
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    if (kv.empty()) continue;
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad parameter '" + kv + "' in " + s);
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    size_t used = 0;
    double v;
    try {
      v = std::stod(val, &used);
    } catch (...) {
      throw std::invalid_argument("bad value '" + val + "' in " + s);
    }
    if (used != val.size() || !std::isfinite(v)) throw std::invalid_argument("bad value '" + val + "' in " + s);
    p.params[key] = v;
  }
  return p;
}

namespace {

using Params = std::map<std::string, double>;

double take(Params& given, Params& used, const std::string& key, double dflt) {
  auto it = given.find(key);
  double v = it == given.end() ? dflt : it->second;
  if (it != given.end()) given.erase(it);
  used[key] = v;
  return v;
}

int take_int(Params& given, Params& used, const std::string& key, int dflt, int lo, int hi) {
  double v = take(given, used, key, dflt);
  if (v != std::floor(v) || v < lo || v > hi)
    throw std::invalid_argument("parameter " + key + " must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return int(v);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string canonical(const std::string& family, const Params& used) {
  std::string s = family;
  char sep = ':';
  for (const auto& [k, v] : used) {
    s += sep + k + "=" + fmt(v);
    sep = ',';
  }
  return s;
}

void check_envelope(const FunctionSpec& f) {
  const int m = f.n == 1 ? 201 : 41;
  double sup = 0.0;
  std::vector<double> x(f.n);
  long total = f.n == 1 ? m : long(m) * m;
  for (long i = 0; i < total; ++i) {
    x[0] = -10.0 + 20.0 * (i % m) / (m - 1);
    if (f.n == 2) x[1] = -10.0 + 20.0 * (i / m) / (m - 1);
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    cplx val = f.eval(x.data());
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) throw std::invalid_argument(f.id + ": evaluator not finite");
    sup = std::max(sup, std::abs(val) * std::exp(f.gamma * r2));
  }
  if (!(sup < 1e30)) throw std::invalid_argument(f.id + ": declared envelope violated on sample grid");
}

}  // namespace

FunctionSpec make_function(const std::string& spec) {
  ParsedName pn = parse_name(spec);
  Params given = pn.params, used;
  FunctionSpec f;
  f.family = pn.family;
  if (pn.family == "gaussian") {
    double b = take(given, used, "b", 0.5);
    int n = take_int(given, used, "n", 1, 1, 2);
    if (!(b > 0.0)) throw std::invalid_argument("gaussian: b must be > 0");
    f.n = n;
    f.eval = [b, n](const double* x) {
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
      return cplx(std::exp(-0.5 * b * r2));
    };
    f.gamma = 0.5 * b;
    f.gamma_hat = 0.5 / b;
    f.even = f.radial = true;
    f.harmonic_max = 0;
    f.norm_sq = std::pow(kPi / b, 0.5 * n);
  } else if (pn.family == "hermite") {
    int n = take_int(given, used, "n", 1, 1, 2);
    f.n = n;
    int deg;
    if (n == 1) {
      int k = take_int(given, used, "k", 0, 0, 200);
      deg = k;
      f.eval = [k](const double* x) { return cplx(special::hermite_phi(k, x[0])); };
    } else {
      int a1 = take_int(given, used, "a1", 0, 0, 200), a2 = take_int(given, used, "a2", 0, 0, 200);
      deg = a1 + a2;
      f.eval = [a1, a2](const double* x) { return cplx(special::hermite_phi(a1, x[0]) * special::hermite_phi(a2, x[1])); };
    }
    // as for psi: the 20-digit truncation radius must clear the polynomial tail
    double s = std::sqrt(2.0 * deg + 1.0);
    while (std::fabs(special::hermite_phi(deg, s)) > 1e-20) s += 0.25;
    f.gamma = deg == 0 ? 0.5 : std::min(0.45, 20.0 * std::log(10.0) / (s * s));
    f.gamma_hat = f.gamma;
    f.even = deg % 2 == 0;
    f.odd = !f.even;
    f.radial = deg == 0;
    f.harmonic_max = n == 2 ? deg : -1;
    f.norm_sq = 1.0;
  } else if (pn.family == "example44") {
    double a = take(given, used, "a", 1.0 / std::sqrt(2.0));
    if (!(a > 0.0)) throw std::invalid_argument("example44: a must be > 0");
    f.n = 2;
    f.eval = [a](const double* x) { return std::exp(cplx(-0.5 * a * (x[0] * x[0] + x[1] * x[1]), -a * x[0] * x[1])); };
    f.gamma = 0.5 * a;
    f.gamma_hat = 0.25 / a;
    f.even = true;
    f.norm_sq = kPi / a;
  } else if (pn.family == "harmonic" || pn.family == "cplxharmonic") {
    int m = take_int(given, used, "m", 2, 0, 40);
    double b = take(given, used, "b", 0.6);
    if (!(b > 0.0)) throw std::invalid_argument(pn.family + ": b must be > 0");
    bool real = pn.family == "harmonic";
    f.n = 2;
    f.eval = [m, b, real](const double* x) {
      cplx p = std::pow(cplx(x[0], x[1]), m);
      if (m == 0) p = 1.0;
      if (real) p = p.real();
      return p * std::exp(-0.5 * b * (x[0] * x[0] + x[1] * x[1]));
    };
    f.gamma = 0.5 * b;
    f.gamma_hat = 0.5 / b;
    f.even = m % 2 == 0;
    f.odd = !f.even;
    f.radial = m == 0;
    f.harmonic_max = m;
    double rad = 0.5 * std::exp(special::log_gamma(m + 1.0)) / std::pow(b, m + 1.0);  // int r^{2m+1} e^{-b r^2}
    f.norm_sq = (real && m > 0 ? kPi : 2.0 * kPi) * rad;
  } else if (pn.family == "shifted") {
    double b = take(given, used, "b", 0.6);
    double c = take(given, used, "c", 0.5);
    if (!(b > 0.0)) throw std::invalid_argument("shifted: b must be > 0");
    f.n = 1;
    f.eval = [b, c](const double* x) { return cplx(std::exp(-0.5 * b * (x[0] - c) * (x[0] - c))); };
    f.gamma = 0.4 * b;
    f.gamma_hat = 0.5 / b;
    f.norm_sq = std::sqrt(kPi / b);
  } else {
    throw std::invalid_argument("unknown function: " + pn.family);
  }
  if (!given.empty()) throw std::invalid_argument("unknown parameter '" + given.begin()->first + "' for " + pn.family);
  f.params = used;
  f.id = canonical(pn.family, used);
  check_envelope(f);
  return f;
}

RadialProfile make_profile(const std::string& spec) {
  ParsedName pn = parse_name(spec);
  Params given = pn.params, used;
  RadialProfile g;
  if (pn.family == "gauss") {
    double c = take(given, used, "c", 1.0);
    if (!(c > 0.0)) throw std::invalid_argument("gauss: c must be > 0");
    g.eval = [c](double s) { return cplx(std::exp(-c * s * s)); };
    g.gamma = c;
  } else if (pn.family == "psi") {
    int k = take_int(given, used, "k", 0, 0, 200);
    double d = take(given, used, "delta", 0.0);
    if (!(d > -0.5)) throw std::invalid_argument("psi: delta must exceed -1/2");
    g.eval = [k, d](double s) { return cplx(special::laguerre_psi(k, d, s)); };
    // the polynomial factor pushes the decay out past the turning point;
    // pick gamma so the 20-digit truncation radius clears it
    double peak = std::max(1.0, std::fabs(special::laguerre_psi(k, d, 0.0)));
    double s = std::sqrt(4.0 * k + 2.0 * d + 2.0);
    while (std::fabs(special::laguerre_psi(k, d, s)) > 1e-20 * peak) s += 0.25;
    g.gamma = k == 0 ? 0.5 : std::min(0.45, 20.0 * std::log(10.0) / (s * s));
  } else if (pn.family == "mix") {
    double c1 = take(given, used, "c1", 1.0), c2 = take(given, used, "c2", 2.0), w = take(given, used, "w", 0.5);
    if (!(c1 > 0.0 && c2 > 0.0)) throw std::invalid_argument("mix: c1, c2 must be > 0");
    g.eval = [c1, c2, w](double s) { return cplx(std::exp(-c1 * s * s) + w * std::exp(-c2 * s * s)); };
    g.gamma = std::min(c1, c2);
  } else {
    throw std::invalid_argument("unknown radial profile: " + pn.family);
  }
  if (!given.empty()) throw std::invalid_argument("unknown parameter '" + given.begin()->first + "' for " + pn.family);
  g.id = canonical(pn.family, used);
  return g;
}

std::vector<FamilyInfo> function_families() {
  return {
      {"gaussian", "b=0.5,n=1", "exp(-b|x|^2/2) on R^n, n in {1,2}"},
      {"hermite", "n=1,k=0 | n=2,a1=0,a2=0", "normalized Hermite function Phi_alpha"},
      {"example44", "a=0.7071067811865476", "exp(-(a/2)(x1^2+x2^2+2i x1 x2)) on R^2"},
      {"harmonic", "m=2,b=0.6", "Re((x1+ix2)^m) exp(-b|x|^2/2) on R^2"},
      {"cplxharmonic", "m=2,b=0.6", "(x1+ix2)^m exp(-b|x|^2/2) on R^2"},
      {"shifted", "b=0.6,c=0.5", "exp(-b(x-c)^2/2) on R"},
  };
}

std::vector<FamilyInfo> profile_families() {
  return {
      {"gauss", "c=1", "exp(-c s^2)"},
      {"psi", "k=0,delta=0", "Laguerre function L_k^delta(s^2) exp(-s^2/2)"},
      {"mix", "c1=1,c2=2,w=0.5", "exp(-c1 s^2) + w exp(-c2 s^2)"},
  };
}

std::vector<std::string> hardy_battery(int n) {
  if (n == 1) return {"gaussian:b=0.5,n=1", "gaussian:b=0.7,n=1", "shifted:b=0.6,c=0.5"};
  return {"gaussian:b=0.5,n=2", "harmonic:m=2,b=0.6", "example44"};
}

}  // namespace hardy
