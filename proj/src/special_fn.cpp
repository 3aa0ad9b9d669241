#include "hardy/special_fn.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hardy::special {

namespace {

constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);

void check_order(int k) {
  if (k < 0 || k > kMaxOrder) throw std::invalid_argument("order out of range: " + std::to_string(k));
}

// Turns a (mantissa, log-scale) pair back into a double, letting it
// underflow gracefully.
struct Scaled {
  double logscale;
  double factor;
  explicit Scaled(double ls) : logscale(ls), factor(std::exp(ls)) {}
  void shift(double d) {
    logscale += d;
    factor = std::exp(logscale);
  }
  double apply(double p) const {
    if (p == 0.0) return 0.0;
    if (factor > 1e-290 && factor < 1e290) return p * factor;
    return std::copysign(std::exp(std::log(std::fabs(p)) + logscale), p);
  }
};

}  // namespace

void hermite_phi_all(int kmax, double x, double* out) {
  check_order(kmax);
  if (!std::isfinite(x)) throw std::invalid_argument("hermite_phi: non-finite x");
  Scaled sc(-0.5 * x * x - 0.25 * std::log(kPi));
  double pm1 = 0.0, p = 1.0;
  out[0] = sc.apply(p);
  for (int k = 0; k < kmax; ++k) {
    double pn = x * std::sqrt(2.0 / (k + 1)) * p - std::sqrt(double(k) / (k + 1)) * pm1;
    pm1 = p;
    p = pn;
    if (std::fabs(p) > kRescale) {
      p /= kRescale;
      pm1 /= kRescale;
      sc.shift(kLogRescale);
    }
    out[k + 1] = sc.apply(p);
  }
}

std::vector<double> hermite_phi_all(int kmax, double x) {
  std::vector<double> v(kmax + 1);
  hermite_phi_all(kmax, x, v.data());
  return v;
}

double hermite_phi(int k, double x) {
  check_order(k);
  std::vector<double> v(k + 1);
  hermite_phi_all(k, x, v.data());
  return v[k];
}

SpecialValue hermite_phi_value(int k, double x) {
  double v = hermite_phi(k, x);
  // recurrence error grows roughly like sqrt(k) ulps of the envelope
  double env = std::min(1.0, std::exp(-0.5 * x * x + (k + 1) * std::log(1.0 + std::fabs(x))));
  return {v, 4e-16 * std::sqrt(k + 1.0) * std::max(std::fabs(v), env)};
}

double hermite_phi_multi(const std::vector<int>& alpha, const std::vector<double>& x) {
  if (alpha.size() != x.size() || alpha.empty()) throw std::invalid_argument("hermite_phi_multi: dimension mismatch");
  double r = 1.0;
  for (size_t i = 0; i < alpha.size(); ++i) r *= hermite_phi(alpha[i], x[i]);
  return r;
}

double laguerre_L(int k, double delta, double x) {
  check_order(k);
  if (k == 0) return 1.0;
  double lm1 = 1.0, l = delta + 1.0 - x;
  for (int j = 1; j < k; ++j) {
    double ln = ((2.0 * j + delta + 1.0 - x) * l - (j + delta) * lm1) / (j + 1.0);
    lm1 = l;
    l = ln;
  }
  return l;
}

void laguerre_psi_all(int kmax, double delta, double s, double* out) {
  check_order(kmax);
  if (!(delta > -0.5)) throw std::invalid_argument("laguerre: delta must exceed -1/2");
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("laguerre: s must be finite and >= 0");
  const double x = s * s;
  Scaled sc(-0.5 * x);
  double lm1 = 0.0, l = 1.0;
  out[0] = sc.apply(l);
  for (int j = 0; j < kmax; ++j) {
    double ln = j == 0 ? delta + 1.0 - x : ((2.0 * j + delta + 1.0 - x) * l - (j + delta) * lm1) / (j + 1.0);
    lm1 = l;
    l = ln;
    if (std::fabs(l) > kRescale) {
      l /= kRescale;
      lm1 /= kRescale;
      sc.shift(kLogRescale);
    }
    out[j + 1] = sc.apply(l);
  }
}

double laguerre_psi(int k, double delta, double s) {
  check_order(k);
  std::vector<double> v(k + 1);
  laguerre_psi_all(k, delta, s, v.data());
  return v[k];
}

void varphi_all(int kmax, int n, double abs_z_sq, double* out) {
  if (n < 1) throw std::invalid_argument("varphi: n must be >= 1");
  laguerre_psi_all(kmax, n - 1.0, std::sqrt(0.5 * abs_z_sq), out);
}

double varphi(int k, int n, double abs_z_sq) {
  check_order(k);
  std::vector<double> v(k + 1);
  varphi_all(k, n, abs_z_sq, v.data());
  return v[k];
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("log_gamma: x must be > 0");
  int sign = 0;
  return lgamma_r(x, &sign);
}

namespace {

cplx bessel_series(double delta, cplx w) {
  const cplx q = -0.25 * w * w;
  cplx term = std::exp(-log_gamma(delta + 1.0));
  cplx sum = term;
  const double jmin = 0.5 * std::abs(w);
  for (int j = 1; j < 400; ++j) {
    term *= q / (j * (delta + j));
    sum += term;
    if (j > jmin && std::abs(term) < 1e-18 * std::abs(sum)) return std::pow(2.0, -delta) * sum;
  }
  throw NumericalError("bessel_ratio: series did not converge");
}

// Backward recurrence normalized by
//   (z/2)^nu e^{-i s z} = sum_k a_k (-i s)^k J_{nu+k}(z),  s = +-1,
// a_k = Gamma(nu) (nu+k) Gamma(k+2nu) / (k! Gamma(2nu)).
cplx bessel_miller(double nu, cplx z) {
  const double s = z.imag() >= 0.0 ? 1.0 : -1.0;
  const cplx mis(0.0, -s);
  const double az = std::abs(z);
  const int N = int(az + 12.0 * std::cbrt(az) + 40.0);
  // a_k for k = 0..N
  std::vector<double> a(N + 1);
  a[0] = std::exp(log_gamma(nu + 1.0));
  double B = 2.0 * a[0];
  for (int k = 1; k <= N; ++k) {
    if (k > 1) B *= (k - 1.0 + 2.0 * nu) / k;
    a[k] = (nu + k) * B;
  }
  std::vector<cplx> pw(N + 1);
  pw[0] = 1.0;
  for (int k = 1; k <= N; ++k) pw[k] = pw[k - 1] * mis;

  cplx fp1 = 0.0, f = 1e-300;
  cplx S = a[N] * pw[N] * f;
  for (int k = N; k > 0; --k) {
    cplx fm1 = 2.0 * (nu + k) / z * f - fp1;
    fp1 = f;
    f = fm1;
    S += a[k - 1] * pw[k - 1] * f;
    if (std::abs(f) > 1e250) {
      f *= 1e-250;
      fp1 *= 1e-250;
      S *= 1e-250;
    }
  }
  return std::pow(2.0, -nu) * std::exp(mis * z) * f / S;
}

}  // namespace

cplx bessel_ratio(double delta, cplx w) {
  if (!(delta > -0.5)) throw std::invalid_argument("bessel_ratio: delta must exceed -1/2");
  const double aw = std::abs(w);
  if (!std::isfinite(aw)) throw std::invalid_argument("bessel_ratio: non-finite argument");
  if (aw > 100.0) throw std::invalid_argument("bessel_ratio: |w| > 100 outside supported regime");
  if (aw - std::fabs(w.imag()) <= 4.0) return bessel_series(delta, w);
  if (w.imag() == 0.0) {
    // even function of w
    const double x = std::fabs(w.real());
    return std::cyl_bessel_j(delta, x) / std::pow(x, delta);
  }
  // even in w: fold into the right half plane
  return bessel_miller(delta, w.real() < 0.0 ? -w : w);
}

double bessel_k(double delta, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("bessel_k: x must be > 0");
  if (!(delta >= 0.0)) throw std::invalid_argument("bessel_k: delta must be >= 0");
  return boost::math::cyl_bessel_k(delta, x);
}

double c_constant(int k, int m, int n) {
  if (k < 0 || m < 0 || m > k) throw std::invalid_argument("c_constant: need 0 <= m <= k");
  if (n < 1) throw std::invalid_argument("c_constant: n must be >= 1");
  double l = 2.0 * (k - m) * std::log(2.0) + log_gamma(k - m + 1.0) + log_gamma(0.5 * n + k + m) - log_gamma(2.0 * k + 1.0);
  return std::exp(l);
}

cplx circular_harmonic(int m, int j, double theta) {
  if (m < 0) throw std::invalid_argument("circular_harmonic: m must be >= 0");
  if (j < 1 || j > harmonic_dim(m)) throw std::invalid_argument("circular_harmonic: j out of range");
  if (m == 0) return 1.0 / std::sqrt(2.0 * kPi);
  return (j == 1 ? std::cos(m * theta) : std::sin(m * theta)) / std::sqrt(kPi);
}

}  // namespace hardy::special
