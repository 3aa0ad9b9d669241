#pragma once

#include <vector>

#include "hardy/common.hpp"

namespace hardy::special {

struct SpecialValue {
  cplx value;
  double abs_err_estimate = 0.0;
};

constexpr int kMaxOrder = 10000;

// Normalized Hermite function, int Phi_k^2 = 1.
double hermite_phi(int k, double x);
SpecialValue hermite_phi_value(int k, double x);
// Phi_0..Phi_kmax at x into out[0..kmax].
void hermite_phi_all(int kmax, double x, double* out);
std::vector<double> hermite_phi_all(int kmax, double x);

double hermite_phi_multi(const std::vector<int>& alpha, const std::vector<double>& x);

// Generalized Laguerre polynomial L_k^delta(x).
double laguerre_L(int k, double delta, double x);
// psi_k^delta(s) = L_k^delta(s^2) exp(-s^2/2)
double laguerre_psi(int k, double delta, double s);
void laguerre_psi_all(int kmax, double delta, double s, double* out);

// L_k^{n-1}(|z|^2/2) exp(-|z|^2/4); takes |z|^2.
double varphi(int k, int n, double abs_z_sq);
void varphi_all(int kmax, int n, double abs_z_sq, double* out);

// J_delta(w) / w^delta, entire in w.
cplx bessel_ratio(double delta, cplx w);
double bessel_k(double delta, double x);

double log_gamma(double x);
double c_constant(int k, int m, int n);

// n = 2 orthonormal circular harmonics; j = 1 cosine, j = 2 sine.
cplx circular_harmonic(int m, int j, double theta);
inline int harmonic_dim(int m) { return m == 0 ? 1 : 2; }

}  // namespace hardy::special
