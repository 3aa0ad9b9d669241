#pragma once

#include <map>
#include <string>
#include <vector>

#include "hardy/quadrature.hpp"
#include "hardy/registry.hpp"

namespace hardy::expansion {

enum class Route { direct, wigner, spherical };
std::string to_string(Route r);
Route route_from_string(const std::string& s);

struct CoefficientTable {
  std::string function_id;
  Route route = Route::direct;
  int n = 1;
  std::vector<int> k;
  std::vector<double> value;    // ||P_k f||_2 (or another per-level norm)
  std::vector<double> est_err;  // absolute
  std::vector<int> clamped;     // levels whose squared norm was clamped at 0
  std::map<std::string, std::string> meta;

  void push(int level, double v, double err) {
    k.push_back(level);
    value.push_back(v);
    est_err.push_back(err);
  }
  std::string to_csv() const;
  std::string to_json() const;
};

// Hermite coefficients (f, Phi_alpha) for all |alpha| <= kmax; n = 1 gives a
// vector indexed by k, n = 2 a (kmax+1)^2 matrix indexed a1 * (kmax+1) + a2.
struct HermiteCoefficients {
  int n = 1, kmax = 0;
  std::vector<cplx> c;
  std::vector<double> err;  // per coefficient
  int resolution = 0;
  cplx at(int a1, int a2 = 0) const { return c[n == 1 ? a1 : a1 * (kmax + 1) + a2]; }
};
HermiteCoefficients hermite_coeffs(const FunctionSpec& f, int kmax);
// Same for the Fourier transform of f, computed from f^ on a grid.
HermiteCoefficients hermite_coeffs_of_fourier(const FunctionSpec& f, int kmax);
cplx hermite_coeff(const FunctionSpec& f, const std::vector<int>& alpha);

constexpr int kDirectMax = 60;
CoefficientTable proj_norms_direct(const FunctionSpec& f, int kmax);
double proj_norm_direct(const FunctionSpec& f, int k);

struct WignerOptions {
  int per_axis = 0;   // 0: 64 for n = 2, 96 for n = 1
  int companion = 0;  // 0: 3/4 of per_axis
};
CoefficientTable proj_norms_wigner(const FunctionSpec& f, int kmax, WignerOptions opt = {});
double proj_norm_wigner(const FunctionSpec& f, int k);

// (g, psi_k^delta) or R_k^delta(g) = 2 Gamma(k+1)/Gamma(k+delta+1) (g, psi_k^delta)
cplx laguerre_coeff(const RadialProfile& g, int k, double delta, bool normalized);

struct SphericalProfile {
  int m = 0, j = 1;
  std::vector<double> r;    // radial nodes
  std::vector<cplx> f_mj;   // int_{S^1} f(r w) Y_mj(w) dw
  cplx reduced(std::size_t i) const;  // r^{-m} f_mj
};
struct SphericalDecomposition {
  std::vector<SphericalProfile> profiles;
  quad::QuadratureRule radial;  // plain Legendre rule on [0, R]
  double captured_energy = 0.0;
  double tail_energy = 0.0;     // ||f||^2 - captured
};
SphericalDecomposition spherical_decompose(const FunctionSpec& f, int m_max, int radial_nodes = 256, int circle = 256);

// (f~_mj, psi_q^m) for the n = 2 reduced profiles: int f_mj psi_q^m s^{m+1} ds
cplx reduced_laguerre(const SphericalProfile& p, const quad::QuadratureRule& radial, int q);

CoefficientTable proj_norms_spherical(const FunctionSpec& f, int kmax);
double proj_norm_spherical(const FunctionSpec& f, int k);
// Same levels through the rearranged c(k,m)-weighted expression (even levels only).
CoefficientTable proj_norms_cweighted(const FunctionSpec& f, int kmax);

enum class DkRoute { cauchy, formula };
// int_{S^1} |d_k(w)|^2 dw for k = 0..kmax, d_k the Taylor coefficients of Bf(., w)
CoefficientTable d_k_norms(const FunctionSpec& f, int kmax, DkRoute route);
double d_k_norm(const FunctionSpec& f, int k, DkRoute route);
double cauchy_radius(int k, double mu);

FunctionSpec t_operator(const FunctionSpec& f, int m_max = 40);

double plancherel_sum(const CoefficientTable& t);

// Sphere mean int_{S^{2n-1}} V(f,f)(r w) dw from the level norms ||P_k f||:
// |S^{2n-1}| (2 pi)^{-n/2} sum_k ||P_k f||^2 varphi_k^{n-1}(r) / dim_k.
// With symplectic = true, the same mean of the symplectic Fourier transform
// of V(f,f), which carries the eigenvalue (-1)^k on each level.
double wigner_sphere_mean(const CoefficientTable& levels, double r, bool symplectic = false);

}  // namespace hardy::expansion
