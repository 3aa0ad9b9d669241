#pragma once

#include <functional>
#include <vector>

#include "hardy/quadrature.hpp"
#include "hardy/registry.hpp"

namespace hardy::xform {

// Sampled function over C^n = R^{2n}; coordinates ordered (Re z1, Im z1, Re z2, Im z2).
struct ComplexField {
  int n = 1;
  quad::QuadratureRule grid;  // tensor rule; weights are the integration weights
  std::vector<cplx> values;
  std::function<cplx(const double*)> eval;  // off-grid evaluation
  std::string label;
};

ComplexField sample_field(int n, const quad::QuadratureRule& grid, std::function<cplx(const double*)> eval,
                          std::string label = {});
std::string field_to_json(const ComplexField& F);

// (partial) Fourier transform over the axes in subset (0-based).
cplx fourier(const FunctionSpec& f, const std::vector<int>& subset, const double* xi);
quad::ConvergenceReport fourier_report(const FunctionSpec& f, const std::vector<int>& subset, const double* xi);
// f^ as a FunctionSpec evaluated by quadrature.
FunctionSpec fourier_image(const FunctionSpec& f);

// (Partial) Fourier transform over the axes in subset on the tensor grid
// axis^n (last axis fastest), by separable quadrature with N nodes per axis;
// other axes are sampled at the grid values. mag receives the same sums
// taken over absolute values (the roundoff scale of each entry).
std::vector<cplx> fourier_on_grid(const FunctionSpec& f, const std::vector<int>& subset, const std::vector<double>& axis,
                                  int N = 384, std::vector<double>* mag = nullptr);

cplx hankel(const RadialProfile& g, double delta, double r);
quad::ConvergenceReport hankel_report(const RadialProfile& g, double delta, double r);
RadialProfile hankel_image(const RadialProfile& g, double delta);

cplx bargmann_1d(const FunctionSpec& f, cplx z);
// omega = (cos theta, sin theta)
cplx bargmann_vector(const FunctionSpec& f, cplx z, double theta);
quad::ConvergenceReport bargmann_report(const FunctionSpec& f, cplx z, double theta);

// (g, psi_k^delta) = int g psi_k^delta s^{2 delta + 1} ds for k = 0..K.
std::vector<cplx> laguerre_projections(const RadialProfile& g, double delta, int K);

enum class URoute { integral, series };
cplx u_delta(const RadialProfile& g, double delta, cplx w, URoute route);
// Laguerre coefficients (g, psi_k^delta), k = 0..K, with K chosen so the
// series for |w| <= wmax has converged.
std::vector<cplx> u_delta_series_coeffs(const RadialProfile& g, double delta, double wmax);
cplx u_delta_series_eval(const std::vector<cplx>& coeffs, double delta, cplx w);
// Weight of the image space: (2^delta/pi) (|w|^2/2)^{delta+1} K_delta(|w|^2/2).
double cholewinski_weight(double delta, double abs_w);

// z has n complex entries.
cplx fourier_wigner(const FunctionSpec& f, const FunctionSpec& g, const cplx* z);
quad::ConvergenceReport fourier_wigner_report(const FunctionSpec& f, const FunctionSpec& g, const cplx* z);
// V(f,g) at fixed eta-resolution M per axis (used for dense sampling).
cplx fourier_wigner_fixed(const FunctionSpec& f, const FunctionSpec& g, const double* x, const double* y, int M);

// (4 pi)^{-n} int F(w) exp((i/2) Im(z . conj w)) dw over the field's grid.
cplx symplectic_fourier(const ComplexField& F, const cplx* z);
// int_{S^{2n-1}} F(r omega) d omega using the field's evaluator.
cplx radialize(const ComplexField& F, double r, int resolution = 64);

std::vector<cplx> taylor_coeffs_cauchy(const std::function<cplx(cplx)>& g, double radius, int count, int M = 0);

}  // namespace hardy::xform
