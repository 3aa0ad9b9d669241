#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hardy/common.hpp"
#include "hardy/parallel.hpp"

namespace hardy::quad {

enum class RuleKind { gauss_hermite, mapped_legendre, radial, sphere_S1, sphere_S3, tensor };

std::string to_string(RuleKind k);
RuleKind kind_from_string(const std::string& s);

struct QuadratureRule {
  RuleKind kind = RuleKind::mapped_legendre;
  int dim = 1;                  // coordinates per node
  std::vector<double> nodes;    // flattened, dim per node (empty for tensor)
  std::vector<double> weights;  // empty for tensor
  // gauss_hermite only: weights * exp(x^2), which stay representable when the
  // plain weights underflow
  std::vector<double> unweighted;
  std::vector<QuadratureRule> axes;  // tensor only
  int order = 0;
  double a = 0.0, b = 0.0;  // interval (legendre, radial) or R
  double delta = 0.0;       // radial weight exponent
  double scale = 1.0;       // tensor of scaled Hermite axes: exp(-scale |w|^2)

  std::size_t size() const;
  void node(std::size_t i, double* out) const;
  double weight(std::size_t i) const;
};

struct ConvergenceReport {
  cplx value;
  cplx value_at_half_resolution;
  double est_rel_err = 0.0;
  // sum |w g|; differences below ~1e-14 of this are rounding noise
  double magnitude = 0.0;
  int resolution = 0;
  bool converged(double tol) const;
};

ConvergenceReport make_report(cplx value, cplx half, double magnitude, int resolution);

QuadratureRule gauss_hermite(int N);
QuadratureRule mapped_legendre(int N, double a, double b);
QuadratureRule radial_rule(double delta, double R, int N);
QuadratureRule sphere_rule(int n, int resolution);
QuadratureRule tensor_rule(int n, int per_axis, double R);
// Tensor of Gauss-Hermite axes rescaled to the weight exp(-c|w|^2), with the
// weight divided out: sum W_i g(w_i) ~ int g(w) dw for g ~ exp(-c|w|^2) poly.
QuadratureRule gaussian_tensor_rule(int n, int per_axis, double c);
// Same rescaling for a single axis.
QuadratureRule scaled_hermite_axis(int N, double c);

// Truncation radius for an envelope exp(-c s^2) reaching 10^-digits.
double truncation_radius(double c, double digits);

// Weighted sum together with sum |w g|.
struct Acc {
  cplx v;
  double m = 0.0;
  Acc& operator+=(const Acc& o) {
    v += o.v;
    m += o.m;
    return *this;
  }
  friend Acc operator+(Acc a, const Acc& b) { return a += b; }
};

template <class F>
Acc accumulate_1d(const QuadratureRule& r, F&& g) {
  return parallel::block_sum<Acc>(r.weights.size(), [&](std::size_t i) {
    cplx t = r.weights[i] * cplx(g(r.nodes[i]));
    return Acc{t, std::abs(t)};
  });
}

template <class F>
cplx integrate_1d(const QuadratureRule& r, F&& g) {
  return accumulate_1d(r, g).v;
}

// On-disk cache for 1-D rules. Empty dir disables it.
void set_cache_dir(const std::string& dir);
std::string cache_dir();
std::string rule_to_json(const QuadratureRule& r);
QuadratureRule rule_from_json(const std::string& s);

}  // namespace hardy::quad
