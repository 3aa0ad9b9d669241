#pragma once

#include <functional>
#include <vector>

#include "hardy/quadrature.hpp"
#include "hardy/registry.hpp"

namespace hardy::xform {

// V(f,g) on a tensor grid whose 2n real axes share one symmetric 1-D rule.
// consume(j, V, doubled) is called in increasing order of the y-tuple index
// j = iy1 (n = 1) or iy1 * P + iy2 (n = 2); V holds all x-tuples row-major.
// In hermitian mode (f == g) only tuples with j <= mirror(j) are computed:
// doubled = true means the mirrored tuple carries conj(V) at mirrored x.
using SweepSink = std::function<void(std::size_t, const cplx*, bool)>;
void wigner_sweep(const FunctionSpec& f, const FunctionSpec& g, const quad::QuadratureRule& axis, int M, bool hermitian,
                  const SweepSink& consume);

// eta-points per axis needed to resolve V on the given axis nodes, from
// convergence probes at the extreme nodes.
int wigner_eta_points(const FunctionSpec& f, const FunctionSpec& g, const quad::QuadratureRule& axis);

// Tensor sum of W V regrouped by equal |w|^2.
struct RadialMoments {
  std::vector<double> r2;
  std::vector<cplx> s;
  int eta_points = 0;
};
RadialMoments wigner_radial_moments(const FunctionSpec& f, const quad::QuadratureRule& axis, int M = 0);

}  // namespace hardy::xform
