#include "hardy/wigner_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "hardy/parallel.hpp"
#include "hardy/transforms.hpp"

namespace hardy::xform {

namespace {

constexpr std::size_t kBatch = 32;

struct Scratch {
  std::vector<double> hr, hi, tr, ti, er, ei;
};

// V(., y) for all x-tuples; y given by its index tuple
void slice(const FunctionSpec& f, const FunctionSpec& g, const std::vector<double>& ax, const quad::QuadratureRule& base,
           double R_unused, const std::size_t* iy, cplx* out, Scratch& s) {
  (void)R_unused;
  const int n = f.n;
  const int P = int(ax.size()), M = int(base.nodes.size());
  const double gs = (g.gamma - f.gamma) / (f.gamma + g.gamma);
  double y[2], c[2];
  for (int j = 0; j < n; ++j) {
    y[j] = ax[iy[j]];
    c[j] = 0.5 * gs * y[j];
  }
  const double pref = std::pow(2.0 * kPi, -0.5 * n);
  // E_j[ix][m] = exp(i x eta_m) for axis j
  s.er.assign(std::size_t(n) * P * M, 0.0);
  s.ei.assign(std::size_t(n) * P * M, 0.0);
  for (int j = 0; j < n; ++j)
    for (int ix = 0; ix < P; ++ix)
      for (int m = 0; m < M; ++m) {
        double ph = ax[ix] * (c[j] + base.nodes[m]);
        s.er[(std::size_t(j) * P + ix) * M + m] = std::cos(ph);
        s.ei[(std::size_t(j) * P + ix) * M + m] = std::sin(ph);
      }
  if (n == 1) {
    s.hr.resize(M);
    s.hi.resize(M);
    for (int m = 0; m < M; ++m) {
      double eta = c[0] + base.nodes[m];
      double a = eta + 0.5 * y[0], b = eta - 0.5 * y[0];
      cplx h = base.weights[m] * f.eval(&a) * std::conj(g.eval(&b));
      s.hr[m] = h.real();
      s.hi[m] = h.imag();
    }
    for (int ix = 0; ix < P; ++ix) {
      const double* er = &s.er[std::size_t(ix) * M];
      const double* ei = &s.ei[std::size_t(ix) * M];
      double vr = 0.0, vi = 0.0;
      for (int m = 0; m < M; ++m) {
        vr += er[m] * s.hr[m] - ei[m] * s.hi[m];
        vi += er[m] * s.hi[m] + ei[m] * s.hr[m];
      }
      out[ix] = pref * cplx(vr, vi);
    }
    return;
  }
  s.hr.resize(std::size_t(M) * M);
  s.hi.resize(std::size_t(M) * M);
  for (int m1 = 0; m1 < M; ++m1)
    for (int m2 = 0; m2 < M; ++m2) {
      double e1 = c[0] + base.nodes[m1], e2 = c[1] + base.nodes[m2];
      double a[2] = {e1 + 0.5 * y[0], e2 + 0.5 * y[1]};
      double b[2] = {e1 - 0.5 * y[0], e2 - 0.5 * y[1]};
      cplx h = base.weights[m1] * base.weights[m2] * f.eval(a) * std::conj(g.eval(b));
      s.hr[std::size_t(m1) * M + m2] = h.real();
      s.hi[std::size_t(m1) * M + m2] = h.imag();
    }
  // T[ix1][m2] = sum_m1 E1[ix1][m1] h[m1][m2]
  s.tr.assign(std::size_t(P) * M, 0.0);
  s.ti.assign(std::size_t(P) * M, 0.0);
  for (int ix = 0; ix < P; ++ix) {
    double* tr = &s.tr[std::size_t(ix) * M];
    double* ti = &s.ti[std::size_t(ix) * M];
    for (int m1 = 0; m1 < M; ++m1) {
      const double er = s.er[std::size_t(ix) * M + m1], ei = s.ei[std::size_t(ix) * M + m1];
      const double* hr = &s.hr[std::size_t(m1) * M];
      const double* hi = &s.hi[std::size_t(m1) * M];
      for (int m2 = 0; m2 < M; ++m2) {
        tr[m2] += er * hr[m2] - ei * hi[m2];
        ti[m2] += er * hi[m2] + ei * hr[m2];
      }
    }
  }
  // V[ix1][ix2] = sum_m2 E2[ix2][m2] T[ix1][m2]
  for (int ix1 = 0; ix1 < P; ++ix1) {
    const double* tr = &s.tr[std::size_t(ix1) * M];
    const double* ti = &s.ti[std::size_t(ix1) * M];
    for (int ix2 = 0; ix2 < P; ++ix2) {
      const double* er = &s.er[(std::size_t(P) + ix2) * M];
      const double* ei = &s.ei[(std::size_t(P) + ix2) * M];
      double vr = 0.0, vi = 0.0;
      for (int m = 0; m < M; ++m) {
        vr += er[m] * tr[m] - ei[m] * ti[m];
        vi += er[m] * ti[m] + ei[m] * tr[m];
      }
      out[std::size_t(ix1) * P + ix2] = pref * cplx(vr, vi);
    }
  }
}

}  // namespace

void wigner_sweep(const FunctionSpec& f, const FunctionSpec& g, const quad::QuadratureRule& axis, int M, bool hermitian,
                  const SweepSink& consume) {
  if (f.n != g.n || (f.n != 1 && f.n != 2)) throw std::invalid_argument("wigner_sweep: need matching n in {1,2}");
  if (!(f.gamma > 0.0 && g.gamma > 0.0)) throw std::invalid_argument("wigner_sweep: envelopes required");
  const int n = f.n;
  const std::vector<double>& ax = axis.nodes;
  const std::size_t P = ax.size();
  const std::size_t slice_size = n == 1 ? P : P * P;
  const std::size_t tuples = slice_size;
  const double R = quad::truncation_radius(f.gamma + g.gamma, 20);
  const quad::QuadratureRule base = quad::mapped_legendre(M, -R, R);

  std::vector<std::size_t> todo;
  std::vector<char> doubled;
  for (std::size_t j = 0; j < tuples; ++j) {
    std::size_t mirror = tuples - 1 - j;
    if (!hermitian || j < mirror) {
      todo.push_back(j);
      doubled.push_back(hermitian);
    } else if (j == mirror) {
      todo.push_back(j);
      doubled.push_back(0);
    }
  }
  std::vector<cplx> buf(kBatch * slice_size);
  for (std::size_t b0 = 0; b0 < todo.size(); b0 += kBatch) {
    std::size_t nb = std::min(kBatch, todo.size() - b0);
    parallel::for_each(nb, [&](std::size_t t) {
      thread_local Scratch s;
      std::size_t j = todo[b0 + t];
      std::size_t iy[2] = {n == 1 ? j : j / P, j % P};
      slice(f, g, ax, base, R, iy, &buf[t * slice_size], s);
    });
    for (std::size_t t = 0; t < nb; ++t) consume(todo[b0 + t], &buf[t * slice_size], doubled[b0 + t]);
  }
}

int wigner_eta_points(const FunctionSpec& f, const FunctionSpec& g, const quad::QuadratureRule& axis) {
  const int n = f.n;
  double xm = 0.0;
  for (double v : axis.nodes) xm = std::max(xm, std::fabs(v));
  const double ym = xm;
  cplx z0[2] = {0.0, 0.0};
  const double vmax = std::abs(fourier_wigner(f, g, z0));
  const int seq[] = {24, 32, 48, 64, 96, 128, 160, 192, 256, 320, 384, 512, 640, 768};
  const int ns = sizeof(seq) / sizeof(seq[0]);
  std::vector<std::array<double, 4>> probes;
  const double h = 0.5;
  if (n == 1) {
    for (double a : {h, 1.0})
      for (double b : {0.0, h, 1.0, -1.0}) probes.push_back({a * xm, b * ym, 0, 0});
  } else {
    probes = {{xm, xm, 0, 0},      {xm, 0, 0, ym},        {xm, -xm, ym, ym},       {xm, xm, ym, -ym},
              {xm, xm, ym, ym},    {h * xm, h * xm, ym, ym}, {0, xm, ym, 0},       {h * xm, -h * xm, h * ym, -h * ym},
              {xm, 0, ym, 0},      {xm, h * xm, 0, h * ym}};
  }
  int need = seq[0];
  for (const auto& p : probes) {
    double x[2] = {p[0], p[1]}, y[2] = {p[2], p[3]};
    if (n == 1) y[0] = p[1];
    std::vector<cplx> v;
    int found = -1;
    for (int i = 0; i < ns && found < 0; ++i) {
      v.push_back(fourier_wigner_fixed(f, g, x, y, seq[i]));
      if (i >= 2) {
        auto close = [&](cplx a, cplx b) { return std::abs(a - b) <= 2e-15 * vmax + 1e-13 * std::abs(b); };
        if (close(v[i - 2], v[i]) && close(v[i - 1], v[i])) found = i - 2;
      }
    }
    if (found < 0) throw NumericalError("wigner grid: eta resolution did not converge at the grid edge");
    need = std::max(need, seq[std::min(found + 1, ns - 1)]);
  }
  return need;
}

namespace {

std::vector<int> half_index(std::size_t P) {
  std::vector<int> h(P);
  for (std::size_t i = 0; i < P; ++i) h[i] = int(std::min(i, P - 1 - i));
  return h;
}

}  // namespace

RadialMoments wigner_radial_moments(const FunctionSpec& f, const quad::QuadratureRule& axis, int M) {
  const int n = f.n;
  const std::size_t P = axis.nodes.size();
  const int H = int((P + 1) / 2);
  if (M <= 0) M = wigner_eta_points(f, f, axis);
  const auto hx = half_index(P);
  const std::size_t nkeys = n == 1 ? std::size_t(H) * H : std::size_t(H) * H * H * H;
  std::vector<cplx> acc(nkeys, 0.0);
  std::vector<char> used(nkeys, 0);
  const auto& W = axis.weights;
  auto key2 = [&](int a, int b) { return a <= b ? std::size_t(a) * H + b : std::size_t(b) * H + a; };
  wigner_sweep(f, f, axis, M, true, [&](std::size_t j, const cplx* V, bool dbl) {
    if (n == 1) {
      const std::size_t iy = j;
      for (std::size_t ix = 0; ix < P; ++ix) {
        cplx t = W[ix] * W[iy] * V[ix];
        if (dbl) t = 2.0 * t.real();
        std::size_t k = key2(hx[ix], hx[iy]);
        acc[k] += t;
        used[k] = 1;
      }
      return;
    }
    const std::size_t iy1 = j / P, iy2 = j % P;
    for (std::size_t ix1 = 0; ix1 < P; ++ix1)
      for (std::size_t ix2 = 0; ix2 < P; ++ix2) {
        cplx t = W[ix1] * W[iy1] * W[ix2] * W[iy2] * V[ix1 * P + ix2];
        if (dbl) t = 2.0 * t.real();
        int q[4] = {hx[ix1], hx[iy1], hx[ix2], hx[iy2]};
        std::sort(q, q + 4);
        std::size_t k = ((std::size_t(q[0]) * H + q[1]) * H + q[2]) * H + q[3];
        acc[k] += t;
        used[k] = 1;
      }
  });
  RadialMoments out;
  out.eta_points = M;
  const auto& X = axis.nodes;
  for (std::size_t k = 0; k < nkeys; ++k) {
    if (!used[k]) continue;
    double r2 = 0.0;
    std::size_t kk = k;
    for (int d = 0; d < (n == 1 ? 2 : 4); ++d) {
      double x = X[kk % H];
      r2 += x * x;
      kk /= H;
    }
    out.r2.push_back(r2);
    out.s.push_back(acc[k]);
  }
  return out;
}

}  // namespace hardy::xform
