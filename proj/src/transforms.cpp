#include "hardy/transforms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hardy/parallel.hpp"
#include "hardy/special_fn.hpp"
#include "json.hpp"

namespace hardy::xform {

using quad::ConvergenceReport;
using quad::QuadratureRule;

namespace {

constexpr double kTol = 1e-10;

// Evaluates ev(N) = (value, magnitude) at increasing N until two successive
// resolutions agree.
template <class Ev>
ConvergenceReport refine(Ev&& ev, int N0, int Nmax) {
  auto [v0, m0] = ev(N0);
  ConvergenceReport rep = quad::make_report(v0, v0, m0, N0);
  // doubling, with a final step at Nmax when it is not a power-of-two multiple
  for (int N = std::min(2 * N0, Nmax); N <= Nmax; N = N == Nmax ? Nmax + 1 : std::min(2 * N, Nmax)) {
    auto [v, m] = ev(N);
    rep = quad::make_report(v, v0, m, N);
    if (rep.converged(kTol)) return rep;
    v0 = v;
  }
  rep.est_rel_err = std::max(rep.est_rel_err, kTol * 10);
  return rep;
}

cplx accept(const ConvergenceReport& r, const char* what) {
  if (!r.converged(kTol)) {
    std::ostringstream os;
    os << what << ": quadrature not converged (est_rel_err " << r.est_rel_err << " at resolution " << r.resolution << ")";
    throw NumericalError(os.str());
  }
  return r.value;
}

// sum over a 1- or 2-dimensional tensor of the same 1-D rule
template <class G>
std::pair<cplx, double> tensor_sum(const QuadratureRule& r, int dims, G&& g) {
  const std::size_t N = r.nodes.size();
  std::size_t total = dims == 1 ? N : N * N;
  quad::Acc a = parallel::block_sum<quad::Acc>(total, [&](std::size_t i) {
    double x[2];
    double w;
    if (dims == 1) {
      x[0] = r.nodes[i];
      w = r.weights[i];
    } else {
      x[0] = r.nodes[i / N];
      x[1] = r.nodes[i % N];
      w = r.weights[i / N] * r.weights[i % N];
    }
    cplx t = w * g(x);
    return quad::Acc{t, std::abs(t)};
  });
  return {a.v, a.m};
}

void require_envelope(double gamma, const std::string& id) {
  if (!(gamma > 0.0)) throw std::invalid_argument(id + ": positive Gaussian envelope required");
}

}  // namespace

ComplexField sample_field(int n, const QuadratureRule& grid, std::function<cplx(const double*)> eval, std::string label) {
  ComplexField F;
  F.n = n;
  F.grid = grid;
  F.eval = std::move(eval);
  F.label = std::move(label);
  F.values.resize(grid.size());
  parallel::for_each((grid.size() + 4095) / 4096, [&](std::size_t b) {
    double w[4];
    for (std::size_t i = b * 4096; i < std::min(grid.size(), (b + 1) * 4096); ++i) {
      grid.node(i, w);
      F.values[i] = F.eval(w);
    }
  });
  return F;
}

std::string field_to_json(const ComplexField& F) {
  nlohmann::json j;
  j["dimension"] = F.n;
  j["label"] = F.label;
  j["grid_meta"] = nlohmann::json::parse(quad::rule_to_json(F.grid));
  auto vals = nlohmann::json::array();
  for (const auto& v : F.values) vals.push_back({v.real(), v.imag()});
  j["values"] = vals;
  return j.dump();
}

ConvergenceReport fourier_report(const FunctionSpec& f, const std::vector<int>& subset, const double* xi) {
  for (int a : subset)
    if (a < 0 || a >= f.n) throw std::invalid_argument("fourier: axis out of range");
  if (subset.size() == 2 && subset[0] == subset[1]) throw std::invalid_argument("fourier: repeated axis");
  if (subset.empty()) {
    cplx v = f.eval(xi);
    return quad::make_report(v, v, std::abs(v), 0);
  }
  require_envelope(f.gamma, f.id);
  const double R = quad::truncation_radius(f.gamma, 20);
  const int dims = int(subset.size());
  const double pref = std::pow(2.0 * kPi, -0.5 * dims);
  auto ev = [&](int N) {
    QuadratureRule r = quad::mapped_legendre(N, -R, R);
    return tensor_sum(r, dims, [&](const double* t) {
      double x[2] = {xi[0], f.n > 1 ? xi[1] : 0.0};
      double ph = 0.0;
      for (int d = 0; d < dims; ++d) {
        x[subset[d]] = t[d];
        ph -= t[d] * xi[subset[d]];
      }
      return pref * f.eval(x) * std::polar(1.0, ph);
    });
  };
  return refine(ev, 64, dims == 1 ? 2000 : 1024);
}

cplx fourier(const FunctionSpec& f, const std::vector<int>& subset, const double* xi) {
  return accept(fourier_report(f, subset, xi), "fourier");
}

FunctionSpec fourier_image(const FunctionSpec& f) {
  FunctionSpec h = f;
  std::vector<int> all(f.n);
  for (int i = 0; i < f.n; ++i) all[i] = i;
  FunctionSpec src = f;
  h.eval = [src, all](const double* xi) { return fourier(src, all, xi); };
  h.id = "fourier[" + f.id + "]";
  h.family = "fourier";
  std::swap(h.gamma, h.gamma_hat);
  if (!(h.gamma > 0.0)) h.gamma = f.gamma;
  return h;
}

std::vector<cplx> fourier_on_grid(const FunctionSpec& f, const std::vector<int>& subset, const std::vector<double>& axis,
                                  int N, std::vector<double>* mag) {
  if (f.n != 1 && f.n != 2) throw std::invalid_argument("fourier_on_grid: n must be 1 or 2");
  std::vector<bool> tr(f.n, false);
  for (int a : subset) {
    if (a < 0 || a >= f.n) throw std::invalid_argument("fourier: axis out of range");
    tr[a] = true;
  }
  const std::size_t P = axis.size();
  std::vector<double> src[2];
  std::vector<cplx> M[2];  // P x src[j].size()
  for (int j = 0; j < f.n; ++j) {
    if (tr[j]) {
      require_envelope(f.gamma, f.id);
      const double R = quad::truncation_radius(f.gamma, 20);
      QuadratureRule q = quad::mapped_legendre(N, -R, R);
      src[j] = q.nodes;
      M[j].resize(P * N);
      for (std::size_t a = 0; a < P; ++a)
        for (int i = 0; i < N; ++i)
          M[j][a * N + i] = q.weights[i] / std::sqrt(2.0 * kPi) * std::polar(1.0, -q.nodes[i] * axis[a]);
    } else {
      src[j] = axis;
      M[j].assign(P * P, 0.0);
      for (std::size_t a = 0; a < P; ++a) M[j][a * P + a] = 1.0;
    }
  }
  if (f.n == 1) {
    const std::size_t S = src[0].size();
    std::vector<cplx> F(S), out(P);
    for (std::size_t i = 0; i < S; ++i) F[i] = f.eval(&src[0][i]);
    if (mag) mag->assign(P, 0.0);
    parallel::for_each(P, [&](std::size_t a) {
      cplx s = 0.0;
      double m = 0.0;
      for (std::size_t i = 0; i < S; ++i) {
        cplx t = M[0][a * S + i] * F[i];
        s += t;
        m += std::abs(t);
      }
      out[a] = s;
      if (mag) (*mag)[a] = m;
    });
    return out;
  }
  const std::size_t S0 = src[0].size(), S1 = src[1].size();
  std::vector<cplx> F(S0 * S1);
  parallel::for_each(F.size(), [&](std::size_t i) {
    double x[2] = {src[0][i / S1], src[1][i % S1]};
    F[i] = f.eval(x);
  });
  // T = M0 F (P x S1), out = T M1^T (P x P); magnitudes alongside
  std::vector<cplx> T(P * S1, 0.0);
  std::vector<double> Tm(P * S1, 0.0);
  parallel::for_each(P, [&](std::size_t a) {
    for (std::size_t i = 0; i < S0; ++i) {
      const cplx e = M[0][a * S0 + i];
      if (e == 0.0) continue;
      const double ea = std::abs(e);
      for (std::size_t j = 0; j < S1; ++j) {
        T[a * S1 + j] += e * F[i * S1 + j];
        Tm[a * S1 + j] += ea * std::abs(F[i * S1 + j]);
      }
    }
  });
  std::vector<cplx> out(P * P);
  if (mag) mag->assign(P * P, 0.0);
  parallel::for_each(P, [&](std::size_t a) {
    for (std::size_t b = 0; b < P; ++b) {
      cplx s = 0.0;
      double m = 0.0;
      for (std::size_t j = 0; j < S1; ++j) {
        const cplx e = M[1][b * S1 + j];
        if (e == 0.0) continue;
        s += T[a * S1 + j] * e;
        m += Tm[a * S1 + j] * std::abs(e);
      }
      out[a * P + b] = s;
      if (mag) (*mag)[a * P + b] = m;
    }
  });
  return out;
}

ConvergenceReport hankel_report(const RadialProfile& g, double delta, double r) {
  require_envelope(g.gamma, g.id);
  if (!(r >= 0.0)) throw std::invalid_argument("hankel: r must be >= 0");
  const double R = quad::truncation_radius(g.gamma, 20);
  if (r * R > 100.0) throw std::invalid_argument("hankel: r too large for the kernel regime");
  auto ev = [&](int N) {
    QuadratureRule q = quad::radial_rule(delta, R, N);
    auto k = [&](double s) { return g.eval(s) * special::bessel_ratio(delta, r * s); };
    quad::Acc a = quad::accumulate_1d(q, k);
    return std::make_pair(a.v, a.m);
  };
  return refine(ev, 64, 2000);
}

cplx hankel(const RadialProfile& g, double delta, double r) { return accept(hankel_report(g, delta, r), "hankel"); }

RadialProfile hankel_image(const RadialProfile& g, double delta) {
  RadialProfile h;
  h.id = "hankel[" + g.id + "]";
  RadialProfile src = g;
  h.eval = [src, delta](double r) { return hankel(src, delta, r); };
  h.gamma = 0.25 / g.gamma;  // exp(-c s^2) -> exp(-r^2/(4c))
  return h;
}

ConvergenceReport bargmann_report(const FunctionSpec& f, cplx z, double theta) {
  require_envelope(f.gamma, f.id);
  if (f.n != 1 && f.n != 2) throw std::invalid_argument("bargmann: n must be 1 or 2");
  const double c = f.gamma + 0.5;
  const double R = quad::truncation_radius(c, 20);
  const double om[2] = {f.n == 1 ? 1.0 : std::cos(theta), std::sin(theta)};
  double center[2] = {z.real() * om[0] / (2 * c), z.real() * om[1] / (2 * c)};
  const cplx pre = std::exp(-0.25 * z * z);
  auto ev = [&](int N) {
    QuadratureRule r = quad::mapped_legendre(N, -R, R);
    return tensor_sum(r, f.n, [&](const double* t) {
      double x[2] = {center[0] + t[0], f.n > 1 ? center[1] + t[1] : 0.0};
      double r2 = x[0] * x[0] + (f.n > 1 ? x[1] * x[1] : 0.0);
      double xo = x[0] * om[0] + (f.n > 1 ? x[1] * om[1] : 0.0);
      return pre * f.eval(x) * std::exp(-0.5 * r2 + z * xo);
    });
  };
  return refine(ev, 64, f.n == 1 ? 2000 : 1024);
}

cplx bargmann_1d(const FunctionSpec& f, cplx z) {
  if (f.n != 1) throw std::invalid_argument("bargmann_1d: function must be on R");
  return accept(bargmann_report(f, z, 0.0), "bargmann");
}

cplx bargmann_vector(const FunctionSpec& f, cplx z, double theta) {
  if (f.n != 2) throw std::invalid_argument("bargmann_vector: function must be on R^2");
  return accept(bargmann_report(f, z, theta), "bargmann");
}

// (g, psi_k^delta), k = 0..K, refined until every entry is stable
std::vector<cplx> laguerre_projections(const RadialProfile& g, double delta, int K) {
  const double R = quad::truncation_radius(g.gamma < 0.5 ? g.gamma : 0.5, 20);
  std::vector<cplx> prev;
  for (int N = 128; N <= 2000; N = N == 1024 ? 2000 : 2 * N) {
    QuadratureRule q = quad::radial_rule(delta, R, N);
    std::vector<cplx> gv(N);
    std::vector<double> psi(std::size_t(N) * (K + 1));
    parallel::for_each(N, [&](std::size_t i) {
      gv[i] = g.eval(q.nodes[i]);
      special::laguerre_psi_all(K, delta, q.nodes[i], &psi[i * (K + 1)]);
    });
    std::vector<cplx> cur(K + 1);
    std::vector<double> mag(K + 1);
    parallel::for_each(K + 1, [&](std::size_t k) {
      std::vector<cplx> t(N);
      double m = 0.0;
      for (int i = 0; i < N; ++i) {
        t[i] = q.weights[i] * gv[i] * psi[i * (K + 1) + k];
        m += std::abs(t[i]);
      }
      cur[k] = parallel::pairwise(t.data(), N);
      mag[k] = m;
    });
    if (!prev.empty()) {
      bool ok = true;
      for (int k = 0; k <= K; ++k)
        if (std::abs(cur[k] - prev[k]) > std::max(1e-12 * std::abs(cur[k]), 1e-14 * mag[k])) ok = false;
      if (ok) return cur;
    }
    prev = cur;
  }
  throw NumericalError("radial projections did not converge");
}

std::vector<cplx> u_delta_series_coeffs(const RadialProfile& g, double delta, double wmax) {
  require_envelope(g.gamma, g.id);
  for (int K = 32; K <= 256; K *= 2) {
    std::vector<cplx> c = laguerre_projections(g, delta, K);
    // term magnitudes at |w| = wmax
    double big = 0.0;
    std::vector<double> t(K + 1);
    for (int k = 0; k <= K; ++k) {
      t[k] = std::abs(c[k]) * std::exp(2.0 * k * std::log(std::max(wmax, 1e-300) / 2.0) - special::log_gamma(k + delta + 1.0));
      big = std::max(big, t[k]);
    }
    if (t[K] < 1e-18 * big && t[K - 1] < 1e-18 * big && t[K - 2] < 1e-18 * big) return c;
  }
  throw NumericalError("u_delta: series truncation not converged");
}

cplx u_delta_series_eval(const std::vector<cplx>& coeffs, double delta, cplx w) {
  const cplx q = -0.25 * w * w;
  cplx sum = 0.0, pw = 1.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    sum += pw * coeffs[k] * std::exp(-special::log_gamma(k + delta + 1.0));
    pw *= q;
  }
  return std::pow(2.0, -delta) * sum;
}

cplx u_delta(const RadialProfile& g, double delta, cplx w, URoute route) {
  require_envelope(g.gamma, g.id);
  if (route == URoute::series) return u_delta_series_eval(u_delta_series_coeffs(g, delta, std::abs(w)), delta, w);
  const double c = g.gamma + 0.5;
  const double R = std::fabs(w.real()) / (2 * c) + quad::truncation_radius(c, 20);
  if (std::abs(w) * R > 100.0) throw std::invalid_argument("u_delta: |w| too large for the kernel regime");
  const cplx pre = std::exp(-0.25 * w * w);
  const cplx iw = cplx(0.0, 1.0) * w;
  auto ev = [&](int N) {
    QuadratureRule q = quad::radial_rule(delta, R, N);
    auto k = [&](double s) { return pre * g.eval(s) * std::exp(-0.5 * s * s) * special::bessel_ratio(delta, iw * s); };
    quad::Acc a = quad::accumulate_1d(q, k);
    return std::make_pair(a.v, a.m);
  };
  return accept(refine(ev, 64, 2000), "u_delta");
}

double cholewinski_weight(double delta, double abs_w) {
  if (abs_w == 0.0) return 0.0;
  const double x = 0.5 * abs_w * abs_w;
  return std::pow(2.0, delta) / kPi * std::pow(x, delta + 1.0) * special::bessel_k(delta, x);
}

namespace {

struct WignerWindow {
  double center[2];
  double R;
};

WignerWindow wigner_window(const FunctionSpec& f, const FunctionSpec& g, const double* y) {
  require_envelope(f.gamma, f.id);
  require_envelope(g.gamma, g.id);
  WignerWindow w;
  const double s = (g.gamma - f.gamma) / (f.gamma + g.gamma);
  for (int j = 0; j < f.n; ++j) w.center[j] = 0.5 * s * y[j];
  w.R = quad::truncation_radius(f.gamma + g.gamma, 20);
  return w;
}

std::pair<cplx, double> wigner_sum(const FunctionSpec& f, const FunctionSpec& g, const double* x, const double* y, int M) {
  const int n = f.n;
  WignerWindow win = wigner_window(f, g, y);
  QuadratureRule r = quad::mapped_legendre(M, -win.R, win.R);
  const double pref = std::pow(2.0 * kPi, -0.5 * n);
  return tensor_sum(r, n, [&](const double* t) {
    double a[2], b[2], ph = 0.0;
    for (int j = 0; j < n; ++j) {
      double eta = win.center[j] + t[j];
      a[j] = eta + 0.5 * y[j];
      b[j] = eta - 0.5 * y[j];
      ph += x[j] * eta;
    }
    return pref * std::polar(1.0, ph) * f.eval(a) * std::conj(g.eval(b));
  });
}

}  // namespace

ConvergenceReport fourier_wigner_report(const FunctionSpec& f, const FunctionSpec& g, const cplx* z) {
  if (f.n != g.n) throw std::invalid_argument("fourier_wigner: dimension mismatch");
  if (f.n != 1 && f.n != 2) throw std::invalid_argument("fourier_wigner: n must be 1 or 2");
  double x[2], y[2];
  for (int j = 0; j < f.n; ++j) {
    x[j] = z[j].real();
    y[j] = z[j].imag();
  }
  return refine([&](int M) { return wigner_sum(f, g, x, y, M); }, 32, f.n == 1 ? 2000 : 1024);
}

cplx fourier_wigner(const FunctionSpec& f, const FunctionSpec& g, const cplx* z) {
  return accept(fourier_wigner_report(f, g, z), "fourier_wigner");
}

cplx fourier_wigner_fixed(const FunctionSpec& f, const FunctionSpec& g, const double* x, const double* y, int M) {
  if (f.n != g.n) throw std::invalid_argument("fourier_wigner: dimension mismatch");
  return wigner_sum(f, g, x, y, M).first;
}

cplx symplectic_fourier(const ComplexField& F, const cplx* z) {
  const QuadratureRule& G = F.grid;
  if (G.kind != quad::RuleKind::tensor || int(G.axes.size()) != 2 * F.n)
    throw std::invalid_argument("symplectic_fourier: field must live on a tensor grid over C^n");
  // phase (1/2) sum_j (y_j u_j - x_j v_j) factorizes over axes
  std::vector<std::vector<cplx>> ph(2 * F.n);
  for (int j = 0; j < F.n; ++j) {
    const auto& au = G.axes[2 * j];
    const auto& av = G.axes[2 * j + 1];
    for (std::size_t i = 0; i < au.nodes.size(); ++i) ph[2 * j].push_back(au.weights[i] * std::polar(1.0, 0.5 * z[j].imag() * au.nodes[i]));
    for (std::size_t i = 0; i < av.nodes.size(); ++i) ph[2 * j + 1].push_back(av.weights[i] * std::polar(1.0, -0.5 * z[j].real() * av.nodes[i]));
  }
  const int D = 2 * F.n;
  cplx s = parallel::block_sum<cplx>(F.values.size(), [&](std::size_t i) {
    std::size_t k = i;
    cplx w = 1.0;
    for (int d = D - 1; d >= 0; --d) {
      std::size_t m = ph[d].size();
      w *= ph[d][k % m];
      k /= m;
    }
    return w * F.values[i];
  });
  return std::pow(4.0 * kPi, -F.n) * s;
}

cplx radialize(const ComplexField& F, double r, int resolution) {
  if (F.n != 1 && F.n != 2) throw std::invalid_argument("radialize: n must be 1 or 2");
  if (!(r >= 0.0)) throw std::invalid_argument("radialize: r must be >= 0");
  QuadratureRule s = quad::sphere_rule(F.n, resolution);
  const int d = s.dim;
  return parallel::block_sum<cplx>(s.weights.size(), [&](std::size_t i) {
    double w[4];
    for (int k = 0; k < d; ++k) w[k] = r * s.nodes[i * d + k];
    return s.weights[i] * F.eval(w);
  });
}

std::vector<cplx> taylor_coeffs_cauchy(const std::function<cplx(cplx)>& g, double radius, int count, int M) {
  if (!(radius > 0.0)) throw std::invalid_argument("taylor_coeffs_cauchy: radius must be > 0");
  if (count < 1) throw std::invalid_argument("taylor_coeffs_cauchy: count must be >= 1");
  if (M == 0) {
    M = 64;
    while (M < 8 * count) M *= 2;
  }
  if (count > M / 4) throw std::invalid_argument("taylor_coeffs_cauchy: need count <= M/4");
  std::vector<cplx> vals(M);
  parallel::for_each(M, [&](std::size_t j) { vals[j] = g(std::polar(radius, 2.0 * kPi * j / M)); });
  std::vector<cplx> c(count);
  for (int k = 0; k < count; ++k) {
    std::vector<cplx> t(M);
    for (int j = 0; j < M; ++j) t[j] = vals[j] * std::polar(1.0, -2.0 * kPi * double(k) * j / M);
    c[k] = parallel::pairwise(t.data(), M) / (double(M) * std::pow(radius, k));
  }
  return c;
}

}  // namespace hardy::xform
