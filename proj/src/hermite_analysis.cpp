#include "hardy/hermite_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hardy/parallel.hpp"
#include "hardy/special_fn.hpp"
#include "hardy/transforms.hpp"
#include "hardy/wigner_grid.hpp"
#include "json.hpp"

namespace hardy::expansion {

using quad::QuadratureRule;

std::string to_string(Route r) {
  switch (r) {
    case Route::direct: return "direct";
    case Route::wigner: return "wigner";
    case Route::spherical: return "spherical";
  }
  return "?";
}

Route route_from_string(const std::string& s) {
  if (s == "direct") return Route::direct;
  if (s == "wigner") return Route::wigner;
  if (s == "spherical") return Route::spherical;
  throw std::invalid_argument("unknown route: " + s);
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string CoefficientTable::to_csv() const {
  std::string s = "k,value,est_err,route\n";
  for (std::size_t i = 0; i < k.size(); ++i)
    s += std::to_string(k[i]) + "," + num(value[i]) + "," + num(est_err[i]) + "," + to_string(route) + "\n";
  return s;
}

std::string CoefficientTable::to_json() const {
  nlohmann::ordered_json j;
  j["function"] = function_id;
  j["route"] = to_string(route);
  j["n"] = n;
  auto e = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < k.size(); ++i) e.push_back({{"k", k[i]}, {"value", value[i]}, {"est_err", est_err[i]}});
  j["entries"] = e;
  j["clamped"] = clamped;
  j["meta"] = meta;
  return j.dump(2);
}

double plancherel_sum(const CoefficientTable& t) {
  std::vector<double> sq;
  for (double v : t.value) sq.push_back(v * v);
  return parallel::pairwise(sq.data(), sq.size());
}

double wigner_sphere_mean(const CoefficientTable& levels, double r, bool symplectic) {
  const int n = levels.n;
  const int K = levels.k.empty() ? 0 : *std::max_element(levels.k.begin(), levels.k.end());
  std::vector<double> phi(K + 1);
  special::varphi_all(K, n, r * r, phi.data());
  std::vector<double> t(levels.k.size());
  for (std::size_t i = 0; i < levels.k.size(); ++i) {
    const int k = levels.k[i];
    // dim_k = binom(k + n - 1, n - 1)
    double ldim = special::log_gamma(k + n) - special::log_gamma(k + 1.0) - special::log_gamma(double(n));
    t[i] = levels.value[i] * levels.value[i] * phi[k] * std::exp(-ldim);
    if (symplectic && (k & 1)) t[i] = -t[i];
  }
  const double sphere = 2.0 * std::pow(kPi, n) / std::exp(special::log_gamma(double(n)));
  return sphere * std::pow(2.0 * kPi, -0.5 * n) * parallel::pairwise(t.data(), t.size());
}

namespace {

// a[k][i] = w_i Phi_k(x_i)
std::vector<double> phi_table(const QuadratureRule& r, int kmax) {
  const std::size_t N = r.nodes.size();
  std::vector<double> a((kmax + 1) * N), tmp(kmax + 1);
  for (std::size_t i = 0; i < N; ++i) {
    special::hermite_phi_all(kmax, r.nodes[i], tmp.data());
    for (int k = 0; k <= kmax; ++k) a[k * N + i] = r.weights[i] * tmp[k];
  }
  return a;
}

// C = A F A^T for n = 2 (F row-major N x N), or C = A F for n = 1.
// Also returns the same contraction of |A|, |F| (magnitude scale).
void contract(int n, int kmax, std::size_t N, const std::vector<double>& A, const std::vector<cplx>& F,
              std::vector<cplx>& C, std::vector<double>& mag) {
  const int K = kmax + 1;
  if (n == 1) {
    C.assign(K, 0.0);
    mag.assign(K, 0.0);
    parallel::for_each(K, [&](std::size_t k) {
      std::vector<cplx> t(N);
      double m = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        t[i] = A[k * N + i] * F[i];
        m += std::abs(t[i]);
      }
      C[k] = parallel::pairwise(t.data(), N);
      mag[k] = m;
    });
    return;
  }
  std::vector<cplx> G(K * N);
  std::vector<double> Gm(K * N);
  parallel::for_each(K, [&](std::size_t k) {
    for (std::size_t j = 0; j < N; ++j) {
      cplx s = 0.0;
      double m = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        s += A[k * N + i] * F[i * N + j];
        m += std::fabs(A[k * N + i]) * std::abs(F[i * N + j]);
      }
      G[k * N + j] = s;
      Gm[k * N + j] = m;
    }
  });
  C.assign(K * K, 0.0);
  mag.assign(K * K, 0.0);
  parallel::for_each(K, [&](std::size_t k1) {
    for (int k2 = 0; k2 < K; ++k2) {
      if (int(k1) + k2 > kmax) continue;
      cplx s = 0.0;
      double m = 0.0;
      for (std::size_t j = 0; j < N; ++j) {
        s += G[k1 * N + j] * A[k2 * N + j];
        m += Gm[k1 * N + j] * std::fabs(A[k2 * N + j]);
      }
      C[k1 * K + k2] = s;
      mag[k1 * K + k2] = m;
    }
  });
}

bool settled(const std::vector<cplx>& a, const std::vector<cplx>& b, const std::vector<double>& mag) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > std::max(1e-12 * std::abs(a[i]), 1e-14 * mag[i])) return false;
  return true;
}

HermiteCoefficients finish(int n, int kmax, int N, const std::vector<cplx>& cur, const std::vector<cplx>& prev,
                           const std::vector<double>& mag) {
  HermiteCoefficients h;
  h.n = n;
  h.kmax = kmax;
  h.c = cur;
  h.resolution = N;
  h.err.resize(cur.size());
  for (std::size_t i = 0; i < cur.size(); ++i) h.err[i] = std::max(std::abs(cur[i] - prev[i]), 1e-16 * mag[i]);
  return h;
}

}  // namespace

HermiteCoefficients hermite_coeffs(const FunctionSpec& f, int kmax) {
  if (f.n != 1 && f.n != 2) throw std::invalid_argument("hermite_coeffs: n must be 1 or 2");
  if (kmax < 0 || kmax > 200) throw std::invalid_argument("hermite_coeffs: level out of range");
  if (!(f.gamma > 0.0)) throw std::invalid_argument(f.id + ": envelope required");
  const double R = quad::truncation_radius(f.gamma, 20);
  std::vector<cplx> prev;
  const int Nmax = 1024;
  for (int N = 64; N <= Nmax; N *= 2) {
    QuadratureRule r = quad::mapped_legendre(N, -R, R);
    std::vector<double> A = phi_table(r, kmax);
    std::vector<cplx> F(f.n == 1 ? N : std::size_t(N) * N);
    parallel::for_each(F.size(), [&](std::size_t i) {
      double x[2] = {r.nodes[f.n == 1 ? i : i / N], r.nodes[i % N]};
      F[i] = f.eval(x);
    });
    std::vector<cplx> C;
    std::vector<double> mag;
    contract(f.n, kmax, N, A, F, C, mag);
    if (!prev.empty() && settled(C, prev, mag)) return finish(f.n, kmax, N, C, prev, mag);
    prev = C;
  }
  throw NumericalError(f.id + ": Hermite coefficients did not converge");
}

HermiteCoefficients hermite_coeffs_of_fourier(const FunctionSpec& f, int kmax) {
  if (f.n != 1 && f.n != 2) throw std::invalid_argument("hermite_coeffs_of_fourier: n must be 1 or 2");
  if (!(f.gamma > 0.0 && f.gamma_hat > 0.0)) throw std::invalid_argument(f.id + ": envelopes of f and f^ required");
  const double R = quad::truncation_radius(f.gamma, 20);
  const double Rh = quad::truncation_radius(f.gamma_hat, 20);
  std::vector<cplx> prev;
  for (int N = 64; N <= (f.n == 1 ? 1024 : 512); N *= 2) {
    QuadratureRule rx = quad::mapped_legendre(N, -R, R);
    QuadratureRule rk = quad::mapped_legendre(N, -Rh, Rh);
    // E[a][i] = (2 pi)^{-1/2} w_i exp(-i x_i xi_a)
    std::vector<cplx> E(std::size_t(N) * N);
    for (int a = 0; a < N; ++a)
      for (int i = 0; i < N; ++i)
        E[std::size_t(a) * N + i] = rx.weights[i] / std::sqrt(2.0 * kPi) * std::polar(1.0, -rx.nodes[i] * rk.nodes[a]);
    std::vector<cplx> Fh;
    if (f.n == 1) {
      std::vector<cplx> F(N);
      for (int i = 0; i < N; ++i) F[i] = f.eval(&rx.nodes[i]);
      Fh.assign(N, 0.0);
      parallel::for_each(N, [&](std::size_t a) {
        std::vector<cplx> t(N);
        for (int i = 0; i < N; ++i) t[i] = E[a * N + i] * F[i];
        Fh[a] = parallel::pairwise(t.data(), N);
      });
    } else {
      std::vector<cplx> F(std::size_t(N) * N);
      parallel::for_each(F.size(), [&](std::size_t i) {
        double x[2] = {rx.nodes[i / N], rx.nodes[i % N]};
        F[i] = f.eval(x);
      });
      // T[a][j] = sum_i E[a][i] F[i][j]; Fh[a][b] = sum_j T[a][j] E[b][j]
      std::vector<cplx> T(std::size_t(N) * N, 0.0);
      parallel::for_each(N, [&](std::size_t a) {
        for (int i = 0; i < N; ++i) {
          cplx e = E[a * N + i];
          for (int j = 0; j < N; ++j) T[a * N + j] += e * F[std::size_t(i) * N + j];
        }
      });
      Fh.assign(std::size_t(N) * N, 0.0);
      parallel::for_each(N, [&](std::size_t a) {
        for (int b = 0; b < N; ++b) {
          cplx s = 0.0;
          for (int j = 0; j < N; ++j) s += T[a * N + j] * E[std::size_t(b) * N + j];
          Fh[a * N + b] = s;
        }
      });
    }
    std::vector<double> A = phi_table(rk, kmax);
    std::vector<cplx> C;
    std::vector<double> mag;
    contract(f.n, kmax, N, A, Fh, C, mag);
    if (!prev.empty() && settled(C, prev, mag)) return finish(f.n, kmax, N, C, prev, mag);
    prev = C;
  }
  throw NumericalError(f.id + ": Hermite coefficients of the Fourier transform did not converge");
}

cplx hermite_coeff(const FunctionSpec& f, const std::vector<int>& alpha) {
  if (int(alpha.size()) != f.n) throw std::invalid_argument("hermite_coeff: dimension mismatch");
  int deg = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("hermite_coeff: negative index");
    deg += a;
  }
  if (deg > 200) throw std::invalid_argument("hermite_coeff: |alpha| > 200");
  HermiteCoefficients h = hermite_coeffs(f, deg);
  return f.n == 1 ? h.at(alpha[0]) : h.at(alpha[0], alpha[1]);
}

CoefficientTable proj_norms_direct(const FunctionSpec& f, int kmax) {
  if (kmax < 0 || kmax > kDirectMax) throw std::invalid_argument("direct route: level budget is 0..60");
  HermiteCoefficients h = hermite_coeffs(f, kmax);
  CoefficientTable t;
  t.function_id = f.id;
  t.route = Route::direct;
  t.n = f.n;
  t.meta["resolution"] = std::to_string(h.resolution);
  for (int k = 0; k <= kmax; ++k) {
    double s = 0.0, e = 0.0;
    for (int a = 0; a <= k; ++a) {
      if (f.n == 1 && a != k) continue;
      std::size_t i = f.n == 1 ? k : std::size_t(a) * (kmax + 1) + (k - a);
      s += std::norm(h.c[i]);
      e += h.err[i] * h.err[i];
    }
    t.push(k, std::sqrt(s), std::sqrt(e));
  }
  return t;
}

double proj_norm_direct(const FunctionSpec& f, int k) { return proj_norms_direct(f, k).value[k]; }

namespace {

std::vector<double> wigner_level_integrals(const FunctionSpec& f, int kmax, int P, int* eta_points) {
  const double c = 0.25 * f.hardy_gamma() + 0.25;
  QuadratureRule ax = quad::scaled_hermite_axis(P, c);
  xform::RadialMoments mom = xform::wigner_radial_moments(f, ax);
  if (eta_points) *eta_points = mom.eta_points;
  const std::size_t nk = mom.r2.size();
  const int K = kmax + 1;
  std::vector<double> phi(nk * K);
  parallel::for_each(nk, [&](std::size_t i) { special::varphi_all(kmax, f.n, mom.r2[i], &phi[i * K]); });
  std::vector<double> out(2 * K);
  const double pref = std::pow(2.0 * kPi, -0.5 * f.n);
  parallel::for_each(K, [&](std::size_t k) {
    std::vector<cplx> t(nk);
    for (std::size_t i = 0; i < nk; ++i) t[i] = mom.s[i] * phi[i * K + k];
    cplx v = pref * parallel::pairwise(t.data(), nk);
    out[2 * k] = v.real();
    out[2 * k + 1] = v.imag();
  });
  return out;
}

}  // namespace

CoefficientTable proj_norms_wigner(const FunctionSpec& f, int kmax, WignerOptions opt) {
  if (f.n != 1 && f.n != 2) throw std::invalid_argument("wigner route: n must be 1 or 2");
  if (kmax < 0 || kmax > 200) throw std::invalid_argument("wigner route: level out of range");
  const int P = opt.per_axis > 0 ? opt.per_axis : (f.n == 2 ? 64 : 96);
  const int Pc = opt.companion > 0 ? opt.companion : (3 * P) / 4;
  int M = 0, Mc = 0;
  std::vector<double> main = wigner_level_integrals(f, kmax, P, &M);
  std::vector<double> comp = wigner_level_integrals(f, kmax, Pc, &Mc);
  CoefficientTable t;
  t.function_id = f.id;
  t.route = Route::wigner;
  t.n = f.n;
  t.meta["per_axis"] = std::to_string(P);
  t.meta["companion_per_axis"] = std::to_string(Pc);
  t.meta["eta_points"] = std::to_string(M);
  t.meta["rule"] = "scaled Gauss-Hermite tensor, exp(-c|z|^2), c = " + num(0.25 * f.hardy_gamma() + 0.25);
  double max_imag = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    double re = main[2 * k], im = main[2 * k + 1];
    max_imag = std::max(max_imag, std::fabs(im));
    if (std::fabs(im) > 1e-8) throw NumericalError(f.id + ": Wigner-route integral has imaginary part " + num(im) + " at level " + std::to_string(k));
    if (re < -1e-8) throw NumericalError(f.id + ": Wigner-route squared norm " + num(re) + " < 0 at level " + std::to_string(k));
    if (re < 0.0) {
      t.clamped.push_back(k);
      re = 0.0;
    }
    double v = std::sqrt(re), vc = std::sqrt(std::max(comp[2 * k], 0.0));
    // a negative squared norm in either rule bounds the error from below
    double floor = std::sqrt(std::max({-main[2 * k], -comp[2 * k], 0.0}));
    t.push(k, v, std::max(std::fabs(v - vc), floor));
  }
  t.meta["max_imag"] = num(max_imag);
  return t;
}

double proj_norm_wigner(const FunctionSpec& f, int k) { return proj_norms_wigner(f, k).value[k]; }

cplx laguerre_coeff(const RadialProfile& g, int k, double delta, bool normalized) {
  if (k < 0) throw std::invalid_argument("laguerre_coeff: k must be >= 0");
  cplx c = xform::laguerre_projections(g, delta, k)[k];
  if (!normalized) return c;
  return 2.0 * std::exp(special::log_gamma(k + 1.0) - special::log_gamma(k + delta + 1.0)) * c;
}

cplx SphericalProfile::reduced(std::size_t i) const { return m == 0 ? f_mj[i] : f_mj[i] / std::pow(r[i], m); }

SphericalDecomposition spherical_decompose(const FunctionSpec& f, int m_max, int radial_nodes, int circle) {
  if (f.n != 2) throw std::invalid_argument("spherical_decompose: n must be 2");
  if (m_max < 0 || 2 * m_max >= circle) throw std::invalid_argument("spherical_decompose: m_max must be < circle/2");
  if (!(f.gamma > 0.0)) throw std::invalid_argument(f.id + ": envelope required");
  const double R = quad::truncation_radius(f.gamma, 20);
  SphericalDecomposition d;
  d.radial = quad::mapped_legendre(radial_nodes, 0.0, R);
  const int Nr = radial_nodes, M = circle;
  std::vector<cplx> vals(std::size_t(Nr) * M);
  parallel::for_each(vals.size(), [&](std::size_t i) {
    double r = d.radial.nodes[i / M], th = 2.0 * kPi * double(i % M) / M;
    double x[2] = {r * std::cos(th), r * std::sin(th)};
    vals[i] = f.eval(x);
  });
  std::vector<std::pair<int, int>> mj;
  for (int m = 0; m <= m_max; ++m)
    for (int j = 1; j <= special::harmonic_dim(m); ++j) mj.push_back({m, j});
  d.profiles.resize(mj.size());
  parallel::for_each(mj.size(), [&](std::size_t p) {
    auto [m, j] = mj[p];
    SphericalProfile& sp = d.profiles[p];
    sp.m = m;
    sp.j = j;
    sp.r = d.radial.nodes;
    sp.f_mj.resize(Nr);
    std::vector<double> Y(M);
    for (int t = 0; t < M; ++t) Y[t] = special::circular_harmonic(m, j, 2.0 * kPi * t / M).real() * (2.0 * kPi / M);
    std::vector<cplx> tmp(M);
    for (int i = 0; i < Nr; ++i) {
      for (int t = 0; t < M; ++t) tmp[t] = vals[std::size_t(i) * M + t] * Y[t];
      sp.f_mj[i] = parallel::pairwise(tmp.data(), M);
    }
  });
  std::vector<double> e(d.profiles.size());
  for (std::size_t p = 0; p < d.profiles.size(); ++p) {
    double s = 0.0;
    for (int i = 0; i < Nr; ++i) s += d.radial.weights[i] * d.radial.nodes[i] * std::norm(d.profiles[p].f_mj[i]);
    e[p] = s;
  }
  d.captured_energy = parallel::pairwise(e.data(), e.size());
  double total = f.norm_sq;
  if (!std::isfinite(total)) {
    std::vector<double> rows(Nr);
    for (int i = 0; i < Nr; ++i) {
      double s = 0.0;
      for (int t = 0; t < M; ++t) s += std::norm(vals[std::size_t(i) * M + t]);
      rows[i] = d.radial.weights[i] * d.radial.nodes[i] * s * 2.0 * kPi / M;
    }
    total = parallel::pairwise(rows.data(), Nr);
  }
  d.tail_energy = total - d.captured_energy;
  return d;
}

cplx reduced_laguerre(const SphericalProfile& p, const QuadratureRule& radial, int q) {
  const std::size_t N = radial.nodes.size();
  std::vector<cplx> t(N);
  std::vector<double> psi(q + 1);
  for (std::size_t i = 0; i < N; ++i) {
    double s = radial.nodes[i];
    special::laguerre_psi_all(q, double(p.m), s, psi.data());
    t[i] = radial.weights[i] * p.f_mj[i] * psi[q] * std::pow(s, p.m + 1);
  }
  return parallel::pairwise(t.data(), N);
}

namespace {

int harmonic_cap(const FunctionSpec& f, int kmax) { return f.harmonic_max >= 0 ? std::min(f.harmonic_max, kmax) : kmax; }

// coefficient table c[m][j-1][q] for the reduced profiles
struct ReducedCoeffs {
  std::vector<std::vector<cplx>> c;  // indexed by profile, then q
  std::vector<std::pair<int, int>> mj;
};

ReducedCoeffs reduced_coeffs(const SphericalDecomposition& d, int kmax) {
  ReducedCoeffs rc;
  rc.c.resize(d.profiles.size());
  parallel::for_each(d.profiles.size(), [&](std::size_t p) {
    const SphericalProfile& sp = d.profiles[p];
    int qmax = (kmax - sp.m) / 2;
    const std::size_t N = d.radial.nodes.size();
    std::vector<double> psi(std::max(qmax, 0) + 1);
    std::vector<std::vector<cplx>> terms(std::max(qmax, 0) + 1, std::vector<cplx>(N));
    for (std::size_t i = 0; i < N; ++i) {
      double s = d.radial.nodes[i];
      if (qmax < 0) break;
      special::laguerre_psi_all(qmax, double(sp.m), s, psi.data());
      cplx base = d.radial.weights[i] * sp.f_mj[i] * std::pow(s, sp.m + 1);
      for (int q = 0; q <= qmax; ++q) terms[q][i] = base * psi[q];
    }
    for (int q = 0; q <= qmax; ++q) rc.c[p].push_back(parallel::pairwise(terms[q].data(), N));
  });
  for (const auto& sp : d.profiles) rc.mj.push_back({sp.m, sp.j});
  return rc;
}

std::vector<double> spherical_levels(const FunctionSpec& f, int kmax, int radial_nodes, double* energy = nullptr) {
  SphericalDecomposition d = spherical_decompose(f, harmonic_cap(f, kmax), radial_nodes);
  if (energy) *energy = d.captured_energy + std::max(d.tail_energy, 0.0);
  ReducedCoeffs rc = reduced_coeffs(d, kmax);
  std::vector<double> out(kmax + 1, 0.0);
  for (int L = 0; L <= kmax; ++L) {
    std::vector<double> terms;
    for (std::size_t p = 0; p < rc.mj.size(); ++p) {
      int m = rc.mj[p].first;
      if (m > L || (L - m) % 2) continue;
      int q = (L - m) / 2;
      double w = 2.0 * std::exp(special::log_gamma(q + 1.0) - special::log_gamma(q + m + 1.0));
      terms.push_back(w * std::norm(rc.c[p][q]));
    }
    out[L] = parallel::pairwise(terms.data(), terms.size());
  }
  return out;
}

}  // namespace

CoefficientTable proj_norms_spherical(const FunctionSpec& f, int kmax) {
  if (f.n != 2) throw std::invalid_argument("spherical route: n must be 2");
  if (kmax < 0 || kmax > 120) throw std::invalid_argument("spherical route: level out of range");
  double energy = 0.0;
  std::vector<double> a = spherical_levels(f, kmax, 256, &energy);
  std::vector<double> b = spherical_levels(f, kmax, 192);
  // roundoff floor: harmonic components that vanish by symmetry come out near eps * ||f||
  const double floor = 1e-15 * std::sqrt(energy);
  CoefficientTable t;
  t.function_id = f.id;
  t.route = Route::spherical;
  t.n = 2;
  t.meta["radial_nodes"] = "256";
  t.meta["companion_radial_nodes"] = "192";
  t.meta["circle_nodes"] = "256";
  for (int k = 0; k <= kmax; ++k) {
    double v = std::sqrt(std::max(a[k], 0.0)), vc = std::sqrt(std::max(b[k], 0.0));
    t.push(k, v, std::max(std::fabs(v - vc), floor));
  }
  return t;
}

double proj_norm_spherical(const FunctionSpec& f, int k) { return proj_norms_spherical(f, k).value[k]; }

CoefficientTable proj_norms_cweighted(const FunctionSpec& f, int kmax) {
  if (f.n != 2) throw std::invalid_argument("c-weighted route: n must be 2");
  SphericalDecomposition d = spherical_decompose(f, harmonic_cap(f, kmax), 256);
  ReducedCoeffs rc = reduced_coeffs(d, kmax);
  CoefficientTable t;
  t.function_id = f.id;
  t.route = Route::spherical;
  t.n = 2;
  t.meta["form"] = "c(k,m)-weighted";
  const double nh = 1.0;  // n/2
  for (int L = 0; L <= kmax; L += 2) {
    const int k = L / 2;
    std::vector<double> terms;
    for (std::size_t p = 0; p < rc.mj.size(); ++p) {
      int h = rc.mj[p].first;
      if (h > L || h % 2) continue;
      int m = h / 2;
      double lw = 2.0 * m * std::log(2.0) + std::log(special::c_constant(k, m, 2)) - 2.0 * k * std::log(2.0) +
                  special::log_gamma(2.0 * k + 1.0) - 2.0 * special::log_gamma(nh + k + m);
      terms.push_back(2.0 * std::exp(lw) * std::norm(rc.c[p][k - m]));
    }
    t.push(L, std::sqrt(parallel::pairwise(terms.data(), terms.size())), 0.0);
  }
  return t;
}

double cauchy_radius(int k, double mu) {
  if (k == 0) return 1.0;
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("cauchy_radius: need 0 < mu < 1");
  return std::sqrt(2.0 * k / std::sqrt(mu));
}

namespace {

double hardy_mu(const FunctionSpec& f) {
  double a = std::min(2.0 * f.hardy_gamma(), 0.95);
  return (1.0 - a) / (1.0 + a);
}

std::vector<double> dk_cauchy(const FunctionSpec& f, int kmax, int Nt, int Ns, int Mw, std::vector<double>* noise = nullptr) {
  const double mu = hardy_mu(f);
  double rmax = 1.0;
  for (int k = 0; k <= kmax; ++k) rmax = std::max(rmax, cauchy_radius(k, mu));
  const double c = f.gamma + 0.5;
  const double S = quad::truncation_radius(c, 20);
  const double T = rmax / (2.0 * c) + S;
  QuadratureRule rt = quad::mapped_legendre(Nt, -T, T), rs = quad::mapped_legendre(Ns, -S, S);
  std::vector<std::vector<double>> dk(Mw, std::vector<double>(kmax + 1)), nz(Mw, std::vector<double>(kmax + 1));
  parallel::for_each(Mw, [&](std::size_t w) {
    const double th = 2.0 * kPi * double(w) / Mw;
    const double o1 = std::cos(th), o2 = std::sin(th);
    // projection of f exp(-|x|^2/2) onto the line spanned by omega
    std::vector<cplx> F(Nt);
    for (int a = 0; a < Nt; ++a) {
      std::vector<cplx> t(Ns);
      const double tau = rt.nodes[a];
      for (int b = 0; b < Ns; ++b) {
        const double s = rs.nodes[b];
        double x[2] = {tau * o1 - s * o2, tau * o2 + s * o1};
        t[b] = rs.weights[b] * f.eval(x) * std::exp(-0.5 * (tau * tau + s * s));
      }
      F[a] = rt.weights[a] * parallel::pairwise(t.data(), Ns);
    }
    double big = 0.0;
    auto B = [&](cplx z) {
      std::vector<cplx> t(Nt);
      double m = 0.0;
      for (int a = 0; a < Nt; ++a) {
        t[a] = F[a] * std::exp(z * rt.nodes[a] - 0.25 * z * z);
        m += std::abs(t[a]);
      }
      big = std::max(big, m);
      return parallel::pairwise(t.data(), Nt);
    };
    for (int k = 0; k <= kmax; ++k) {
      big = 0.0;
      const double rad = cauchy_radius(k, mu);
      std::vector<cplx> ck = xform::taylor_coeffs_cauchy(B, rad, k + 1);
      dk[w][k] = std::norm(ck[k]);
      const double e = 1e-15 * big / std::pow(rad, k);
      nz[w][k] = e * e;
    }
  });
  std::vector<double> out(kmax + 1);
  if (noise) noise->assign(kmax + 1, 0.0);
  for (int k = 0; k <= kmax; ++k) {
    std::vector<double> t(Mw), u(Mw);
    for (int w = 0; w < Mw; ++w) {
      t[w] = dk[w][k] * 2.0 * kPi / Mw;
      u[w] = nz[w][k] * 2.0 * kPi / Mw;
    }
    out[k] = parallel::pairwise(t.data(), Mw);
    if (noise) (*noise)[k] = parallel::pairwise(u.data(), Mw);
  }
  return out;
}

std::vector<double> dk_formula(const FunctionSpec& f, int kmax, int radial_nodes, std::vector<double>* noise = nullptr) {
  SphericalDecomposition d = spherical_decompose(f, harmonic_cap(f, kmax), radial_nodes);
  const double energy = d.captured_energy + std::max(d.tail_energy, 0.0);
  if (noise) noise->assign(kmax + 1, 0.0);
  ReducedCoeffs rc = reduced_coeffs(d, kmax);
  const int n = 2;
  std::vector<double> out(kmax + 1);
  for (int L = 0; L <= kmax; ++L) {
    std::vector<double> terms;
    for (std::size_t p = 0; p < rc.mj.size(); ++p) {
      int h = rc.mj[p].first;
      if (h > L || (L - h) % 2) continue;
      int q = (L - h) / 2;
      double lw = n * std::log(2.0 * kPi) + (2.0 - n - 2.0 * L) * std::log(2.0) - 2.0 * special::log_gamma(0.5 * n + q + h);
      terms.push_back(std::exp(lw) * std::norm(rc.c[p][q]));
      // roundoff on (f~, psi) is about eps ||f|| ||psi_q^h||
      if (noise) {
        double psi2 = 0.5 * std::exp(special::log_gamma(q + h + 1.0) - special::log_gamma(q + 1.0));
        (*noise)[L] = std::max((*noise)[L], std::exp(lw) * 1e-30 * energy * psi2);
      }
    }
    out[L] = parallel::pairwise(terms.data(), terms.size());
  }
  return out;
}

}  // namespace

CoefficientTable d_k_norms(const FunctionSpec& f, int kmax, DkRoute route) {
  if (f.n != 2) throw std::invalid_argument("d_k_norms: n must be 2");
  if (kmax < 0 || kmax > 40) throw std::invalid_argument("d_k_norms: k out of range");
  CoefficientTable t;
  t.function_id = f.id;
  t.route = Route::spherical;
  t.n = 2;
  std::vector<double> a, b, noise;
  if (route == DkRoute::cauchy) {
    t.meta["form"] = "cauchy";
    t.meta["mu"] = num(hardy_mu(f));
    a = dk_cauchy(f, kmax, 192, 96, 64, &noise);
    b = dk_cauchy(f, kmax, 144, 72, 64);
  } else {
    t.meta["form"] = "formula";
    a = dk_formula(f, kmax, 256, &noise);
    b = dk_formula(f, kmax, 192);
  }
  for (int k = 0; k <= kmax; ++k) t.push(k, a[k], std::max(std::fabs(a[k] - b[k]), noise[k]));
  return t;
}

double d_k_norm(const FunctionSpec& f, int k, DkRoute route) { return d_k_norms(f, k, route).value[k]; }

FunctionSpec t_operator(const FunctionSpec& f, int m_max) {
  if (f.n != 2) throw std::invalid_argument("t_operator: n must be 2");
  const int M = 256;
  if (m_max < 0 || 2 * m_max >= M) throw std::invalid_argument("t_operator: m_max out of range");
  const int mm = f.harmonic_max >= 0 ? std::min(m_max, f.harmonic_max) : m_max;
  FunctionSpec g = f;
  g.id = "T[" + f.id + "]";
  g.family = "T";
  g.norm_sq = std::numeric_limits<double>::quiet_NaN();
  g.gamma_hat = 0.0;
  FunctionSpec src = f;
  // sum_m 2^{-m/2} sum_j Y_mj(a) Y_mj(b) = (1 + 2 sum_{m>=1} 2^{-m/2} cos(m(a-b))) / (2 pi)
  g.eval = [src, mm](const double* x) {
    const double r = std::hypot(x[0], x[1]);
    const double th = std::atan2(x[1], x[0]);
    std::vector<cplx> t(M);
    for (int i = 0; i < M; ++i) {
      const double ti = 2.0 * kPi * i / M;
      double y[2] = {r * std::cos(ti), r * std::sin(ti)};
      double ker = 1.0;
      for (int m = 1; m <= mm; ++m) ker += 2.0 * std::pow(2.0, -0.5 * m) * std::cos(m * (th - ti));
      t[i] = src.eval(y) * ker / double(M);
    }
    return parallel::pairwise(t.data(), M);
  };
  return g;
}

}  // namespace hardy::expansion
