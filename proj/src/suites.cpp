#include "hardy/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "hardy/decay_analysis.hpp"
#include "hardy/hermite_analysis.hpp"
#include "hardy/parallel.hpp"
#include "hardy/special_fn.hpp"
#include "hardy/transforms.hpp"
#include "json.hpp"

namespace hardy::suites {

using expansion::CoefficientTable;
using json = nlohmann::ordered_json;

std::string Report::to_json() const {
  json j;
  j["suite"] = suite;
  auto arr = json::array();
  for (const auto& c : checks) {
    json e;
    e["name"] = c.name;
    e["measured"] = c.measured;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    e["input"] = c.input;
    arr.push_back(e);
  }
  j["checks"] = arr;
  j["pass"] = pass;
  return j.dump(2);
}

namespace {

std::string fmt(const char* f, double a) {
  char b[96];
  std::snprintf(b, sizeof b, f, a);
  return b;
}
std::string fmt(const char* f, double a, double b2) {
  char b[128];
  std::snprintf(b, sizeof b, f, a, b2);
  return b;
}
std::string fmt(const char* f, double a, double b2, double c) {
  char b[160];
  std::snprintf(b, sizeof b, f, a, b2, c);
  return b;
}

// Running worst case over a fixed evaluation order.
struct Worst {
  double v = 0.0;
  std::string at;
  void see(double e, const std::string& where) {
    if (std::isnan(v)) return;  // NaN sticks
    if (std::isnan(e) || at.empty() || e > v) {
      v = e;
      at = where;
    }
  }
};

struct Builder {
  Report r;
  explicit Builder(std::string s) { r.suite = std::move(s); }
  void add(const std::string& name, double measured, double tol, const std::string& input) {
    Check c{name, measured, tol, std::isfinite(measured) && measured <= tol, input};
    r.pass = r.pass && c.pass;
    r.checks.push_back(std::move(c));
  }
  void add(const std::string& name, const Worst& w, double tol) { add(name, w.v, tol, w.at); }
  // guarded: a thrown numerical error becomes a failed check
  void guard(const std::string& name, double tol, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, std::numeric_limits<double>::quiet_NaN(), tol, std::string("error: ") + e.what());
    }
  }
};

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

std::string fn_k(const std::string& f, int k) { return "fn=" + f + " k=" + std::to_string(k); }

// ---------------------------------------------------------------- orthonormality

Report orthonormality() {
  Builder b("orthonormality");
  b.guard("hermite-gram", 1e-10, [&] {
    const int K = 40;
    auto q = quad::mapped_legendre(400, -16.0, 16.0);
    std::vector<double> phi(q.nodes.size() * (K + 1));
    parallel::for_each(q.nodes.size(), [&](std::size_t i) { special::hermite_phi_all(K, q.nodes[i], &phi[i * (K + 1)]); });
    Worst w;
    for (int j = 0; j <= K; ++j)
      for (int k = j; k <= K; ++k) {
        std::vector<double> t(q.nodes.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = q.weights[i] * phi[i * (K + 1) + j] * phi[i * (K + 1) + k];
        double g = parallel::pairwise(t.data(), t.size());
        w.see(std::fabs(g - (j == k ? 1.0 : 0.0)), "j=" + std::to_string(j) + " k=" + std::to_string(k));
      }
    b.add("hermite-gram", w, 1e-10);
  });
  b.guard("laguerre-gram", 1e-10, [&] {
    const int K = 20;
    Worst w;
    for (double d : {0.0, 0.5, 1.0, 1.5, 2.0}) {
      auto q = quad::radial_rule(d, 20.0, 800);
      std::vector<double> psi(q.nodes.size() * (K + 1));
      for (std::size_t i = 0; i < q.nodes.size(); ++i) special::laguerre_psi_all(K, d, q.nodes[i], &psi[i * (K + 1)]);
      auto nrm = [&](int k) { return std::exp(special::log_gamma(k + d + 1.0) - special::log_gamma(k + 1.0)) / 2.0; };
      for (int j = 0; j <= K; ++j)
        for (int k = j; k <= K; ++k) {
          std::vector<double> t(q.nodes.size());
          for (std::size_t i = 0; i < t.size(); ++i) t[i] = q.weights[i] * psi[i * (K + 1) + j] * psi[i * (K + 1) + k];
          double g = parallel::pairwise(t.data(), t.size()) / std::sqrt(nrm(j) * nrm(k));
          w.see(std::fabs(g - (j == k ? 1.0 : 0.0)), fmt("delta=%g", d) + " j=" + std::to_string(j) + " k=" + std::to_string(k));
        }
    }
    b.add("laguerre-gram", w, 1e-10);
  });
  b.guard("gauss-hermite-weight-sum", 1e-13, [&] {
    Worst w;
    for (int N : {2, 10, 50, 200, 500}) {
      auto q = quad::gauss_hermite(N);
      double s = parallel::pairwise(q.weights.data(), q.weights.size());
      w.see(rel(s, std::sqrt(kPi)), "N=" + std::to_string(N));
    }
    b.add("gauss-hermite-weight-sum", w, 1e-13);
  });
  return b.r;
}

// ---------------------------------------------------------------- fourier-eigen

std::vector<double> grid_axis(double lo, double hi, double h) {
  std::vector<double> a;
  for (int i = 0; lo + i * h <= hi + 1e-12; ++i) a.push_back(lo + i * h);
  return a;
}

cplx minus_i_pow(int k) {
  static const cplx p[4] = {1.0, cplx(0, -1), -1.0, cplx(0, 1)};
  return p[k % 4];
}

Report fourier_eigen() {
  Builder b("fourier-eigen");
  b.guard("fourier-hermite-eigen-n1", 1e-8, [&] {
    auto ax = grid_axis(-8.0, 8.0, 0.25);
    Worst w;
    for (int k = 0; k <= 20; ++k) {
      auto f = make_function("hermite:n=1,k=" + std::to_string(k));
      auto F = xform::fourier_on_grid(f, {0}, ax);
      for (std::size_t i = 0; i < ax.size(); ++i)
        w.see(std::abs(F[i] - minus_i_pow(k) * special::hermite_phi(k, ax[i])), "k=" + std::to_string(k) + fmt(" xi=%g", ax[i]));
    }
    b.add("fourier-hermite-eigen-n1", w, 1e-8);
  });
  b.guard("fourier-hermite-eigen-n2", 1e-8, [&] {
    auto ax = grid_axis(-6.0, 6.0, 0.5);
    Worst w;
    for (int k = 0; k <= 10; ++k)
      for (int a1 = 0; a1 <= k; ++a1) {
        int a2 = k - a1;
        auto f = make_function("hermite:n=2,a1=" + std::to_string(a1) + ",a2=" + std::to_string(a2));
        auto F = xform::fourier_on_grid(f, {0, 1}, ax);
        const std::size_t P = ax.size();
        for (std::size_t i = 0; i < P; ++i)
          for (std::size_t j = 0; j < P; ++j) {
            double ex = special::hermite_phi(a1, ax[i]) * special::hermite_phi(a2, ax[j]);
            w.see(std::abs(F[i * P + j] - minus_i_pow(k) * ex),
                  "alpha=(" + std::to_string(a1) + "," + std::to_string(a2) + ")" + fmt(" xi=(%g,%g)", ax[i], ax[j]));
          }
      }
    b.add("fourier-hermite-eigen-n2", w, 1e-8);
  });
  b.guard("fourier-coefficient-intertwining", 1e-8, [&] {
    Worst w;
    for (int n : {1, 2})
      for (const auto& id : hardy_battery(n)) {
        auto f = make_function(id);
        const int K = 10;
        auto c = expansion::hermite_coeffs(f, K);
        auto h = expansion::hermite_coeffs_of_fourier(f, K);
        if (n == 1) {
          for (int k = 0; k <= K; ++k) w.see(std::abs(h.at(k) - minus_i_pow(k) * c.at(k)), fn_k(id, k));
        } else {
          for (int a1 = 0; a1 <= K; ++a1)
            for (int a2 = 0; a1 + a2 <= K; ++a2)
              w.see(std::abs(h.at(a1, a2) - minus_i_pow(a1 + a2) * c.at(a1, a2)),
                    "fn=" + id + " alpha=(" + std::to_string(a1) + "," + std::to_string(a2) + ")");
        }
      }
    b.add("fourier-coefficient-intertwining", w, 1e-8);
  });
  for (int n : {1, 2}) {
    std::string name = "symplectic-laguerre-eigen-n" + std::to_string(n);
    b.guard(name, 1e-7, [&] {
      auto G = quad::gaussian_tensor_rule(n, n == 1 ? 64 : 32, 0.25);
      // fixed probe points with |z| <= 6
      std::vector<std::vector<cplx>> zs;
      for (double r : {0.0, 1.0, 2.5, 4.0, 6.0}) {
        if (n == 1) {
          zs.push_back({cplx(0.8 * r, -0.6 * r)});
          zs.push_back({cplx(-0.28 * r, 0.96 * r)});
        } else {
          zs.push_back({cplx(0.6 * r, 0.3 * r), cplx(-0.5 * r, 0.5567764362830022 * r)});
          zs.push_back({cplx(0.1 * r, -0.7 * r), cplx(0.7 * r, 0.1 * r)});
        }
      }
      Worst w;
      for (int k = 0; k <= 6; ++k) {
        auto F = xform::sample_field(n, G, [k, n](const double* v) {
          double s = 0.0;
          for (int i = 0; i < 2 * n; ++i) s += v[i] * v[i];
          return cplx(special::varphi(k, n, s));
        });
        for (const auto& z : zs) {
          double s = 0.0;
          for (const auto& c : z) s += std::norm(c);
          cplx v = xform::symplectic_fourier(F, z.data());
          w.see(std::abs(v - (k % 2 ? -1.0 : 1.0) * special::varphi(k, n, s)), "k=" + std::to_string(k) + fmt(" |z|=%g", std::sqrt(s)));
        }
      }
      b.add(name, w, 1e-7);
    });
  }
  return b.r;
}

// ---------------------------------------------------------------- hankel-eigen

Report hankel_eigen() {
  Builder b("hankel-eigen");
  for (double d : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    std::string name = "hankel-laguerre-eigen-delta-" + fmt("%g", d);
    b.guard(name, 1e-8, [&] {
      const int K = 20;
      auto r = grid_axis(0.0, 6.0, 0.25);
      std::vector<double> err((K + 1) * r.size());
      parallel::for_each(err.size(), [&](std::size_t i) {
        int k = int(i / r.size());
        double x = r[i % r.size()];
        auto g = make_profile("psi:k=" + std::to_string(k) + ",delta=" + fmt("%g", d));
        err[i] = std::abs(xform::hankel(g, d, x) - (k % 2 ? -1.0 : 1.0) * special::laguerre_psi(k, d, x));
      });
      Worst w;
      for (std::size_t i = 0; i < err.size(); ++i) w.see(err[i], "k=" + std::to_string(i / r.size()) + fmt(" r=%g", r[i % r.size()]));
      b.add(name, w, 1e-8);
    });
  }
  return b.r;
}

// ---------------------------------------------------------------- wigner-identity

Report wigner_identity() {
  Builder b("wigner-identity");
  b.guard("wigner-orthogonality", 1e-7, [&] {
    auto G = quad::gaussian_tensor_rule(1, 40, 0.5);
    const std::size_t N = G.size();
    std::vector<FunctionSpec> h;
    for (int k = 0; k < 4; ++k) h.push_back(make_function("hermite:n=1,k=" + std::to_string(k)));
    // V(Phi_a, Phi_b) on the grid, pair index p = 4a + b
    std::vector<cplx> V(16 * N);
    parallel::for_each(16 * N, [&](std::size_t i) {
      std::size_t p = i / N, q = i % N;
      double w[2];
      G.node(q, w);
      V[i] = xform::fourier_wigner_fixed(h[p / 4], h[p % 4], &w[0], &w[1], 96);
    });
    Worst w;
    for (int p = 0; p < 16; ++p)
      for (int q = 0; q < 16; ++q) {
        std::vector<cplx> t(N);
        for (std::size_t i = 0; i < N; ++i) t[i] = G.weight(i) * V[p * N + i] * std::conj(V[q * N + i]);
        cplx s = parallel::pairwise(t.data(), N);
        // (f1, f2)(g2, g1) for f1 = Phi_{p/4}, g1 = Phi_{p%4}, f2 = Phi_{q/4}, g2 = Phi_{q%4}
        double ex = (p / 4 == q / 4 && p % 4 == q % 4) ? 1.0 : 0.0;
        w.see(std::abs(s - ex), "pairs (" + std::to_string(p / 4) + "," + std::to_string(p % 4) + ") (" + std::to_string(q / 4) + "," +
                                   std::to_string(q % 4) + ")");
      }
    b.add("wigner-orthogonality", w, 1e-7);
  });
  b.guard("wigner-diagonal-sum", 1e-8, [&] {
    std::vector<std::array<double, 4>> pts;  // (x1, y1, x2, y2), |z| <= 6
    const double dirs[4][4] = {{1, 0, 0, 0}, {0.5, 0.5, 0.5, 0.5}, {0.6, -0.48, 0.0, 0.64}, {0.0, 0.8, -0.6, 0.0}};
    for (double r : {0.0, 1.5, 3.0, 4.5, 6.0})
      for (const auto& d : dirs) pts.push_back({r * d[0], r * d[1], r * d[2], r * d[3]});
    std::vector<std::pair<int, int>> alphas;
    for (int k = 0; k <= 6; ++k)
      for (int a1 = 0; a1 <= k; ++a1) alphas.push_back({a1, k - a1});
    std::vector<cplx> V(alphas.size() * pts.size());
    parallel::for_each(V.size(), [&](std::size_t i) {
      auto [a1, a2] = alphas[i / pts.size()];
      const auto& p = pts[i % pts.size()];
      auto f = make_function("hermite:n=2,a1=" + std::to_string(a1) + ",a2=" + std::to_string(a2));
      cplx z[2] = {cplx(p[0], p[1]), cplx(p[2], p[3])};
      V[i] = xform::fourier_wigner(f, f, z);
    });
    Worst w;
    for (int k = 0; k <= 6; ++k)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        cplx s = 0.0;
        for (std::size_t a = 0; a < alphas.size(); ++a)
          if (alphas[a].first + alphas[a].second == k) s += V[a * pts.size() + j];
        const auto& p = pts[j];
        double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        double ex = special::varphi(k, 2, r2) / (2.0 * kPi);
        w.see(std::abs(s - ex), "k=" + std::to_string(k) + fmt(" z=(%g,%g,%g,", p[0], p[1], p[2]) + fmt("%g)", p[3]));
      }
    b.add("wigner-diagonal-sum", w, 1e-8);
  });
  // |V(f,f)(z)| e^{gamma |z|^2 / 4} on |z| <= 6 must peak away from the outer
  // shell 5.5 <= |z| <= 6; measured is outer max / inner max - 1
  auto shell_growth = [](const std::vector<double>& r, const std::vector<double>& v, double gamma, double* sup) {
    double top = 0.0, inner = 0.0, outer = 0.0;
    for (double x : v) top = std::max(top, x);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (v[i] <= 1e-10 * top) continue;  // quadrature noise
      double e = v[i] * std::exp(0.25 * gamma * r[i] * r[i]);
      (r[i] >= 5.5 ? outer : inner) = std::max(r[i] >= 5.5 ? outer : inner, e);
    }
    *sup = std::max(inner, outer);
    return outer / inner - 1.0;
  };
  for (int n : {1, 2}) {
    std::string name = "wigner-envelope-n" + std::to_string(n);
    b.guard(name, 1e-6, [&, n] {
      std::vector<std::array<double, 4>> pts;
      if (n == 1) {
        for (double x = -6.0; x <= 6.0; x += 0.25)
          for (double y = -6.0; y <= 6.0; y += 0.25)
            if (std::hypot(x, y) <= 6.0) pts.push_back({x, y, 0, 0});
      } else {
        auto S = quad::sphere_rule(2, 4);
        for (double r = 0.25; r <= 6.0; r += 0.25)
          for (std::size_t i = 0; i < S.weights.size(); ++i) {
            double u[4];
            S.node(i, u);
            pts.push_back({r * u[0], r * u[1], r * u[2], r * u[3]});
          }
      }
      Worst w;
      double Cn = 0.0;
      for (const auto& id : hardy_battery(n)) {
        auto f = make_function(id);
        const double gamma = f.hardy_gamma();
        std::vector<double> r(pts.size()), v(pts.size());
        parallel::for_each(pts.size(), [&](std::size_t i) {
          const auto& p = pts[i];
          double x[2] = {p[0], p[2]}, y[2] = {p[1], p[3]};
          r[i] = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
          v[i] = std::abs(xform::fourier_wigner_fixed(f, f, x, y, n == 1 ? 192 : 64));
        });
        double sup = 0.0;
        w.see(shell_growth(r, v, gamma, &sup), "fn=" + id + " V" + fmt(" gamma=%.4g", gamma));
        Cn = std::max(Cn, sup * std::pow(gamma, 0.5 * n));
        if (n == 1) {
          // symplectic Fourier transform of V(f,f), Legendre tensor truncated at its envelope
          auto G = quad::tensor_rule(1, 128, quad::truncation_radius(0.25 * gamma, 14));
          auto F = xform::sample_field(1, G, [f](const double* u) {
            double x = u[0], y = u[1];
            return xform::fourier_wigner_fixed(f, f, &x, &y, 256);
          });
          parallel::for_each(pts.size(), [&](std::size_t i) {
            cplx z(pts[i][0], pts[i][1]);
            v[i] = std::abs(xform::symplectic_fourier(F, &z));
          });
          w.see(shell_growth(r, v, gamma, &sup), "fn=" + id + " symplectic" + fmt(" gamma=%.4g", gamma));
          Cn = std::max(Cn, sup * std::pow(gamma, 0.5 * n));
        }
      }
      w.at += fmt(" C_n=%.6g", Cn);
      b.add(name, w, 1e-6);
    });
  }
  return b.r;
}

// ---------------------------------------------------------------- routes

// pairwise relative agreement of two level tables on k <= K; levels that
// vanish by symmetry (below 1e-10 ||f||) must stay below 1e-7 ||f|| instead
void compare_levels(Worst& w, const std::string& id, const std::string& tag, const CoefficientTable& a, const CoefficientTable& ref,
                    int K, double norm) {
  for (int k = 0; k <= K; ++k) {
    double x = a.value[k], y = ref.value[k];
    if (std::fabs(y) < 1e-10 * norm)
      w.see(10.0 * std::fabs(x) / norm, fn_k(id, k) + " " + tag + " (zero level, measured 10 |value| / ||f||)");
    else
      w.see(rel(x, y), fn_k(id, k) + " " + tag);
  }
}

Report routes() {
  Builder b("routes");
  const int K = 12;
  b.guard("three-route-n2", 1e-6, [&] {
    Worst w;
    for (const auto& id : hardy_battery(2)) {
      auto f = make_function(id);
      double nrm = std::sqrt(f.norm_sq);
      auto d = expansion::proj_norms_direct(f, K);
      auto s = expansion::proj_norms_spherical(f, K);
      auto v = expansion::proj_norms_wigner(f, K);
      compare_levels(w, id, "wigner/direct", v, d, K, nrm);
      compare_levels(w, id, "spherical/direct", s, d, K, nrm);
      compare_levels(w, id, "wigner/spherical", v, s, K, nrm);
    }
    b.add("three-route-n2", w, 1e-6);
  });
  b.guard("wigner-vs-direct-n1", 1e-6, [&] {
    Worst w;
    for (const auto& id : hardy_battery(1)) {
      auto f = make_function(id);
      auto d = expansion::proj_norms_direct(f, K);
      auto v = expansion::proj_norms_wigner(f, K);
      compare_levels(w, id, "wigner/direct", v, d, K, std::sqrt(f.norm_sq));
    }
    b.add("wigner-vs-direct-n1", w, 1e-6);
  });
  b.guard("plancherel", 1e-6, [&] {
    Worst w;
    for (int n : {1, 2})
      for (const auto& id : hardy_battery(n)) {
        auto f = make_function(id);
        auto d = expansion::proj_norms_direct(f, expansion::kDirectMax);
        w.see(rel(expansion::plancherel_sum(d), f.norm_sq), "fn=" + id + " K=" + std::to_string(expansion::kDirectMax));
      }
    b.add("plancherel", w, 1e-6);
  });
  b.guard("c-weighted-vs-spherical", 1e-6, [&] {
    Worst w;
    for (const auto& id : hardy_battery(2)) {
      auto f = make_function(id);
      auto s = expansion::proj_norms_spherical(f, 20);
      auto c = expansion::proj_norms_cweighted(f, 20);
      for (std::size_t i = 0; i < c.k.size(); ++i) {
        int k = c.k[i];
        double ref = s.value[k];
        if (ref < 1e-10 * std::sqrt(f.norm_sq)) continue;
        w.see(rel(c.value[i], ref), fn_k(id, k));
      }
    }
    b.add("c-weighted-vs-spherical", w, 1e-6);
  });
  return b.r;
}

// ---------------------------------------------------------------- udelta

Report udelta() {
  Builder b("udelta");
  std::vector<cplx> ws;
  for (double r : {0.0, 1.0, 2.5, 4.0, 5.0})
    for (int j = 0; j < 8; ++j) {
      if (r == 0.0 && j > 0) break;
      ws.push_back(std::polar(r, 2.0 * kPi * j / 8 + 0.1));
    }
  b.guard("udelta-series-vs-integral", 1e-8, [&] {
    std::vector<std::string> profs = {"gauss:c=1", "psi:k=2,delta=1", "mix:c1=1,c2=2,w=0.5"};
    std::vector<double> deltas = {0.0, 0.5, 1.0, 1.5, 2.0};
    const std::size_t per = ws.size();
    std::vector<double> err(profs.size() * deltas.size() * per);
    parallel::for_each(profs.size() * deltas.size(), [&](std::size_t c) {
      auto g = make_profile(profs[c / deltas.size()]);
      double d = deltas[c % deltas.size()];
      auto coef = xform::u_delta_series_coeffs(g, d, 5.0);
      for (std::size_t i = 0; i < per; ++i) {
        cplx s = xform::u_delta_series_eval(coef, d, ws[i]);
        cplx q = xform::u_delta(g, d, ws[i], xform::URoute::integral);
        err[c * per + i] = std::abs(s - q) / std::max(1.0, std::abs(s));
      }
    });
    Worst w;
    for (std::size_t i = 0; i < err.size(); ++i) {
      std::size_t c = i / per;
      w.see(err[i], "profile=" + profs[c / deltas.size()] + fmt(" delta=%g", deltas[c % deltas.size()]) +
                        fmt(" w=%.4g%+.4gi", ws[i % per].real(), ws[i % per].imag()));
    }
    b.add("udelta-series-vs-integral", w, 1e-8);
  });
  b.guard("udelta-hankel-rotation", 1e-8, [&] {
    std::vector<std::string> profs = {"gauss:c=1", "mix:c1=1,c2=2,w=0.5"};
    std::vector<double> deltas = {0.0, 1.0, 2.0};
    std::vector<cplx> pts;
    for (double r : {0.5, 2.0, 4.0})
      for (int j = 0; j < 4; ++j) pts.push_back(std::polar(r, 2.0 * kPi * j / 4 + 0.3));
    std::vector<double> err(profs.size() * deltas.size() * pts.size());
    parallel::for_each(err.size(), [&](std::size_t i) {
      std::size_t c = i / pts.size();
      auto g = make_profile(profs[c / deltas.size()]);
      double d = deltas[c % deltas.size()];
      cplx w = pts[i % pts.size()];
      cplx lhs = xform::u_delta(xform::hankel_image(g, d), d, w, xform::URoute::integral);
      cplx rhs = xform::u_delta(g, d, cplx(0, -1) * w, xform::URoute::series);
      err[i] = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    });
    Worst w;
    for (std::size_t i = 0; i < err.size(); ++i) {
      std::size_t c = i / pts.size();
      w.see(err[i], "profile=" + profs[c / deltas.size()] + fmt(" delta=%g", deltas[c % deltas.size()]) +
                        fmt(" w=%.4g%+.4gi", pts[i % pts.size()].real(), pts[i % pts.size()].imag()));
    }
    b.add("udelta-hankel-rotation", w, 1e-8);
  });
  return b.r;
}

// ---------------------------------------------------------------- cholewinski

Report cholewinski() {
  Builder b("cholewinski");
  b.guard("cholewinski-moments", 1e-6, [&] {
    Worst w, res;
    for (double d : {0.5, 1.0, 2.0})
      for (int k = 0; k <= 10; ++k) {
        // int_C |w|^{4k} h(w) dw = 2 pi int_0^inf rho^{4k+1} h(rho) d rho
        auto moment = [&](int N) {
          auto q = quad::mapped_legendre(N, 0.0, 16.0);
          std::vector<double> t(N);
          for (int i = 0; i < N; ++i) {
            double p = q.nodes[i];
            t[i] = q.weights[i] * std::pow(p, 4.0 * k + 1.0) * xform::cholewinski_weight(d, p);
          }
          return 2.0 * kPi * parallel::pairwise(t.data(), N);
        };
        double m = moment(800), mh = moment(400);
        double ex = std::exp((1.0 + 2.0 * d + 4.0 * k) * std::log(2.0) + special::log_gamma(k + 1.0) + special::log_gamma(k + d + 1.0));
        std::string at = fmt("delta=%g", d) + " k=" + std::to_string(k);
        w.see(rel(m, ex), at);
        res.see(rel(m, mh), at);
      }
    b.add("cholewinski-moments", w, 1e-6);
    b.add("cholewinski-quadrature-stability", res, 1e-9);
  });
  return b.r;
}

// ---------------------------------------------------------------- example44

Report example44() {
  Builder b("example44");
  auto f = make_function("example44");
  const double a = f.param("a");
  const double mu = (1.0 - a) / (1.0 + a);
  const int K = 21;
  CoefficientTable direct, wig;
  b.guard("levels-even-direct", 1e-5, [&] {
    direct = expansion::proj_norms_direct(f, K);
    Worst w;
    for (int k = 0; 2 * k <= 20; ++k)
      w.see(rel(direct.value[2 * k] * direct.value[2 * k], 2.0 * kPi / (1.0 + a) * std::pow(mu, k)), "level=" + std::to_string(2 * k));
    b.add("levels-even-direct", w, 1e-5);
  });
  b.guard("levels-even-wigner", 1e-5, [&] {
    wig = expansion::proj_norms_wigner(f, K);
    Worst w;
    for (int k = 0; 2 * k <= 20; ++k)
      w.see(rel(wig.value[2 * k] * wig.value[2 * k], 2.0 * kPi / (1.0 + a) * std::pow(mu, k)), "level=" + std::to_string(2 * k));
    b.add("levels-even-wigner", w, 1e-5);
  });
  b.guard("levels-odd", 1e-7, [&] {
    Worst w;
    for (int k = 1; k <= K; k += 2) {
      if (!direct.value.empty()) w.see(std::fabs(direct.value[k]), "direct level=" + std::to_string(k));
      if (!wig.value.empty()) w.see(std::fabs(wig.value[k]), "wigner level=" + std::to_string(k));
    }
    b.add("levels-odd", w, 1e-7);
  });
  if (!direct.value.empty()) {
    double p0 = direct.value[0] * direct.value[0], p2 = direct.value[2] * direct.value[2];
    b.add("levels-spot-P0", std::fabs(p0 - 3.68060), 5e-6, fmt("||P_0 f||^2 = %.8f", p0));
    b.add("levels-spot-P2", std::fabs(p2 - 0.63149), 5e-6, fmt("||P_2 f||^2 = %.8f", p2));
    Worst g;
    for (int k = 0; k <= 8; ++k) {
      double r = direct.value[2 * k] * direct.value[2 * k] / (direct.value[2 * k + 2] * direct.value[2 * k + 2]);
      g.see(rel(r, 1.0 / mu), "k=" + std::to_string(k));
    }
    b.add("levels-geometric-ratio", g, 1e-5);
  }
  // closed forms on |z| <= 6
  auto ax = grid_axis(-6.0, 6.0, 0.5);
  std::vector<cplx> fh;
  b.guard("closed-form-fourier-2pi", 1e-7, [&] {
    fh = xform::fourier_on_grid(f, {0, 1}, ax);
    Worst w2pi, w1;
    const std::size_t P = ax.size();
    for (std::size_t i = 0; i < P; ++i)
      for (std::size_t j = 0; j < P; ++j) {
        double x = ax[i], y = ax[j];
        if (x * x + y * y > 36.0 + 1e-9) continue;
        cplx e = std::exp(-0.5 * a * cplx(x * x + y * y, -2.0 * x * y));
        std::string at = fmt("xi=(%g,%g)", x, y);
        w2pi.see(std::abs(fh[i * P + j] - 2.0 * kPi * e), at);
        w1.see(std::abs(fh[i * P + j] - e), at);
      }
    b.add("closed-form-fourier-2pi", w2pi, 1e-7);
    b.add("closed-form-fourier-normalized", w1, 1e-7);
  });
  b.guard("closed-form-wigner", 1e-7, [&] {
    std::vector<std::array<double, 4>> pts;
    const double dirs[6][4] = {{1, 0, 0, 0},    {0.5, 0.5, 0.5, 0.5},   {0.6, -0.48, 0.0, 0.64},
                               {0.0, 0.8, -0.6, 0.0}, {0.5, 0.5, -0.5, 0.5}, {0.0, 0.70710678118654752, 0.70710678118654752, 0.0}};
    for (double r : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0})
      for (const auto& d : dirs) pts.push_back({r * d[0], r * d[1], r * d[2], r * d[3]});
    std::vector<double> err(pts.size());
    parallel::for_each(pts.size(), [&](std::size_t i) {
      const auto& p = pts[i];
      cplx z[2] = {cplx(p[0], p[1]), cplx(p[2], p[3])};
      double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
      double ex = std::exp(-0.5 * a * r2 + 0.5 * (p[0] * p[3] + p[2] * p[1])) / (2.0 * a);
      err[i] = std::abs(xform::fourier_wigner(f, f, z) - ex);
    });
    Worst w;
    for (std::size_t i = 0; i < pts.size(); ++i)
      w.see(err[i], fmt("z=(%g,%g,", pts[i][0], pts[i][1]) + fmt("%g,%g)", pts[i][2], pts[i][3]));
    b.add("closed-form-wigner", w, 1e-7);
  });
  b.guard("rate-fit", 0.005, [&] {
    auto d40 = expansion::proj_norms_direct(f, 40);
    auto fit = decay::decay_fit(d40, 2, decay::PMode::fixed, 0.0);
    b.add("rate-fit", std::fabs(fit.implied_a - a), 0.005, fmt("implied_a=%.8f t=%.8f", fit.implied_a, fit.t));
  });
  b.guard("envelope-f", 1e-5, [&] {
    auto e = decay::hardy_envelope(f);
    b.add("envelope-f", std::fabs(e.gamma_star - a / 2), 1e-5, fmt("gamma*=%.10f C*=%.10f", e.gamma_star, e.C_star));
    b.add("envelope-f-constant", std::fabs(e.C_star - 1.0), 1e-6, fmt("C*=%.12f", e.C_star));
  });
  b.guard("envelope-fourier", 1e-5, [&] {
    auto e = decay::hardy_envelope_fourier(f);
    b.add("envelope-fourier", std::fabs(e.gamma_star - a / 2), 1e-5, fmt("gamma*=%.10f C*=%.10f", e.gamma_star, e.C_star));
  });
  b.guard("floor-rate-status", 0.0, [&] {
    auto r = decay::theorem_check(f, decay::Theorem::T1_3);
    b.add("floor-rate-status", r.status == "pass" ? 0.0 : 1.0, 0.0,
          "theorem=T1_3 status=" + r.status + fmt(" a=%.6f rate=%.6f measured_t=%.6f", r.a, r.rate, r.measured_t));
  });
  return b.r;
}

// ---------------------------------------------------------------- radialization

// (1/4) int_{R^4} V(w) J_1(r|w|/sqrt2)/(r|w|/sqrt2) dw from the sphere means
double h1g(const CoefficientTable& L, double r, double R) {
  auto q = quad::mapped_legendre(400, 0.0, R);
  std::vector<double> t(q.nodes.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    double s = q.nodes[i], x = r * s / std::sqrt(2.0);
    double j = x < 1e-8 ? 0.5 : std::cyl_bessel_j(1.0, x) / x;
    t[i] = q.weights[i] * expansion::wigner_sphere_mean(L, s) * j * s * s * s;
  }
  return 0.25 * parallel::pairwise(t.data(), t.size());
}

Report radialization() {
  Builder b("radialization");
  auto radii = grid_axis(0.5, 6.0, 0.5);
  std::map<std::string, CoefficientTable> levels;
  b.guard("chain-factor-4", 1e-6, [&] {
    Worst w4, w1, w0;
    for (const auto& id : hardy_battery(2)) {
      auto f = make_function(id);
      auto L = expansion::proj_norms_direct(f, expansion::kDirectMax);
      levels[id] = L;
      w0.see(rel(expansion::wigner_sphere_mean(L, 0.0), kPi * f.norm_sq), "fn=" + id);
      const double R = quad::truncation_radius(f.hardy_gamma() / 4.0, 16);
      for (double r : radii) {
        double lhs = expansion::wigner_sphere_mean(L, std::sqrt(2.0) * r, true);
        double g = h1g(L, r, R);
        std::string at = "fn=" + id + fmt(" r=%g lhs=%.10g H1G=%.10g", r, lhs, g);
        w4.see(std::fabs(lhs - 4.0 * g) / (1.0 + std::fabs(g)), at);
        w1.see(std::fabs(lhs - g) / (1.0 + std::fabs(g)), at);
      }
    }
    b.add("chain-factor-4", w4, 1e-6);
    b.add("chain-factor-1", w1, 1e-6);
    b.add("sphere-mean-origin", w0, 1e-9);
  });
  // spectral sphere mean against the sphere average of V computed pointwise
  b.guard("sphere-mean-direct", 1e-7, [&] {
    Worst w;
    for (const auto& id : hardy_battery(2)) {
      auto f = make_function(id);
      if (!levels.count(id)) levels[id] = expansion::proj_norms_direct(f, expansion::kDirectMax);
      xform::ComplexField F;
      F.n = 2;
      F.eval = [&f](const double* v) {
        double x[2] = {v[0], v[2]}, y[2] = {v[1], v[3]};
        return xform::fourier_wigner_fixed(f, f, x, y, 64);
      };
      for (double r : {1.0, 2.5}) {
        double s = xform::radialize(F, r, 24).real();
        double m = expansion::wigner_sphere_mean(levels[id], r);
        w.see(std::fabs(s - m) / std::max(std::fabs(m), 1e-3), "fn=" + id + fmt(" r=%g", r));
      }
    }
    b.add("sphere-mean-direct", w, 1e-7);
  });
  b.guard("radialized-ratio-increasing", 0.0, [&] {
    auto f = make_function("example44");
    const double a = f.param("a");
    auto& L = levels.count(f.id) ? levels[f.id] : levels[f.id] = expansion::proj_norms_direct(f, expansion::kDirectMax);
    xform::ComplexField F;
    F.n = 2;
    F.eval = [a](const double* v) {
      return cplx(std::exp(-0.5 * a * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]) + 0.5 * (v[0] * v[3] + v[2] * v[1])) / (2.0 * a));
    };
    auto rs = grid_axis(4.0, 8.0, 0.25);
    double drops = 0.0, prev = -1.0;
    std::string where = "r in [4,8] step 0.25";
    Worst agree;
    for (double r : rs) {
      double m = expansion::wigner_sphere_mean(L, r);
      double c = xform::radialize(F, r, 64).real();
      agree.see(rel(m, c), fmt("r=%g", r));
      double ratio = m / std::exp(-0.25 * a * r * r);
      if (prev >= 0.0 && !(ratio > prev)) {
        drops += 1.0;
        where = fmt("ratio not increasing at r=%g (%.6g)", r, ratio);
      }
      prev = ratio;
    }
    b.add("radialized-ratio-increasing", drops, 0.0, where + fmt(" ratio(4)=%.6g ratio(8)=%.6g", expansion::wigner_sphere_mean(L, 4.0) / std::exp(-4.0 * a),
                                                                 expansion::wigner_sphere_mean(L, 8.0) / std::exp(-16.0 * a)));
    b.add("sphere-mean-closed-form", agree, 1e-8);
  });
  return b.r;
}

// ---------------------------------------------------------------- vector-bargmann

Report vector_bargmann() {
  Builder b("vector-bargmann");
  const std::vector<std::string> fns = {"gaussian:b=0.5,n=2", "harmonic:m=2,b=0.6", "harmonic:m=1,b=0.6", "cplxharmonic:m=3,b=0.8"};
  b.guard("dk-cauchy-vs-formula", 1e-6, [&] {
    Worst w;
    for (const auto& id : fns) {
      auto f = make_function(id);
      auto c = expansion::d_k_norms(f, 10, expansion::DkRoute::cauchy);
      auto g = expansion::d_k_norms(f, 10, expansion::DkRoute::formula);
      for (int k = 0; k <= 10; ++k) {
        double floor = std::max(c.est_err[k], g.est_err[k]);
        if (g.value[k] <= 10.0 * floor)
          w.see(std::fabs(c.value[k] - g.value[k]) / std::max(10.0 * floor, 1e-300) * 1e-6, fn_k(id, k) + " (noise-level entry)");
        else
          w.see(rel(c.value[k], g.value[k]), fn_k(id, k));
      }
    }
    b.add("dk-cauchy-vs-formula", w, 1e-6);
  });
  b.guard("spherical-vs-direct", 1e-6, [&] {
    Worst w;
    for (const auto& id : fns) {
      auto f = make_function(id);
      auto s = expansion::proj_norms_spherical(f, 20);
      auto d = expansion::proj_norms_direct(f, 20);
      compare_levels(w, id, "spherical/direct", s, d, 20, std::sqrt(f.norm_sq));
    }
    b.add("spherical-vs-direct", w, 1e-6);
  });
  b.guard("dk-gaussian-d0", 1e-9, [&] {
    auto f = make_function("hermite:n=2,a1=0,a2=0");
    auto c = expansion::d_k_norms(f, 0, expansion::DkRoute::cauchy);
    double v = c.value[0];
    b.add("dk-gaussian-d0", rel(v, 2.0 * kPi * kPi), 1e-9, fmt("int |d_0|^2 = %.12f", v));
  });
  b.guard("bargmann-monomial", 1e-10, [&] {
    Worst w;
    for (int k = 0; k <= 8; ++k) {
      auto f = make_function("hermite:n=1,k=" + std::to_string(k));
      auto c = xform::taylor_coeffs_cauchy([&f](cplx z) { return xform::bargmann_1d(f, z); }, 1.0, 16);
      for (int j = 0; j < 16; ++j)
        if (j != k) w.see(std::abs(c[j]), "k=" + std::to_string(k) + " index=" + std::to_string(j));
    }
    b.add("bargmann-monomial", w, 1e-10);
  });
  b.guard("bargmann-fourier-rotation", 1e-8, [&] {
    Worst w;
    for (const auto& id : hardy_battery(1)) {
      auto f = make_function(id);
      auto fh = xform::fourier_image(f);
      for (double r : {0.0, 1.0, 2.0, 3.0})
        for (int j = 0; j < 6; ++j) {
          cplx z = std::polar(r, 2.0 * kPi * j / 6 + 0.2);
          cplx lhs = xform::bargmann_1d(fh, z), rhs = xform::bargmann_1d(f, cplx(0, -1) * z);
          w.see(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)), "fn=" + id + fmt(" z=%.4g%+.4gi", z.real(), z.imag()));
        }
    }
    b.add("bargmann-fourier-rotation", w, 1e-8);
  });
  return b.r;
}

// ---------------------------------------------------------------- lemma55

Report lemma55() {
  Builder b("lemma55");
  Worst diag;
  for (int k = 0; k <= 400; ++k) diag.see(std::fabs(special::c_constant(k, k, 2) - 1.0), "k=" + std::to_string(k));
  b.add("c-diagonal-n2", diag, 1e-12);
  for (int n : {2, 3, 4}) {
    double run = 0.0, run100 = 0.0, at100 = 0.0, at400 = 0.0;
    for (int k = 20; k <= 400; ++k) {
      double m = 0.0;
      for (int j = 0; j <= k; ++j) m = std::max(m, special::c_constant(k, j, n) / std::pow(double(k), 0.5 * (n - 1)));
      run = std::max(run, m);
      if (k == 100) {
        run100 = run;
        at100 = m;
      }
      if (k == 400) at400 = m;
    }
    std::string nn = std::to_string(n);
    b.add("c-running-max-growth-n" + nn, run / run100 - 1.0, 0.01, fmt("running max k<=100: %.10f, k<=400: %.10f", run100, run));
    b.add("c-max-over-m-change-n" + nn, std::fabs(at400 / at100 - 1.0), 0.01, fmt("max_m at k=100: %.10f, at k=400: %.10f", at100, at400));
  }
  return b.r;
}

// ---------------------------------------------------------------- theorems

Report theorems() {
  Builder b("theorems");
  for (int n : {1, 2}) {
    std::vector<double> implied;
    for (double bb : {0.3, 0.5, 0.7}) {
      std::string id = "gaussian:b=" + fmt("%g", bb) + ",n=" + std::to_string(n);
      std::string tag = fmt("b=%g", bb) + "-n" + std::to_string(n);
      b.guard("gaussian-rate-" + tag, 0.01, [&] {
        auto f = make_function(id);
        auto t = expansion::proj_norms_direct(f, 40);
        auto fit = decay::decay_fit(t, n, decay::PMode::fixed, (n - 2) / 4.0);
        implied.push_back(fit.implied_a);
        std::string in = "fn=" + id + fmt(" implied_a=%.8f t=%.8f tanh(t)=%.8f", fit.implied_a, fit.t, std::tanh(fit.t));
        b.add("gaussian-rate-" + tag, std::fabs(fit.implied_a - bb), 0.01, in);
        b.add("gaussian-rate-tanh-t-" + tag, std::fabs(std::tanh(fit.t) - bb), 0.01, in);
      });
    }
    double worst = 0.0;
    for (std::size_t i = 1; i < implied.size(); ++i) worst = std::max(worst, implied[i - 1] - implied[i]);
    b.add("gaussian-rate-monotone-n" + std::to_string(n), implied.size() == 3 ? worst : 1.0, 0.0, "b in {0.3, 0.5, 0.7}");
  }
  for (int n : {1, 2})
    for (const auto& id : hardy_battery(n)) {
      b.guard("rate-floor-" + id, 0.01, [&] {
        auto f = make_function(id);
        double a = decay::hardy_a(f);
        auto t = expansion::proj_norms_direct(f, 40);
        auto fit = decay::decay_fit(t, n, decay::PMode::fixed, (n - 2) / 4.0);
        b.add("rate-floor-" + id, a / 2.0 - fit.implied_a, 0.01, fmt("a=%.6f implied_a=%.6f t=%.6f", a, fit.implied_a, fit.t));
      });
    }
  auto slug = [](decay::Theorem t) -> std::string {
    switch (t) {
      case decay::Theorem::T1_1: return "sharp-rate-n1";
      case decay::Theorem::T1_2: return "sharp-rate";
      case decay::Theorem::T1_3: return "floor-rate";
      case decay::Theorem::T1_4: return "finite-harmonic-rate";
      case decay::Theorem::T4_1: return "hankel-rate";
      case decay::Theorem::T5_2: return "bargmann-rate";
    }
    return "?";
  };
  struct Expect {
    std::string fn;
    decay::Theorem th;
    std::string status;
  };
  const std::vector<Expect> expect = {
      {"example44", decay::Theorem::T1_3, "pass"},
      {"gaussian:b=0.5,n=2", decay::Theorem::T1_4, "pass"},
      {"hermite:n=1,k=0", decay::Theorem::T1_1, "degenerate"},
      {"gaussian:b=0.5,n=1", decay::Theorem::T1_1, "pass"},
      {"gaussian:b=0.5,n=2", decay::Theorem::T1_2, "pass"},
      {"gaussian:b=0.5,n=2", decay::Theorem::T4_1, "pass"},
      {"gaussian:b=0.5,n=2", decay::Theorem::T5_2, "pass"},
      {"example44", decay::Theorem::T5_2, "pass"},
      {"harmonic:m=2,b=0.6", decay::Theorem::T5_2, "pass"},
      {"example44", decay::Theorem::T1_4, "inapplicable"},
  };
  for (const auto& e : expect) {
    std::string name = "status-" + slug(e.th) + "-" + e.fn;
    b.guard(name, 0.0, [&] {
      auto r = decay::theorem_check(make_function(e.fn), e.th);
      b.add(name, r.status == e.status ? 0.0 : 1.0, 0.0,
            "theorem=" + decay::to_string(e.th) + " status=" + r.status + " expected=" + e.status + fmt(" a=%.6f rate=%.6f measured_t=%.6f", r.a, r.rate, r.measured_t));
      if (e.th == decay::Theorem::T1_4 && e.status == "pass")
        b.add("finite-harmonic-rate-value-" + e.fn, std::fabs(std::tanh(2.0 * r.measured_t) - 0.5), 0.01, fmt("tanh(2t)=%.8f", std::tanh(2.0 * r.measured_t)));
    });
  }
  for (const auto& id : {std::string("gaussian:b=0.5,n=2"), std::string("harmonic:m=2,b=0.6")}) {
    std::string name = "t-operator-bound-" + id;
    b.guard(name, 0.0, [&] {
      auto f = make_function(id);
      double a = decay::hardy_a(f);
      auto T = expansion::t_operator(f);
      auto t = expansion::proj_norms_spherical(T, 30);
      auto rep = decay::bound_check(t, 2, 0.0, std::atanh(std::min(a, 0.999)) / 2.0);
      b.add(name, rep.holds ? 0.0 : 1.0, 0.0, fmt("a=%.6f C_min=%.6g k_at=%g", a, rep.C_min, rep.k_at));
    });
  }
  return b.r;
}

const std::map<std::string, std::function<Report()>>& table() {
  static const std::map<std::string, std::function<Report()>> t = {
      {"orthonormality", orthonormality}, {"fourier-eigen", fourier_eigen}, {"wigner-identity", wigner_identity},
      {"hankel-eigen", hankel_eigen},     {"udelta", udelta},               {"cholewinski", cholewinski},
      {"example44", example44},           {"routes", routes},               {"radialization", radialization},
      {"vector-bargmann", vector_bargmann}, {"lemma55", lemma55},           {"theorems", theorems},
  };
  return t;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"orthonormality", "fourier-eigen", "wigner-identity", "hankel-eigen", "udelta", "cholewinski",
          "example44",      "routes",        "radialization",   "vector-bargmann", "lemma55", "theorems"};
}

Report run_suite(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end()) throw std::invalid_argument("unknown suite: " + name);
  return it->second();
}

}  // namespace hardy::suites
