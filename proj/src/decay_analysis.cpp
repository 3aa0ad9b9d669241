#include "hardy/decay_analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hardy/parallel.hpp"
#include "hardy/special_fn.hpp"
#include "hardy/transforms.hpp"
#include "json.hpp"

namespace hardy::decay {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool usable(double v, double err) { return std::isfinite(v) && v > 1e-300 && err <= 0.1 * v; }

int window_start(int K) { return std::max(4, K / 3); }

}  // namespace

std::string EnvelopeEstimate::to_json() const {
  json j;
  j["gamma"] = gamma_star;
  j["C"] = C_star;
  j["a_half_convention"] = a_half();
  j["a_full_convention"] = a_full();
  j["annulus"] = {r0, R};
  j["r_outer"] = r_outer;
  j["boundary_attained"] = boundary_attained;
  j["points"] = points;
  return j.dump();
}

EnvelopeEstimate envelope_from_samples(const std::vector<double>& r, const std::vector<double>& absval, double floor,
                                       double r0, double R, double shell) {
  if (r0 < 0.5) throw std::invalid_argument("hardy_envelope: r0 must be >= 0.5");
  if (!(R > r0) || R > 12.0) throw std::invalid_argument("hardy_envelope: need r0 < R <= 12");
  std::vector<double> rr, L;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < r0 || r[i] > R) continue;
    if (!(absval[i] > std::max(floor, 1e-250)) || !std::isfinite(absval[i])) continue;
    rr.push_back(r[i]);
    L.push_back(std::log(absval[i]));
  }
  if (rr.empty()) throw NumericalError("hardy_envelope: all grid values underflow");
  EnvelopeEstimate e;
  e.r0 = r0;
  e.R = R;
  e.points = rr.size();
  e.r_outer = *std::max_element(rr.begin(), rr.end());
  const double edge = e.r_outer - shell;
  // sup of |f| exp(gamma r^2) sits on the outer shell
  auto outer_wins = [&](double g) {
    double in = -HUGE_VAL, out = -HUGE_VAL;
    for (std::size_t i = 0; i < rr.size(); ++i) {
      double v = L[i] + g * rr[i] * rr[i];
      if (rr[i] >= edge) out = std::max(out, v);
      else in = std::max(in, v);
    }
    return out > in + 1e-13;
  };
  if (!std::any_of(rr.begin(), rr.end(), [&](double x) { return x < edge; }))
    throw NumericalError("hardy_envelope: too few usable points inside the annulus");
  double lo = -10.0, hi = 50.0;
  if (outer_wins(lo)) {
    hi = lo;
  } else if (!outer_wins(hi)) {
    lo = hi;
  } else {
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (outer_wins(mid) ? hi : lo) = mid;
    }
  }
  e.gamma_star = lo;
  double c = -HUGE_VAL;
  for (std::size_t i = 0; i < rr.size(); ++i) c = std::max(c, L[i] + lo * rr[i] * rr[i]);
  e.C_star = std::exp(c);
  e.boundary_attained = outer_wins(lo > 0.0 ? 1.05 * lo : lo + 0.05);
  return e;
}

EnvelopeEstimate hardy_envelope(const FunctionSpec& f, double r0, double R) {
  std::vector<double> r, v;
  if (f.n == 1) {
    const double h = 0.01;
    for (int i = 0; r0 + i * h <= R + 1e-12; ++i) {
      for (double s : {-1.0, 1.0}) {
        double x = s * (r0 + i * h);
        r.push_back(std::fabs(x));
        v.push_back(std::abs(f.eval(&x)));
      }
    }
    return envelope_from_samples(r, v, 1e-250, r0, R, 0.05);
  }
  if (f.n != 2) throw std::invalid_argument("hardy_envelope: n must be 1 or 2");
  const double h = 0.02;
  const int M = 128;
  const int nr = int(std::floor((R - r0) / h + 1e-9)) + 1;
  r.resize(std::size_t(nr) * M);
  v.resize(r.size());
  parallel::for_each(r.size(), [&](std::size_t i) {
    double rad = r0 + double(i / M) * h, th = 2.0 * kPi * double(i % M) / M;
    double x[2] = {rad * std::cos(th), rad * std::sin(th)};
    r[i] = rad;
    v[i] = std::abs(f.eval(x));
  });
  return envelope_from_samples(r, v, 1e-250, r0, R, 0.05);
}

EnvelopeEstimate hardy_envelope_fourier(const FunctionSpec& f, double r0, double R, std::vector<int> subset) {
  if (subset.empty())
    for (int i = 0; i < f.n; ++i) subset.push_back(i);
  const double h = f.n == 1 ? 0.02 : 0.125;
  std::vector<double> axis;
  const int P = int(std::floor(R / h + 1e-9));
  for (int i = -P; i <= P; ++i) axis.push_back(i * h);
  std::vector<double> mag;
  std::vector<cplx> vals = xform::fourier_on_grid(f, subset, axis, 384, &mag);
  std::vector<double> r(vals.size()), v(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    double x0 = axis[f.n == 1 ? i : i / axis.size()], x1 = f.n == 1 ? 0.0 : axis[i % axis.size()];
    r[i] = std::hypot(x0, x1);
    double a = std::abs(vals[i]);
    // values within reach of quadrature roundoff carry no envelope information
    v[i] = a > 1e-9 * mag[i] ? a : 0.0;
  }
  return envelope_from_samples(r, v, 1e-250, r0, R, f.n == 1 ? 0.05 : 0.25);
}

double hardy_a(const FunctionSpec& f, bool partial) {
  double g = std::min(hardy_envelope(f).gamma_star, hardy_envelope_fourier(f).gamma_star);
  if (partial && f.n == 2)
    for (int j = 0; j < 2; ++j) g = std::min(g, hardy_envelope_fourier(f, 0.5, 10.0, {j}).gamma_star);
  return 2.0 * g;
}

std::string DecayFit::to_json() const {
  json j;
  j["t"] = t;
  j["p"] = p;
  j["p_fixed"] = p_fixed;
  j["C"] = C;
  j["residual_rms"] = residual_rms;
  j["implied_a"] = implied_a;
  j["k_window"] = {k_min, k_max};
  j["points"] = points;
  j["non_monotone"] = non_monotone;
  return j.dump();
}

DecayFit decay_fit(const CoefficientTable& table, int n, PMode mode, double p) {
  return decay_fit(table, hermite_abscissa(n), mode, p);
}

DecayFit decay_fit(const CoefficientTable& table, Abscissa x, PMode mode, double p) {
  if (table.k.empty()) throw FitError("decay_fit: empty table");
  const int K = *std::max_element(table.k.begin(), table.k.end());
  DecayFit fit;
  fit.k_min = window_start(K);
  fit.k_max = K;
  fit.p_fixed = mode == PMode::fixed;
  std::vector<std::pair<int, double>> pts;
  for (std::size_t i = 0; i < table.k.size(); ++i)
    if (table.k[i] >= fit.k_min && usable(table.value[i], table.est_err[i])) pts.push_back({table.k[i], table.value[i]});
  std::sort(pts.begin(), pts.end());
  fit.points = pts.size();
  if (pts.size() < 6)
    throw FitError("decay_fit: fewer than 6 usable points in the window [" + std::to_string(fit.k_min) + ", " +
                   std::to_string(K) + "]");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].second >= pts[i - 1].second) fit.non_monotone = true;
  const int cols = fit.p_fixed ? 2 : 3;
  Eigen::MatrixXd A(pts.size(), cols);
  Eigen::VectorXd y(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double xk = x.at(pts[i].first);
    A(i, 0) = 1.0;
    A(i, 1) = -0.5 * xk;
    if (!fit.p_fixed) A(i, 2) = std::log(xk);
    y(i) = std::log(pts[i].second) - (fit.p_fixed ? p * std::log(xk) : 0.0);
  }
  Eigen::VectorXd sol = A.colPivHouseholderQr().solve(y);
  fit.C = std::exp(sol(0));
  fit.t = sol(1);
  fit.p = fit.p_fixed ? p : sol(2);
  Eigen::VectorXd res = A * sol - y;
  fit.residual_rms = std::sqrt(res.squaredNorm() / double(pts.size()));
  fit.implied_a = std::tanh(2.0 * fit.t);
  return fit;
}

std::string BoundReport::to_json() const {
  json j;
  j["p"] = p;
  j["t"] = t;
  j["C_min"] = C_min;
  j["k_at"] = k_at;
  j["holds"] = holds;
  auto c = json::array();
  for (std::size_t i = 0; i < k.size(); ++i) c.push_back({{"k", k[i]}, {"contribution", contribution[i]}});
  j["contributions"] = c;
  return j.dump();
}

BoundReport bound_from_contributions(std::vector<int> k, std::vector<double> c, double p, double t) {
  BoundReport b;
  b.p = p;
  b.t = t;
  b.k = std::move(k);
  b.contribution = std::move(c);
  if (b.k.empty()) return b;
  for (std::size_t i = 0; i < b.k.size(); ++i)
    if (!(b.contribution[i] <= b.C_min)) {
      b.C_min = b.contribution[i];
      b.k_at = b.k[i];
    }
  const int start = window_start(*std::max_element(b.k.begin(), b.k.end()));
  bool growing = false;
  double prev = HUGE_VAL;
  for (std::size_t i = 0; i < b.k.size(); ++i) {
    if (b.k[i] < start) continue;
    if (b.contribution[i] > prev * (1.0 + 1e-6)) growing = true;
    prev = b.contribution[i];
  }
  b.holds = std::isfinite(b.C_min) && !growing;
  return b;
}

BoundReport bound_check(const CoefficientTable& table, int n, double p, double t) {
  return bound_check(table, hermite_abscissa(n), p, t);
}

BoundReport bound_check(const CoefficientTable& table, Abscissa x, double p, double t) {
  std::vector<std::pair<int, double>> pts;
  for (std::size_t i = 0; i < table.k.size(); ++i)
    if (usable(table.value[i], table.est_err[i])) {
      double xk = x.at(table.k[i]);
      pts.push_back({table.k[i], table.value[i] * std::pow(xk, -p) * std::exp(0.5 * xk * t)});
    }
  std::sort(pts.begin(), pts.end());
  std::vector<int> k;
  std::vector<double> c;
  for (auto& [kk, cc] : pts) {
    k.push_back(kk);
    c.push_back(cc);
  }
  return bound_from_contributions(std::move(k), std::move(c), p, t);
}

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::T1_1: return "T1_1";
    case Theorem::T1_2: return "T1_2";
    case Theorem::T1_3: return "T1_3";
    case Theorem::T1_4: return "T1_4";
    case Theorem::T4_1: return "T4_1";
    case Theorem::T5_2: return "T5_2";
  }
  return "?";
}

Theorem theorem_from_string(const std::string& s) {
  for (Theorem t : {Theorem::T1_1, Theorem::T1_2, Theorem::T1_3, Theorem::T1_4, Theorem::T4_1, Theorem::T5_2})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown theorem: " + s);
}

namespace {

json table_json(const CoefficientTable& t) { return json::parse(t.to_json()); }

TheoremReport finish(TheoremReport r, json& j) {
  j["status"] = r.status;
  j["pass"] = r.pass;
  r.json = j.dump(2);
  return r;
}

}  // namespace

TheoremReport theorem_check(const FunctionSpec& f, Theorem which) {
  TheoremReport r;
  r.theorem = which;
  r.function_id = f.id;
  r.measured_t = kNaN;
  json j;
  j["theorem"] = to_string(which);
  j["function"] = f.id;
  json hyp;

  auto inapplicable = [&](const std::string& why) {
    hyp["holds"] = false;
    hyp["reason"] = why;
    j["hypothesis"] = hyp;
    r.status = "inapplicable";
    r.applicable = false;
    r.pass = false;
    return finish(r, j);
  };

  const bool need_n1 = which == Theorem::T1_1;
  const bool need_n2 = which == Theorem::T5_2;
  if (need_n1 && f.n != 1) return inapplicable("requires n = 1");
  if (need_n2 && f.n != 2) return inapplicable("requires n = 2");
  if (f.n > 2) return inapplicable("n > 2 is out of scope");

  // envelopes
  EnvelopeEstimate ef = hardy_envelope(f), eh = hardy_envelope_fourier(f);
  hyp["envelope_f"] = json::parse(ef.to_json());
  hyp["envelope_fhat"] = json::parse(eh.to_json());
  double gamma = std::min(ef.gamma_star, eh.gamma_star);
  if (which == Theorem::T1_2 && f.n == 2) {
    json parts = json::array();
    for (int ax = 0; ax < 2; ++ax) {
      EnvelopeEstimate ep = hardy_envelope_fourier(f, 0.5, 10.0, {ax});
      parts.push_back({{"axes", {ax}}, {"envelope", json::parse(ep.to_json())}});
      gamma = std::min(gamma, ep.gamma_star);
    }
    hyp["partial_envelopes"] = parts;
  }
  double a = 2.0 * gamma;
  hyp["gamma"] = gamma;
  hyp["a_half_convention"] = a;
  hyp["a_full_convention"] = gamma;
  if (!(a > 0.0)) return inapplicable("no Gaussian envelope (a <= 0)");
  // membership in H(a) implies membership in H(a') for a' < a
  const double a_used = std::min(a, 0.999);
  hyp["a_used"] = a_used;
  r.a = a_used;

  if (which == Theorem::T1_4) {
    bool finite = f.n == 1 || f.harmonic_max >= 0;
    hyp["o_n_finite"] = finite;
    if (!finite) return inapplicable("not O(n)-finite");
  }
  if (which == Theorem::T4_1) {
    hyp["radial"] = f.n == 2 && f.radial;
    if (!(f.n == 2 && f.radial)) return inapplicable("requires a radial function on R^2");
  }
  hyp["holds"] = true;
  j["hypothesis"] = hyp;
  r.applicable = true;

  const double t = 0.5 * std::atanh(a_used);        // tanh(2t) = a
  const double s = 0.5 * std::atanh(0.5 * a_used);  // tanh(2s) = a/2
  const int n = f.n;
  CoefficientTable table;
  Abscissa x = hermite_abscissa(n);
  double p = 0.0, rate = t;
  BoundReport bound;

  switch (which) {
    case Theorem::T1_1:
    case Theorem::T1_2:
      table = expansion::proj_norms_direct(f, 40);
      p = (n - 2) / 4.0;
      break;
    case Theorem::T1_3:
      table = expansion::proj_norms_direct(f, 40);
      p = (n - 1) / 4.0;
      rate = s;
      break;
    case Theorem::T1_4:
      table = n == 2 ? expansion::proj_norms_spherical(f, 40) : expansion::proj_norms_direct(f, 40);
      p = (n - 2) / 4.0;
      break;
    case Theorem::T4_1: {
      const double delta = 0.5 * n - 1.0;
      RadialProfile g;
      g.id = "profile[" + f.id + "]";
      g.gamma = f.gamma;
      FunctionSpec src = f;
      g.eval = [src](double q) {
        double y[2] = {q, 0.0};
        return src.eval(y);
      };
      // Hankel-side envelope from the profile transform on [0.5, min(10, 100/R)]
      const double Rg = quad::truncation_radius(g.gamma, 20);
      std::vector<double> rr, vv;
      for (double q = 0.5; q <= std::min(10.0, 100.0 / Rg); q += 0.05) {
        quad::ConvergenceReport h = xform::hankel_report(g, delta, q);
        rr.push_back(q);
        vv.push_back(std::abs(h.value) > 1e-9 * h.magnitude ? std::abs(h.value) : 0.0);
      }
      EnvelopeEstimate eg = envelope_from_samples(rr, vv, 1e-250, 0.5, 10.0, 0.1);
      hyp["envelope_hankel"] = json::parse(eg.to_json());
      double ah = std::min({a_used, 2.0 * eg.gamma_star, 2.0 * ef.gamma_star});
      if (!(ah > 0.0)) return inapplicable("Hankel transform has no Gaussian envelope");
      hyp["a_used"] = ah;
      r.a = ah;
      rate = 0.5 * std::atanh(ah);
      std::vector<cplx> c = xform::laguerre_projections(g, delta, 30);
      double mx = 0.0;
      for (auto& v : c) mx = std::max(mx, std::abs(v));
      table.function_id = g.id;
      table.route = expansion::Route::spherical;
      table.n = n;
      table.meta["form"] = "laguerre coefficients (g, psi_k^delta)";
      table.meta["delta"] = std::to_string(delta);
      for (int k = 0; k <= 30; ++k) table.push(k, std::abs(c[k]), 1e-14 * mx);
      x = {4.0, 2.0 * delta + 1.0};
      p = delta;
      break;
    }
    case Theorem::T5_2: {
      const double mu = (1.0 - a_used) / (1.0 + a_used);
      table = expansion::d_k_norms(f, 16, expansion::DkRoute::cauchy);
      std::vector<int> ks;
      std::vector<double> cs;
      for (std::size_t i = 0; i < table.k.size(); ++i) {
        int k = table.k[i];
        if (k < 1 || !usable(table.value[i], table.est_err[i])) continue;
        double lc = std::log(table.value[i]) + k * std::log(2.0) + 0.5 * std::log(double(k)) +
                    special::log_gamma(k + 1.0) - 0.5 * k * std::log(mu);
        ks.push_back(k);
        cs.push_back(std::exp(lc));
      }
      bound = bound_from_contributions(ks, cs, -0.5, kNaN);
      j["model"] = "C 2^{-k} k^{-1/2} mu^{k/2} / Gamma(k+1)";
      j["mu"] = mu;
      j["table"] = table_json(table);
      j["fit"] = nullptr;
      j["bound"] = json::parse(bound.to_json());
      r.rate = mu;
      r.pass = bound.holds;
      r.status = bound.k.empty() ? "degenerate" : (r.pass ? "pass" : "fail");
      return finish(r, j);
    }
  }

  r.rate = rate;
  j["rate"] = rate;
  j["p"] = p;
  j["table"] = table_json(table);
  try {
    DecayFit fit = decay_fit(table, x, PMode::fixed, p);
    r.measured_t = fit.t;
    j["fit"] = json::parse(fit.to_json());
    r.status.clear();
  } catch (const FitError& e) {
    j["fit"] = {{"error", e.what()}};
    r.status = "degenerate";
  }
  bound = bound_check(table, x, p, rate);
  j["bound"] = json::parse(bound.to_json());
  r.pass = bound.holds;
  if (r.status.empty()) r.status = r.pass ? "pass" : "fail";
  return finish(r, j);
}

}  // namespace hardy::decay
