#include "hardy/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "json.hpp"

namespace hardy::quad {

namespace {

std::mutex g_mu;
std::map<std::pair<int, int>, QuadratureRule> g_memo;  // (kind, N) -> base rule
std::string g_cache_dir = [] {
  const char* e = std::getenv("HARDY_CACHE_DIR");
  return e ? std::string(e) : std::string();
}();

// Orthonormal Hermite polynomials (weight e^{-x^2}) with rescaling; returns
// h_N, h_{N-1} in a common scale together with log(sum_{j<N} h_j^2).
struct HermiteEval {
  double hN, hNm1, log_sumsq;
};

HermiteEval hermite_poly(int N, double x) {
  double pm1 = 0.0, p = std::pow(kPi, -0.25);
  double shift = 0.0, sumsq = 0.0;
  for (int k = 0; k < N; ++k) {
    sumsq += p * p;
    double pn = x * std::sqrt(2.0 / (k + 1)) * p - std::sqrt(double(k) / (k + 1)) * pm1;
    pm1 = p;
    p = pn;
    if (std::fabs(p) > 1e100) {
      p *= 1e-100;
      pm1 *= 1e-100;
      sumsq *= 1e-200;
      shift += 200.0 * std::log(10.0);
    }
  }
  return {p, pm1, std::log(sumsq) + shift};
}

QuadratureRule build_gauss_hermite(int N) {
  QuadratureRule r;
  r.kind = RuleKind::gauss_hermite;
  r.order = N;
  r.nodes.assign(N, 0.0);
  r.weights.assign(N, 0.0);
  r.unweighted.assign(N, 0.0);
  // Jacobi-matrix eigenvalues as starting points, polished by Newton
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(N), sub(std::max(N - 1, 0));
  for (int k = 1; k < N; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const int m = (N + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double zz = std::fabs(es.eigenvalues()[N - i]);
    int it = 0;
    for (; it < 100; ++it) {
      HermiteEval h = hermite_poly(N, zz);
      double dz = h.hN / (std::sqrt(2.0 * N) * h.hNm1);
      zz -= dz;
      if (std::fabs(dz) <= 1e-14 * std::max(1.0, std::fabs(zz))) break;
    }
    if (it == 100) throw NumericalError("gauss_hermite: Newton did not converge");
    HermiteEval h = hermite_poly(N, zz);
    r.nodes[i - 1] = -zz;
    r.nodes[N - i] = zz;
    r.weights[i - 1] = r.weights[N - i] = std::exp(-h.log_sumsq);
    r.unweighted[i - 1] = r.unweighted[N - i] = std::exp(zz * zz - h.log_sumsq);
  }
  if (N % 2 == 1) r.nodes[m - 1] = 0.0;
  return r;
}

QuadratureRule build_legendre(int N) {
  QuadratureRule r;
  r.kind = RuleKind::mapped_legendre;
  r.order = N;
  r.a = -1.0;
  r.b = 1.0;
  r.nodes.assign(N, 0.0);
  r.weights.assign(N, 0.0);
  const int m = (N + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double x = std::cos(kPi * (i - 0.25) / (N + 0.5));
    double pp = 0.0;
    int it = 0;
    for (; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= N; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
      }
      pp = N * (x * p1 - p2) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) <= 1e-15) break;
    }
    if (it == 100) throw NumericalError("mapped_legendre: Newton did not converge");
    // derivative at the converged node
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= N; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
    }
    pp = N * (x * p1 - p2) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.nodes[i - 1] = -x;
    r.nodes[N - i] = x;
    r.weights[i - 1] = r.weights[N - i] = w;
  }
  if (N % 2 == 1) r.nodes[m - 1] = 0.0;
  return r;
}

// Gauss-Jacobi on [-1, 1] for the weight (1 + x)^beta: eigenvalues of the
// Jacobi matrix, polished by Newton on the three-term recurrence.
void jacobi_eval(int N, double beta, double x, double& p, double& dp) {
  double pm1 = 1.0;
  p = 0.5 * ((2.0 + beta) * x - beta);
  if (N == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int n = 2; n <= N; ++n) {
    const double s = 2.0 * n + beta;
    const double pn = ((s - 1.0) * (s * (s - 2.0) * x - beta * beta) * p - 2.0 * (n - 1.0) * (n + beta - 1.0) * s * pm1) /
                      (2.0 * n * (n + beta) * (s - 2.0));
    pm1 = p;
    p = pn;
  }
  const double s = 2.0 * N + beta;
  dp = (N * (-beta - s * x) * p + 2.0 * N * (N + beta) * pm1) / (s * (1.0 - x * x));
}

QuadratureRule build_gauss_jacobi(int N, double beta) {
  QuadratureRule r;
  r.order = N;
  r.nodes.assign(N, 0.0);
  r.weights.assign(N, 0.0);
  Eigen::VectorXd diag(N), sub(std::max(N - 1, 0));
  for (int k = 0; k < N; ++k) {
    const double s = 2.0 * k + beta;
    diag[k] = beta * beta / (s * (s + 2.0));
    if (k >= 1) sub[k - 1] = std::sqrt(4.0 * k * k * (k + beta) * (k + beta) / (s * s * (s + 1.0) * (s - 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  // 2^{beta+1} Gamma(N+1) Gamma(N+beta+1) / (Gamma(N+beta+1) N!) = 2^{beta+1}
  const double cst = std::pow(2.0, beta + 1.0);
  for (int i = 0; i < N; ++i) {
    double x = es.eigenvalues()[i], p = 0.0, dp = 0.0;
    int it = 0;
    for (; it < 100; ++it) {
      jacobi_eval(N, beta, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-15) break;
    }
    if (it == 100) throw NumericalError("radial_rule: Newton did not converge");
    jacobi_eval(N, beta, x, p, dp);
    r.nodes[i] = x;
    r.weights[i] = cst / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

std::string cache_file(RuleKind k, int N) {
  return g_cache_dir + "/" + to_string(k) + "_N" + std::to_string(N) + ".json";
}

QuadratureRule base_rule(RuleKind k, int N) {
  std::lock_guard<std::mutex> lk(g_mu);
  auto key = std::make_pair(int(k), N);
  auto it = g_memo.find(key);
  if (it != g_memo.end()) return it->second;
  QuadratureRule r;
  bool loaded = false;
  if (!g_cache_dir.empty()) {
    std::ifstream in(cache_file(k, N));
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        r = rule_from_json(ss.str());
        loaded = r.kind == k && r.order == N;
      } catch (...) {
        loaded = false;
      }
    }
  }
  if (!loaded) {
    r = k == RuleKind::gauss_hermite ? build_gauss_hermite(N) : build_legendre(N);
    if (!g_cache_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(g_cache_dir, ec);
      std::string path = cache_file(k, N);
      std::string tmp = path + ".tmp" + std::to_string(std::hash<std::string>{}(path) % 100000);
      {
        std::ofstream out(tmp);
        out << rule_to_json(r);
      }
      std::filesystem::rename(tmp, path, ec);
    }
  }
  g_memo.emplace(key, r);
  return r;
}

}  // namespace

std::string to_string(RuleKind k) {
  switch (k) {
    case RuleKind::gauss_hermite: return "gauss_hermite";
    case RuleKind::mapped_legendre: return "mapped_legendre";
    case RuleKind::radial: return "radial";
    case RuleKind::sphere_S1: return "sphere_S1";
    case RuleKind::sphere_S3: return "sphere_S3";
    case RuleKind::tensor: return "tensor";
  }
  return "?";
}

RuleKind kind_from_string(const std::string& s) {
  for (RuleKind k : {RuleKind::gauss_hermite, RuleKind::mapped_legendre, RuleKind::radial, RuleKind::sphere_S1,
                     RuleKind::sphere_S3, RuleKind::tensor})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown rule kind: " + s);
}

std::size_t QuadratureRule::size() const {
  if (kind != RuleKind::tensor) return weights.size();
  std::size_t n = 1;
  for (const auto& ax : axes) n *= ax.weights.size();
  return n;
}

void QuadratureRule::node(std::size_t i, double* out) const {
  if (kind != RuleKind::tensor) {
    for (int d = 0; d < dim; ++d) out[d] = nodes[i * dim + d];
    return;
  }
  for (int d = int(axes.size()) - 1; d >= 0; --d) {
    std::size_t m = axes[d].weights.size();
    out[d] = axes[d].nodes[i % m];
    i /= m;
  }
}

double QuadratureRule::weight(std::size_t i) const {
  if (kind != RuleKind::tensor) return weights[i];
  double w = 1.0;
  for (int d = int(axes.size()) - 1; d >= 0; --d) {
    std::size_t m = axes[d].weights.size();
    w *= axes[d].weights[i % m];
    i /= m;
  }
  return w;
}

bool ConvergenceReport::converged(double tol) const {
  double diff = std::abs(value - value_at_half_resolution);
  return diff <= tol * std::abs(value) || diff <= 1e-14 * magnitude;
}

ConvergenceReport make_report(cplx value, cplx half, double magnitude, int resolution) {
  ConvergenceReport r;
  r.value = value;
  r.value_at_half_resolution = half;
  r.est_rel_err = std::abs(value - half) / std::max(std::abs(value), 1e-300);
  r.magnitude = magnitude;
  r.resolution = resolution;
  return r;
}

double truncation_radius(double c, double digits) {
  if (!(c > 0.0)) throw std::invalid_argument("truncation radius needs a positive envelope exponent");
  return std::sqrt(digits * std::log(10.0) / c);
}

QuadratureRule gauss_hermite(int N) {
  if (N < 1 || N > 500) throw std::invalid_argument("gauss_hermite: N must be in [1, 500]");
  return base_rule(RuleKind::gauss_hermite, N);
}

QuadratureRule mapped_legendre(int N, double a, double b) {
  if (N < 1 || N > 2000) throw std::invalid_argument("mapped_legendre: N must be in [1, 2000]");
  if (!(a < b)) throw std::invalid_argument("mapped_legendre: need a < b");
  QuadratureRule r = base_rule(RuleKind::mapped_legendre, N);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (int i = 0; i < N; ++i) {
    r.nodes[i] = c + h * r.nodes[i];
    r.weights[i] *= h;
  }
  r.a = a;
  r.b = b;
  return r;
}

QuadratureRule radial_rule(double delta, double R, int N) {
  if (!(delta > -0.5)) throw std::invalid_argument("radial_rule: delta must exceed -1/2");
  if (!(R > 0.0)) throw std::invalid_argument("radial_rule: R must be > 0");
  if (N < 1 || N > 2000) throw std::invalid_argument("radial_rule: N must be in [1, 2000]");
  const double beta = 2.0 * delta + 1.0;
  QuadratureRule r;
  {
    static std::mutex mu;
    static std::map<std::pair<int, double>, QuadratureRule> memo;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(N, beta);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, build_gauss_jacobi(N, beta)).first;
    r = it->second;
  }
  // s = R (1 + x) / 2, s^beta ds = (R/2)^{beta+1} (1 + x)^beta dx
  const double scale = std::pow(0.5 * R, beta + 1.0);
  for (int i = 0; i < N; ++i) {
    r.nodes[i] = 0.5 * R * (1.0 + r.nodes[i]);
    r.weights[i] *= scale;
  }
  r.kind = RuleKind::radial;
  r.delta = delta;
  r.a = 0.0;
  r.b = R;
  return r;
}

QuadratureRule sphere_rule(int n, int resolution) {
  if (resolution < 2) throw std::invalid_argument("sphere_rule: resolution must be >= 2");
  QuadratureRule r;
  r.order = resolution;
  if (n == 1) {
    r.kind = RuleKind::sphere_S1;
    r.dim = 2;
    for (int j = 0; j < resolution; ++j) {
      double th = 2.0 * kPi * j / resolution;
      r.nodes.push_back(std::cos(th));
      r.nodes.push_back(std::sin(th));
      r.weights.push_back(2.0 * kPi / resolution);
    }
    return r;
  }
  if (n != 2) throw std::invalid_argument("sphere_rule: only n = 1 (S^1) and n = 2 (S^3)");
  r.kind = RuleKind::sphere_S3;
  r.dim = 4;
  const int M = resolution, K = std::max(1, resolution / 2);
  QuadratureRule eta = mapped_legendre(K, 0.0, kPi / 2);
  for (int e = 0; e < K; ++e) {
    double ce = std::cos(eta.nodes[e]), se = std::sin(eta.nodes[e]);
    double we = eta.weights[e] * ce * se * (2.0 * kPi / M) * (2.0 * kPi / M);
    for (int a = 0; a < M; ++a) {
      double t1 = 2.0 * kPi * a / M;
      for (int b = 0; b < M; ++b) {
        double t2 = 2.0 * kPi * b / M;
        r.nodes.insert(r.nodes.end(), {ce * std::cos(t1), ce * std::sin(t1), se * std::cos(t2), se * std::sin(t2)});
        r.weights.push_back(we);
      }
    }
  }
  return r;
}

QuadratureRule tensor_rule(int n, int per_axis, double R) {
  if (n != 1 && n != 2) throw std::invalid_argument("tensor_rule: n must be 1 or 2");
  if (std::pow(double(per_axis), 2.0 * n) > 1e8) throw std::invalid_argument("tensor_rule: node budget exceeded");
  QuadratureRule r;
  r.kind = RuleKind::tensor;
  r.dim = 2 * n;
  r.order = per_axis;
  r.b = R;
  QuadratureRule ax = mapped_legendre(per_axis, -R, R);
  r.axes.assign(2 * n, ax);
  return r;
}

QuadratureRule scaled_hermite_axis(int N, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scaled Hermite rule needs c > 0");
  QuadratureRule g = gauss_hermite(N);
  QuadratureRule ax;
  ax.kind = RuleKind::gauss_hermite;
  ax.order = N;
  ax.scale = c;
  const double s = 1.0 / std::sqrt(c);
  for (int i = 0; i < N; ++i) {
    ax.nodes.push_back(g.nodes[i] * s);
    ax.weights.push_back(g.unweighted[i] * s);
  }
  return ax;
}

QuadratureRule gaussian_tensor_rule(int n, int per_axis, double c) {
  if (n != 1 && n != 2) throw std::invalid_argument("gaussian_tensor_rule: n must be 1 or 2");
  if (std::pow(double(per_axis), 2.0 * n) > 1e8) throw std::invalid_argument("gaussian_tensor_rule: node budget exceeded");
  QuadratureRule r;
  r.kind = RuleKind::tensor;
  r.dim = 2 * n;
  r.order = per_axis;
  r.scale = c;
  r.axes.assign(2 * n, scaled_hermite_axis(per_axis, c));
  return r;
}

void set_cache_dir(const std::string& dir) {
  std::lock_guard<std::mutex> lk(g_mu);
  g_cache_dir = dir;
}

std::string cache_dir() {
  std::lock_guard<std::mutex> lk(g_mu);
  return g_cache_dir;
}

std::string rule_to_json(const QuadratureRule& r) {
  nlohmann::json j;
  j["kind"] = to_string(r.kind);
  j["params"] = {{"N", r.order}, {"a", r.a}, {"b", r.b}, {"delta", r.delta}, {"scale", r.scale}, {"dim", r.dim}};
  j["nodes"] = r.nodes;
  j["weights"] = r.weights;
  if (!r.unweighted.empty()) j["unweighted"] = r.unweighted;
  if (!r.axes.empty()) {
    j["axes"] = nlohmann::json::array();
    for (const auto& ax : r.axes) j["axes"].push_back(nlohmann::json::parse(rule_to_json(ax)));
  }
  return j.dump();
}

QuadratureRule rule_from_json(const std::string& s) {
  auto j = nlohmann::json::parse(s);
  QuadratureRule r;
  r.kind = kind_from_string(j.at("kind").get<std::string>());
  const auto& p = j.at("params");
  r.order = p.at("N").get<int>();
  r.a = p.at("a").get<double>();
  r.b = p.at("b").get<double>();
  r.delta = p.at("delta").get<double>();
  r.scale = p.at("scale").get<double>();
  r.dim = p.at("dim").get<int>();
  r.nodes = j.at("nodes").get<std::vector<double>>();
  r.weights = j.at("weights").get<std::vector<double>>();
  if (j.contains("unweighted")) r.unweighted = j["unweighted"].get<std::vector<double>>();
  if (j.contains("axes"))
    for (const auto& ax : j["axes"]) r.axes.push_back(rule_from_json(ax.dump()));
  return r;
}

}  // namespace hardy::quad
