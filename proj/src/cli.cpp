#include "hardy/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hardy/decay_analysis.hpp"
#include "hardy/hermite_analysis.hpp"
#include "hardy/parallel.hpp"
#include "hardy/suites.hpp"
#include "hardy/transforms.hpp"
#include "json.hpp"

namespace hardy::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string fn, gn, profile;
  int n = 0;  // 0: take it from the function
  int kmax = 20;
  std::string route = "direct";
  std::string out;
  std::string format = "csv";
  int threads = 1;
  std::string cache_dir;
  bool no_cache = false;
  // quadrature overrides
  int per_axis = 0;
  int nodes = 0;
  // command-specific
  std::string kind = "gauss_hermite";
  double a = -1.0, b = 1.0, R = 10.0, delta = 0.0;
  double extent = 4.0, step = 0.5;
  std::string theorem;
  std::string suite;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string g17(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

// temp file + rename; stdout when no path is given
void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::path p(c.out);
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary);
    if (!o) throw UsageError("cannot write " + tmp.string());
    o << text;
    if (!text.empty() && text.back() != '\n') o << '\n';
  }
  std::filesystem::rename(tmp, p);
}

// --n fills in the dimension for families that take one and must agree otherwise
FunctionSpec function_for(const RunConfig& c, const std::string& id) {
  if (id.empty()) throw UsageError("--fn is required");
  FunctionSpec f;
  if (c.n > 0 && id.find("n=") == std::string::npos) {
    ParsedName pn = parse_name(id);
    if (pn.family == "gaussian" || pn.family == "hermite") {
      std::string full = id + (id.find(':') == std::string::npos ? ":" : ",") + "n=" + std::to_string(c.n);
      return make_function(full);
    }
  }
  f = make_function(id);
  if (c.n > 0 && f.n != c.n) throw UsageError("--n " + std::to_string(c.n) + " does not match " + f.id + " (n = " + std::to_string(f.n) + ")");
  return f;
}

std::string complex_csv(const std::vector<std::string>& cols, const std::vector<std::vector<double>>& rows) {
  std::ostringstream o;
  for (std::size_t i = 0; i < cols.size(); ++i) o << (i ? "," : "") << cols[i];
  o << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << g17(r[i]);
    o << '\n';
  }
  return o.str();
}

std::string complex_json(const std::string& what, const std::string& id, const std::vector<std::string>& cols,
                         const std::vector<std::vector<double>>& rows) {
  json j;
  j["transform"] = what;
  j["function"] = id;
  j["columns"] = cols;
  j["rows"] = rows;
  return j.dump(2);
}

std::string table_out(const RunConfig& c, const std::string& what, const std::string& id, const std::vector<std::string>& cols,
                      const std::vector<std::vector<double>>& rows) {
  return c.format == "json" ? complex_json(what, id, cols, rows) : complex_csv(cols, rows);
}

std::vector<double> axis(double extent, double step) {
  if (!(step > 0.0) || !(extent >= 0.0)) throw UsageError("need --step > 0 and --extent >= 0");
  std::vector<double> a;
  const int m = int(std::floor(extent / step + 1e-9));
  for (int i = -m; i <= m; ++i) a.push_back(i * step);
  return a;
}

int cmd_rule(const RunConfig& c) {
  const int N = c.nodes > 0 ? c.nodes : 20;
  quad::QuadratureRule r;
  if (c.kind == "gauss_hermite")
    r = quad::gauss_hermite(N);
  else if (c.kind == "mapped_legendre")
    r = quad::mapped_legendre(N, c.a, c.b);
  else if (c.kind == "radial")
    r = quad::radial_rule(c.delta, c.R, N);
  else
    throw UsageError("--kind must be gauss_hermite, mapped_legendre or radial");
  if (c.format == "json") {
    emit(c, quad::rule_to_json(r));
  } else {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) rows.push_back({double(i), r.nodes[i], r.weights[i]});
    emit(c, complex_csv({"i", "node", "weight"}, rows));
  }
  return 0;
}

int cmd_expand(const RunConfig& c) {
  FunctionSpec f = function_for(c, c.fn);
  expansion::CoefficientTable t;
  switch (expansion::route_from_string(c.route)) {
    case expansion::Route::direct: t = expansion::proj_norms_direct(f, c.kmax); break;
    case expansion::Route::wigner: {
      expansion::WignerOptions o;
      o.per_axis = c.per_axis;
      t = expansion::proj_norms_wigner(f, c.kmax, o);
      break;
    }
    case expansion::Route::spherical: t = expansion::proj_norms_spherical(f, c.kmax); break;
  }
  emit(c, c.format == "json" ? t.to_json() : t.to_csv());
  return 0;
}

int cmd_wigner(const RunConfig& c) {
  FunctionSpec f = function_for(c, c.fn);
  FunctionSpec g = c.gn.empty() ? f : function_for(c, c.gn);
  if (f.n > 2) throw UsageError("wigner: n must be 1 or 2");
  auto ax = axis(c.extent, c.step);
  std::vector<std::vector<double>> pts;
  if (f.n == 1) {
    for (double x : ax)
      for (double y : ax) pts.push_back({x, y});
  } else {
    for (double x1 : ax)
      for (double y1 : ax)
        for (double x2 : ax)
          for (double y2 : ax) pts.push_back({x1, y1, x2, y2});
  }
  std::vector<quad::ConvergenceReport> rep(pts.size());
  parallel::for_each(pts.size(), [&](std::size_t i) {
    cplx z[2] = {cplx(pts[i][0], pts[i][1]), f.n == 2 ? cplx(pts[i][2], pts[i][3]) : cplx(0.0)};
    rep[i] = xform::fourier_wigner_report(f, g, z);
  });
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!rep[i].converged(1e-8)) throw NumericalError("wigner: quadrature not converged at grid point " + std::to_string(i));
    auto r = pts[i];
    r.push_back(rep[i].value.real());
    r.push_back(rep[i].value.imag());
    r.push_back(rep[i].est_rel_err);
    rows.push_back(r);
  }
  std::vector<std::string> cols = f.n == 1 ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"x1", "y1", "x2", "y2"};
  for (auto s : {"re", "im", "est_rel_err"}) cols.push_back(s);
  emit(c, table_out(c, "fourier_wigner", f.id + (c.gn.empty() ? "" : " x " + g.id), cols, rows));
  return 0;
}

int cmd_hankel(const RunConfig& c) {
  if (c.profile.empty()) throw UsageError("--profile is required");
  RadialProfile g = make_profile(c.profile);
  std::vector<std::vector<double>> rows;
  for (double r : axis(c.extent, c.step)) {
    if (r < 0.0) continue;
    auto rep = xform::hankel_report(g, c.delta, r);
    if (!rep.converged(1e-8)) throw NumericalError("hankel: quadrature not converged at r = " + g17(r));
    rows.push_back({r, rep.value.real(), rep.value.imag(), rep.est_rel_err});
  }
  emit(c, table_out(c, "hankel", g.id, {"r", "re", "im", "est_rel_err"}, rows));
  return 0;
}

int cmd_bargmann(const RunConfig& c) {
  FunctionSpec f = function_for(c, c.fn);
  if (f.n == 2) {
    auto route = c.route == "formula" ? expansion::DkRoute::formula : expansion::DkRoute::cauchy;
    if (c.route != "formula" && c.route != "cauchy" && c.route != "direct")
      throw UsageError("bargmann: --route must be cauchy or formula for n = 2");
    auto t = expansion::d_k_norms(f, c.kmax, route);
    emit(c, c.format == "json" ? t.to_json() : t.to_csv());
    return 0;
  }
  // n = 1: Taylor coefficients of Bf from a Cauchy integral on |z| = 1
  auto co = xform::taylor_coeffs_cauchy([&f](cplx z) { return xform::bargmann_1d(f, z); }, 1.0, c.kmax + 1);
  std::vector<std::vector<double>> rows;
  for (int k = 0; k <= c.kmax; ++k) rows.push_back({double(k), co[k].real(), co[k].imag()});
  emit(c, table_out(c, "bargmann_taylor", f.id, {"k", "re", "im"}, rows));
  return 0;
}

int cmd_udelta(const RunConfig& c) {
  if (c.profile.empty()) throw UsageError("--profile is required");
  RadialProfile g = make_profile(c.profile);
  xform::URoute route;
  if (c.route == "series")
    route = xform::URoute::series;
  else if (c.route == "integral" || c.route == "direct")
    route = xform::URoute::integral;
  else
    throw UsageError("udelta: --route must be series or integral");
  auto ax = axis(c.extent, c.step);
  std::vector<std::vector<double>> rows;
  std::vector<cplx> coef;
  if (route == xform::URoute::series) coef = xform::u_delta_series_coeffs(g, c.delta, std::sqrt(2.0) * c.extent);
  for (double u : ax)
    for (double v : ax) {
      cplx w(u, v);
      cplx val = route == xform::URoute::series ? xform::u_delta_series_eval(coef, c.delta, w) : xform::u_delta(g, c.delta, w, route);
      rows.push_back({u, v, val.real(), val.imag()});
    }
  emit(c, table_out(c, "u_delta", g.id, {"re_w", "im_w", "re", "im"}, rows));
  return 0;
}

int cmd_decay(const RunConfig& c) {
  FunctionSpec f = function_for(c, c.fn);
  if (!c.theorem.empty()) {
    auto r = decay::theorem_check(f, decay::theorem_from_string(c.theorem));
    emit(c, json::parse(r.json).dump(2));
    std::cerr << decay::to_string(r.theorem) << " " << f.id << ": " << r.status << " (a = " << r.a << ", rate = " << r.rate
              << ", measured t = " << r.measured_t << ")\n";
    return r.status == "fail" ? 1 : 0;
  }
  expansion::CoefficientTable t;
  switch (expansion::route_from_string(c.route)) {
    case expansion::Route::direct: t = expansion::proj_norms_direct(f, c.kmax); break;
    case expansion::Route::wigner: t = expansion::proj_norms_wigner(f, c.kmax); break;
    case expansion::Route::spherical: t = expansion::proj_norms_spherical(f, c.kmax); break;
  }
  auto fit = decay::decay_fit(t, f.n, decay::PMode::free);
  json j;
  j["function"] = f.id;
  j["route"] = c.route;
  j["fit"] = json::parse(fit.to_json());
  j["table"] = json::parse(t.to_json());
  emit(c, j.dump(2));
  std::cerr << f.id << ": t = " << fit.t << ", p = " << fit.p << ", implied a = tanh(2t) = " << fit.implied_a << "\n";
  return 0;
}

int cmd_verify(const RunConfig& c) {
  std::vector<std::string> names;
  if (c.suite == "all")
    names = suites::suite_names();
  else
    names = {c.suite};
  for (const auto& s : names) {
    bool known = false;
    for (const auto& k : suites::suite_names()) known = known || k == s;
    if (!known) throw UsageError("unknown suite: " + s);
  }
  bool ok = true;
  std::string text;
  if (names.size() == 1) {
    auto r = suites::run_suite(names[0]);
    ok = r.pass;
    text = r.to_json();
  } else {
    json arr = json::array();
    for (const auto& s : names) {
      auto r = suites::run_suite(s);
      ok = ok && r.pass;
      arr.push_back(json::parse(r.to_json()));
    }
    text = arr.dump(2);
  }
  emit(c, text);
  return ok ? 0 : 1;
}

int cmd_list(const RunConfig& c) {
  if (c.format == "json") {
    json j;
    j["functions"] = json::array();
    for (const auto& f : function_families()) j["functions"].push_back({{"name", f.name}, {"params", f.params}, {"description", f.description}});
    j["profiles"] = json::array();
    for (const auto& f : profile_families()) j["profiles"].push_back({{"name", f.name}, {"params", f.params}, {"description", f.description}});
    j["battery"] = {{"n1", hardy_battery(1)}, {"n2", hardy_battery(2)}};
    emit(c, j.dump(2));
    return 0;
  }
  std::ostringstream o;
  o << "kind,name,defaults,description\n";
  for (const auto& f : function_families()) o << "function," << f.name << ",\"" << f.params << "\",\"" << f.description << "\"\n";
  for (const auto& f : profile_families()) o << "profile," << f.name << ",\"" << f.params << "\",\"" << f.description << "\"\n";
  emit(c, o.str());
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Hermite expansions, Fourier-Wigner transforms and Hardy-class decay checks"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  auto common = [&](CLI::App* s, bool fn) {
    if (fn) {
      s->add_option("--fn", c.fn, "function id, family:key=val,...");
      s->add_option("--n", c.n, "dimension (1 or 2)")->check(CLI::Range(1, 2));
    }
    s->add_option("--out", c.out, "output path (default stdout)");
    s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 1024));
    s->add_option("--cache-dir", c.cache_dir, "quadrature rule cache directory (overrides HARDY_CACHE_DIR)");
    s->add_flag("--no-cache", c.no_cache, "disable the rule cache");
  };

  auto* rule = app.add_subcommand("rule", "emit a 1-D quadrature rule");
  common(rule, false);
  rule->add_option("--kind", c.kind, "gauss_hermite, mapped_legendre or radial");
  rule->add_option("--nodes", c.nodes, "number of nodes")->check(CLI::PositiveNumber);
  rule->add_option("--a", c.a, "left end (mapped_legendre)");
  rule->add_option("--b", c.b, "right end (mapped_legendre)");
  rule->add_option("--R", c.R, "truncation radius (radial)");
  rule->add_option("--delta", c.delta, "weight exponent s^{2 delta + 1} (radial)");

  auto* expand = app.add_subcommand("expand", "Hermite projection norms ||P_k f||");
  common(expand, true);
  expand->add_option("--kmax", c.kmax, "largest level")->check(CLI::NonNegativeNumber);
  expand->add_option("--route", c.route, "direct, wigner or spherical")->check(CLI::IsMember({"direct", "wigner", "spherical"}));
  expand->add_option("--per-axis", c.per_axis, "wigner route: nodes per axis")->check(CLI::NonNegativeNumber);

  auto* wig = app.add_subcommand("wigner", "Fourier-Wigner transform V(f,g) on a grid");
  common(wig, true);
  wig->add_option("--gn", c.gn, "second function (default: --fn)");
  wig->add_option("--extent", c.extent, "grid half-width");
  wig->add_option("--step", c.step, "grid spacing");

  auto* hank = app.add_subcommand("hankel", "Hankel transform H_delta of a radial profile");
  common(hank, false);
  hank->add_option("--profile", c.profile, "radial profile id");
  hank->add_option("--delta", c.delta, "order delta > -1/2");
  hank->add_option("--extent", c.extent, "largest r");
  hank->add_option("--step", c.step, "r spacing");

  auto* barg = app.add_subcommand("bargmann", "Bargmann transform: Taylor coefficients (n = 1) or int |d_k|^2 (n = 2)");
  common(barg, true);
  barg->add_option("--kmax", c.kmax, "largest index")->check(CLI::NonNegativeNumber);
  barg->add_option("--route", c.route, "cauchy or formula (n = 2)");

  auto* ud = app.add_subcommand("udelta", "U_delta transform of a radial profile on a complex grid");
  common(ud, false);
  ud->add_option("--profile", c.profile, "radial profile id");
  ud->add_option("--delta", c.delta, "order delta > -1/2");
  ud->add_option("--route", c.route, "series or integral");
  ud->add_option("--extent", c.extent, "grid half-width");
  ud->add_option("--step", c.step, "grid spacing");

  auto* dec = app.add_subcommand("decay", "decay fit of ||P_k f||, or a theorem check with --theorem");
  common(dec, true);
  dec->add_option("--kmax", c.kmax, "largest level")->check(CLI::NonNegativeNumber);
  dec->add_option("--route", c.route, "direct, wigner or spherical")->check(CLI::IsMember({"direct", "wigner", "spherical"}));
  dec->add_option("--theorem", c.theorem, "T1_1, T1_2, T1_3, T1_4, T4_1 or T5_2");

  auto* ver = app.add_subcommand("verify", "run a verification suite ('all' for every suite)");
  common(ver, false);
  ver->add_option("suite", c.suite, "suite name")->required();
  c.format = "csv";

  auto* lst = app.add_subcommand("list-functions", "registered functions and radial profiles");
  common(lst, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return 0;
    }
    app.exit(e, std::cerr, std::cerr);
    return 2;
  }

  try {
    parallel::set_threads(c.threads);
    if (c.no_cache)
      quad::set_cache_dir("");
    else if (!c.cache_dir.empty())
      quad::set_cache_dir(c.cache_dir);
    CLI::App* s = app.get_subcommands().front();
    const std::string name = s->get_name();
    if (name == "rule") return cmd_rule(c);
    if (name == "expand") return cmd_expand(c);
    if (name == "wigner") return cmd_wigner(c);
    if (name == "hankel") return cmd_hankel(c);
    if (name == "bargmann") return cmd_bargmann(c);
    if (name == "udelta") return cmd_udelta(c);
    if (name == "decay") return cmd_decay(c);
    if (name == "verify") return cmd_verify(c);
    if (name == "list-functions") return cmd_list(c);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const decay::FitError& e) {
    std::cerr << "fit error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hardy::cli
