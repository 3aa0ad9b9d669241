// One line per acceptance criterion, built from the verification suites.
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hardy/parallel.hpp"
#include "hardy/suites.hpp"

using hardy::suites::Check;
using hardy::suites::Report;

namespace {

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> suites;
  std::function<bool(const std::string& suite, const Check&)> select;
};

}  // namespace

int main() {
  const auto names = hardy::suites::suite_names();

  hardy::parallel::set_threads(1);
  std::map<std::string, Report> reports;
  std::map<std::string, std::string> json1;
  for (const auto& s : names) {
    reports[s] = hardy::suites::run_suite(s);
    json1[s] = reports[s].to_json();
  }

  auto all = [](const std::string&, const Check&) { return true; };
  const std::vector<Criterion> criteria = {
      {1, "example function level norms", {"example44"}, [](const std::string&, const Check& c) { return starts_with(c.name, "levels"); }},
      {2, "example function closed forms", {"example44"}, [](const std::string&, const Check& c) { return starts_with(c.name, "closed-form"); }},
      {3, "eigenrelations", {"orthonormality", "fourier-eigen", "hankel-eigen"}, all},
      {4, "wigner identities and route equivalence", {"wigner-identity", "routes"}, all},
      {5, "U_delta and Cholewinski weight", {"udelta", "cholewinski"}, all},
      {6, "radialization", {"radialization"}, all},
      {7, "decay-rate recovery",
       {"theorems", "example44"},
       [](const std::string& s, const Check& c) { return s == "theorems" || !(starts_with(c.name, "levels") || starts_with(c.name, "closed-form")); }},
      {8, "vector Bargmann", {"vector-bargmann"}, all},
      {9, "c(k,m) growth", {"lemma55"}, all},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    int n = 0, ok = 0;
    std::string bad;
    for (const auto& s : cr.suites)
      for (const auto& c : reports[s].checks) {
        if (!cr.select(s, c)) continue;
        ++n;
        if (c.pass)
          ++ok;
        else
          bad += (bad.empty() ? "" : ", ") + c.name;
      }
    const bool pass = n > 0 && ok == n;
    failed += !pass;
    std::printf("criterion %2d %s: %s (%d/%d checks)%s%s\n", cr.id, pass ? "PASS" : "FAIL", cr.title.c_str(), ok, n,
                bad.empty() ? "" : "; failing: ", bad.c_str());
  }

  hardy::parallel::set_threads(8);
  std::string diff;
  for (const auto& s : names)
    if (hardy::suites::run_suite(s).to_json() != json1[s]) diff += (diff.empty() ? "" : ", ") + s;
  const bool det = diff.empty();
  failed += !det;
  std::printf("criterion 10 %s: determinism, suite output identical with 1 and 8 threads (%zu suites)%s%s\n", det ? "PASS" : "FAIL",
              names.size(), det ? "" : "; differing: ", diff.c_str());

  std::printf("%d of 10 criteria failed\n", failed);
  return failed ? 1 : 0;
}
