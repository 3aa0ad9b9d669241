#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hardy/cli.hpp"

namespace {
int run(std::vector<std::string> args) {
  args.insert(args.begin(), "hardy");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return hardy::cli::run(int(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}
}  // namespace

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({}) == 2);
  CHECK(run({"bogus"}) == 2);
  CHECK(run({"expand", "--fn", "gaussian:b=0.5,n=2", "--n", "1"}) == 2);
  CHECK(run({"expand", "--fn", "nosuchfamily:x=1"}) == 2);
  CHECK(run({"verify", "nosuchsuite"}) == 2);
  CHECK(run({"expand", "--fn", "gaussian:b=0.5", "--threads", "0"}) == 2);
}

TEST_CASE("cli: expand writes a table atomically") {
  auto out = std::filesystem::temp_directory_path() / "hardy_cli_expand.csv";
  std::filesystem::remove(out);
  REQUIRE(run({"expand", "--fn", "gaussian:b=0.5", "--n", "1", "--kmax", "4", "--out", out.string()}) == 0);
  auto text = slurp(out);
  CHECK(text.find("k,") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  CHECK_FALSE(std::filesystem::exists(out.string() + ".tmp"));
  std::filesystem::remove(out);
}

TEST_CASE("cli: output does not depend on the thread count") {
  auto a = std::filesystem::temp_directory_path() / "hardy_cli_t1.json";
  auto b = std::filesystem::temp_directory_path() / "hardy_cli_t4.json";
  REQUIRE(run({"expand", "--fn", "harmonic:m=2,b=0.6", "--kmax", "6", "--route", "spherical", "--format", "json", "--threads", "1", "--out", a.string()}) == 0);
  REQUIRE(run({"expand", "--fn", "harmonic:m=2,b=0.6", "--kmax", "6", "--route", "spherical", "--format", "json", "--threads", "4", "--out", b.string()}) == 0);
  CHECK(slurp(a) == slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("cli: rule, list-functions and verify") {
  auto out = std::filesystem::temp_directory_path() / "hardy_cli_misc.txt";
  CHECK(run({"rule", "--kind", "gauss_hermite", "--nodes", "8", "--out", out.string()}) == 0);
  CHECK(run({"list-functions", "--out", out.string()}) == 0);
  CHECK(slurp(out).find("example44") != std::string::npos);
  CHECK(run({"verify", "orthonormality", "--out", out.string()}) == 0);
  CHECK(slurp(out).find("\"pass\": true") != std::string::npos);
  std::filesystem::remove(out);
}
