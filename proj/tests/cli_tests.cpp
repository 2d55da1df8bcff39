#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "gasym/group_io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kCli = GASYM_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "gasym_cli_tests";
  fs::create_directories(dir);
  return dir;
}

// env is prepended verbatim, e.g. "GASYM_THREADS=4".
RunResult run_cli(const std::string& args, const std::string& env = {}) {
  static int counter = 0;
  const fs::path dir = scratch_dir();
  const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += std::string("\"") + kCli + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
         err.string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

json result_of(const RunResult& r) { return json::parse(r.out).at("result"); }

}  // namespace

TEST_CASE("discriminate reports the D3 optimum") {
  const auto r =
      run_cli("discriminate --group dihedral:3 --rep \"g1+g2+g3\" --state optimal");
  REQUIRE(r.exit_code == 0);
  const json res = result_of(r);
  CHECK(res.at("closed_form_ps").get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(res.at("robustness_of_asymmetry").get<double>() ==
        doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::abs(res.at("solver_ps").get<double>() - 2.0 / 3.0) <= 1e-6);
  CHECK(res.at("certificate_floor").get<double>() >= -1e-7);
  const auto weights = res.at("optimal_weights");
  CHECK(weights.at(0).at("norm").get<double>() == doctest::Approx(0.5));
  CHECK(weights.at(2).at("norm").get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("discriminate accepts uniform and explicit states") {
  const auto uniform = run_cli("discriminate --group cyclic:3 --state uniform");
  REQUIRE(uniform.exit_code == 0);
  CHECK(result_of(uniform).at("closed_form_ps").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));

  const auto explicit_state =
      run_cli("discriminate --group dihedral:3 --rep \"g1+g2+g3\" --state 1,0,0,0");
  REQUIRE(explicit_state.exit_code == 0);
  const json res = result_of(explicit_state);
  CHECK(std::abs(res.at("closed_form_ps").get<double>() -
                 res.at("solver_ps").get<double>()) <= 1e-6);
}

TEST_CASE("decompose reports multiplicities and residuals") {
  const auto r = run_cli("decompose --group dihedral:3 --rep \"g3*g3\"");
  REQUIRE(r.exit_code == 0);
  const json res = result_of(r);
  for (const auto& m : res.at("multiplicities")) {
    CHECK(m.at("multiplicity").get<int>() == 1);
  }
  CHECK(res.at("residuals").at("completeness").get<double>() <= 1e-9);

  const auto c4 = run_cli("decompose --group cyclic:4 --rep \"g0+g1+g2+g3\"");
  REQUIRE(c4.exit_code == 0);
  CHECK(result_of(c4).at("subspaces").size() == 4);
}

TEST_CASE("malformed inputs exit with code 2") {
  CHECK(run_cli("decompose --group dihedral:3 --rep \"g3*xx\"").exit_code == 2);
  CHECK(run_cli("decompose --group dihedral:4").exit_code == 2);
  CHECK(run_cli("discriminate --group dihedral:3 --rep \"g3+g3\"").exit_code == 2);
  CHECK(run_cli("duality --group dihedral:3 --tags bogus").exit_code == 2);
  CHECK(run_cli("sweep --group nosuch:3").exit_code == 2);
}

TEST_CASE("duality reports the two D3 landmark ensembles") {
  const auto orth = run_cli("duality --group dihedral:3 --tags orthogonal");
  REQUIRE(orth.exit_code == 0);
  const json res = result_of(orth);
  CHECK(res.at("lhs").get<double>() == doctest::Approx(4.0 / 9.0).epsilon(1e-9));
  CHECK(res.at("rhs").get<double>() == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(res.at("p_hp_achieved").get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  const auto ident = run_cli("duality --group dihedral:3 --tags identical");
  REQUIRE(ident.exit_code == 0);
  const double lhs = result_of(ident).at("lhs").get<double>();
  CHECK(lhs == doctest::Approx(std::pow((1.0 + 2.0 * std::sqrt(2.0)) / 9.0, 2)).epsilon(1e-9));
}

TEST_CASE("duality with random tags is deterministic in the seed") {
  const auto a = run_cli("duality --group cyclic:3 --tags random --seed 31");
  const auto b = run_cli("duality --group cyclic:3 --tags random --seed 31");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto c = run_cli("duality --group cyclic:3 --tags random --seed 32");
  CHECK(a.out != c.out);
}

TEST_CASE("sweep emits deterministic CSV regardless of worker count") {
  const std::string args = "sweep --group dihedral:3 --samples 40 --seed 42";
  const auto base = run_cli(args);
  REQUIRE(base.exit_code == 0);
  CHECK(base.err.find("min_slack") != std::string::npos);

  CHECK(run_cli(args).out == base.out);
  CHECK(run_cli(args, "GASYM_THREADS=1").out == base.out);
  CHECK(run_cli(args, "GASYM_THREADS=3").out == base.out);
  CHECK(run_cli(args, "GASYM_THREADS=16").out == base.out);

  // header + one line per sample
  std::istringstream lines(base.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++count;
  CHECK(count == 41);
}

TEST_CASE("sweep with one-dimensional ancillas hits the identical-tag limit") {
  const auto r = run_cli("sweep --group cyclic:2 --samples 5 --seed 3 --amb-dim 1");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> fields;
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    REQUIRE(fields.size() == 15);
    CHECK(std::stod(fields[4]) == doctest::Approx(1.0).epsilon(1e-12));  // max overlap
    CHECK(std::stod(fields[8]) == doctest::Approx(0.5).epsilon(1e-9));   // p_hp
  }
}

TEST_CASE("sweep writes to a file and supports json format") {
  const fs::path out = scratch_dir() / "sweep.csv";
  const auto r = run_cli("sweep --group cyclic:3 --samples 3 --seed 1 --out \"" +
                         out.string() + "\"");
  REQUIRE(r.exit_code == 0);
  const std::string content = slurp(out);
  CHECK(content.rfind("sample_id,", 0) == 0);

  const auto j = run_cli("sweep --group cyclic:3 --samples 3 --seed 1 --format json");
  REQUIRE(j.exit_code == 0);
  const json rows = json::parse(j.out).at("result");
  CHECK(rows.size() == 3);
  CHECK(rows.at(0).at("slack").get<double>() >= -1e-9);
}

TEST_CASE("verify passes by default and fails under perturbation") {
  const auto ok = run_cli("verify --samples 5");
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.out).at("passed").get<bool>());

  const auto bad = run_cli("verify --samples 5 --perturb 1e-3");
  CHECK(bad.exit_code == 1);
  const json doc = json::parse(bad.out);
  CHECK_FALSE(doc.at("passed").get<bool>());
  CHECK(doc.at("first_failure").get<std::string>() == "povm.completeness");
}

TEST_CASE("verify treats a loaded group file like the built-in") {
  const fs::path file = scratch_dir() / "d3.json";
  gasym::save_group(file.string(), *gasym::dihedral_group(3));

  const auto builtin = run_cli("verify --group dihedral:3 --samples 5 --seed 11");
  const auto loaded = run_cli("verify --group file:" + file.string() + " --samples 5 --seed 11");
  REQUIRE(builtin.exit_code == 0);
  REQUIRE(loaded.exit_code == 0);
  const json a = json::parse(builtin.out).at("checks");
  const json b = json::parse(loaded.out).at("checks");
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.at(i).at("name") == b.at(i).at("name"));
    CHECK(a.at(i).at("passed") == b.at(i).at("passed"));
    CHECK(a.at(i).at("residual").get<double>() ==
          doctest::Approx(b.at(i).at("residual").get<double>()).epsilon(1e-12));
  }
}

TEST_CASE("tolerance overrides parse and apply") {
  CHECK(run_cli("verify --samples 3 --tolerance solver=1e-5").exit_code == 0);
  CHECK(run_cli("verify --tolerance bogus=1").exit_code == 2);
  CHECK(run_cli("verify --tolerance solver=abc").exit_code == 2);
}

TEST_CASE("explicit tag files are accepted") {
  const fs::path file = scratch_dir() / "tags.json";
  {
    std::ofstream out(file);
    out << "[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]";
  }
  const auto r = run_cli("duality --group dihedral:3 --tags @" + file.string());
  REQUIRE(r.exit_code == 0);
  CHECK(result_of(r).at("p_hp_achieved").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}
