#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CES_CLI_PATH) + " " + args + " 2>/dev/null";
  Run result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("zeros") {
  auto r = run("zeros --n 4");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "sqrt((3+sqrt(6))/2)"));
  CHECK(contains(r.out, "1.65068"));

  r = run("zeros --n 0");
  CHECK(r.code == 0);

  r = run("--format json-lines zeros --n 6");
  CHECK(r.code == 0);
  const auto rows = json_lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0]["closed_form"] == false);
  CHECK(rows[0]["x"].get<double>() == doctest::Approx(2.35060497367449));

  CHECK(run("zeros --n -1").code == 2);
  CHECK(run("zeros").code == 2);
}

TEST_CASE("classify and liouville") {
  auto r = run("classify --G -1/4");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "collapse"));

  r = run("--format json-lines classify --potential v1");
  const auto rows = json_lines(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["regime"] == "weak-attraction");
  CHECK(rows[0]["boundary_condition"] == "psi/sqrt(r)->0");

  r = run("--format csv liouville --potential v2 --A 1 --B -0.5 --E -0.2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "v2,-5/36,3/2,true,2.25,0.45,1.125,0,5/6,1/6"));

  CHECK(run("liouville --potential v3 --E -0.2").code == 2);
}

TEST_CASE("quasi-exact states") {
  auto r = run("--format json-lines ces-states --A -1 --n-max 5");
  CHECK(r.code == 0);
  int states = 0, flagged = 0;
  bool found_swap = false;
  for (const auto& j : json_lines(r.out)) {
    if (j["record"] == "state") ++states;
    if (j["record"] == "discrepancy" && j["verdict"] == "PAPER_TYPO_SUSPECTED") {
      ++flagged;
      if (j["n"] == 2 && j["k"] == 2 && j["quantity"] == "E") {
        found_swap = true;
        CHECK(j["paper_value"].get<double>() == -0.132);
      }
    }
  }
  CHECK(states == 12);
  CHECK(flagged == 20);
  CHECK(found_swap);

  r = run("--format csv ces-states --A -4 --n-max 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "-16/81") == false);
  CHECK(contains(r.out, "-256/81"));

  r = run("--format csv ces-states --n 4 --k 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "1,4,2,0.5246476232752904"));

  CHECK(run("ces-states --A 1").code == 2);
  CHECK(run("ces-states --A 0").code == 2);
}

TEST_CASE("boundary audit exit codes") {
  auto r = run("audit-dutra --n 2 --B 0.296296 --E -0.197531");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "ACCEPT"));

  r = run("--format json-lines audit-dutra --n 2 --B 0.2 --E -0.197531");
  CHECK(r.code == 1);
  auto rows = json_lines(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["verdict"] == "REJECT");
  CHECK(rows[0]["leading_exponent"] == 0.25);

  r = run("audit-dutra --n 2 --B 0 --E -0.1");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "B must be nonzero"));

  // a strict tolerance rejects the rounded inputs
  CHECK(run("audit-dutra --n 2 --B 0.296296 --E -0.197531 --tol 1e-9").code == 1);
  CHECK(run("audit-dutra --n 2 --B 0.3 --E 0.1").code == 2);
}

TEST_CASE("solve and pathology") {
  auto r = run("--format json-lines solve --potential v1 --A -1 --B 0.2962962962962963 "
               "--e-min -0.3 --e-max -0.1 --points 20");
  CHECK(r.code == 0);
  auto rows = json_lines(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["value"].get<double>() == doctest::Approx(-16.0 / 81.0).epsilon(1e-7));
  CHECK(rows[0]["nodes"] == 0);

  r = run("--format json-lines solve --potential v2 --A 1 --E 0 --b-min -3 --b-max -1 --points 20");
  CHECK(r.code == 0);
  rows = json_lines(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["axis"] == "B");
  CHECK(rows[0]["value"].get<double>() == doctest::Approx(-2.0).epsilon(1e-7));

  r = run("--format json-lines pathology --A -1 --B 0.2962962962962963 --E -0.5,-0.1");
  CHECK(r.code == 0);
  rows = json_lines(r.out);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row["psi_vanishes"] == true);
    CHECK(row["psi_over_sqrt_r_vanishes"] == false);
  }

  CHECK(run("solve --A -1 --B 0.3 --e-min -0.3 --e-max -0.1 --h 0.01").code == 2);
  CHECK(run("solve --A -1 --B 0.3 --e-min -0.2 --e-max 0.1").code == 2);
}

TEST_CASE("output file") {
  const std::string path = "cli_test_zeros.csv";
  std::remove(path.c_str());
  auto r = run("--format csv --out " + path + " zeros --n 2");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[256] = {};
  CHECK(std::fgets(buf, sizeof buf, f) != nullptr);
  std::fclose(f);
  CHECK(std::string(buf).rfind("n,k,x", 0) == 0);
  std::remove(path.c_str());
}

TEST_CASE("verify gate responds to an injected fault") {
  auto clean = run("verify --scope tables");
  CHECK(contains(clean.out, "[PASS] C6"));
  CHECK(contains(clean.out, "[PASS] C1"));
  CHECK_FALSE(contains(clean.out, "C5"));

  auto faulty = run("verify --scope tables --inject-fault beta");
  CHECK(faulty.code == 1);
  CHECK(contains(faulty.out, "[FAIL] C6"));

  CHECK(run("verify --inject-fault gamma").code == 2);
  CHECK(run("verify --scope nowhere").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
}
