#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = hypflow::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("gaps table shows 26/9") {
  const Result r = run({"gaps", "--p", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("26/9") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("gaps with the Laplacian comparison as JSON") {
  const Result r = run({"--format", "json", "gaps", "--p", "2", "--compare-laplacians"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["exact_l2"] == "4");
  CHECK(j["laplacians"][2]["gap"] == "4");
}

TEST_CASE("invalid exponent exits 1 with usage") {
  const Result r = run({"gaps", "--p", "0.5"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({"gaps", "--p", "banana"}).code == 1);
}

TEST_CASE("unknown flags and missing subcommands are rejected") {
  CHECK(run({"gaps", "--bogus"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--format", "xml", "gaps"}).code == 1);
  CHECK(run({"--format", "csv", "gaps"}).code == 1);
}

TEST_CASE("help exits 0 and documents defaults") {
  const Result r = run({"integral", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--sweep-t") != std::string::npos);
  CHECK(r.out.find("[6]") != std::string::npos);
}

TEST_CASE("strict divergence is a successful run") {
  const Result r = run({"exponents", "--p", "2", "--q", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("strictly-divergent") != std::string::npos);
  const Result i = run({"integral", "--p", "2", "--q", "6"});
  CHECK(i.code == 0);
  CHECK(i.out.find(",inf,inf,strictly-divergent") != std::string::npos);
}

TEST_CASE("integral sweep as CSV") {
  const Result r = run({"integral", "--p", "3", "--q", "6", "--sweep-t", "0.1:10:3"});
  CHECK(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,p,q,gamma,I,bound,class");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
  CHECK(run({"integral", "--sweep-t", "1:2"}).code == 1);
  CHECK(run({"integral", "--t", "-1"}).code == 1);
}

TEST_CASE("contraction JSON verdicts") {
  const auto a = nlohmann::json::parse(run({"--format", "json", "contraction", "--u0", "0.2"}).out);
  CHECK(a["verdict"] == "converged");
  CHECK(std::abs(a["limit"].get<double>() - 0.27639320225) < 1e-9);
  const Result b = run({"--format", "json", "contraction", "--u0", "0.3"});
  CHECK(b.code == 0);
  CHECK(nlohmann::json::parse(b.out)["verdict"] == "diverged");
  CHECK(run({"contraction", "--c1", "0"}).code == 1);
}

TEST_CASE("kernel checks") {
  const Result r = run({"--format", "json", "kernel", "--t", "1", "--check-mass", "--check-semigroup"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["mass"].get<double>() - 1.0) < 1e-6);
  CHECK(j["semigroup"]["relative_l2_defect"].get<double>() < 1e-5);
  CHECK(run({"kernel", "--t", "0"}).code == 1);
  const Result csv = run({"--format", "csv", "kernel", "--t", "1"});
  CHECK(csv.out.rfind("r,value\n", 0) == 0);
}

TEST_CASE("simulate writes trajectory CSV to a file") {
  const std::string path = "test_cli_trajectory.csv";
  const Result r = run({"--output", path, "simulate", "--modes", "8", "--gap", "4", "--t-end", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("fitted tail rate") != std::string::npos);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,l2_norm");
  std::remove(path.c_str());
}

TEST_CASE("simulate parameter and numerical failures") {
  CHECK(run({"simulate", "--gap", "3"}).code == 1);
  CHECK(run({"simulate", "--dt", "5"}).code == 1);
  CHECK(run({"simulate", "--modes", "4", "--mu", "0.001", "--gap", "0", "--u0-norm", "1e4", "--t-end", "5", "--dt",
             "0.01"})
            .code == 2);
}

TEST_CASE("compare report") {
  const Result r = run({"--format", "json", "compare", "--gaps", "0,2,4", "--t-end", "60"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["runs"].size() == 3);
  CHECK(j["ordered"] == true);
}

TEST_CASE("semigroup report") {
  const Result r = run({"--format", "json", "semigroup", "--kind", "deformation-scalar", "--p", "2", "--q", "2"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(std::abs(j["fitted_rate"].get<double>() - 3.0) < 0.05);
  CHECK(run({"semigroup", "--p", "4", "--q", "2"}).code == 1);
  CHECK(run({"semigroup", "--kind", "bogus"}).code == 1);
}
