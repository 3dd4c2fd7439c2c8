#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "deforma/cli.hpp"
#include "deforma/special.hpp"
#include "doctest.h"
#include "json.hpp"

using doctest::Approx;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "deforma");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = deforma::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Result run_binary(const std::string& args) {
  const std::string command = std::string(DEFORMA_EXE) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Result r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("spectrum examples") {
  Result r = run({"spectrum", "--method", "wkb", "--alpha", "1", "--nmax", "3"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "n,energy,method,param\n0,0.5,wkb,1\n1,1.5,wkb,1\n2,2.5,wkb,1\n3,3.5,wkb,1\n");

  r = run({"spectrum", "--method", "dunkl", "--D", "1.5", "--nmax", "2"});
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1][1] == "0.75");
  CHECK(rows[2][1] == "1.75");
  CHECK(rows[3][1] == "2.75");

  r = run({"spectrum", "--method", "q", "--q", "2", "--nmax", "1"});
  rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][1] == "0.5");
  CHECK(rows[2][1] == "1.75");
}

TEST_CASE("spectrum numeric with JSON output") {
  const Result r = run({"spectrum", "--method", "numeric", "--alpha", "1", "--nmax", "2", "--N",
                        "200", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["command"] == "spectrum");
  CHECK(doc["meta"]["N"] == "200");
  CHECK(doc["meta"]["L"] == "8");
  REQUIRE(doc["data"]["energy"].size() == 3);
  for (int n = 0; n < 3; ++n) {
    CHECK(std::abs(doc["data"]["energy"][n].get<double>() - (n + 0.5)) < 0.05);
  }
}

TEST_CASE("deriv examples") {
  CHECK(run({"deriv", "--op", "q", "--q", "2", "--f", "x^3", "--at", "1"}).out == "5.25\n");
  const Result caputo = run({"deriv", "--op", "caputo", "--alpha", "0.5", "--f", "x", "--at", "1"});
  CHECK(caputo.code == 0);
  CHECK(std::stod(caputo.out) == Approx(2.0 / std::sqrt(deforma::kPi)).epsilon(1e-6));
  CHECK(run({"deriv", "--op", "dunkl", "--D", "1.5", "--f", "x^3", "--at", "1.2"}).out == "5.04\n");
  CHECK(run({"deriv", "--op", "Q", "--Q", "2", "--f", "x^3", "--at", "1"}).out == "7\n");
}

TEST_CASE("deriv on a grid marks undefined points") {
  const Result r =
      run({"deriv", "--op", "q", "--q", "1.5", "--f", "x^2", "-L", "1", "-N", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["omitted"] == "1");
  CHECK(doc["data"]["value"][1].is_null());
  CHECK(doc["data"]["value"][2].get<double>() == Approx(2.0 * 1.0 * (1.5 + 1.0 / 1.5) / 2.0));
}

TEST_CASE("profile examples") {
  Result r = run({"profile", "--kind", "density", "--D", "1", "--p", "1", "-L", "5", "-N", "101"});
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == std::vector<std::string>{"xi", "rho"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] == rows[1][1]);
  CHECK(std::stod(rows[1][1]) == Approx(1.0 / (2.0 * deforma::kPi)));

  r = run({"profile", "--kind", "qp", "--parity", "even", "--D", "1.5", "--r", "exp(-x^2/2)", "-L",
           "3", "-N", "31"});
  CHECK(r.code == 0);
  rows = csv_rows(r.out);
  CHECK(rows[0] == std::vector<std::string>{"xi", "value_re", "value_im"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double xi = std::stod(rows[i][0]);
    if (xi == 0.0) {
      CHECK(rows[i][1] == "nan");
      continue;
    }
    CHECK(std::stod(rows[i][1]) == Approx((1.5 - xi * xi) / 2.0).epsilon(1e-8));
  }

  r = run({"profile", "--kind", "qp-check", "--parity", "odd", "--D", "1.5", "--r", "x*exp(-x^2/2)",
           "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["within_tol"] == "true");
  CHECK(doc["data"]["xi"].size() == 401);
  for (const auto& v : doc["data"]["value_re"]) {
    if (!v.is_null()) CHECK(std::abs(v.get<double>()) < 1e-7);
  }
}

TEST_CASE("profile psi and eigen") {
  Result r = run({"profile", "--kind", "psi", "--D", "1", "--p", "1", "-L", "2", "-N", "5"});
  CHECK(r.code == 0);
  for (const auto& row : csv_rows(r.out)) {
    if (row[0] == "xi") continue;
    const double re = std::stod(row[1]);
    const double im = std::stod(row[2]);
    CHECK(std::hypot(re, im) == Approx(1.0 / std::sqrt(2.0 * deforma::kPi)).epsilon(1e-10));
  }
  r = run({"profile", "--kind", "eigen", "--n", "1", "--D", "1.5", "-L", "1", "-N", "3"});
  CHECK(r.code == 0);
  const auto rows = csv_rows(r.out);
  CHECK(std::stod(rows[2][1]) == 0.0);
  CHECK(std::stod(rows[1][1]) == Approx(-std::stod(rows[3][1])));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
  CHECK(run({"spectrum", "--method", "bogus"}).code == 2);
  CHECK(run({"spectrum", "--method", "q", "--nmax", "2"}).code == 2);
  CHECK(run({"spectrum", "--method", "q", "--q", "abc"}).code == 2);
  CHECK(run({"verify", "--only", "nomodule"}).code == 2);
  CHECK(run({"deriv", "--op", "q", "--q", "2", "--f", "x^^3", "--at", "1"}).code == 2);
  const Result parse = run({"deriv", "--op", "q", "--q", "2", "--f", "x + foo(x)", "--at", "1"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("position 4") != std::string::npos);
  CHECK(run({"profile", "--kind", "qp-check", "--r", "exp(-x^2/2)"}).code == 2);

  CHECK(run({"spectrum", "--method", "q", "--q", "1", "--nmax", "2"}).code == 3);
  CHECK(run({"spectrum", "--method", "wkb", "--alpha", "3"}).code == 3);
  CHECK(run({"spectrum", "--method", "dunkl", "--D", "2.5"}).code == 3);
  CHECK(run({"deriv", "--op", "q", "--q", "2", "--f", "x^3", "--at", "0"}).code == 3);
  CHECK(run({"deriv", "--op", "feller", "--alpha", "1.5", "--f", "x", "--at", "1"}).code == 3);
  CHECK(run({"profile", "--kind", "qp", "--parity", "odd", "--D", "1.5", "--r", "exp(-x^2/2)"}).code ==
        3);
  CHECK(run({"spectrum", "--method", "numeric", "--alpha", "1", "-L", "40", "-N", "8"}).code == 3);

  const Result help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("spectrum") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  const Result r = run({"verify", "--only", "qcalc"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS  qcalc") != std::string::npos);
  CHECK(r.out.find("dcalc") == std::string::npos);
  CHECK(r.out.find("summary: 12 passed, 0 failed, 0 info") != std::string::npos);

  const Result a = run({"verify", "--only", "core", "--seed", "7"});
  const Result b = run({"verify", "--only", "core", "--seed", "7"});
  CHECK(a.out == b.out);
  const Result c = run({"verify", "--only", "core", "--seed", "8"});
  CHECK(c.code == 0);
  CHECK(c.out != a.out);

  const Result j = run({"verify", "--only", "dcalc", "--format", "json"});
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["meta"]["only"] == "dcalc");
  int info = 0;
  for (const auto& s : doc["data"]["status"]) info += (s == "INFO");
  CHECK(info == 3);
}

TEST_CASE("binary: exit codes and byte-identical file output") {
  CHECK(run_binary("spectrum --method wkb --alpha 1 --nmax 1").code == 0);
  CHECK(run_binary("spectrum --method q --q 1").code == 3);
  CHECK(run_binary("spectrum --bogus").code == 2);

  const auto dir = std::filesystem::temp_directory_path() / "deforma_cli_test";
  std::filesystem::create_directories(dir);
  const auto first = dir / "a.json";
  const auto second = dir / "b.json";
  const std::string args =
      "profile --kind density --D 1.5 --p 1.2 -L 4 -N 81 --format json --output ";
  REQUIRE(run_binary(args + first.string()).code == 0);
  REQUIRE(run_binary(args + second.string()).code == 0);
  const std::string a = slurp(first);
  CHECK(!a.empty());
  CHECK(a == slurp(second));
  std::filesystem::remove_all(dir);
}
