// Copyright 2026 The mpindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mpindex/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "mpindex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = mpindex::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

const char* kWorked = R"({"k":1,"args":[{"z":[[-1,-1]]},{"z":[1]},{"z":[[0,1]]}]})";

}  // namespace

TEST_CASE("psi") {
  auto id = cli({"psi"}, R"({"k":0,"args":[{"z":[0]}]})");
  REQUIRE(id.code == 0);
  CHECK(id.json()["value"] == nlohmann::json::parse("[1.0, 0.0]"));

  auto ex = cli({"psi"}, kWorked);
  REQUIRE(ex.code == 0);
  const std::complex<double> v(ex.json()["value"][0].get<double>(), ex.json()["value"][1].get<double>());
  CHECK(std::abs(v - std::complex<double>(0, -0.5) * std::polar(1.0, 0.5)) < 1e-11);
  CHECK(ex.json()["contributing_classes"].size() == 1);

  auto big = cli({"psi"}, R"({"k":2,"args":[{"z":[0]},{"z":[0]},{"z":[0]},{"z":[0]},{"z":[0]}]})");
  REQUIRE(big.code == 0);
  CHECK(big.json()["value"] == nlohmann::json::parse("[0.0, 0.0]"));
  CHECK(big.json()["reason"] == "k exceeds fixed-space dimension");

  CHECK(cli({"psi"}, "{not json").code == 2);
  CHECK(cli({"psi"}, R"({"args":[{"z":[0]}]})").code == 2);
  CHECK(cli({"psi"}, R"({"k":1,"args":[{"z":[0]}]})").code == 2);
  CHECK(cli({"psi"}, R"({"k":-1,"args":[]})").code == 2);
  CHECK(cli({"psi", "--csv"}, kWorked).code == 2);
  CHECK(cli({"psi", "--json", "--csv"}, kWorked).code == 2);
  CHECK(cli({"psi", "-i", "/nonexistent/request.json"}).code == 2);
}

TEST_CASE("output is byte-identical across runs and can go to a file") {
  const auto a = cli({"psi"}, kWorked), b = cli({"psi"}, kWorked);
  CHECK(a.out == b.out);
  const std::string path = "cli_test_out.json";
  std::remove(path.c_str());
  REQUIRE(cli({"psi", "--out", path}, kWorked).code == 0);
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str() == a.out);
  std::remove(path.c_str());
  CHECK(cli({"verify", "orbifold", "--seed", "5"}).out == cli({"verify", "orbifold", "--seed", "5"}).out);
}

TEST_CASE("phi, pair and torus") {
  auto phi = cli({"phi"}, R"({"anchor":{"z":[0]},"args":[{"z":[0]}]})");
  REQUIRE(phi.code == 0);
  CHECK(phi.json()["value"] == nlohmann::json::parse("[1.0, 0.0]"));
  CHECK(cli({"phi"}, R"({"anchor":{"z":[0.5]},"args":[{"z":[0]}]})").code == 2);

  auto one = cli({"pair", "--tol", "1e-12"}, R"({"entries":[{"z":[0]}]})");
  REQUIRE(one.code == 0);
  CHECK(one.json()["nearest_integer"] == 1.0);
  CHECK(cli({"pair"}, R"({"entries":[{"z":[0], "coeff":0.5}]})").code == 2);

  auto torus = cli({"torus"}, R"({"k":1,"args":[{"z":[1]},{"z":[[0,1]]},{"z":[[-1,-1]]}]})");
  REQUIRE(torus.code == 0);
  CHECK(torus.json()["difference"].get<double>() <= 1e-10);
  CHECK(cli({"torus"}, R"({"k":0,"args":[{"z":[0],"angles":[1]}]})").code == 2);
}

TEST_CASE("orbifold tables and traces") {
  auto z4 = cli({"orbifold", "--order", "4"});
  REQUIRE(z4.code == 0);
  CHECK(count_lines(z4.out) == 1 + 8);
  CHECK(z4.out.rfind("z_repr_lattice_coords,alpha,sublattice_gen1,sublattice_gen2,offsets,complement_flag\n", 0) == 0);
  auto z6 = cli({"orbifold", "--order", "6", "--k", "1.3"});
  REQUIRE(z6.code == 0);
  CHECK(count_lines(z6.out) == 1 + 9);
  CHECK(cli({"orbifold", "--order", "6", "--json"}).json()["classes"].size() == 9);

  auto id = cli({"orbifold", "--order", "4", "--what", "traces"}, R"([{"coords":[0,0]}])");
  REQUIRE(id.code == 0);
  const auto traces = id.json()["traces"];
  REQUIRE(traces.size() == 8);
  CHECK(traces[0]["trace"] == nlohmann::json::parse("[1.0, 0.0]"));
  for (std::size_t i = 1; i < 8; ++i) CHECK(traces[i]["trace"] == nlohmann::json::parse("[0.0, 0.0]"));

  CHECK(cli({"orbifold", "--order", "4", "--what", "traces"}, R"([{"z":[0.3]}])").code == 2);
  CHECK(cli({"orbifold", "--order", "5"}).code == 2);
  CHECK(cli({"orbifold"}).code == 2);
  CHECK(cli({"orbifold", "--order", "4", "--what", "rows"}).code == 2);
}

TEST_CASE("oracle") {
  const char* rotated = R"({"monomials":[{"z":[1],"angles":[1.5707963267948966]}]})";
  auto r = cli({"oracle"}, rotated);
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["samples"].size() == j["fit"]["coeffs"].size() + 4);
  CHECK(j["samples"][0].size() == 3);
  CHECK(j["relative_error"].get<double>() < 1e-3);
  CHECK(j["warnings"].empty());
  CHECK(cli({"oracle", "--tol", "1e-14"}, rotated).code == 1);
  CHECK(cli({"oracle", "--cutoff", "4096"}, rotated).code == 2);
  CHECK(cli({"oracle"}, R"({"monomials":[{"z":[1]},{"z":[1]}]})").code == 2);
  CHECK(cli({"oracle"}, R"({"n":2,"monomials":[{"z":[1]}]})").code == 2);
  CHECK(count_lines(cli({"oracle", "--csv"}, rotated).out) == 1 + 12);
}

TEST_CASE("verify") {
  auto ok = cli({"verify", "pairing"});
  CHECK(ok.code == 0);
  CHECK(ok.json()["passed"] == true);
  for (const auto& c : ok.json()["checks"]) CHECK(c.contains("tolerance"));
  // an impossible tolerance turns some measured roundoff into a failure
  CHECK(cli({"verify", "orbifold", "--tol", "-1"}).code == 2);
  CHECK(cli({"verify", "pairing", "--tol", "0"}).code == 1);
  CHECK(cli({"verify", "nope"}).code == 2);
  CHECK(cli({"verify"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}
