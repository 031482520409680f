// Copyright 2026 The clgcd Authors
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

#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CLGCD_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const std::string& args) {
  const Run r = run(args);
  REQUIRE(r.code == 0);
  nlohmann::json j;
  REQUIRE_NOTHROW(j = nlohmann::json::parse(r.out));
  CHECK(nlohmann::json::parse(j.dump()) == j);
  return j;
}

}  // namespace

TEST_CASE("trace table") {
  const Run r = run("trace 31 75");
  CHECK(r.code == 0);
  // Second column from the right of the first row block is the shifted value.
  for (const char* row : {"0    -       75         31", "1    1       62         13",
                          "7    0        8          0"})
    CHECK(r.out.find(row) != std::string::npos);
  const auto j = json_of("trace 31 75 --json");
  std::vector<long> shifted;
  for (const auto& row : j["rows"]) shifted.push_back(row["shifted"].get<long>());
  CHECK(shifted == std::vector<long>{75, 62, 52, 40, 24, 16, 8, 8});
  CHECK(json_of("trace 31 75 --convention greedy --json")["K"] == 6);
}

TEST_CASE("expand and eval") {
  CHECK(run("eval --exponents 1,2").out == "2/5 (P=4, Q=10, g=2, R=5)\n");
  CHECK(run("expand --rational 31/75").out == "1,2,2,1,0,0,0\n");
  CHECK(run("expand --rational 31/75 --depth 2").out == "1,2\n");
  CHECK(json_of("eval --exponents 1,2 --json")["R"] == 5);
  CHECK(json_of("expand --rational 2/5 --json")["exponents"] ==
        nlohmann::json::array({1, 1, 0}));
}

TEST_CASE("constants") {
  const Run r = run("constants");
  CHECK(r.code == 0);
  CHECK(r.out.find("\nD = 0.976936\n") != std::string::npos);
  CHECK(json_of("constants --json")["D"].get<double>() == doctest::Approx(0.97693608));
}

TEST_CASE("spectral subcommands") {
  const auto e = json_of("eigen --t 1 --v 0 --json");
  CHECK(std::abs(e["lambda"].get<double>() - 1.0) < 1e-8);
  const Run csv = run("eigen --t 1 --v 0 --grid 16 --csv");
  CHECK(csv.out.rfind("x,value\n", 0) == 0);
  const auto t = json_of("taylor --fd-step 1e-3 --json");
  CHECK(std::abs(t["A_est"].get<double>() - t["A_closed"].get<double>()) < 1e-3);
  CHECK(run("eigen --t 0.5 --v 1").code == 1);
}

TEST_CASE("experiment outputs") {
  const auto j = json_of("experiment --nmax 200 --exhaustive --json");
  CHECK(j["N"] == 200);
  CHECK(j["bound_violations"] == 0);
  const Run csv = run("experiment --nmax 70000 --samples 2000 --csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("N,mode,samples,cost,mean,stderr,ratio_to_K,theory,deviation\n", 0) == 0);
  const auto s = json_of("experiment --nmax 70000 --samples 2000 --json");
  CHECK(s["ladder"] == nlohmann::json::array({4375, 70000}));
  CHECK(json_of("dirichlet --s 2 --nmax 10000 --json")["deviation"].get<double>() < 1e-4);
  CHECK(json_of("worstcase --nmax 16 --json")["all_within_bounds"] == true);
  const auto c =
      json_of("conjecture --bits 96 --samples 300 --nmax 70000 --slope-samples 3000 --json");
  CHECK(c.contains("birkhoff_e2"));
  CHECK(c.contains("slope_rho"));
}

TEST_CASE("identical arguments give identical bytes") {
  for (const char* args :
       {"experiment --nmax 70000 --samples 5000 --seed 9",
        "conjecture --bits 80 --samples 200 --nmax 70000 --slope-samples 3000",
        "trace 1000 99999 --json"}) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  CHECK(run("experiment --nmax 70000 --samples 5000 --threads 1").out ==
        run("experiment --nmax 70000 --samples 5000 --threads 4").out);
  CHECK(run("experiment --nmax 70000 --samples 5000 --seed 1").out !=
        run("experiment --nmax 70000 --samples 5000 --seed 2").out);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("trace 31 75 --bogus").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("trace 75 31").code == 1);
  CHECK(run("trace abc 31").code == 1);
  CHECK(run("eval --exponents 1,x").code == 1);
  CHECK(run("experiment --nmax 200000 --exhaustive").code == 1);
  CHECK(run("dirichlet --s 0.5 --nmax 10").code == 1);
}
