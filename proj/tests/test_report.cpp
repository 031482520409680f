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

#include "clgcd/report.hpp"

using namespace clgcd;

TEST_SUITE("report") {
  TEST_CASE("trace json columns") {
    const Json j = to_json(cl_run(31, 75));
    CHECK(j["convention"] == "canonical");
    CHECK(j["K"] == 7);
    CHECK(j["S"] == 6);
    const Json& rows = j["rows"];
    REQUIRE(rows.size() == 8);
    CHECK(rows[0]["a_i"].is_null());
    CHECK(rows[0]["shifted"] == 75);
    CHECK(rows[1]["a_i"] == 1);
    CHECK(rows[7]["remainder"] == 0);
    CHECK(rows[7]["val_remainder"] == "inf");
    CHECK(rows[7]["val_gcd"] == 3);
    CHECK(Json::parse(j.dump()) == j);
  }

  TEST_CASE("big integers fall back to strings") {
    BigInt q = 1;
    mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), 100);
    q -= 1;
    const Json j = to_json(cl_run(1, q));
    CHECK(j["q"] == q.get_str());
    CHECK(j["rows"][0]["shifted"].is_string());
  }

  TEST_CASE("text trace") {
    const std::string text = format_trace(cl_run(31, 75));
    CHECK(text.find("shifted") != std::string::npos);
    CHECK(text.find("inf") != std::string::npos);
    CHECK(text.find("exponents = (1,2,2,1,0,0,0)") != std::string::npos);
  }

  TEST_CASE("constants table") {
    const std::string text = format_constants(m_table());
    CHECK(text.find("D = 0.976936\n") != std::string::npos);
    CHECK(text.find("conjectured") != std::string::npos);
    const Json j = to_json(m_table());
    CHECK(j["M"]["rho"].get<double>() == doctest::Approx(1.26071).epsilon(1e-5));
  }

  TEST_CASE("experiment csv") {
    const ExperimentReport r = mean_costs({50, OmegaMode::exhaustive, 0, 0, false});
    const std::string csv = experiment_csv({r});
    CHECK(csv.rfind("N,mode,samples,cost,mean,stderr,ratio_to_K,theory,deviation\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(kCostCount));
    CHECK(csv.find("50,exhaustive,773,K,") != std::string::npos);
    const Json j = to_json(r);
    CHECK(j["samples"] == 773);
    CHECK(j["means"]["K"]["mean"].get<double>() == doctest::Approx(r.mean("K")));
  }
}
