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

#ifndef CLGCD_REPORT_HPP
#define CLGCD_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "clgcd/cl_core.hpp"
#include "clgcd/constants.hpp"
#include "clgcd/dynamics.hpp"
#include "clgcd/experiments.hpp"
#include "clgcd/spectral.hpp"

namespace clgcd {

using Json = nlohmann::ordered_json;

// Machine-readable views. Integers that overflow int64 are emitted as strings;
// an infinite valuation is the string "inf".
[[nodiscard]] Json to_json(const Trace& trace);
[[nodiscard]] Json to_json(const ContinuantPair& c);
[[nodiscard]] Json to_json(const CostVector& c);
[[nodiscard]] Json to_json(const ConstantsTable& t);
[[nodiscard]] Json to_json(const SpectralResult& r, bool with_eigenfunction = true);
[[nodiscard]] Json to_json(const TaylorEstimates& t);
[[nodiscard]] Json to_json(const BirkhoffReport& r);
[[nodiscard]] Json to_json(const ExperimentReport& r);
[[nodiscard]] Json to_json(const SlopeReport& r);
[[nodiscard]] Json to_json(const DirichletResult& r);
[[nodiscard]] Json to_json(const WorstCaseScan& s);
[[nodiscard]] Json to_json(const ConjectureResult& c);

// Aligned text tables.
[[nodiscard]] std::string format_trace(const Trace& trace);
[[nodiscard]] std::string format_constants(const ConstantsTable& t);
[[nodiscard]] std::string format_experiment(const ExperimentReport& r);
[[nodiscard]] std::string format_slopes(const SlopeReport& r);
[[nodiscard]] std::string format_worstcase(const WorstCaseScan& s);
[[nodiscard]] std::string format_conjecture(const ConjectureResult& c);

/// CSV with columns N,mode,samples,cost,mean,stderr,ratio_to_K,theory,deviation.
[[nodiscard]] std::string experiment_csv(const std::vector<ExperimentReport>& reports);

}  // namespace clgcd

#endif  // CLGCD_REPORT_HPP
