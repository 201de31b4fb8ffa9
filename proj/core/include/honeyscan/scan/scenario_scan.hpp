/*
   Copyright 2026 The Honeyscan Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <honeyscan/analyzer.hpp>
#include <honeyscan/mock/scenario.hpp>
#include <honeyscan/scan/scanner.hpp>

namespace honeyscan::scan {

struct PoolComparison {
    std::string name;
    PoolInfo pool;
    TrapSet expected;
    TrapSet detected;
    bool match{false};
};

struct ScenarioReport {
    std::string name;
    std::vector<PoolComparison> pools;
    std::vector<analyzer::PoolVerdict> verdicts;
    std::vector<ScanFailure> failures;
    bool all_match{false};
};

//! Runs the scenario on a fresh mock chain, then scans every pool the chain
//! reports as created over [1, head] with base tokens taken from the
//! scenario. `options.base_tokens` is replaced.
ScenarioReport simulate_scenario(const mock::Scenario& scenario, ScanOptions options = {},
                                 mock::ScenarioTrace* trace_out = nullptr, std::string* trace_jsonl = nullptr);

nlohmann::ordered_json to_json(const ScenarioReport& report);

}  // namespace honeyscan::scan
