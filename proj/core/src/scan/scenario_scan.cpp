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

#include <honeyscan/scan/scenario_scan.hpp>

#include <honeyscan/json.hpp>
#include <honeyscan/mock/mock_chain.hpp>

namespace honeyscan::scan {

ScenarioReport simulate_scenario(const mock::Scenario& scenario, ScanOptions options, mock::ScenarioTrace* trace_out,
                                 std::string* trace_jsonl) {
    mock::MockChain chain;
    const auto trace = mock::run_attack_script(chain, scenario);
    options.base_tokens = trace.base_tokens;
    options.checkpoint.clear();

    const BlockRange range{1, trace.head};
    const auto pools = monitor::discover_pools(chain, range);
    ScenarioReport report;
    report.name = scenario.name;
    auto result = scan_pools(chain, pools, range, options);
    report.verdicts = std::move(result.verdicts);
    report.failures = std::move(result.failures);

    report.all_match = report.failures.empty();
    for (const auto& outcome : trace.pools) {
        PoolComparison cmp;
        cmp.name = outcome.name;
        cmp.pool = outcome.info;
        cmp.expected = outcome.ground_truth;
        for (const auto& v : report.verdicts) {
            if (v.pool.pool == outcome.info.pool) cmp.detected = v.traps;
        }
        cmp.match = cmp.expected == cmp.detected;
        report.all_match = report.all_match && cmp.match;
        report.pools.push_back(std::move(cmp));
    }
    if (trace_out != nullptr) *trace_out = trace;
    if (trace_jsonl != nullptr) *trace_jsonl = mock::export_trace(chain, trace);
    return report;
}

nlohmann::ordered_json to_json(const ScenarioReport& report) {
    nlohmann::ordered_json j;
    j["scenario"] = report.name;
    j["all_match"] = report.all_match;
    j["pools"] = nlohmann::ordered_json::array();
    for (const auto& p : report.pools) {
        nlohmann::ordered_json row;
        row["name"] = p.name;
        row["pool"] = p.pool.pool;
        row["expected"] = p.expected;
        row["detected"] = p.detected;
        row["match"] = p.match;
        j["pools"].push_back(std::move(row));
    }
    j["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : report.verdicts) j["verdicts"].push_back(analyzer::to_json(v));
    j["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : report.failures) j["failures"].push_back({{"pool", f.pool.pool.to_hex()}, {"error", f.error}});
    return j;
}

}  // namespace honeyscan::scan
