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


#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>
#include <httplib.h>

#include <honeyscan/json.hpp>
#include <honeyscan/mock/corpus.hpp>
#include <honeyscan/mock/mock_chain.hpp>
#include <honeyscan/mock/scenario.hpp>
#include <honeyscan/monitor.hpp>
#include <honeyscan/scan/report.hpp>
#include <honeyscan/scan/scanner.hpp>

#include "cli.hpp"
#include "support/mock_node.hpp"

namespace honeyscan {
namespace {

namespace fs = std::filesystem;

const fs::path kSource{HONEYSCAN_SOURCE_DIR};

struct Run {
    int code{0};
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "honeyscan");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
  public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("honeyscan_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    [[nodiscard]] fs::path operator/(const std::string& name) const { return path_ / name; }
    [[nodiscard]] const fs::path& path() const { return path_; }

  private:
    static inline int counter_ = 0;
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in{p, std::ios::binary};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string total_line(const std::string& table) {
    std::istringstream in{table};
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("Total", 0) == 0) return line.substr(line.find_last_of(' ') + 1);
    }
    return {};
}

TEST(Cli, SimulateOwnerDrainMatches) {
    TempDir tmp;
    const auto r = run_cli({"simulate", (kSource / "scenarios/owner_drain.json").string(), "--out",
                            (tmp / "report.json").string(), "--trace", (tmp / "trace.jsonl").string()});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    const auto report = nlohmann::json::parse(slurp(tmp / "report.json"));
    EXPECT_TRUE(report.at("all_match").get<bool>());
    EXPECT_EQ(report.at("pools").at(0).at("detected"), nlohmann::json::array({"UnauthorizedTransfer"}));
    EXPECT_FALSE(slurp(tmp / "trace.jsonl").empty());
}

TEST(Cli, SimulateHonestIsClean) {
    const auto r = run_cli({"simulate", (kSource / "scenarios/honest.json").string()});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("expected - detected -"), std::string::npos);
}

TEST(Cli, SimulateExitCodes) {
    TempDir tmp;
    std::ofstream{tmp / "bad.json"} << "{\n  \"schema\": \"honeyscan.scenario/v1\",\n  \"name\": oops\n}\n";
    const auto bad = run_cli({"simulate", (tmp / "bad.json").string()});
    EXPECT_EQ(bad.code, cli::kExitUsage);
    EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
    EXPECT_NE(bad.err.find("column"), std::string::npos) << bad.err;

    EXPECT_EQ(run_cli({"simulate", (tmp / "missing.json").string()}).code, cli::kExitRuntime);
    EXPECT_EQ(run_cli({"simulate"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);

    // A wrong label turns the comparison into a mismatch.
    auto doc = nlohmann::json::parse(slurp(kSource / "scenarios/honest.json"));
    doc["expected"]["main"] = nlohmann::json::array({"InvalidBuy"});
    std::ofstream{tmp / "wrong.json"} << doc.dump();
    const auto wrong = run_cli({"simulate", (tmp / "wrong.json").string()});
    EXPECT_EQ(wrong.code, cli::kExitMismatch);
    EXPECT_NE(wrong.out.find("MISMATCH"), std::string::npos);
}

TEST(Cli, GenCorpusIsDeterministic) {
    TempDir a, b;
    ASSERT_EQ(run_cli({"gen-corpus", "--n", "9", "--seed", "7", "--out-dir", a.path().string()}).code, cli::kExitOk);
    ASSERT_EQ(run_cli({"gen-corpus", "--n", "9", "--seed", "7", "--out-dir", b.path().string()}).code, cli::kExitOk);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator{a.path()}) {
        ++files;
        EXPECT_EQ(slurp(e.path()), slurp(b.path() / e.path().filename())) << e.path();
    }
    EXPECT_EQ(files, 10u);  // nine scenarios and the manifest
    for (const auto& e : fs::directory_iterator{a.path()}) {
        if (e.path().filename() == "manifest.json") continue;
        EXPECT_EQ(run_cli({"simulate", e.path().string()}).code, cli::kExitOk) << e.path();
    }

    TempDir one;
    ASSERT_EQ(run_cli({"gen-corpus", "--n", "1", "--out-dir", one.path().string()}).code, cli::kExitOk);
    EXPECT_EQ(std::distance(fs::directory_iterator{one.path()}, fs::directory_iterator{}), 2);
    EXPECT_EQ(run_cli({"gen-corpus", "--n", "0", "--out-dir", one.path().string()}).code, cli::kExitUsage);
    std::ofstream{one / "file"} << "x";
    EXPECT_EQ(run_cli({"gen-corpus", "--n", "2", "--out-dir", (one / "file" / "sub").string()}).code,
              cli::kExitRuntime);
}

TEST(Cli, ScanSmokeSummary) {
    TempDir tmp;
    const auto r = run_cli({"scan", "--mode", "sim", "--scenario", (kSource / "scenarios/smoke10.json").string(),
                            "--out", (tmp / "v.jsonl").string(), "--workers", "3"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(total_line(r.out), "7/10");
    std::istringstream lines{slurp(tmp / "v.jsonl")};
    std::size_t n = 0;
    for (std::string line; std::getline(lines, line); ++n) {
        EXPECT_NO_THROW(analyzer::verdict_from_json(nlohmann::json::parse(line)));
    }
    EXPECT_EQ(n, 10u);

    const auto csv = run_cli({"scan", "--scenario", (kSource / "scenarios/smoke10.json").string(), "--format", "csv",
                              "--out", (tmp / "v.csv").string()});
    ASSERT_EQ(csv.code, cli::kExitOk);
    std::istringstream rows{slurp(tmp / "v.csv")};
    std::string header;
    std::getline(rows, header);
    EXPECT_EQ(header, scan::csv_header());
}

TEST(Cli, ScanEmptySelection) {
    const auto r = run_cli({"scan", "--scenario", (kSource / "scenarios/smoke10.json").string(), "--from-block", "1",
                            "--to-block", "1", "--out", "-"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(total_line(r.out), "0/0");
}

TEST(Cli, ScanSampleAndPoolList) {
    const std::string scenario = (kSource / "scenarios/smoke10.json").string();
    TempDir tmp;
    const auto sampled = run_cli({"scan", "--scenario", scenario, "--sample", "4", "--seed", "3", "--out",
                                  (tmp / "s.jsonl").string()});
    ASSERT_EQ(sampled.code, cli::kExitOk) << sampled.err;
    EXPECT_EQ(total_line(sampled.out).substr(total_line(sampled.out).find('/')), "/4");

    std::istringstream lines{slurp(tmp / "s.jsonl")};
    std::string first;
    std::getline(lines, first);
    const std::string pool = nlohmann::json::parse(first).at("pool").get<std::string>();
    std::ofstream{tmp / "pools.txt"} << "# one pool\n" << pool << "\n\n";
    const auto listed = run_cli({"scan", "--scenario", scenario, "--pools", (tmp / "pools.txt").string(), "--out",
                                 (tmp / "p.jsonl").string()});
    ASSERT_EQ(listed.code, cli::kExitOk) << listed.err;
    EXPECT_EQ(slurp(tmp / "p.jsonl"), first + "\n");
    const auto csv_list = run_cli({"scan", "--scenario", scenario, "--pools", pool + "," + pool, "--out", "-"});
    EXPECT_EQ(csv_list.code, cli::kExitOk);
    EXPECT_EQ(total_line(csv_list.out).substr(total_line(csv_list.out).find('/')), "/2");
}

TEST(Cli, ScanUsageErrors) {
    const std::string scenario = (kSource / "scenarios/smoke10.json").string();
    EXPECT_EQ(run_cli({"scan", "--scenario", scenario, "--threshold", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"scan", "--scenario", scenario, "--threshold", "0"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"scan", "--scenario", scenario, "--sample", "0"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"scan", "--scenario", scenario, "--format", "xml"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"scan", "--scenario", scenario, "--from-block", "9", "--to-block", "3"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"scan", "--scenario", scenario, "--pools", "0x12"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"scan", "--mode", "sim"}).code, cli::kExitUsage);
    ::unsetenv(rpc::kRpcUrlEnv);
    EXPECT_EQ(run_cli({"scan", "--mode", "live"}).code, cli::kExitUsage);
}

// Resume correctness: a scan interrupted at arbitrary points and resumed
// from its checkpoint reports the same verdicts as an uninterrupted scan.
TEST(Resume, InterruptedScanMatchesUninterrupted) {
    for (const auto& entry : mock::generate_corpus(14, 77)) {
        mock::MockChain chain;
        const auto trace = mock::run_attack_script(chain, entry.scenario);
        const BlockRange range{1, trace.head};
        const auto pools = monitor::discover_pools(chain, range);
        scan::ScanOptions options;
        options.base_tokens = trace.base_tokens;
        options.workers = 2;
        const auto whole = scan::scan_pools(chain, pools, range, options);

        TempDir tmp;
        options.checkpoint = tmp / "ckpt.json";
        options.checkpoint_every = 3;
        std::size_t rounds = 0;
        scan::ScanResult last;
        for (std::size_t budget = 5;; budget += 7) {
            std::atomic<std::size_t> polls{0};
            options.stop_requested = [&polls, budget] { return polls.fetch_add(1) >= budget; };
            std::vector<std::string> streamed;
            last = scan::scan_pools(chain, pools, range, options,
                                    [&](const analyzer::PoolVerdict& v) { streamed.push_back(scan::verdict_line(v)); });
            ++rounds;
            if (!last.interrupted) {
                ASSERT_EQ(streamed.size(), last.verdicts.size());
                break;
            }
            ASSERT_TRUE(fs::exists(options.checkpoint));
            ASSERT_LT(rounds, 200u) << entry.file_name;
        }
        EXPECT_GT(rounds, 1u) << entry.file_name;
        ASSERT_EQ(last.verdicts.size(), whole.verdicts.size()) << entry.file_name;
        for (std::size_t i = 0; i < whole.verdicts.size(); ++i) {
            EXPECT_EQ(scan::verdict_line(last.verdicts[i]), scan::verdict_line(whole.verdicts[i])) << entry.file_name;
        }
    }
}

TEST(Resume, ForeignCheckpointIsIgnoredAndCorruptOneRejected) {
    mock::MockChain chain;
    const auto trace = mock::run_attack_script(chain, mock::generate_corpus(1, 5).at(0).scenario);
    const BlockRange range{1, trace.head};
    const auto pools = monitor::discover_pools(chain, range);
    TempDir tmp;
    scan::ScanOptions options;
    options.base_tokens = trace.base_tokens;
    options.checkpoint = tmp / "ckpt.json";
    std::ofstream{options.checkpoint} << R"({"schema":"honeyscan.checkpoint/v1","fingerprint":"other",)"
                                      << R"("completed":[],"failed":[],"in_progress":[]})";
    EXPECT_EQ(scan::scan_pools(chain, pools, range, options).verdicts.size(), pools.size());
    std::ofstream{options.checkpoint, std::ios::trunc} << "{not json";
    EXPECT_THROW(scan::scan_pools(chain, pools, range, options), Error);
}

//! Serves a MockNodeTransport over HTTP on localhost, optionally failing
//! requests chosen by `fault`.
class HttpNode {
  public:
    using Fault = std::function<int(std::size_t n, const nlohmann::json& request)>;

    HttpNode(const mock::MockChain& chain, Fault fault) : node_{chain}, fault_{std::move(fault)} {
        server_.Post("/", [this](const httplib::Request& req, httplib::Response& res) {
            std::lock_guard lock{mutex_};
            const auto payload = nlohmann::json::parse(req.body);
            if (const int status = fault_ ? fault_(count_++, payload) : 0; status != 0) {
                res.status = status;
                res.set_content("injected", "text/plain");
                return;
            }
            res.set_content(node_.send(payload).dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread{[this] { server_.listen_after_bind(); }};
        server_.wait_until_ready();
    }
    ~HttpNode() {
        server_.stop();
        thread_.join();
    }
    [[nodiscard]] std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/"; }

  private:
    testing::MockNodeTransport node_;
    Fault fault_;
    httplib::Server server_;
    std::mutex mutex_;
    std::size_t count_{0};
    int port_{0};
    std::thread thread_;
};

fs::path write_live_config(const TempDir& tmp, const mock::ScenarioTrace& trace, unsigned retries) {
    auto config = testing::mock_node_config();
    config.endpoint.url.clear();
    config.endpoint.retries = retries;
    config.endpoint.backoff = std::chrono::milliseconds{1};
    config.endpoint.request_timeout = std::chrono::milliseconds{5000};
    config.contracts.weth = trace.tokens.at("WETH");
    auto j = rpc::to_json(config);
    const auto path = tmp / "node.json";
    std::ofstream{path} << j.dump(2);
    return path;
}

TEST(LiveScan, OverHttpMatchesSimulation) {
    const auto scenario_path = kSource / "scenarios/smoke10.json";
    mock::MockChain chain;
    const auto trace = mock::run_attack_script(chain, mock::load_scenario(scenario_path));
    HttpNode node{chain, {}};
    TempDir tmp;
    const auto config = write_live_config(tmp, trace, 0);

    const auto sim = run_cli({"scan", "--scenario", scenario_path.string(), "--out", (tmp / "sim.jsonl").string()});
    ASSERT_EQ(sim.code, cli::kExitOk) << sim.err;
    const auto live = run_cli({"scan", "--mode", "live", "--config", config.string(), "--rpc-url", node.url(), "--out",
                               (tmp / "live.jsonl").string()});
    ASSERT_EQ(live.code, cli::kExitOk) << live.err;
    EXPECT_EQ(total_line(live.out), "7/10");
    EXPECT_EQ(slurp(tmp / "live.jsonl"), slurp(tmp / "sim.jsonl"));
    EXPECT_NE(live.err.find("eth_callMany available"), std::string::npos) << live.err;

    ::setenv(rpc::kRpcUrlEnv, node.url().c_str(), 1);
    const auto via_env = run_cli({"scan", "--mode", "live", "--config", config.string(), "--out", "-"});
    ::unsetenv(rpc::kRpcUrlEnv);
    EXPECT_EQ(via_env.code, cli::kExitOk) << via_env.err;
}

TEST(LiveScan, TransientFaultsAreRetried) {
    const auto scenario_path = kSource / "scenarios/smoke10.json";
    mock::MockChain chain;
    const auto trace = mock::run_attack_script(chain, mock::load_scenario(scenario_path));
    HttpNode node{chain, [](std::size_t n, const nlohmann::json&) { return n % 3 == 1 ? 503 : 0; }};
    TempDir tmp;
    const auto config = write_live_config(tmp, trace, 3);
    const auto r = run_cli({"scan", "--mode", "live", "--config", config.string(), "--rpc-url", node.url(), "--out", "-"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(total_line(r.out), "7/10");
}

TEST(LiveScan, DeadEndpointExitsWithRuntimeError) {
    mock::MockChain chain;
    const auto trace = mock::run_attack_script(chain, mock::load_scenario(kSource / "scenarios/honest.json"));
    HttpNode node{chain, [](std::size_t, const nlohmann::json&) { return 500; }};
    TempDir tmp;
    const auto config = write_live_config(tmp, trace, 2);
    const auto r = run_cli({"scan", "--mode", "live", "--config", config.string(), "--rpc-url", node.url()});
    EXPECT_EQ(r.code, cli::kExitRuntime);
    EXPECT_NE(r.err.find("HTTP 500"), std::string::npos) << r.err;
}

TEST(LiveScan, PerPoolFailuresAreCountedNotFatal) {
    const auto scenario_path = kSource / "scenarios/smoke10.json";
    mock::MockChain chain;
    const auto trace = mock::run_attack_script(chain, mock::load_scenario(scenario_path));
    const std::string victim_pool = trace.pools.at(2).info.pool.to_hex();
    // Every log query naming one pool fails for good.
    HttpNode node{chain, [victim_pool](std::size_t, const nlohmann::json& payload) {
                      return payload.dump().find(victim_pool) != std::string::npos &&
                                     payload.dump().find("eth_getLogs") != std::string::npos
                                 ? 502
                                 : 0;
                  }};
    TempDir tmp;
    const auto config = write_live_config(tmp, trace, 1);
    const auto r = run_cli({"scan", "--mode", "live", "--config", config.string(), "--rpc-url", node.url(), "--out",
                            (tmp / "v.jsonl").string()});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(total_line(r.out), "6/9");
    EXPECT_NE(r.out.find("Failed"), std::string::npos);
    EXPECT_NE(r.err.find(victim_pool), std::string::npos);
}

}  // namespace
}  // namespace honeyscan
