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


#include "cli.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <honeyscan/json.hpp>
#include <honeyscan/mock/corpus.hpp>
#include <honeyscan/mock/mock_chain.hpp>
#include <honeyscan/mock/scenario.hpp>
#include <honeyscan/monitor.hpp>
#include <honeyscan/rpc/config.hpp>
#include <honeyscan/rpc/rpc_chain.hpp>
#include <honeyscan/rpc/transport.hpp>
#include <honeyscan/scan/report.hpp>
#include <honeyscan/scan/scanner.hpp>
#include <honeyscan/scan/scenario_scan.hpp>

namespace honeyscan::cli {
namespace {

std::atomic<bool> g_stop{false};

//! Usage problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimulateArgs {
    std::string scenario;
    std::string out;
    std::string trace;
    std::uint64_t interval{1};
    std::string threshold{"1/2"};
};

struct CorpusArgs {
    std::size_t n{200};
    std::uint64_t seed{7};
    std::string out_dir;
};

struct ScanArgs {
    std::string mode{"sim"};
    std::string scenario;
    std::string config;
    std::string rpc_url;
    std::optional<BlockNumber> from_block;
    std::optional<BlockNumber> to_block;
    std::string pools;
    std::optional<std::size_t> sample;
    std::uint64_t seed{0};
    std::uint64_t interval{1};
    std::string threshold{"1/2"};
    std::string out;
    std::string format{"jsonl"};
    std::string checkpoint;
    unsigned workers{1};
};

Rational parse_threshold(const std::string& text) {
    Rational r;
    try {
        r = Rational::parse(text);
    } catch (const Error& e) {
        throw UsageError{"--threshold: " + std::string{e.what()}};
    }
    if (r.is_zero() || r >= Rational{1, 1}) throw UsageError{"--threshold must lie strictly between 0 and 1"};
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f{path, std::ios::binary | std::ios::trunc};
    if (!f) throw Error{Errc::io, "cannot open " + path + " for writing"};
    f << text;
    if (!f.flush()) throw Error{Errc::io, "write to " + path + " failed"};
}

std::string read_file(const std::string& path) {
    std::ifstream f{path, std::ios::binary};
    if (!f) throw Error{Errc::io, "cannot read " + path};
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string join(const TrapSet& traps) {
    if (traps.empty()) return "-";
    std::string s;
    for (auto t : traps) {
        if (!s.empty()) s += ',';
        s += to_string(t);
    }
    return s;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const auto scenario = mock::load_scenario(a.scenario);
    scan::ScanOptions options;
    options.interval = a.interval;
    options.threshold = parse_threshold(a.threshold);

    std::string trace;
    const auto report =
        scan::simulate_scenario(scenario, options, nullptr, a.trace.empty() ? nullptr : &trace);
    if (!a.out.empty()) write_file(a.out, scan::to_json(report).dump(2) + "\n");
    if (!a.trace.empty()) write_file(a.trace, trace);

    for (const auto& p : report.pools) {
        out << (p.match ? "match    " : "MISMATCH ") << p.name << ' ' << p.pool.pool.to_hex() << " expected "
            << join(p.expected) << " detected " << join(p.detected) << '\n';
    }
    for (const auto& f : report.failures) out << "failed   " << f.pool.pool.to_hex() << ": " << f.error << '\n';
    out << report.name << ": " << (report.all_match ? "all pools match" : "mismatch") << '\n';
    return report.all_match ? kExitOk : kExitMismatch;
}

int cmd_gen_corpus(const CorpusArgs& a, std::ostream& out) {
    const auto corpus = mock::generate_corpus(a.n, a.seed);
    mock::write_corpus(corpus, a.out_dir);
    out << "wrote " << corpus.size() << " scenarios to " << a.out_dir << '\n';
    return kExitOk;
}

//! A path that exists is read as one address per line ('#' starts a
//! comment); anything else is a comma-separated list.
std::vector<Address> parse_pool_list(const std::string& list) {
    std::vector<std::string> items;
    std::error_code ec;
    if (std::filesystem::is_regular_file(list, ec)) {
        std::istringstream in{read_file(list)};
        for (std::string line; std::getline(in, line);) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            items.push_back(line);
        }
    } else {
        std::istringstream in{list};
        for (std::string item; std::getline(in, item, ',');) items.push_back(item);
    }
    std::vector<Address> out;
    for (auto& s : items) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = s.find_last_not_of(" \t\r");
        try {
            out.push_back(Address::from_hex(s.substr(b, e - b + 1)));
        } catch (const Error& err) {
            throw UsageError{"--pools: " + std::string{err.what()}};
        }
    }
    return out;
}

class ReportWriter {
  public:
    ReportWriter(const std::string& path, scan::ReportFormat format, std::ostream& fallback)
        : format_{format}, fallback_{&fallback} {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
            if (!*file_) throw Error{Errc::io, "cannot open " + path + " for writing"};
        }
        if (format_ == scan::ReportFormat::Csv) stream() << scan::csv_header() << '\n';
        stream().flush();
    }

    void operator()(const analyzer::PoolVerdict& v) {
        stream() << (format_ == scan::ReportFormat::Csv ? scan::csv_row(v) : scan::verdict_line(v)) << '\n';
        stream().flush();
    }

  private:
    std::ostream& stream() { return file_ ? *file_ : *fallback_; }

    scan::ReportFormat format_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* fallback_;
};

int cmd_scan(ScanArgs a, std::ostream& out, std::ostream& err) {
    scan::ScanOptions options;
    options.interval = a.interval;
    options.threshold = parse_threshold(a.threshold);
    options.workers = a.workers;
    if (a.checkpoint.empty()) {
        if (const char* env = std::getenv(rpc::kCheckpointEnv); env != nullptr && *env != '\0') a.checkpoint = env;
    }
    options.checkpoint = a.checkpoint;
    options.stop_requested = [] { return g_stop.load(); };
    const auto format = scan::parse_report_format(a.format);

    std::unique_ptr<mock::MockChain> mock_chain;
    std::unique_ptr<rpc::RpcChain> rpc_chain;
    const ChainView* chain = nullptr;

    if (a.mode == "sim") {
        if (a.scenario.empty()) throw UsageError{"--mode sim needs --scenario <file>"};
        const auto scenario = mock::load_scenario(a.scenario);
        mock_chain = std::make_unique<mock::MockChain>();
        const auto trace = mock::run_attack_script(*mock_chain, scenario);
        options.base_tokens = trace.base_tokens;
        chain = mock_chain.get();
    } else if (a.mode == "live") {
        auto config = a.config.empty() ? rpc::RpcConfig{} : rpc::load_rpc_config(a.config);
        rpc::apply_env(config);
        if (!a.rpc_url.empty()) config.endpoint.url = a.rpc_url;
        if (config.endpoint.url.empty()) {
            throw UsageError{"--mode live needs --rpc-url, a config url or " + std::string{rpc::kRpcUrlEnv}};
        }
        config.endpoint.validate();
        options.base_tokens = {config.contracts.weth};
        auto transport = std::make_shared<rpc::HttpTransport>(config.endpoint.url, config.endpoint.request_timeout);
        rpc_chain = std::make_unique<rpc::RpcChain>(transport, config);
        const auto caps = rpc_chain->probe();
        err << "endpoint " << config.endpoint.url << ": "
            << (caps.call_many ? "eth_callMany available" : "eth_callMany unavailable, using per-call fallback")
            << (caps.detail.empty() ? "" : " (" + caps.detail + ")") << '\n';
        chain = rpc_chain.get();
    } else {
        throw UsageError{"--mode must be sim or live"};
    }

    const BlockNumber head = chain->head();
    const BlockRange range{a.from_block.value_or(1), a.to_block.value_or(head)};
    if (range.from > range.to) throw UsageError{"--from-block is after --to-block"};
    if (range.to > head) throw UsageError{"--to-block " + std::to_string(range.to) + " is past head " + std::to_string(head)};

    std::vector<PoolInfo> pools;
    if (!a.pools.empty()) {
        const auto wanted = parse_pool_list(a.pools);
        if (rpc_chain) {
            for (const auto& addr : wanted) pools.push_back(rpc_chain->pool_info(addr));
        } else {
            const auto known = monitor::discover_pools(*chain, BlockRange{1, head});
            for (const auto& addr : wanted) {
                auto it = std::find_if(known.begin(), known.end(), [&](const PoolInfo& p) { return p.pool == addr; });
                if (it == known.end()) throw Error{Errc::unknown_pool, "pool " + addr.to_hex() + " not in scenario"};
                pools.push_back(*it);
            }
        }
    } else {
        pools = monitor::discover_pools(*chain, range);
    }
    if (a.sample) pools = scan::select_pools(std::move(pools), *a.sample, a.seed);
    err << "scanning " << pools.size() << " pools over blocks " << range.from << ".." << range.to << '\n';

    ReportWriter writer{a.out, format, out};
    const auto result = scan::scan_pools(*chain, pools, range, options, std::ref(writer));
    for (const auto& f : result.failures) err << "pool " << f.pool.pool.to_hex() << " failed: " << f.error << '\n';

    out << scan::format_summary(scan::summarize(result.verdicts, result.failures.size()));
    if (result.interrupted) {
        err << "interrupted; checkpoint saved to " << options.checkpoint.string() << '\n';
        return kExitInterrupted;
    }
    return kExitOk;
}

}  // namespace

void request_stop() noexcept { g_stop.store(true); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    g_stop.store(false);
    CLI::App app{"Honeypot trap detector for AMM pools", "honeyscan"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "honeyscan 0.1.0");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run a scenario on the mock chain and compare verdicts with its labels");
    simulate->add_option("scenario", sim.scenario, "Scenario JSON file")->required();
    simulate->add_option("--out", sim.out, "Write the JSON report here");
    simulate->add_option("--trace", sim.trace, "Write the JSON-lines event trace here");
    simulate->add_option("--interval", sim.interval, "Blocks between detection rounds")->check(CLI::PositiveNumber);
    simulate->add_option("--threshold", sim.threshold, "Loss threshold as a ratio, e.g. 1/2");

    CorpusArgs corpus;
    auto* gen = app.add_subcommand("gen-corpus", "Generate a labelled scenario corpus");
    gen->add_option("--n", corpus.n, "Number of scenarios")->check(CLI::PositiveNumber);
    gen->add_option("--seed", corpus.seed, "Generator seed");
    gen->add_option("--out-dir", corpus.out_dir, "Output directory")->required();

    ScanArgs sc;
    auto* scan = app.add_subcommand("scan", "Scan pools over a block range and report verdicts");
    scan->add_option("--mode", sc.mode, "sim (scenario-backed mock chain) or live (JSON-RPC node)")
        ->check(CLI::IsMember({"sim", "live"}));
    scan->add_option("--scenario", sc.scenario, "Scenario file for --mode sim");
    scan->add_option("--config", sc.config, "Endpoint config JSON for --mode live");
    scan->add_option("--rpc-url", sc.rpc_url, "Endpoint URL; overrides config and environment");
    scan->add_option("--from-block", sc.from_block, "First block (default 1)");
    scan->add_option("--to-block", sc.to_block, "Last block (default head)");
    scan->add_option("--pools", sc.pools, "Pool addresses: a file with one per line or a comma-separated list");
    scan->add_option("--sample", sc.sample, "Scan a random sample of this many pools")->check(CLI::PositiveNumber);
    scan->add_option("--seed", sc.seed, "Sampling seed");
    scan->add_option("--interval", sc.interval, "Blocks between detection rounds")->check(CLI::PositiveNumber);
    scan->add_option("--threshold", sc.threshold, "Loss threshold as a ratio, e.g. 1/2");
    scan->add_option("--out", sc.out, "Verdict output path (default stdout)");
    scan->add_option("--format", sc.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
    scan->add_option("--checkpoint", sc.checkpoint, "Checkpoint file; an existing one is resumed");
    scan->add_option("--workers", sc.workers, "Concurrent pool pipelines")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim, out);
        if (*gen) return cmd_gen_corpus(corpus, out);
        return cmd_scan(sc, out, err);
    } catch (const mock::ScenarioError& e) {
        err << "error: ";
        const std::string& path = *simulate ? sim.scenario : sc.scenario;
        if (!path.empty()) err << path << ": ";
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == Errc::schema ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace honeyscan::cli
