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

#include <honeyscan/scan/scanner.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <honeyscan/core/keccak.hpp>
#include <honeyscan/json.hpp>
#include <honeyscan/simulator.hpp>

namespace honeyscan::scan {

using analyzer::Finding;
using analyzer::PoolVerdict;
using nlohmann::json;
using nlohmann::ordered_json;

Address default_probe_account() {
    static const Address probe = [] {
        const auto h = keccak256(std::string_view{"honeyscan.probe-account"});
        return Address::from_span(ByteView{h.bytes()}.subspan(12));
    }();
    return probe;
}

PoolScanner::PoolScanner(const ChainView& chain, const PoolInfo& pool, BlockRange range, const ScanOptions& options)
    : chain_{&chain}, options_{options}, pool_{pool}, range_{range} {
    if (options_.interval == 0) throw Error{Errc::invalid_argument, "round interval must be at least 1"};
    if (options_.threshold.is_zero() || !options_.threshold.below_one()) {
        throw Error{Errc::invalid_argument, "threshold must be in (0, 1)"};
    }
    range_.from = std::max(range.from, pool.created_at);
    next_ = range_.from;
    for (const auto& trap : monitor::trap_candidates(pool, options_.base_tokens)) {
        watches_.push_back(monitor::make_watch(pool, trap, range_.from));
    }
}

void PoolScanner::step() {
    if (done()) return;
    const BlockNumber block = next_;
    for (auto& w : watches_) monitor::ingest_block(w, *chain_, block);
    const bool due = (block - range_.from) % options_.interval == 0 || block == range_.to;
    if (due) round(block);
    ++next_;
}

PoolVerdict PoolScanner::run() {
    while (!done()) step();
    return verdict();
}

PoolVerdict PoolScanner::verdict() const {
    BlockRange scanned = range_;
    if (next_ <= range_.to) scanned.to = next_ == 0 ? 0 : next_ - 1;
    return analyzer::classify_pool(pool_, findings_, scanned, options_.review_allowlist);
}

void PoolScanner::add(std::optional<Finding> finding) {
    if (!finding) return;
    if (!flagged_.emplace(finding->trap, finding->subject).second) return;
    findings_.push_back(std::move(*finding));
}

void PoolScanner::round(BlockNumber block) {
    rounds_.push_back(block);
    for (auto& w : watches_) round_for(w, block);
}

void PoolScanner::round_for(monitor::PoolWatch& watch, BlockNumber block) {
    const Rational& threshold = options_.threshold;

    // Unauthorized transfers need only the ledger, not liquidity.
    for (const auto& address : watch.buyer_order) {
        const auto& ledger = watch.buyers.at(address);
        const Key key{watch.trap_token, address};
        auto [it, inserted] = ut_checked_.try_emplace(key, ledger.first_snapshot_block());
        if (it->second >= block) continue;
        if (!flagged_.contains({TrapType::UnauthorizedTransfer, address})) {
            add(analyzer::check_unauthorized_transfer(ledger, it->second, block, threshold));
        }
        it->second = block;
    }

    if (!watch.liquid_at(block)) return;

    // Sell simulations for every buyer still holding the token.
    for (const auto& address : watch.buyer_order) {
        const auto& ledger = watch.buyers.at(address);
        const auto* snap = ledger.snapshot_at(block);
        if (snap == nullptr || snap->balance.is_zero()) continue;
        const auto bundle = sim::build_sell_bundle(*chain_, address, watch.pool, watch.trap_token, snap->balance, block);
        const auto result = sim::run(*chain_, bundle);
        auto& streak = revert_streaks_[Key{watch.trap_token, address}];
        if (result.sell_reverted) {
            streak.push_back(analyzer::SellAttempt{block, true});
            if (!flagged_.contains({TrapType::CannotSell, address})) {
                add(analyzer::check_cannot_sell(watch.pool.pool, address, streak));
            }
        } else {
            streak.clear();
            add(analyzer::check_invalid_sell(result, threshold));
        }
    }

    // Buy probe, then buy-and-sell with the amount the probe received.
    const Reserves& reserves = watch.reserves.at(block);
    const TokenAmount& base_reserve = watch.base_token == watch.pool.token_x ? reserves.x : reserves.y;
    const TokenAmount buy_amount = sim::probe_size(base_reserve, options_.probe_fraction);
    const auto probe = sim::run(
        *chain_, sim::build_buy_probe(*chain_, options_.probe_account, watch.pool, watch.trap_token, buy_amount, block));
    if (probe.buy_reverted) return;
    add(analyzer::check_invalid_buy(probe, threshold));
    const SignedAmount received = probe.delta();
    if (received.negative || received.is_zero()) return;
    const auto buy_sell = sim::run(*chain_, sim::build_buy_sell_bundle(*chain_, probe));
    add(analyzer::check_invalid_sell(buy_sell, threshold));
}

ordered_json PoolScanner::state() const {
    ordered_json j;
    j["pool"] = pool_;
    j["range"] = range_;
    j["next"] = next_;
    j["watches"] = ordered_json::array();
    for (const auto& w : watches_) j["watches"].push_back(monitor::to_json(w));
    j["findings"] = ordered_json::array();
    for (const auto& f : findings_) j["findings"].push_back(analyzer::to_json(f));
    auto& streaks = j["revert_streaks"] = ordered_json::array();
    for (const auto& [key, attempts] : revert_streaks_) {
        ordered_json blocks = ordered_json::array();
        for (const auto& a : attempts) blocks.push_back(a.block);
        streaks.push_back({{"token", key.first.to_hex()}, {"buyer", key.second.to_hex()}, {"blocks", blocks}});
    }
    auto& checked = j["ut_checked"] = ordered_json::array();
    for (const auto& [key, block] : ut_checked_) {
        checked.push_back({{"token", key.first.to_hex()}, {"buyer", key.second.to_hex()}, {"block", block}});
    }
    j["rounds"] = rounds_;
    return j;
}

PoolScanner PoolScanner::restore(const ChainView& chain, const json& state, const ScanOptions& options) {
    using detail::field;
    const PoolInfo pool = field(state, "pool").get<PoolInfo>();
    const BlockRange range = field(state, "range").get<BlockRange>();
    PoolScanner s{chain, pool, range, options};
    s.next_ = field(state, "next").get<BlockNumber>();
    s.watches_.clear();
    for (const auto& w : field(state, "watches")) s.watches_.push_back(monitor::watch_from_json(w));
    for (const auto& f : field(state, "findings")) {
        auto finding = analyzer::finding_from_json(f);
        s.flagged_.emplace(finding.trap, finding.subject);
        s.findings_.push_back(std::move(finding));
    }
    for (const auto& r : field(state, "revert_streaks")) {
        auto& streak = s.revert_streaks_[{field(r, "token").get<Address>(), field(r, "buyer").get<Address>()}];
        for (const auto& b : field(r, "blocks")) streak.push_back(analyzer::SellAttempt{b.get<BlockNumber>(), true});
    }
    for (const auto& c : field(state, "ut_checked")) {
        s.ut_checked_[{field(c, "token").get<Address>(), field(c, "buyer").get<Address>()}] =
            field(c, "block").get<BlockNumber>();
    }
    field(state, "rounds").get_to(s.rounds_);
    return s;
}

std::vector<PoolInfo> select_pools(std::vector<PoolInfo> pools, std::size_t sample, std::uint64_t seed) {
    if (sample == 0 || sample >= pools.size()) return pools;
    std::vector<std::size_t> order(pools.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng{seed};
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(sample);
    std::sort(order.begin(), order.end());
    std::vector<PoolInfo> out;
    out.reserve(sample);
    for (auto i : order) out.push_back(pools[i]);
    return out;
}

namespace {

std::string fingerprint(std::span<const PoolInfo> pools, BlockRange range, const ScanOptions& options) {
    std::string text = std::to_string(range.from) + ":" + std::to_string(range.to) + ":" +
                       std::to_string(options.interval) + ":" + options.threshold.to_string();
    for (const auto& p : pools) text += ":" + p.pool.to_hex();
    return keccak256(std::string_view{text}).to_hex();
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
        if (!out) throw Error{Errc::io, "cannot write checkpoint " + tmp.string()};
        out << content;
        if (!out) throw Error{Errc::io, "short write to " + tmp.string()};
    }
    std::filesystem::rename(tmp, path);
}

struct Shared {
    std::mutex mutex;
    std::map<std::size_t, ordered_json> completed;  // index -> verdict
    std::map<std::size_t, std::string> failed;      // index -> error
    std::map<std::size_t, ordered_json> in_progress;
    std::string fingerprint;

    void save(const std::filesystem::path& path) {
        if (path.empty()) return;
        ordered_json doc;
        doc["schema"] = kCheckpointSchema;
        doc["fingerprint"] = fingerprint;
        auto& done = doc["completed"] = ordered_json::array();
        for (const auto& [i, v] : completed) done.push_back({{"index", i}, {"verdict", v}});
        auto& bad = doc["failed"] = ordered_json::array();
        for (const auto& [i, e] : failed) bad.push_back({{"index", i}, {"error", e}});
        auto& running = doc["in_progress"] = ordered_json::array();
        for (const auto& [i, s] : in_progress) running.push_back({{"index", i}, {"state", s}});
        write_atomically(path, doc.dump());
    }
};

}  // namespace

ScanResult scan_pools(const ChainView& chain, std::span<const PoolInfo> pools, BlockRange range,
                      const ScanOptions& options, const VerdictSink& sink) {
    ScanResult result;
    Shared shared;
    shared.fingerprint = fingerprint(pools, range, options);
    std::map<std::size_t, json> resume_states;

    if (!options.checkpoint.empty() && std::filesystem::exists(options.checkpoint)) {
        std::ifstream in{options.checkpoint, std::ios::binary};
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw Error{Errc::schema, "unreadable checkpoint " + options.checkpoint.string() + ": " + e.what()};
        }
        if (doc.value("schema", std::string{}) != kCheckpointSchema) {
            throw Error{Errc::schema, "checkpoint " + options.checkpoint.string() + " has an unknown schema"};
        }
        if (doc.value("fingerprint", std::string{}) == shared.fingerprint) {
            for (const auto& c : doc.at("completed")) {
                shared.completed[c.at("index").get<std::size_t>()] = ordered_json::parse(c.at("verdict").dump());
            }
            for (const auto& c : doc.at("failed")) {
                shared.failed[c.at("index").get<std::size_t>()] = c.at("error").get<std::string>();
            }
            for (const auto& c : doc.at("in_progress")) resume_states[c.at("index").get<std::size_t>()] = c.at("state");
        }
    }

    // Ordered emission: verdicts are released to the sink in input order.
    std::size_t next_emit = 0;
    std::map<std::size_t, PoolVerdict> ready;
    std::vector<std::optional<PoolVerdict>> verdicts(pools.size());
    auto publish = [&](std::size_t index, std::optional<PoolVerdict> verdict) {
        // caller holds shared.mutex
        if (verdict) verdicts[index] = *verdict;
        ready.emplace(index, verdict.value_or(PoolVerdict{}));
        while (true) {
            auto it = ready.find(next_emit);
            if (it == ready.end()) break;
            if (verdicts[next_emit] && sink) sink(*verdicts[next_emit]);
            ready.erase(it);
            ++next_emit;
        }
    };

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> stop{false};
    auto worker = [&] {
        while (!stop.load()) {
            const std::size_t index = cursor.fetch_add(1);
            if (index >= pools.size()) return;
            {
                std::lock_guard lock{shared.mutex};
                if (auto it = shared.completed.find(index); it != shared.completed.end()) {
                    publish(index, analyzer::verdict_from_json(json::parse(it->second.dump())));
                    continue;
                }
                if (shared.failed.contains(index)) {
                    publish(index, std::nullopt);
                    continue;
                }
            }
            try {
                auto scanner = resume_states.contains(index)
                                   ? PoolScanner::restore(chain, resume_states.at(index), options)
                                   : PoolScanner{chain, pools[index], range, options};
                std::uint64_t since_save = 0;
                while (!scanner.done()) {
                    if (options.stop_requested && options.stop_requested()) stop.store(true);
                    if (stop.load()) {
                        std::lock_guard lock{shared.mutex};
                        shared.in_progress[index] = scanner.state();
                        return;
                    }
                    scanner.step();
                    if (!options.checkpoint.empty() && ++since_save >= options.checkpoint_every) {
                        since_save = 0;
                        std::lock_guard lock{shared.mutex};
                        shared.in_progress[index] = scanner.state();
                        shared.save(options.checkpoint);
                    }
                }
                auto verdict = scanner.verdict();
                std::lock_guard lock{shared.mutex};
                shared.in_progress.erase(index);
                shared.completed[index] = analyzer::to_json(verdict);
                publish(index, std::move(verdict));
                shared.save(options.checkpoint);
            } catch (const std::exception& e) {
                std::lock_guard lock{shared.mutex};
                shared.in_progress.erase(index);
                shared.failed[index] = e.what();
                publish(index, std::nullopt);
                shared.save(options.checkpoint);
            }
        }
    };

    const unsigned width = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(pools.size())));
    if (width <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned i = 0; i < width; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    std::lock_guard lock{shared.mutex};
    result.interrupted = stop.load();
    if (result.interrupted) shared.save(options.checkpoint);
    for (std::size_t i = 0; i < pools.size(); ++i) {
        if (verdicts[i]) result.verdicts.push_back(*verdicts[i]);
        if (auto it = shared.failed.find(i); it != shared.failed.end()) {
            result.failures.push_back(ScanFailure{pools[i], it->second});
        }
    }
    return result;
}

}  // namespace honeyscan::scan
