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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include <honeyscan/analyzer.hpp>
#include <honeyscan/chainview.hpp>
#include <honeyscan/monitor.hpp>

namespace honeyscan::scan {

inline constexpr std::string_view kCheckpointSchema = "honeyscan.checkpoint/v1";

//! Address used for buy probes unless configured otherwise.
Address default_probe_account();

struct ScanOptions {
    //! A detection round runs on the first block and every `interval` blocks after.
    std::uint64_t interval{1};
    Rational threshold{1, 2};
    Rational probe_fraction{1, 1000};
    std::set<Address> base_tokens{};
    std::set<Address> review_allowlist{};
    Address probe_account{default_probe_account()};
    unsigned workers{1};
    //! Empty disables checkpointing.
    std::filesystem::path checkpoint{};
    std::uint64_t checkpoint_every{256};
    //! Polled between blocks; returning true checkpoints and stops the scan.
    std::function<bool()> stop_requested{};
};

//! Scans one pool over a block range: ingest, then a detection round
//! whenever one is due.
class PoolScanner {
  public:
    PoolScanner(const ChainView& chain, const PoolInfo& pool, BlockRange range, const ScanOptions& options);

    static PoolScanner restore(const ChainView& chain, const nlohmann::json& state, const ScanOptions& options);

    [[nodiscard]] bool done() const noexcept { return next_ > range_.to; }
    [[nodiscard]] BlockNumber next_block() const noexcept { return next_; }
    //! Ingests the next block and runs its round if due.
    void step();
    analyzer::PoolVerdict run();

    [[nodiscard]] analyzer::PoolVerdict verdict() const;
    [[nodiscard]] const std::vector<analyzer::Finding>& findings() const noexcept { return findings_; }
    [[nodiscard]] const std::vector<monitor::PoolWatch>& watches() const noexcept { return watches_; }
    [[nodiscard]] std::vector<BlockNumber> round_blocks() const { return rounds_; }
    [[nodiscard]] nlohmann::ordered_json state() const;

  private:
    using Key = std::pair<Address, Address>;  // (trap token, buyer)

    void round(BlockNumber block);
    void round_for(monitor::PoolWatch& watch, BlockNumber block);
    void add(std::optional<analyzer::Finding> finding);

    const ChainView* chain_;
    ScanOptions options_;
    PoolInfo pool_;
    BlockRange range_;
    BlockNumber next_;
    std::vector<monitor::PoolWatch> watches_;
    std::map<Key, std::vector<analyzer::SellAttempt>> revert_streaks_;
    std::map<Key, BlockNumber> ut_checked_;
    std::set<std::pair<TrapType, Address>> flagged_;
    std::vector<analyzer::Finding> findings_;
    std::vector<BlockNumber> rounds_;
};

struct ScanFailure {
    PoolInfo pool;
    std::string error;
};

struct ScanResult {
    std::vector<analyzer::PoolVerdict> verdicts;
    std::vector<ScanFailure> failures;
    bool interrupted{false};
};

//! Called once per finished pool, serialized and in input order.
using VerdictSink = std::function<void(const analyzer::PoolVerdict&)>;

//! Scans `pools` over `range` on options.workers threads. Per-pool errors
//! are recorded in ScanResult::failures and never abort the scan. With a
//! checkpoint path, an existing checkpoint for the same pools and range is
//! resumed.
ScanResult scan_pools(const ChainView& chain, std::span<const PoolInfo> pools, BlockRange range,
                      const ScanOptions& options, const VerdictSink& sink = {});

//! Pools from discover_pools over `range`; sample > 0 picks that many with a
//! seeded shuffle, keeping discovery order among the picked ones.
std::vector<PoolInfo> select_pools(std::vector<PoolInfo> pools, std::size_t sample, std::uint64_t seed);

}  // namespace honeyscan::scan
