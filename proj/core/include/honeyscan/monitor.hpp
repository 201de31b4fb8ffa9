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

#include <map>
#include <optional>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include <honeyscan/chainview.hpp>

namespace honeyscan::monitor {

inline constexpr std::string_view kPoolWatchSchema = "honeyscan.poolwatch/v1";

struct BuyerLedger {
    Address buyer{};
    Address pool{};
    Address trap_token{};
    BlockNumber registered_at{0};
    std::vector<SwapRecord> buys{};
    //! Block-ordered, at most one per block. The first entry is the baseline
    //! taken at registered_at - 1.
    std::vector<BalanceSnapshot> snapshots{};
    std::vector<TransferRecord> incoming_logged{};
    std::vector<TransferRecord> outgoing_logged{};
    std::vector<ApproveRecord> approvals{};

    [[nodiscard]] const BalanceSnapshot* snapshot_at(BlockNumber block) const;
    [[nodiscard]] BlockNumber first_snapshot_block() const;
    [[nodiscard]] TokenAmount latest_balance() const;

    friend bool operator==(const BuyerLedger&, const BuyerLedger&) = default;
};

struct PoolWatch {
    PoolInfo pool{};
    Address trap_token{};
    Address base_token{};
    //! First block this watch ingests.
    BlockNumber start_block{0};
    std::optional<BlockNumber> last_ingested{};
    std::map<Address, BuyerLedger> buyers{};
    std::vector<Address> buyer_order{};
    std::vector<SwapRecord> swaps{};
    std::vector<LiquidityEvent> liquidity{};
    std::map<BlockNumber, bool> has_liquidity{};
    std::map<BlockNumber, Reserves> reserves{};

    [[nodiscard]] bool liquid_at(BlockNumber block) const;
    [[nodiscard]] BlockNumber next_block() const { return last_ingested ? *last_ingested + 1 : start_block; }

    friend bool operator==(const PoolWatch&, const PoolWatch&) = default;
};

struct BuyerDelta {
    SignedAmount delta{};
    //! Logged transfers in (from, to], incoming and outgoing, block-ordered.
    std::vector<TransferRecord> transfers{};
    //! Sum of incoming minus outgoing logged values over the same window.
    SignedAmount logged_net{};
};

std::vector<PoolInfo> discover_pools(const ChainView& chain, BlockRange range);

//! Tokens of `pool` to treat as the trap side: the non-base token, or both
//! tokens when neither or both are in `base_tokens`.
std::vector<Address> trap_candidates(const PoolInfo& pool, const std::set<Address>& base_tokens);

PoolWatch make_watch(const PoolInfo& pool, const Address& trap_token, BlockNumber start_block);

//! Throws Errc::block_gap unless block == watch.next_block().
void ingest_block(PoolWatch& watch, const ChainView& chain, BlockNumber block);
//! Same result as ingesting every block of `range` in order, with one log
//! query per category.
void ingest_range(PoolWatch& watch, const ChainView& chain, BlockRange range);

BuyerDelta buyer_delta(const BuyerLedger& ledger, BlockNumber from_block, BlockNumber to_block);

nlohmann::ordered_json to_json(const PoolWatch& watch);
PoolWatch watch_from_json(const nlohmann::json& doc);

}  // namespace honeyscan::monitor
