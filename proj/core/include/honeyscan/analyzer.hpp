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

#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include <honeyscan/core/amount.hpp>
#include <honeyscan/core/rational.hpp>
#include <honeyscan/core/types.hpp>
#include <honeyscan/monitor.hpp>
#include <honeyscan/simulator.hpp>

namespace honeyscan::analyzer {

//! Which comparison produced a finding.
enum class Rule : std::uint8_t {
    BuyShortfall,        // InvalidBuy
    SellShortfall,       // InvalidSell
    UnapprovedTransfer,  // UnauthorizedTransfer, logged transfer by a third party
    OverstatedLogs,      // UnauthorizedTransfer, logs claim more than the balance moved
    UnloggedMovement,    // UnauthorizedTransfer, balance moved without matching logs
    RepeatedRevert,      // CannotSell
};

std::string_view to_string(Rule rule) noexcept;
Rule parse_rule(std::string_view text);
TrapType trap_of(Rule rule) noexcept;

//! The numbers a predicate compared. Only the fields used by `rule` are set.
struct Evidence {
    Rule rule{Rule::BuyShortfall};
    Rational threshold{1, 2};

    // BuyShortfall / SellShortfall
    TokenAmount pre_balance{};
    TokenAmount post_balance{};
    TokenAmount estimate{};

    // UnapprovedTransfer
    TokenAmount transfer_value{};
    TokenAmount approved{};
    Address tx_from{};
    Hash32 tx_hash{};

    // OverstatedLogs / UnloggedMovement
    SignedAmount balance_delta{};
    SignedAmount logged_net{};
    BlockRange window{};

    // RepeatedRevert
    std::vector<BlockNumber> revert_blocks{};

    friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct Finding {
    TrapType trap{TrapType::InvalidBuy};
    Address pool{};
    Address subject{};
    BlockIndex block{};
    Evidence evidence{};

    friend bool operator==(const Finding&, const Finding&) = default;
};

struct PoolVerdict {
    PoolInfo pool{};
    TrapSet traps{};
    std::vector<Finding> findings{};
    std::optional<BlockIndex> first_flagged_block{};
    BlockRange scanned_range{};
    bool requires_manual_review{false};

    [[nodiscard]] bool clean() const noexcept { return traps.empty(); }
};

//! floor(x * threshold); equals threshold_half(x) for the default 1/2.
TokenAmount bound(const TokenAmount& x, const Rational& threshold);

//! post <= pre, or post - pre <= bound(estimate).
bool shortfall(const TokenAmount& pre, const TokenAmount& post, const TokenAmount& estimate, const Rational& threshold);

//! Requires a BuyProbe result. Reverted buys and zero estimates yield nullopt.
std::optional<Finding> check_invalid_buy(const sim::SimulationResult& result, const Rational& threshold = kOneHalf);

//! Requires a Sell or BuySell result. Reverted sells and zero estimates yield nullopt.
std::optional<Finding> check_invalid_sell(const sim::SimulationResult& result, const Rational& threshold = kOneHalf);

//! Evaluates both cases over (from_block, to_block]. Case 1 is reported
//! first when both hold.
std::optional<Finding> check_unauthorized_transfer(const monitor::BuyerLedger& ledger, BlockNumber from_block,
                                                   BlockNumber to_block, const Rational& threshold = kOneHalf);

//! Revert/success history of one (buyer, pool) sell sequence.
struct SellAttempt {
    BlockNumber block{0};
    bool reverted{false};
};

//! Two or more reverts at distinct blocks with no success in between.
//! Throws Errc::empty_input for an empty history.
std::optional<Finding> check_cannot_sell(std::span<const sim::SimulationResult> results);
std::optional<Finding> check_cannot_sell(const Address& pool, const Address& subject,
                                         std::span<const SellAttempt> attempts);

//! Re-evaluates the predicate named by the evidence rule on the stored numbers.
bool recompute(const Finding& finding);

//! Union of findings, deduplicated to the first per (trap, subject).
PoolVerdict classify_pool(const PoolInfo& pool, std::span<const Finding> findings, BlockRange scanned_range,
                          const std::set<Address>& review_allowlist = {});

nlohmann::ordered_json to_json(const Finding& finding);
Finding finding_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const PoolVerdict& verdict);
PoolVerdict verdict_from_json(const nlohmann::json& j);

}  // namespace honeyscan::analyzer
