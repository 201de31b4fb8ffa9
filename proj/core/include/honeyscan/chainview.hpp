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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <honeyscan/core/amount.hpp>
#include <honeyscan/core/bytes.hpp>
#include <honeyscan/core/types.hpp>

namespace honeyscan {

//! One call of a pool's swap function, with amounts as the pool accounted them.
struct SwapRecord {
    Hash32 tx_hash{};
    BlockIndex block{};
    Address sender{};
    Address token_in{};
    TokenAmount amount_in{};
    Address token_out{};
    TokenAmount amount_out{};
    Address recipient{};

    friend bool operator==(const SwapRecord&, const SwapRecord&) = default;
};

//! A token movement. `logged` records whether the chain emitted a Transfer
//! event for it; log queries only ever return logged movements.
//! `tx_from` is the originator of the enclosing transaction.
struct TransferRecord {
    Address token{};
    BlockIndex block{};
    Address sender{};
    Address recipient{};
    TokenAmount value{};
    bool logged{true};
    Hash32 tx_hash{};
    Address tx_from{};

    friend bool operator==(const TransferRecord&, const TransferRecord&) = default;
};

struct ApproveRecord {
    Address token{};
    BlockIndex block{};
    Address approver{};
    Address spender{};
    TokenAmount value{};
    Hash32 tx_hash{};

    friend bool operator==(const ApproveRecord&, const ApproveRecord&) = default;
};

enum class LiquidityKind : std::uint8_t { Add, Remove };

struct LiquidityEvent {
    Address pool{};
    BlockIndex block{};
    LiquidityKind kind{LiquidityKind::Add};
    TokenAmount amount_x{};
    TokenAmount amount_y{};
    Address provider{};

    friend bool operator==(const LiquidityEvent&, const LiquidityEvent&) = default;
};

struct BalanceSnapshot {
    Address token{};
    Address holder{};
    BlockIndex block{};
    TokenAmount balance{};

    friend bool operator==(const BalanceSnapshot&, const BalanceSnapshot&) = default;
};

//! Result of a balance query. A reverted balanceOf is reported here rather
//! than thrown, with ok == false and the revert text.
struct BalanceReading {
    BalanceSnapshot snapshot{};
    bool ok{true};
    std::string failure{};
};

struct Reserves {
    TokenAmount x{};
    TokenAmount y{};

    [[nodiscard]] bool has_liquidity() const noexcept { return !x.is_zero() && !y.is_zero(); }
    friend bool operator==(const Reserves&, const Reserves&) = default;
};

struct BalanceOfCall {
    Address token{};
    Address holder{};
};

//! Exact-input swap through a router. With approve_first the router is
//! approved for amount_in before the swap, as router semantics require.
struct SwapExactInCall {
    Address router{};
    Address pool{};
    Address token_in{};
    TokenAmount amount_in{};
    Address recipient{};
    bool approve_first{true};
};

struct ApproveCall {
    Address token{};
    Address spender{};
    TokenAmount amount{};
};

using CallAction = std::variant<BalanceOfCall, SwapExactInCall, ApproveCall>;

struct Call {
    Address from{};
    Address to{};
    CallAction action{};
};

enum class CallStatus : std::uint8_t { Success, Revert };

struct CallOutcome {
    CallStatus status{CallStatus::Success};
    std::optional<std::string> revert_reason{};
    std::optional<TokenAmount> return_value{};
    std::vector<TransferRecord> transfers{};
    std::vector<SwapRecord> swaps{};
    //! Set when the backend could not run the bundle sequentially and this
    //! call did not see the effects of earlier calls.
    bool degraded{false};

    [[nodiscard]] bool ok() const noexcept { return status == CallStatus::Success; }
};

//! Balance assignments applied to the private fork before a bundle runs.
struct BalanceOverride {
    Address token{};
    Address holder{};
    TokenAmount balance{};
};

struct StateOverrides {
    std::vector<BalanceOverride> balances{};
    [[nodiscard]] bool empty() const noexcept { return balances.empty(); }
};

//! Read access to a chain plus local bundle simulation.
//!
//! Implementations must tolerate concurrent callers. Log queries return
//! complete, block-ordered results; simulate_bundle never changes what any
//! other query returns.
class ChainView {
  public:
    virtual ~ChainView() = default;

    [[nodiscard]] virtual BlockNumber head() const = 0;

    [[nodiscard]] virtual std::vector<PoolInfo> get_pool_created(BlockRange range) const = 0;
    [[nodiscard]] virtual std::vector<SwapRecord> get_swaps(const Address& pool, BlockRange range) const = 0;
    [[nodiscard]] virtual std::vector<LiquidityEvent> get_liquidity_events(const Address& pool, BlockRange range) const = 0;
    [[nodiscard]] virtual std::vector<TransferRecord> get_transfers(const Address& token, BlockRange range) const = 0;
    [[nodiscard]] virtual std::vector<ApproveRecord> get_approvals(const Address& token, BlockRange range) const = 0;

    [[nodiscard]] virtual BalanceReading balance_of(const Address& token, const Address& holder, BlockNumber block) const = 0;
    //! Batched form; backends that can pipeline requests override it.
    [[nodiscard]] virtual std::vector<BalanceReading> balances_of(const Address& token, std::span<const Address> holders,
                                                                  BlockNumber block) const;

    [[nodiscard]] virtual Reserves get_reserves(const Address& pool, BlockNumber block) const = 0;

    //! Runs `calls` in order on a private copy of the state after `block`.
    //! Each call is its own transaction: a revert undoes only that call.
    [[nodiscard]] virtual std::vector<CallOutcome> simulate_bundle(BlockNumber block, std::span<const Call> calls,
                                                                   const StateOverrides& overrides = {}) const = 0;

    //! Router address used for swaps on pools of the given version.
    [[nodiscard]] virtual Address router(DexVersion version) const = 0;

    //! On-chain output quote, for pools whose pricing is not reproduced
    //! locally. nullopt means "use the constant-product estimator".
    [[nodiscard]] virtual std::optional<TokenAmount> quote_exact_input(const PoolInfo& pool, const Address& token_in,
                                                                       const TokenAmount& amount_in,
                                                                       BlockNumber block) const;
};

}  // namespace honeyscan
