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
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <honeyscan/chainview.hpp>
#include <honeyscan/mock/behavior.hpp>

namespace honeyscan::mock {

enum class TransferContext : std::uint8_t { PoolOut, PoolIn, Plain };

struct TokenState {
    TokenBehavior behavior{};
    Address owner{};
    TokenAmount total_supply{};
    std::map<Address, TokenAmount> balances{};
    std::map<std::pair<Address, Address>, TokenAmount> allowances{};
    //! Recipients of pool-originated transfers, for AfterBuyers triggers.
    std::set<Address> buyers{};
    std::optional<BlockNumber> activated_at{};
    std::string label{};

    [[nodiscard]] TokenAmount balance(const Address& holder) const;
};

struct MockPool {
    PoolInfo info{};
    TokenAmount reserve_x{};
    TokenAmount reserve_y{};
    std::optional<Address> provider{};
};

struct WorldState {
    std::map<Address, TokenState> tokens{};
    std::map<Address, MockPool> pools{};
};

//! In-memory chain with sealed, immutable per-block states.
//!
//! Block 0 is an empty genesis. Write operations run as single transactions
//! in the pending block (head + 1) and become visible to queries once
//! advance_block seals it. Writes are single-writer; sealed states may be
//! read from any number of threads.
class MockChain final : public ChainView {
  public:
    static const Address kRouterV2;
    static const Address kRouterV3;

    MockChain();

    Address deploy_token(const TokenBehavior& behavior, const TokenAmount& supply, const Address& owner,
                         std::string label = {});
    Address create_pool(const Address& token_x, const Address& token_y, const Rational& fee = Rational{3, 1000},
                        const Address& creator = {});

    CallOutcome token_transfer(const Address& token, const Address& from, const Address& to, const TokenAmount& amount,
                               TransferContext context = TransferContext::Plain);
    CallOutcome approve(const Address& token, const Address& owner, const Address& spender, const TokenAmount& amount);
    CallOutcome owner_drain(const Address& token, const Address& caller, const Address& victim);
    CallOutcome swap(const Address& pool, const Address& trader, const Address& token_in, const TokenAmount& amount_in,
                     const Address& recipient);
    CallOutcome add_liquidity(const Address& pool, const Address& provider, const TokenAmount& x, const TokenAmount& y);
    CallOutcome remove_liquidity(const Address& pool, const Address& provider);
    CallOutcome flip_switch(const Address& token, const Address& caller);

    //! Seals the pending block and n-1 further empty blocks; returns the new head.
    BlockNumber advance_block(std::uint64_t n = 1);
    [[nodiscard]] BlockNumber pending_block() const;

    [[nodiscard]] std::shared_ptr<const WorldState> state_at(BlockNumber block) const;
    [[nodiscard]] std::optional<Address> transaction_sender(const Hash32& tx_hash) const;
    //! Every movement, logged or not, in execution order (trace export).
    [[nodiscard]] std::vector<TransferRecord> all_transfers() const;

    // ChainView
    [[nodiscard]] BlockNumber head() const override;
    [[nodiscard]] std::vector<PoolInfo> get_pool_created(BlockRange range) const override;
    [[nodiscard]] std::vector<SwapRecord> get_swaps(const Address& pool, BlockRange range) const override;
    [[nodiscard]] std::vector<LiquidityEvent> get_liquidity_events(const Address& pool, BlockRange range) const override;
    [[nodiscard]] std::vector<TransferRecord> get_transfers(const Address& token, BlockRange range) const override;
    [[nodiscard]] std::vector<ApproveRecord> get_approvals(const Address& token, BlockRange range) const override;
    [[nodiscard]] BalanceReading balance_of(const Address& token, const Address& holder, BlockNumber block) const override;
    [[nodiscard]] Reserves get_reserves(const Address& pool, BlockNumber block) const override;
    [[nodiscard]] std::vector<CallOutcome> simulate_bundle(BlockNumber block, std::span<const Call> calls,
                                                           const StateOverrides& overrides = {}) const override;
    [[nodiscard]] Address router(DexVersion version) const override;

    //! Everything the chain has emitted, including unlogged movements and
    //! records of the pending block. Swaps are paired with their pool.
    struct ChainLog {
        std::vector<PoolInfo> pools_created;
        std::vector<std::pair<Address, SwapRecord>> swaps;
        std::vector<LiquidityEvent> liquidity;
        std::vector<TransferRecord> transfers;
        std::vector<ApproveRecord> approvals;
    };
    [[nodiscard]] ChainLog log_snapshot() const;

  private:

    template <typename Fn>
    CallOutcome execute(const Address& from, Fn&& body);
    void begin_block(BlockNumber number);
    [[nodiscard]] BlockRange clip(BlockRange range) const;
    [[nodiscard]] bool knows_pool(const Address& pool) const;
    [[nodiscard]] bool knows_token(const Address& token) const;

    mutable std::shared_mutex mutex_;
    std::vector<std::shared_ptr<const WorldState>> sealed_;
    WorldState pending_;
    std::uint32_t next_tx_index_{0};
    std::uint64_t nonce_{0};
    ChainLog logs_;
    std::unordered_map<Hash32, Address> tx_senders_;
};

}  // namespace honeyscan::mock
