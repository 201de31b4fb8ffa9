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

#include <vector>

#include <honeyscan/chainview.hpp>
#include <honeyscan/core/amount.hpp>
#include <honeyscan/core/rational.hpp>
#include <honeyscan/core/types.hpp>

namespace honeyscan::sim {

//! Constant-product output for an exact input, fee fee_num/fee_den:
//!   floor(in*(den-num)*r_out / (r_in*den + in*(den-num)))
//! Throws Errc::no_liquidity for a zero reserve, Errc::invalid_argument for
//! zero input or fee_num >= fee_den.
TokenAmount estimate_output(const TokenAmount& reserve_in, const TokenAmount& reserve_out, const TokenAmount& amount_in,
                            std::uint64_t fee_num, std::uint64_t fee_den);

inline TokenAmount estimate_output(const TokenAmount& reserve_in, const TokenAmount& reserve_out,
                                   const TokenAmount& amount_in, const Rational& fee) {
    return estimate_output(reserve_in, reserve_out, amount_in, fee.num, fee.den);
}

enum class BundleKind : std::uint8_t { Sell, BuyProbe, BuySell };

std::string_view to_string(BundleKind kind) noexcept;

//! Ordered simulation request. `calls` follows the kind's template:
//!   Sell:     [balanceOf(base, actor), sell trap, balanceOf(base, actor)]
//!   BuyProbe: [balanceOf(trap, actor), buy trap,  balanceOf(trap, actor)]
//!   BuySell:  [buy trap, balanceOf(base, actor), sell trap, balanceOf(base, actor)]
struct Bundle {
    BundleKind kind{BundleKind::Sell};
    Address actor{};
    PoolInfo pool{};
    Address trap_token{};
    Address base_token{};
    BlockNumber block{0};
    //! Base-token input of the buy leg (BuyProbe, BuySell).
    TokenAmount buy_amount{};
    //! Trap-token input of the sell leg (Sell, BuySell).
    TokenAmount sell_amount{};
    std::vector<Call> calls{};
    StateOverrides overrides{};

    //! Index of the call whose revert status decides sell_reverted / buy_reverted.
    [[nodiscard]] std::size_t sell_call_index() const;
    [[nodiscard]] std::size_t buy_call_index() const;
};

struct SimulationResult {
    Bundle bundle{};
    std::vector<CallOutcome> outcomes{};
    BalanceSnapshot pre_balance{};
    BalanceSnapshot post_balance{};
    //! Expected output of the measured swap leg under the same block state.
    TokenAmount estimate{};
    bool sell_reverted{false};
    bool buy_reverted{false};

    [[nodiscard]] SignedAmount delta() const { return SignedAmount::difference(post_balance.balance, pre_balance.balance); }
};

//! Default probe size: `fraction` of the pool's base-token reserve, at least 1.
TokenAmount probe_size(const TokenAmount& base_reserve, const Rational& fraction = Rational{1, 1000});

Bundle build_sell_bundle(const ChainView& chain, const Address& buyer, const PoolInfo& pool, const Address& trap_token,
                         const TokenAmount& amount, BlockNumber block);

//! The probe account is funded through a balance override on the base token.
Bundle build_buy_probe(const ChainView& chain, const Address& account, const PoolInfo& pool, const Address& trap_token,
                       const TokenAmount& buy_amount, BlockNumber block);

//! Requires a BuyProbe result whose buy succeeded and delivered a positive
//! amount; the sell leg sells exactly that delta.
Bundle build_buy_sell_bundle(const ChainView& chain, const SimulationResult& probe);

SimulationResult run(const ChainView& chain, const Bundle& bundle);

}  // namespace honeyscan::sim
