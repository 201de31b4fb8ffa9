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

#include <honeyscan/simulator.hpp>

#include <honeyscan/core/error.hpp>

namespace honeyscan::sim {

namespace {

struct Oriented {
    TokenAmount reserve_in;
    TokenAmount reserve_out;
};

Oriented orient(const Reserves& r, const PoolInfo& pool, const Address& token_in) {
    if (token_in == pool.token_x) return {r.x, r.y};
    return {r.y, r.x};
}

TokenAmount quote(const ChainView& chain, const PoolInfo& pool, const Address& token_in, const TokenAmount& amount,
                  BlockNumber block) {
    if (amount.is_zero()) return TokenAmount{};
    if (auto q = chain.quote_exact_input(pool, token_in, amount, block)) return *q;
    const auto o = orient(chain.get_reserves(pool.pool, block), pool, token_in);
    if (o.reserve_in.is_zero() || o.reserve_out.is_zero()) return TokenAmount{};
    return estimate_output(o.reserve_in, o.reserve_out, amount, pool.fee);
}

Call balance_call(const Address& actor, const Address& token) {
    return Call{actor, token, BalanceOfCall{token, actor}};
}

Call swap_call(const ChainView& chain, const Address& actor, const PoolInfo& pool, const Address& token_in,
               const TokenAmount& amount) {
    const Address router = chain.router(pool.dex_version);
    return Call{actor, router, SwapExactInCall{router, pool.pool, token_in, amount, actor, true}};
}

void check_pool(const ChainView& chain, const PoolInfo& pool, const Address& trap_token, BlockNumber block) {
    if (!pool.has_token(trap_token)) {
        throw Error{Errc::invalid_argument, "token " + trap_token.to_hex() + " is not in pool " + pool.pool.to_hex()};
    }
    if (!chain.get_reserves(pool.pool, block).has_liquidity()) {
        throw Error{Errc::no_liquidity, "pool " + pool.pool.to_hex() + " has no liquidity at block " + std::to_string(block)};
    }
}

}  // namespace

TokenAmount estimate_output(const TokenAmount& reserve_in, const TokenAmount& reserve_out, const TokenAmount& amount_in,
                            std::uint64_t fee_num, std::uint64_t fee_den) {
    if (reserve_in.is_zero() || reserve_out.is_zero()) throw Error{Errc::no_liquidity, "pool has a zero reserve"};
    if (amount_in.is_zero()) throw Error{Errc::invalid_argument, "estimate_output: zero input"};
    if (fee_den == 0 || fee_num >= fee_den) throw Error{Errc::invalid_argument, "estimate_output: fee must be in [0, 1)"};
    const uint512 in_with_fee = uint512{amount_in.raw()} * (fee_den - fee_num);
    const uint512 numerator = in_with_fee * uint512{reserve_out.raw()};
    const uint512 denominator = uint512{reserve_in.raw()} * fee_den + in_with_fee;
    // The quotient is below reserve_out, so it always fits.
    return TokenAmount{static_cast<uint256>(numerator / denominator)};
}

std::string_view to_string(BundleKind kind) noexcept {
    switch (kind) {
        case BundleKind::Sell: return "sell";
        case BundleKind::BuyProbe: return "buy_probe";
        case BundleKind::BuySell: return "buy_sell";
    }
    return "?";
}

std::size_t Bundle::sell_call_index() const {
    switch (kind) {
        case BundleKind::Sell: return 1;
        case BundleKind::BuySell: return 2;
        case BundleKind::BuyProbe: break;
    }
    throw Error{Errc::wrong_bundle_kind, "bundle has no sell leg"};
}

std::size_t Bundle::buy_call_index() const {
    switch (kind) {
        case BundleKind::BuyProbe:
        case BundleKind::BuySell: return kind == BundleKind::BuyProbe ? 1 : 0;
        case BundleKind::Sell: break;
    }
    throw Error{Errc::wrong_bundle_kind, "bundle has no buy leg"};
}

TokenAmount probe_size(const TokenAmount& base_reserve, const Rational& fraction) {
    const TokenAmount size = fraction.apply(base_reserve);
    return size.is_zero() ? TokenAmount{1} : size;
}

Bundle build_sell_bundle(const ChainView& chain, const Address& buyer, const PoolInfo& pool, const Address& trap_token,
                         const TokenAmount& amount, BlockNumber block) {
    check_pool(chain, pool, trap_token, block);
    if (amount.is_zero()) throw Error{Errc::zero_balance, "sell bundle for a zero amount"};
    Bundle b;
    b.kind = BundleKind::Sell;
    b.actor = buyer;
    b.pool = pool;
    b.trap_token = trap_token;
    b.base_token = pool.other(trap_token);
    b.block = block;
    b.sell_amount = amount;
    b.calls = {balance_call(buyer, b.base_token), swap_call(chain, buyer, pool, trap_token, amount),
               balance_call(buyer, b.base_token)};
    return b;
}

Bundle build_buy_probe(const ChainView& chain, const Address& account, const PoolInfo& pool, const Address& trap_token,
                       const TokenAmount& buy_amount, BlockNumber block) {
    check_pool(chain, pool, trap_token, block);
    if (buy_amount.is_zero()) throw Error{Errc::invalid_argument, "buy probe for a zero amount"};
    Bundle b;
    b.kind = BundleKind::BuyProbe;
    b.actor = account;
    b.pool = pool;
    b.trap_token = trap_token;
    b.base_token = pool.other(trap_token);
    b.block = block;
    b.buy_amount = buy_amount;
    b.calls = {balance_call(account, trap_token), swap_call(chain, account, pool, b.base_token, buy_amount),
               balance_call(account, trap_token)};
    b.overrides.balances.push_back(BalanceOverride{b.base_token, account, buy_amount});
    return b;
}

Bundle build_buy_sell_bundle(const ChainView& chain, const SimulationResult& probe) {
    const Bundle& p = probe.bundle;
    if (p.kind != BundleKind::BuyProbe) throw Error{Errc::wrong_bundle_kind, "BuySell needs a BuyProbe result"};
    if (probe.buy_reverted) throw Error{Errc::probe_failed, "probe buy reverted"};
    const SignedAmount delta = probe.delta();
    if (delta.negative || delta.is_zero()) throw Error{Errc::probe_failed, "probe buy delivered nothing"};
    Bundle b;
    b.kind = BundleKind::BuySell;
    b.actor = p.actor;
    b.pool = p.pool;
    b.trap_token = p.trap_token;
    b.base_token = p.base_token;
    b.block = p.block;
    b.buy_amount = p.buy_amount;
    b.sell_amount = delta.magnitude;
    b.calls = {swap_call(chain, b.actor, b.pool, b.base_token, b.buy_amount), balance_call(b.actor, b.base_token),
               swap_call(chain, b.actor, b.pool, b.trap_token, b.sell_amount), balance_call(b.actor, b.base_token)};
    b.overrides = p.overrides;
    return b;
}

SimulationResult run(const ChainView& chain, const Bundle& bundle) {
    SimulationResult result;
    result.bundle = bundle;
    result.outcomes = chain.simulate_bundle(bundle.block, bundle.calls, bundle.overrides);
    if (result.outcomes.size() != bundle.calls.size()) {
        throw Error{Errc::probe_failed, "backend returned a short outcome list"};
    }

    const bool measures_trap = bundle.kind == BundleKind::BuyProbe;
    const Address measured = measures_trap ? bundle.trap_token : bundle.base_token;
    const std::size_t pre_index = bundle.kind == BundleKind::BuySell ? 1 : 0;
    const std::size_t post_index = bundle.calls.size() - 1;
    auto reading = [&](std::size_t i) {
        const auto& o = result.outcomes[i];
        if (!o.ok() || !o.return_value) {
            throw Error{Errc::probe_failed, "balanceOf failed inside bundle: " + o.revert_reason.value_or("no value")};
        }
        return BalanceSnapshot{measured, bundle.actor, BlockIndex{bundle.block, static_cast<std::uint32_t>(i)},
                               *o.return_value};
    };
    result.pre_balance = reading(pre_index);
    result.post_balance = reading(post_index);

    switch (bundle.kind) {
        case BundleKind::Sell:
            result.sell_reverted = !result.outcomes[bundle.sell_call_index()].ok();
            result.estimate = quote(chain, bundle.pool, bundle.trap_token, bundle.sell_amount, bundle.block);
            break;
        case BundleKind::BuyProbe:
            result.buy_reverted = !result.outcomes[bundle.buy_call_index()].ok();
            result.estimate = quote(chain, bundle.pool, bundle.base_token, bundle.buy_amount, bundle.block);
            break;
        case BundleKind::BuySell: {
            result.buy_reverted = !result.outcomes[bundle.buy_call_index()].ok();
            result.sell_reverted = !result.outcomes[bundle.sell_call_index()].ok();
            if (chain.quote_exact_input(bundle.pool, bundle.trap_token, bundle.sell_amount, bundle.block)) {
                result.estimate = quote(chain, bundle.pool, bundle.trap_token, bundle.sell_amount, bundle.block);
                break;
            }
            const Reserves r = chain.get_reserves(bundle.pool.pool, bundle.block);
            auto buy = orient(r, bundle.pool, bundle.base_token);
            if (!buy.reserve_in.is_zero() && !buy.reserve_out.is_zero()) {
                const TokenAmount bought = estimate_output(buy.reserve_in, buy.reserve_out, bundle.buy_amount,
                                                           bundle.pool.fee);
                // Post-buy reserves, seen from the sell side.
                const TokenAmount trap_reserve = buy.reserve_out - bought;
                const TokenAmount base_reserve = buy.reserve_in + bundle.buy_amount;
                if (!trap_reserve.is_zero()) {
                    result.estimate = estimate_output(trap_reserve, base_reserve, bundle.sell_amount, bundle.pool.fee);
                }
            }
            break;
        }
    }
    return result;
}

}  // namespace honeyscan::sim
