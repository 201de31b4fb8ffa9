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

#include <honeyscan/mock/mock_chain.hpp>

#include <algorithm>
#include <mutex>
#include <type_traits>

#include <honeyscan/core/error.hpp>
#include <honeyscan/core/keccak.hpp>
#include <honeyscan/simulator.hpp>

namespace honeyscan::mock {

namespace {

struct Revert {
    std::string reason;
};

Address derive_address(std::string_view domain, std::uint64_t nonce, const Address& salt) {
    Bytes preimage(domain.begin(), domain.end());
    for (int i = 7; i >= 0; --i) preimage.push_back(static_cast<std::uint8_t>(nonce >> (8 * i)));
    preimage.insert(preimage.end(), salt.bytes().begin(), salt.bytes().end());
    const auto h = keccak256(ByteView{preimage});
    return Address::from_span(ByteView{h.bytes()}.subspan(12));
}

Hash32 tx_hash(BlockNumber block, std::uint32_t index, const Address& from, std::uint64_t nonce) {
    Bytes preimage;
    for (int i = 7; i >= 0; --i) preimage.push_back(static_cast<std::uint8_t>(block >> (8 * i)));
    for (int i = 3; i >= 0; --i) preimage.push_back(static_cast<std::uint8_t>(index >> (8 * i)));
    preimage.insert(preimage.end(), from.bytes().begin(), from.bytes().end());
    for (int i = 7; i >= 0; --i) preimage.push_back(static_cast<std::uint8_t>(nonce >> (8 * i)));
    return keccak256(ByteView{preimage});
}

struct TxContext {
    WorldState& state;
    BlockNumber block;
    std::uint32_t tx_index;
    Address from;
    Hash32 hash;
    std::vector<TransferRecord> transfers{};
    std::vector<std::pair<Address, SwapRecord>> swaps{};
    std::vector<ApproveRecord> approvals{};
    std::vector<LiquidityEvent> liquidity{};
    std::vector<PoolInfo> pools_created{};

    [[nodiscard]] BlockIndex index() const { return BlockIndex{block, tx_index}; }
};

TokenState& token_or_revert(TxContext& tx, const Address& token) {
    auto it = tx.state.tokens.find(token);
    if (it == tx.state.tokens.end()) throw Revert{"call to non-contract"};
    return it->second;
}

MockPool& pool_or_revert(TxContext& tx, const Address& pool) {
    auto it = tx.state.pools.find(pool);
    if (it == tx.state.pools.end()) throw Revert{"call to non-contract"};
    return it->second;
}

void emit_transfer(TxContext& tx, const Address& token, const Address& from, const Address& to,
                   const TokenAmount& value, bool logged) {
    tx.transfers.push_back(TransferRecord{token, tx.index(), from, to, value, logged, tx.hash, tx.from});
}

void credit(TokenState& t, const Address& holder, const TokenAmount& amount) {
    if (amount.is_zero()) return;
    t.balances[holder] += amount;
}

bool gate_forbids(const ListGate& gate, const Address& sender) {
    if (gate.mode == GateMode::Deny) return gate.members.contains(sender);
    return !gate.global_open && !gate.members.contains(sender);
}

bool delayed_switched(const DelayedSellTax& d, BlockNumber block) {
    if (d.switched) return true;
    if (const auto* at = std::get_if<AtBlock>(&d.trigger)) return block >= at->block;
    return false;
}

//! Applies the token's transfer semantics. Returns the amount credited to `to`.
TokenAmount move_tokens(TxContext& tx, const Address& token_addr, const Address& from, const Address& to,
                        TokenAmount amount, TransferContext ctx) {
    TokenState& t = token_or_revert(tx, token_addr);
    const TokenAmount from_balance = t.balance(from);
    if (from_balance < amount) throw Revert{"balanceNotEnough"};
    if (amount.is_zero()) return TokenAmount{};

    auto plain_move = [&](const TokenAmount& value) {
        t.balances[from] -= value;
        credit(t, to, value);
        emit_transfer(tx, token_addr, from, to, value, true);
        return value;
    };
    auto taxed_move = [&](const TokenAmount& value, const Rational& tax) {
        const TokenAmount net = tax.complement().apply(value);
        const TokenAmount fee = value - net;
        t.balances[from] -= value;
        credit(t, to, net);
        credit(t, t.owner, fee);
        emit_transfer(tx, token_addr, from, to, net, true);
        if (!fee.is_zero()) emit_transfer(tx, token_addr, from, t.owner, fee, true);
        return net;
    };

    const bool owner_involved = from == t.owner || to == t.owner;
    TokenAmount delivered = std::visit(
        [&](auto& b) -> TokenAmount {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Honest>) {
                if (ctx == TransferContext::PoolIn || owner_involved || b.tax.is_zero()) return plain_move(amount);
                return taxed_move(amount, b.tax);
            } else if constexpr (std::is_same_v<T, HiddenTax>) {
                const bool full = from == t.owner || b.exempt.contains(from);
                const TokenAmount kept = full ? amount : b.keep_fraction.apply(amount);
                t.balances[from] -= amount;
                credit(t, to, kept);
                t.total_supply -= amount - kept;
                // The event always claims the full amount.
                emit_transfer(tx, token_addr, from, to, amount, true);
                return kept;
            } else if constexpr (std::is_same_v<T, OwnerDrain>) {
                return plain_move(amount);
            } else if constexpr (std::is_same_v<T, ListGate>) {
                if (ctx != TransferContext::PoolOut && from != t.owner && tx.block >= b.active_from &&
                    gate_forbids(b, from)) {
                    throw Revert{b.mode == GateMode::Allow ? "ERC20: transfer to the zero address" : ""};
                }
                return plain_move(amount);
            } else if constexpr (std::is_same_v<T, LimitedSell>) {
                TokenAmount value = amount;
                if (ctx == TransferContext::PoolIn && from != t.owner && !b.fee_exempt.contains(from) &&
                    !b.fee_exempt.contains(to)) {
                    const TokenAmount cap = b.max_sell_rate.apply(from_balance);
                    if (value > cap) value = cap;
                }
                if (value.is_zero()) return TokenAmount{};
                return plain_move(value);
            } else {
                if (ctx == TransferContext::PoolIn && from != t.owner && delayed_switched(b, tx.block) &&
                    !b.final_sell_tax.is_zero()) {
                    return taxed_move(amount, b.final_sell_tax);
                }
                return plain_move(amount);
            }
        },
        t.behavior);

    if (auto* delayed = std::get_if<DelayedSellTax>(&t.behavior);
        delayed && ctx == TransferContext::PoolOut && to != t.owner) {
        t.buyers.insert(to);
        const auto* after = std::get_if<AfterBuyers>(&delayed->trigger);
        if (after && !delayed->switched && t.buyers.size() >= after->count) {
            delayed->switched = true;
            t.activated_at = tx.block;
        }
    }
    return delivered;
}

TokenAmount do_swap(TxContext& tx, const Address& pool_addr, const Address& trader, const Address& token_in,
                    const TokenAmount& amount_in, const Address& recipient) {
    MockPool& pool = pool_or_revert(tx, pool_addr);
    if (!pool.info.has_token(token_in)) throw Revert{"UniswapV2Library: INVALID_PATH"};
    if (amount_in.is_zero()) throw Revert{"UniswapV2: INSUFFICIENT_INPUT_AMOUNT"};
    if (pool.reserve_x.is_zero() || pool.reserve_y.is_zero()) throw Revert{"UniswapV2: INSUFFICIENT_LIQUIDITY"};

    const bool in_is_x = token_in == pool.info.token_x;
    const Address token_out = pool.info.other(token_in);

    const TokenAmount before = token_or_revert(tx, token_in).balance(pool_addr);
    move_tokens(tx, token_in, trader, pool_addr, amount_in, TransferContext::PoolIn);
    const TokenAmount received = token_or_revert(tx, token_in).balance(pool_addr) - before;

    MockPool& p = pool;
    TokenAmount& reserve_in = in_is_x ? p.reserve_x : p.reserve_y;
    TokenAmount& reserve_out = in_is_x ? p.reserve_y : p.reserve_x;
    const TokenAmount out =
        received.is_zero() ? TokenAmount{} : sim::estimate_output(reserve_in, reserve_out, received, p.info.fee);
    reserve_in += received;
    reserve_out -= out;

    if (!out.is_zero()) move_tokens(tx, token_out, pool_addr, recipient, out, TransferContext::PoolOut);
    tx.swaps.emplace_back(pool_addr,
                          SwapRecord{tx.hash, tx.index(), trader, token_in, amount_in, token_out, out, recipient});
    return out;
}

}  // namespace

const Address MockChain::kRouterV2 = Address::from_hex("0x7a250d5630b4cf539739df2c5dacb4c659f2488d");
const Address MockChain::kRouterV3 = Address::from_hex("0x68b3465833fb72a70ecdf485e0e4c7bd8665fc45");

TokenAmount TokenState::balance(const Address& holder) const {
    auto it = balances.find(holder);
    return it == balances.end() ? TokenAmount{} : it->second;
}

MockChain::MockChain() { sealed_.push_back(std::make_shared<const WorldState>()); }

BlockNumber MockChain::pending_block() const {
    std::shared_lock lock{mutex_};
    return sealed_.size();
}

BlockNumber MockChain::head() const {
    std::shared_lock lock{mutex_};
    return sealed_.size() - 1;
}

template <typename Fn>
CallOutcome MockChain::execute(const Address& from, Fn&& body) {
    std::unique_lock lock{mutex_};
    WorldState scratch = pending_;
    const BlockNumber block = sealed_.size();
    TxContext tx{scratch, block, next_tx_index_, from, tx_hash(block, next_tx_index_, from, nonce_++)};
    ++next_tx_index_;
    tx_senders_.emplace(tx.hash, from);

    CallOutcome outcome;
    try {
        outcome.return_value = body(tx);
    } catch (const Revert& r) {
        outcome.status = CallStatus::Revert;
        outcome.revert_reason = r.reason.empty() ? std::string{"execution reverted"} : r.reason;
        return outcome;
    }
    pending_ = std::move(scratch);
    for (const auto& t : tx.transfers) {
        if (t.logged) outcome.transfers.push_back(t);
    }
    for (const auto& [pool, swap] : tx.swaps) outcome.swaps.push_back(swap);
    logs_.transfers.insert(logs_.transfers.end(), tx.transfers.begin(), tx.transfers.end());
    logs_.swaps.insert(logs_.swaps.end(), tx.swaps.begin(), tx.swaps.end());
    logs_.approvals.insert(logs_.approvals.end(), tx.approvals.begin(), tx.approvals.end());
    logs_.liquidity.insert(logs_.liquidity.end(), tx.liquidity.begin(), tx.liquidity.end());
    logs_.pools_created.insert(logs_.pools_created.end(), tx.pools_created.begin(), tx.pools_created.end());
    return outcome;
}

Address MockChain::deploy_token(const TokenBehavior& behavior, const TokenAmount& supply, const Address& owner,
                                std::string label) {
    validate(behavior);
    if (supply.is_zero()) throw Error{Errc::invalid_argument, "token supply must be positive"};
    Address address;
    {
        std::shared_lock lock{mutex_};
        address = derive_address("token", nonce_, owner);
    }
    auto outcome = execute(owner, [&](TxContext& tx) -> std::optional<TokenAmount> {
        TokenState t;
        t.behavior = behavior;
        t.owner = owner;
        t.total_supply = supply;
        t.balances[owner] = supply;
        t.label = std::move(label);
        if (auto* d = std::get_if<DelayedSellTax>(&t.behavior)) {
            if (d->switched) t.activated_at = tx.block;
            else if (delayed_switched(*d, tx.block)) {
                d->switched = true;
                t.activated_at = tx.block;
            }
        }
        tx.state.tokens.emplace(address, std::move(t));
        emit_transfer(tx, address, Address{}, owner, supply, true);
        return std::nullopt;
    });
    if (!outcome.ok()) throw Error{Errc::invalid_argument, "token deployment failed: " + *outcome.revert_reason};
    return address;
}

Address MockChain::create_pool(const Address& token_x, const Address& token_y, const Rational& fee,
                               const Address& creator) {
    PoolInfo info;
    {
        std::shared_lock lock{mutex_};
        if (!pending_.tokens.contains(token_x) || !pending_.tokens.contains(token_y)) {
            throw Error{Errc::unknown_token, "create_pool: token not deployed"};
        }
        info.pool = derive_address("pool", nonce_, token_x);
        info.created_at = sealed_.size();
    }
    info.token_x = token_x;
    info.token_y = token_y;
    info.fee = fee;
    info.validate();
    auto outcome = execute(creator, [&](TxContext& tx) -> std::optional<TokenAmount> {
        tx.state.pools.emplace(info.pool, MockPool{info, {}, {}, std::nullopt});
        tx.pools_created.push_back(info);
        return std::nullopt;
    });
    if (!outcome.ok()) throw Error{Errc::invalid_argument, "pool creation failed: " + *outcome.revert_reason};
    return info.pool;
}

CallOutcome MockChain::token_transfer(const Address& token, const Address& from, const Address& to,
                                      const TokenAmount& amount, TransferContext context) {
    return execute(from, [&](TxContext& tx) -> std::optional<TokenAmount> {
        return move_tokens(tx, token, from, to, amount, context);
    });
}

CallOutcome MockChain::approve(const Address& token, const Address& owner, const Address& spender,
                               const TokenAmount& amount) {
    return execute(owner, [&](TxContext& tx) -> std::optional<TokenAmount> {
        token_or_revert(tx, token).allowances[{owner, spender}] = amount;
        tx.approvals.push_back(ApproveRecord{token, tx.index(), owner, spender, amount, tx.hash});
        return std::nullopt;
    });
}

CallOutcome MockChain::owner_drain(const Address& token, const Address& caller, const Address& victim) {
    return execute(caller, [&](TxContext& tx) -> std::optional<TokenAmount> {
        TokenState& t = token_or_revert(tx, token);
        const auto* drain = std::get_if<OwnerDrain>(&t.behavior);
        if (drain == nullptr) throw Revert{"function selector was not recognized"};
        if (caller != drain->owner) throw Revert{"ERC20: mint to the zero address"};
        const TokenAmount amount = t.balance(victim);
        if (amount.is_zero()) return TokenAmount{};
        t.balances[victim] = TokenAmount{};
        t.total_supply -= amount;
        emit_transfer(tx, token, victim, Address{}, amount, drain->emits_event);
        return amount;
    });
}

CallOutcome MockChain::swap(const Address& pool, const Address& trader, const Address& token_in,
                            const TokenAmount& amount_in, const Address& recipient) {
    return execute(trader, [&](TxContext& tx) -> std::optional<TokenAmount> {
        return do_swap(tx, pool, trader, token_in, amount_in, recipient);
    });
}

CallOutcome MockChain::add_liquidity(const Address& pool, const Address& provider, const TokenAmount& x,
                                     const TokenAmount& y) {
    return execute(provider, [&](TxContext& tx) -> std::optional<TokenAmount> {
        MockPool& p = pool_or_revert(tx, pool);
        if (p.provider && *p.provider != provider) throw Revert{"single liquidity provider per pool"};
        if (x.is_zero() && y.is_zero()) throw Revert{"UniswapV2: INSUFFICIENT_LIQUIDITY_MINTED"};
        const PoolInfo info = p.info;
        auto deposit = [&](const Address& token, const TokenAmount& amount) {
            if (amount.is_zero()) return TokenAmount{};
            const TokenAmount before = token_or_revert(tx, token).balance(pool);
            move_tokens(tx, token, provider, pool, amount, TransferContext::PoolIn);
            return token_or_revert(tx, token).balance(pool) - before;
        };
        const TokenAmount got_x = deposit(info.token_x, x);
        const TokenAmount got_y = deposit(info.token_y, y);
        MockPool& after = pool_or_revert(tx, pool);
        after.reserve_x += got_x;
        after.reserve_y += got_y;
        after.provider = provider;
        tx.liquidity.push_back(LiquidityEvent{pool, tx.index(), LiquidityKind::Add, got_x, got_y, provider});
        return std::nullopt;
    });
}

CallOutcome MockChain::remove_liquidity(const Address& pool, const Address& provider) {
    return execute(provider, [&](TxContext& tx) -> std::optional<TokenAmount> {
        MockPool& p = pool_or_revert(tx, pool);
        if (!p.provider || *p.provider != provider) throw Revert{"not the liquidity provider"};
        if (p.reserve_x.is_zero() && p.reserve_y.is_zero()) throw Revert{"UniswapV2: INSUFFICIENT_LIQUIDITY_BURNED"};
        const PoolInfo info = p.info;
        const TokenAmount rx = p.reserve_x;
        const TokenAmount ry = p.reserve_y;
        p.reserve_x = TokenAmount{};
        p.reserve_y = TokenAmount{};
        move_tokens(tx, info.token_x, pool, provider, rx, TransferContext::PoolOut);
        move_tokens(tx, info.token_y, pool, provider, ry, TransferContext::PoolOut);
        tx.liquidity.push_back(LiquidityEvent{pool, tx.index(), LiquidityKind::Remove, rx, ry, provider});
        return std::nullopt;
    });
}

CallOutcome MockChain::flip_switch(const Address& token, const Address& caller) {
    return execute(caller, [&](TxContext& tx) -> std::optional<TokenAmount> {
        TokenState& t = token_or_revert(tx, token);
        if (!has_switch(t.behavior)) throw Revert{"function selector was not recognized"};
        if (caller != t.owner) throw Revert{"Ownable: caller is not the owner"};
        if (auto* d = std::get_if<DelayedSellTax>(&t.behavior)) {
            if (!d->switched) {
                d->switched = true;
                t.activated_at = tx.block;
            }
        } else if (auto* g = std::get_if<ListGate>(&t.behavior)) {
            if (g->active_from > tx.block) {
                g->active_from = tx.block;
                t.activated_at = tx.block;
            }
        }
        return std::nullopt;
    });
}

void MockChain::begin_block(BlockNumber number) {
    for (auto& [address, t] : pending_.tokens) {
        if (auto* d = std::get_if<DelayedSellTax>(&t.behavior); d && !d->switched && delayed_switched(*d, number)) {
            d->switched = true;
            t.activated_at = number;
        }
    }
}

BlockNumber MockChain::advance_block(std::uint64_t n) {
    if (n == 0) throw Error{Errc::invalid_argument, "advance_block needs n >= 1"};
    std::unique_lock lock{mutex_};
    for (std::uint64_t i = 0; i < n; ++i) {
        sealed_.push_back(std::make_shared<const WorldState>(pending_));
        next_tx_index_ = 0;
        begin_block(sealed_.size());
    }
    return sealed_.size() - 1;
}

std::shared_ptr<const WorldState> MockChain::state_at(BlockNumber block) const {
    std::shared_lock lock{mutex_};
    if (block >= sealed_.size()) {
        throw Error{Errc::invalid_argument, "block " + std::to_string(block) + " is beyond head"};
    }
    return sealed_[block];
}

std::optional<Address> MockChain::transaction_sender(const Hash32& hash) const {
    std::shared_lock lock{mutex_};
    auto it = tx_senders_.find(hash);
    if (it == tx_senders_.end()) return std::nullopt;
    return it->second;
}

std::vector<TransferRecord> MockChain::all_transfers() const {
    std::shared_lock lock{mutex_};
    const BlockNumber head = sealed_.size() - 1;
    std::vector<TransferRecord> out;
    for (const auto& t : logs_.transfers) {
        if (t.block.number <= head) out.push_back(t);
    }
    return out;
}

MockChain::ChainLog MockChain::log_snapshot() const {
    std::shared_lock lock{mutex_};
    return logs_;
}

BlockRange MockChain::clip(BlockRange range) const {
    const BlockNumber head = sealed_.size() - 1;
    if (range.to > head) range.to = head;
    return range;
}

bool MockChain::knows_pool(const Address& pool) const { return sealed_.back()->pools.contains(pool); }

bool MockChain::knows_token(const Address& token) const { return sealed_.back()->tokens.contains(token); }

std::vector<PoolInfo> MockChain::get_pool_created(BlockRange range) const {
    std::shared_lock lock{mutex_};
    range = clip(range);
    std::vector<PoolInfo> out;
    if (range.empty()) return out;
    for (const auto& p : logs_.pools_created) {
        if (range.contains(p.created_at)) out.push_back(p);
    }
    return out;
}

std::vector<SwapRecord> MockChain::get_swaps(const Address& pool, BlockRange range) const {
    std::shared_lock lock{mutex_};
    if (!knows_pool(pool)) throw Error{Errc::unknown_pool, "unknown pool " + pool.to_hex()};
    range = clip(range);
    std::vector<SwapRecord> out;
    if (range.empty()) return out;
    for (const auto& [p, swap] : logs_.swaps) {
        if (p == pool && range.contains(swap.block.number)) out.push_back(swap);
    }
    return out;
}

std::vector<LiquidityEvent> MockChain::get_liquidity_events(const Address& pool, BlockRange range) const {
    std::shared_lock lock{mutex_};
    if (!knows_pool(pool)) throw Error{Errc::unknown_pool, "unknown pool " + pool.to_hex()};
    range = clip(range);
    std::vector<LiquidityEvent> out;
    if (range.empty()) return out;
    for (const auto& e : logs_.liquidity) {
        if (e.pool == pool && range.contains(e.block.number)) out.push_back(e);
    }
    return out;
}

std::vector<TransferRecord> MockChain::get_transfers(const Address& token, BlockRange range) const {
    std::shared_lock lock{mutex_};
    if (!knows_token(token)) throw Error{Errc::unknown_token, "unknown token " + token.to_hex()};
    range = clip(range);
    std::vector<TransferRecord> out;
    if (range.empty()) return out;
    for (const auto& t : logs_.transfers) {
        if (t.logged && t.token == token && range.contains(t.block.number)) out.push_back(t);
    }
    return out;
}

std::vector<ApproveRecord> MockChain::get_approvals(const Address& token, BlockRange range) const {
    std::shared_lock lock{mutex_};
    if (!knows_token(token)) throw Error{Errc::unknown_token, "unknown token " + token.to_hex()};
    range = clip(range);
    std::vector<ApproveRecord> out;
    if (range.empty()) return out;
    for (const auto& a : logs_.approvals) {
        if (a.token == token && range.contains(a.block.number)) out.push_back(a);
    }
    return out;
}

BalanceReading MockChain::balance_of(const Address& token, const Address& holder, BlockNumber block) const {
    const auto state = state_at(block);
    BalanceReading reading;
    reading.snapshot = BalanceSnapshot{token, holder, BlockIndex{block, std::nullopt}, TokenAmount{}};
    auto it = state->tokens.find(token);
    if (it == state->tokens.end()) {
        reading.ok = false;
        reading.failure = "call to non-contract";
        return reading;
    }
    reading.snapshot.balance = it->second.balance(holder);
    return reading;
}

Reserves MockChain::get_reserves(const Address& pool, BlockNumber block) const {
    const auto state = state_at(block);
    auto it = state->pools.find(pool);
    if (it == state->pools.end()) {
        throw Error{Errc::unknown_pool, "pool " + pool.to_hex() + " does not exist at block " + std::to_string(block)};
    }
    return Reserves{it->second.reserve_x, it->second.reserve_y};
}

std::vector<CallOutcome> MockChain::simulate_bundle(BlockNumber block, std::span<const Call> calls,
                                                    const StateOverrides& overrides) const {
    if (calls.empty()) throw Error{Errc::empty_input, "simulate_bundle: empty call list"};
    WorldState fork = *state_at(block);
    for (const auto& o : overrides.balances) {
        auto it = fork.tokens.find(o.token);
        if (it == fork.tokens.end()) continue;
        auto& t = it->second;
        t.total_supply = t.total_supply - t.balance(o.holder) + o.balance;
        t.balances[o.holder] = o.balance;
    }

    std::vector<CallOutcome> outcomes;
    outcomes.reserve(calls.size());
    std::uint32_t index = 0;
    for (const auto& call : calls) {
        WorldState scratch = fork;
        TxContext tx{scratch, block, index, call.from, tx_hash(block, index, call.from, ~std::uint64_t{0})};
        ++index;
        CallOutcome outcome;
        try {
            outcome.return_value = std::visit(
                [&](const auto& action) -> std::optional<TokenAmount> {
                    using T = std::decay_t<decltype(action)>;
                    if constexpr (std::is_same_v<T, BalanceOfCall>) {
                        return token_or_revert(tx, action.token).balance(action.holder);
                    } else if constexpr (std::is_same_v<T, ApproveCall>) {
                        token_or_revert(tx, action.token).allowances[{call.from, action.spender}] = action.amount;
                        tx.approvals.push_back(
                            ApproveRecord{action.token, tx.index(), call.from, action.spender, action.amount, tx.hash});
                        return std::nullopt;
                    } else {
                        if (action.approve_first) {
                            token_or_revert(tx, action.token_in).allowances[{call.from, action.router}] =
                                action.amount_in;
                        }
                        return do_swap(tx, action.pool, call.from, action.token_in, action.amount_in, action.recipient);
                    }
                },
                call.action);
        } catch (const Revert& r) {
            outcome.status = CallStatus::Revert;
            outcome.revert_reason = r.reason.empty() ? std::string{"execution reverted"} : r.reason;
            outcomes.push_back(std::move(outcome));
            continue;
        }
        fork = std::move(scratch);
        for (const auto& t : tx.transfers) {
            if (t.logged) outcome.transfers.push_back(t);
        }
        for (const auto& [pool, swap] : tx.swaps) outcome.swaps.push_back(swap);
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

Address MockChain::router(DexVersion version) const { return version == DexVersion::V2 ? kRouterV2 : kRouterV3; }

}  // namespace honeyscan::mock
