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


#include <honeyscan/rpc/rpc_chain.hpp>

#include <algorithm>

#include <honeyscan/rpc/abi.hpp>

namespace honeyscan::rpc {

namespace {

using nlohmann::json;

std::string quantity(std::uint64_t v) { return TokenAmount{v}.to_hex(); }

std::uint64_t parse_quantity(const json& j, std::string_view what) {
    if (!j.is_string()) throw Error{Errc::rpc, std::string{what} + ": expected a hex quantity, got " + j.dump()};
    const auto v = TokenAmount::from_hex(j.get<std::string>());
    if (v > TokenAmount{~std::uint64_t{0}}) throw Error{Errc::rpc, std::string{what} + " exceeds 64 bits"};
    return static_cast<std::uint64_t>(v.raw());
}

Bytes parse_data(const json& j) {
    if (!j.is_string()) throw Error{Errc::rpc, "expected hex data, got " + j.dump()};
    return from_hex(j.get<std::string>());
}

json tx_json(const Address& from, const Address& to, const Bytes& data) {
    return {{"from", from.to_hex()}, {"to", to.to_hex()}, {"data", to_hex(data)}};
}

Bytes encode(abi::Encoder e) { return e.bytes(); }

std::uint64_t fee_units(const Rational& fee) {
    return static_cast<std::uint64_t>((boost::multiprecision::uint128_t{fee.num} * 1000000) / fee.den);
}

std::string strip_revert_prefix(std::string message) {
    static constexpr std::string_view kPrefix = "execution reverted: ";
    if (message.starts_with(kPrefix)) message.erase(0, kPrefix.size());
    return message;
}

//! Reason for a failed eth_call: Error(string) data when present, else the message.
std::string revert_reason(const RpcError& e) {
    if (e.data().is_string()) {
        try {
            if (auto r = abi::decode_revert_reason(from_hex(e.data().get<std::string>()))) return *r;
        } catch (const Error&) {
        }
    }
    return strip_revert_prefix(e.message());
}

}  // namespace

std::tuple<bool, Bytes, std::string> parse_call_result(const json& entry) {
    if (!entry.is_object()) throw Error{Errc::rpc, "callMany entry is not an object: " + entry.dump()};
    if (!entry.contains("error") || entry.at("error").is_null()) {
        return {true, parse_data(entry.value("value", json{"0x"})), {}};
    }
    const auto& err = entry.at("error");
    std::string message = err.is_string() ? err.get<std::string>() : err.value("message", std::string{});
    json data = entry.value("value", err.is_object() ? err.value("data", json{}) : json{});
    if (data.is_string()) {
        const auto raw = from_hex(data.get<std::string>());
        if (auto r = abi::decode_revert_reason(raw)) return {false, raw, *r};
        return {false, raw, strip_revert_prefix(message)};
    }
    return {false, {}, strip_revert_prefix(message)};
}

RpcChain::RpcChain(std::shared_ptr<Transport> transport, RpcConfig config)
    : config_{std::move(config)}, client_{std::make_unique<RpcClient>(std::move(transport), config_.endpoint)} {
    verify_event_registry();
}

Capabilities RpcChain::probe() {
    Capabilities caps;
    const json params = json::array({json::array({{{"transactions", json::array()}}}),
                                     {{"blockNumber", quantity(head())}, {"transactionIndex", -1}}, json::object()});
    try {
        client_->call("eth_callMany", params);
        caps.call_many = true;
        caps.detail = "eth_callMany available";
        call_many_ = 1;
    } catch (const RpcError& e) {
        if (!e.method_not_found()) throw;
        caps.detail = "eth_callMany unavailable (" + e.message() + "); bundles fall back to eth_call and are degraded";
        call_many_ = 0;
    }
    return caps;
}

BlockNumber RpcChain::head() const { return parse_quantity(client_->call("eth_blockNumber"), "eth_blockNumber"); }

void RpcChain::fetch_chunk(const LogFilter& filter, BlockRange range, std::vector<RawLog>& out) const {
    json addresses = json::array();
    for (const auto& a : filter.addresses) addresses.push_back(a.to_hex());
    json topic0 = json::array();
    for (const auto& t : filter.topic0) topic0.push_back(t.to_hex());
    const json params = json::array(
        {{{"fromBlock", quantity(range.from)}, {"toBlock", quantity(range.to)}, {"address", addresses}, {"topics", json::array({topic0})}}});
    json result;
    try {
        result = client_->call("eth_getLogs", params);
    } catch (const RpcError& e) {
        if (!e.result_limit()) throw;
        if (range.length() == 1) {
            throw Error{Errc::node_limit, "log query for single block " + std::to_string(range.from) + " exceeds node limit"};
        }
        const BlockNumber mid = range.from + (range.to - range.from) / 2;
        fetch_chunk(filter, BlockRange{range.from, mid}, out);
        fetch_chunk(filter, BlockRange{mid + 1, range.to}, out);
        return;
    }
    if (!result.is_array()) throw Error{Errc::rpc, "eth_getLogs returned a non-array"};
    for (const auto& entry : result) {
        try {
            out.push_back(raw_log_from_json(entry));
        } catch (const Error&) {
            ++skipped_;
        }
    }
}

std::vector<RawLog> RpcChain::fetch_logs(const LogFilter& filter) const {
    std::vector<RawLog> out;
    if (filter.range.empty()) return out;
    for (BlockNumber from = filter.range.from; from <= filter.range.to;) {
        const BlockNumber span = std::min<BlockNumber>(config_.max_log_range - 1, filter.range.to - from);
        fetch_chunk(filter, BlockRange{from, from + span}, out);
        if (from + span == filter.range.to) break;
        from += span + 1;
    }
    std::stable_sort(out.begin(), out.end(), [](const RawLog& a, const RawLog& b) {
        return std::tie(a.block, a.log_index) < std::tie(b.block, b.log_index);
    });
    return out;
}

void RpcChain::require_code(const Address& account, Errc missing) const {
    {
        std::lock_guard lock{mutex_};
        if (has_code_.contains(account)) return;
    }
    const auto code = parse_data(client_->call("eth_getCode", json::array({account.to_hex(), "latest"})));
    if (code.empty()) {
        throw Error{missing, (missing == Errc::unknown_pool ? "unknown pool " : "unknown token ") + account.to_hex()};
    }
    std::lock_guard lock{mutex_};
    has_code_[account] = true;
}

PoolInfo RpcChain::pool_info(const Address& pool) const {
    {
        std::lock_guard lock{mutex_};
        if (auto it = pools_.find(pool); it != pools_.end()) return it->second;
    }
    std::vector<Request> reqs;
    for (const auto& s : {abi::sel::token0(), abi::sel::token1(), abi::sel::fee()}) {
        reqs.push_back({"eth_call", json::array({tx_json(Address{}, pool, encode(abi::Encoder{s})), "latest"})});
    }
    const auto replies = client_->batch(reqs);
    auto address_reply = [&](const Reply& r) {
        if (r.error) throw Error{Errc::unknown_pool, "not a pool: " + pool.to_hex() + " (" + r.error->message() + ")"};
        const auto data = parse_data(r.result);
        if (data.size() < 32) throw Error{Errc::unknown_pool, "not a pool: " + pool.to_hex()};
        return abi::to_address(abi::word_at(data, 0));
    };
    PoolInfo info;
    info.pool = pool;
    info.token_x = address_reply(replies[0]);
    info.token_y = address_reply(replies[1]);
    if (!replies[2].error) {
        const auto data = parse_data(replies[2].result);
        if (data.size() >= 32) {
            const auto fee = abi::to_amount(abi::word_at(data, 0));
            if (fee < TokenAmount{1000000}) {
                info.dex_version = DexVersion::V3;
                info.fee = Rational{static_cast<std::uint64_t>(fee.raw()), 1000000};
            }
        }
    }
    std::lock_guard lock{mutex_};
    return pools_.try_emplace(pool, info).first->second;
}

std::vector<PoolInfo> RpcChain::get_pool_created(BlockRange range) const {
    range.to = std::min(range.to, head());
    LogFilter f{{config_.contracts.v2_factory, config_.contracts.v3_factory},
                {signature_of(EventKind::PairCreated).topic0(), signature_of(EventKind::PoolCreated).topic0()},
                range};
    std::vector<PoolInfo> out;
    for (const auto& log : fetch_logs(f)) {
        try {
            out.push_back(decode_pool_created(log));
        } catch (const Error&) {
            ++skipped_;
        }
    }
    std::lock_guard lock{mutex_};
    for (const auto& p : out) pools_.try_emplace(p.pool, p);
    return out;
}

std::vector<SwapRecord> RpcChain::get_swaps(const Address& pool, BlockRange range) const {
    require_code(pool, Errc::unknown_pool);
    const auto info = pool_info(pool);
    range.to = std::min(range.to, head());
    const auto kind = info.dex_version == DexVersion::V2 ? EventKind::SwapV2 : EventKind::SwapV3;
    std::vector<SwapRecord> out;
    for (const auto& log : fetch_logs(LogFilter{{pool}, {signature_of(kind).topic0()}, range})) {
        try {
            out.push_back(decode_swap(log, info));
        } catch (const Error&) {
            ++skipped_;
        }
    }
    return out;
}

std::vector<LiquidityEvent> RpcChain::get_liquidity_events(const Address& pool, BlockRange range) const {
    require_code(pool, Errc::unknown_pool);
    const auto info = pool_info(pool);
    range.to = std::min(range.to, head());
    const bool v2 = info.dex_version == DexVersion::V2;
    const auto mint = v2 ? EventKind::MintV2 : EventKind::MintV3;
    const auto burn = v2 ? EventKind::BurnV2 : EventKind::BurnV3;
    const auto logs = fetch_logs(LogFilter{{pool}, {signature_of(mint).topic0(), signature_of(burn).topic0()}, range});
    auto needs_sender = [&](const RawLog& log) {
        return v2 && !log.tx_hash.is_zero() && kind_of(log.topics.at(0)) == EventKind::MintV2;
    };
    std::vector<Hash32> mint_txs;
    for (const auto& log : logs) {
        if (needs_sender(log)) mint_txs.push_back(log.tx_hash);
    }
    resolve_senders(mint_txs);
    std::vector<LiquidityEvent> out;
    for (const auto& log : logs) {
        try {
            const Address from = needs_sender(log) ? sender_of(log.tx_hash) : Address{};
            out.push_back(decode_liquidity(log, info, from));
        } catch (const Error&) {
            ++skipped_;
        }
    }
    return out;
}

std::vector<TransferRecord> RpcChain::get_transfers(const Address& token, BlockRange range) const {
    require_code(token, Errc::unknown_token);
    range.to = std::min(range.to, head());
    std::vector<TransferRecord> out;
    for (const auto& log : fetch_logs(LogFilter{{token}, {signature_of(EventKind::Transfer).topic0()}, range})) {
        try {
            out.push_back(decode_transfer(log));
        } catch (const Error&) {
            ++skipped_;
        }
    }
    std::vector<Hash32> hashes;
    for (const auto& t : out) hashes.push_back(t.tx_hash);
    resolve_senders(hashes);
    for (auto& t : out) t.tx_from = sender_of(t.tx_hash);
    return out;
}

std::vector<ApproveRecord> RpcChain::get_approvals(const Address& token, BlockRange range) const {
    require_code(token, Errc::unknown_token);
    range.to = std::min(range.to, head());
    std::vector<ApproveRecord> out;
    for (const auto& log : fetch_logs(LogFilter{{token}, {signature_of(EventKind::Approval).topic0()}, range})) {
        try {
            out.push_back(decode_approval(log));
        } catch (const Error&) {
            ++skipped_;
        }
    }
    return out;
}

void RpcChain::resolve_senders(std::span<const Hash32> hashes) const {
    std::vector<Hash32> missing;
    {
        std::lock_guard lock{mutex_};
        for (const auto& h : hashes) {
            if (!senders_.contains(h) && std::find(missing.begin(), missing.end(), h) == missing.end()) missing.push_back(h);
        }
    }
    if (missing.empty()) return;
    std::vector<Request> reqs;
    for (const auto& h : missing) reqs.push_back({"eth_getTransactionByHash", json::array({h.to_hex()})});
    const auto replies = client_->batch(reqs);
    std::lock_guard lock{mutex_};
    for (std::size_t i = 0; i < missing.size(); ++i) {
        const auto& tx = replies[i].value();
        if (!tx.is_object() || !tx.contains("from")) {
            throw Error{Errc::rpc, "transaction " + missing[i].to_hex() + " not found"};
        }
        senders_[missing[i]] = Address::from_hex(tx.at("from").get<std::string>());
    }
}

Address RpcChain::sender_of(const Hash32& hash) const {
    std::lock_guard lock{mutex_};
    if (auto it = senders_.find(hash); it != senders_.end()) return it->second;
    throw Error{Errc::rpc, "sender of " + hash.to_hex() + " not resolved"};
}

BalanceReading RpcChain::balance_of(const Address& token, const Address& holder, BlockNumber block) const {
    const Address holders[] = {holder};
    return balances_of(token, holders, block).front();
}

std::vector<BalanceReading> RpcChain::balances_of(const Address& token, std::span<const Address> holders,
                                                  BlockNumber block) const {
    std::vector<Request> reqs;
    for (const auto& h : holders) {
        reqs.push_back({"eth_call", json::array({tx_json(Address{}, token, encode(abi::Encoder{abi::sel::balance_of()}.add(h))),
                                                 quantity(block)})});
    }
    const auto replies = client_->batch(reqs);
    std::vector<BalanceReading> out;
    for (std::size_t i = 0; i < holders.size(); ++i) {
        BalanceReading r;
        r.snapshot = BalanceSnapshot{token, holders[i], BlockIndex{block, std::nullopt}, TokenAmount{}};
        if (replies[i].error) {
            if (!replies[i].error->reverted()) throw *replies[i].error;
            r.ok = false;
            r.failure = revert_reason(*replies[i].error);
        } else {
            const auto data = parse_data(replies[i].result);
            if (data.size() < 32) {
                r.ok = false;
                r.failure = "call to non-contract";
            } else {
                r.snapshot.balance = abi::to_amount(abi::word_at(data, 0));
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

Reserves RpcChain::get_reserves(const Address& pool, BlockNumber block) const {
    const auto info = pool_info(pool);
    auto absent = [&] {
        return Error{Errc::unknown_pool, "pool " + pool.to_hex() + " does not exist at block " + std::to_string(block)};
    };
    if (info.dex_version == DexVersion::V3) {
        if (block < info.created_at) throw absent();
        const Address holder[] = {pool};
        const auto x = balances_of(info.token_x, holder, block).front();
        const auto y = balances_of(info.token_y, holder, block).front();
        if (!x.ok || !y.ok) throw absent();
        return Reserves{x.snapshot.balance, y.snapshot.balance};
    }
    json result;
    try {
        result = client_->call("eth_call", json::array({tx_json(Address{}, pool, encode(abi::Encoder{abi::sel::get_reserves()})),
                                                        quantity(block)}));
    } catch (const RpcError& e) {
        if (e.reverted()) throw absent();
        throw;
    }
    const auto data = parse_data(result);
    if (data.size() < 64) throw absent();
    return Reserves{abi::to_amount(abi::word_at(data, 0)), abi::to_amount(abi::word_at(data, 1))};
}

RpcChain::Tx RpcChain::swap_tx(const Call& call, const SwapExactInCall& swap, BlockNumber block) const {
    (void)block;
    const auto info = pool_info(swap.pool);
    if (!info.has_token(swap.token_in)) throw Error{Errc::invalid_argument, "token_in is not a pool token"};
    const Address out = info.other(swap.token_in);
    if (info.dex_version == DexVersion::V2) {
        return Tx{call.from, swap.router,
                  encode(std::move(abi::Encoder{abi::sel::swap_exact_tokens_for_tokens()}
                                       .add(swap.amount_in)
                                       .add(TokenAmount{})
                                       .add_addresses({swap.token_in, out})
                                       .add(swap.recipient)
                                       .add(TokenAmount::max())))};
    }
    return Tx{call.from, swap.router,
              encode(std::move(abi::Encoder{abi::sel::exact_input_single()}
                                   .add(swap.token_in)
                                   .add(out)
                                   .add(abi::word(fee_units(info.fee)))
                                   .add(swap.recipient)
                                   .add(swap.amount_in)
                                   .add(TokenAmount{})
                                   .add(TokenAmount{})))};
}

json RpcChain::override_json(const StateOverrides& overrides) const {
    json out = json::object();
    for (const auto& o : overrides.balances) {
        const auto slot = config_.balance_slot(o.token);
        if (!slot) {
            throw Error{Errc::invalid_argument, "no balance storage slot configured for token " + o.token.to_hex()};
        }
        out[o.token.to_hex()]["stateDiff"][abi::mapping_slot(o.holder, *slot).to_hex()] = to_hex(abi::word(o.balance));
    }
    return out;
}

std::vector<RpcChain::TxResult> RpcChain::run_bundle(BlockNumber block, const std::vector<Tx>& txs,
                                                     const json& overrides, bool& degraded) const {
    json list = json::array();
    for (const auto& t : txs) list.push_back(tx_json(t.from, t.to, t.data));
    std::vector<TxResult> out;
    if (call_many_.load() != 0) {
        const json params = json::array({json::array({{{"transactions", list}}}),
                                         {{"blockNumber", quantity(block)}, {"transactionIndex", -1}}, overrides});
        try {
            const auto result = client_->call("eth_callMany", params);
            if (!result.is_array() || result.size() != 1 || !result[0].is_array() || result[0].size() != txs.size()) {
                throw Error{Errc::rpc, "eth_callMany result does not match the bundle shape"};
            }
            for (const auto& entry : result[0]) {
                auto [ok, value, reason] = parse_call_result(entry);
                out.push_back(TxResult{ok, std::move(value), std::move(reason)});
            }
            call_many_ = 1;
            degraded = false;
            return out;
        } catch (const RpcError& e) {
            if (!e.method_not_found()) throw;
            call_many_ = 0;
        }
    }
    degraded = true;
    std::vector<Request> reqs;
    for (const auto& t : list) reqs.push_back({"eth_call", json::array({t, quantity(block), overrides})});
    for (const auto& r : client_->batch(reqs)) {
        if (r.error) {
            if (!r.error->reverted()) throw *r.error;
            out.push_back(TxResult{false, {}, revert_reason(*r.error)});
        } else {
            out.push_back(TxResult{true, parse_data(r.result), {}});
        }
    }
    return out;
}

std::vector<CallOutcome> RpcChain::simulate_bundle(BlockNumber block, std::span<const Call> calls,
                                                   const StateOverrides& overrides) const {
    if (calls.empty()) throw Error{Errc::empty_input, "simulate_bundle: empty call list"};
    std::vector<Tx> txs;
    std::vector<std::pair<std::size_t, std::size_t>> span_of;  // [first, last] tx per call
    for (const auto& call : calls) {
        const std::size_t first = txs.size();
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, BalanceOfCall>) {
                    txs.push_back(Tx{call.from, a.token, encode(abi::Encoder{abi::sel::balance_of()}.add(a.holder))});
                } else if constexpr (std::is_same_v<T, ApproveCall>) {
                    txs.push_back(Tx{call.from, a.token, encode(abi::Encoder{abi::sel::approve()}.add(a.spender).add(a.amount))});
                } else {
                    if (a.approve_first) {
                        txs.push_back(
                            Tx{call.from, a.token_in, encode(abi::Encoder{abi::sel::approve()}.add(a.router).add(a.amount_in))});
                    }
                    txs.push_back(swap_tx(call, a, block));
                }
            },
            call.action);
        span_of.emplace_back(first, txs.size() - 1);
    }
    bool degraded = false;
    const auto results = run_bundle(block, txs, override_json(overrides), degraded);

    std::vector<CallOutcome> out;
    for (std::size_t i = 0; i < calls.size(); ++i) {
        const auto [first, last] = span_of[i];
        CallOutcome o;
        o.degraded = degraded;
        const TxResult* failed = nullptr;
        for (std::size_t t = first; t <= last && failed == nullptr; ++t) {
            if (!results[t].ok) failed = &results[t];
        }
        if (failed != nullptr) {
            o.status = CallStatus::Revert;
            o.revert_reason = failed->reason.empty() ? std::string{"execution reverted"} : failed->reason;
            out.push_back(std::move(o));
            continue;
        }
        const Bytes& value = results[last].value;
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, BalanceOfCall>) {
                    if (value.size() >= 32) o.return_value = abi::to_amount(abi::word_at(value, 0));
                    else {
                        o.status = CallStatus::Revert;
                        o.revert_reason = "call to non-contract";
                    }
                } else if constexpr (std::is_same_v<T, SwapExactInCall>) {
                    if (pool_info(a.pool).dex_version == DexVersion::V2) {
                        const auto amounts = abi::decode_amount_array(value);
                        if (!amounts.empty()) o.return_value = amounts.back();
                    } else if (value.size() >= 32) {
                        o.return_value = abi::to_amount(abi::word_at(value, 0));
                    }
                }
            },
            calls[i].action);
        out.push_back(std::move(o));
    }
    return out;
}

Address RpcChain::router(DexVersion version) const {
    return version == DexVersion::V2 ? config_.contracts.v2_router : config_.contracts.v3_router;
}

std::optional<TokenAmount> RpcChain::quote_exact_input(const PoolInfo& pool, const Address& token_in,
                                                       const TokenAmount& amount_in, BlockNumber block) const {
    if (pool.dex_version == DexVersion::V2) return std::nullopt;
    const auto data = encode(std::move(abi::Encoder{abi::sel::quote_exact_input_single()}
                                           .add(token_in)
                                           .add(pool.other(token_in))
                                           .add(abi::word(fee_units(pool.fee)))
                                           .add(amount_in)
                                           .add(TokenAmount{})));
    try {
        const auto result = parse_data(
            client_->call("eth_call", json::array({tx_json(Address{}, config_.contracts.quoter, data), quantity(block)})));
        return abi::to_amount(abi::word_at(result, 0));
    } catch (const RpcError& e) {
        throw Error{Errc::probe_failed, "quoter call failed: " + e.message()};
    }
}

}  // namespace honeyscan::rpc
