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

#include <honeyscan/monitor.hpp>

#include <algorithm>

#include <honeyscan/json.hpp>

namespace honeyscan::monitor {

const BalanceSnapshot* BuyerLedger::snapshot_at(BlockNumber block) const {
    auto it = std::lower_bound(snapshots.begin(), snapshots.end(), block,
                               [](const BalanceSnapshot& s, BlockNumber b) { return s.block.number < b; });
    if (it == snapshots.end() || it->block.number != block) return nullptr;
    return &*it;
}

BlockNumber BuyerLedger::first_snapshot_block() const {
    if (snapshots.empty()) throw Error{Errc::missing_snapshot, "buyer " + buyer.to_hex() + " has no snapshots"};
    return snapshots.front().block.number;
}

TokenAmount BuyerLedger::latest_balance() const { return snapshots.empty() ? TokenAmount{} : snapshots.back().balance; }

bool PoolWatch::liquid_at(BlockNumber block) const {
    auto it = has_liquidity.find(block);
    return it != has_liquidity.end() && it->second;
}

std::vector<PoolInfo> discover_pools(const ChainView& chain, BlockRange range) {
    if (range.empty()) return {};
    auto pools = chain.get_pool_created(range);
    for (const auto& p : pools) p.validate();
    return pools;
}

std::vector<Address> trap_candidates(const PoolInfo& pool, const std::set<Address>& base_tokens) {
    const bool x_base = base_tokens.contains(pool.token_x);
    const bool y_base = base_tokens.contains(pool.token_y);
    if (x_base && !y_base) return {pool.token_y};
    if (y_base && !x_base) return {pool.token_x};
    return {pool.token_y, pool.token_x};
}

PoolWatch make_watch(const PoolInfo& pool, const Address& trap_token, BlockNumber start_block) {
    pool.validate();
    if (!pool.has_token(trap_token)) throw Error{Errc::invalid_argument, "trap token is not in the pool"};
    PoolWatch watch;
    watch.pool = pool;
    watch.trap_token = trap_token;
    watch.base_token = pool.other(trap_token);
    watch.start_block = start_block;
    return watch;
}

namespace {

template <typename T>
auto block_slice(const std::vector<T>& records, BlockNumber block) {
    auto lo = std::lower_bound(records.begin(), records.end(), block,
                               [](const T& r, BlockNumber b) { return r.block.number < b; });
    auto hi = std::upper_bound(records.begin(), records.end(), block,
                               [](BlockNumber b, const T& r) { return b < r.block.number; });
    return std::pair{lo, hi};
}

template <typename T>
void sort_by_block(std::vector<T>& records) {
    std::stable_sort(records.begin(), records.end(), [](const T& a, const T& b) { return a.block < b.block; });
}

void push_snapshot(BuyerLedger& ledger, const BalanceReading& reading, BlockNumber block) {
    BalanceSnapshot snap = reading.snapshot;
    snap.block = BlockIndex{block, std::nullopt};
    if (!reading.ok) snap.balance = TokenAmount{};
    if (!ledger.snapshots.empty() && ledger.snapshots.back().block.number >= block) return;
    ledger.snapshots.push_back(snap);
}

// Applies one block's worth of pre-fetched logs.
void apply_block(PoolWatch& watch, const ChainView& chain, BlockNumber block, const std::vector<SwapRecord>& swaps,
                 const std::vector<TransferRecord>& transfers, const std::vector<ApproveRecord>& approvals,
                 const std::vector<LiquidityEvent>& liquidity) {
    const auto [s_lo, s_hi] = block_slice(swaps, block);
    std::vector<Address> fresh;
    for (auto it = s_lo; it != s_hi; ++it) {
        watch.swaps.push_back(*it);
        if (it->token_out != watch.trap_token) continue;
        auto [ledger_it, inserted] = watch.buyers.try_emplace(it->recipient);
        BuyerLedger& ledger = ledger_it->second;
        if (inserted) {
            ledger.buyer = it->recipient;
            ledger.pool = watch.pool.pool;
            ledger.trap_token = watch.trap_token;
            ledger.registered_at = block;
            watch.buyer_order.push_back(it->recipient);
            fresh.push_back(it->recipient);
        }
        ledger.buys.push_back(*it);
    }

    // Baseline snapshots for buyers first seen in this block.
    if (!fresh.empty() && block > 0) {
        const auto readings = chain.balances_of(watch.trap_token, fresh, block - 1);
        for (std::size_t i = 0; i < fresh.size(); ++i) push_snapshot(watch.buyers.at(fresh[i]), readings[i], block - 1);
    }

    const auto [t_lo, t_hi] = block_slice(transfers, block);
    for (auto it = t_lo; it != t_hi; ++it) {
        if (!it->logged) continue;
        if (auto b = watch.buyers.find(it->recipient); b != watch.buyers.end()) b->second.incoming_logged.push_back(*it);
        if (auto b = watch.buyers.find(it->sender); b != watch.buyers.end()) b->second.outgoing_logged.push_back(*it);
    }
    const auto [a_lo, a_hi] = block_slice(approvals, block);
    for (auto it = a_lo; it != a_hi; ++it) {
        if (auto b = watch.buyers.find(it->approver); b != watch.buyers.end()) b->second.approvals.push_back(*it);
    }
    const auto [l_lo, l_hi] = block_slice(liquidity, block);
    watch.liquidity.insert(watch.liquidity.end(), l_lo, l_hi);

    if (!watch.buyer_order.empty()) {
        const auto readings = chain.balances_of(watch.trap_token, watch.buyer_order, block);
        for (std::size_t i = 0; i < watch.buyer_order.size(); ++i) {
            push_snapshot(watch.buyers.at(watch.buyer_order[i]), readings[i], block);
        }
    }

    Reserves reserves;
    if (block >= watch.pool.created_at) {
        try {
            reserves = chain.get_reserves(watch.pool.pool, block);
        } catch (const Error& e) {
            if (e.code() != Errc::unknown_pool) throw;
        }
    }
    watch.reserves[block] = reserves;
    watch.has_liquidity[block] = reserves.has_liquidity();
    watch.last_ingested = block;
}

}  // namespace

void ingest_block(PoolWatch& watch, const ChainView& chain, BlockNumber block) {
    ingest_range(watch, chain, BlockRange{block, block});
}

void ingest_range(PoolWatch& watch, const ChainView& chain, BlockRange range) {
    if (range.empty()) return;
    if (range.from != watch.next_block()) {
        throw Error{Errc::block_gap, "expected block " + std::to_string(watch.next_block()) + ", got " +
                                         std::to_string(range.from)};
    }
    if (range.to > chain.head()) throw Error{Errc::invalid_argument, "range ends beyond the chain head"};
    auto swaps = chain.get_swaps(watch.pool.pool, range);
    auto transfers = chain.get_transfers(watch.trap_token, range);
    auto approvals = chain.get_approvals(watch.trap_token, range);
    auto liquidity = chain.get_liquidity_events(watch.pool.pool, range);
    sort_by_block(swaps);
    sort_by_block(transfers);
    sort_by_block(approvals);
    sort_by_block(liquidity);
    for (BlockNumber b = range.from;; ++b) {
        apply_block(watch, chain, b, swaps, transfers, approvals, liquidity);
        if (b == range.to) break;
    }
}

BuyerDelta buyer_delta(const BuyerLedger& ledger, BlockNumber from_block, BlockNumber to_block) {
    if (from_block > to_block) throw Error{Errc::invalid_argument, "buyer_delta: from after to"};
    const auto* from = ledger.snapshot_at(from_block);
    const auto* to = ledger.snapshot_at(to_block);
    if (from == nullptr || to == nullptr) {
        throw Error{Errc::missing_snapshot, "no snapshot for buyer " + ledger.buyer.to_hex() + " at block " +
                                                std::to_string(from == nullptr ? from_block : to_block)};
    }
    BuyerDelta out;
    out.delta = SignedAmount::difference(to->balance, from->balance);
    TokenAmount in;
    TokenAmount outflow;
    auto in_window = [&](const TransferRecord& t) { return t.block.number > from_block && t.block.number <= to_block; };
    for (const auto& t : ledger.incoming_logged) {
        if (!in_window(t)) continue;
        in += t.value;
        out.transfers.push_back(t);
    }
    for (const auto& t : ledger.outgoing_logged) {
        if (!in_window(t)) continue;
        outflow += t.value;
        // A self-transfer is already in the list from the incoming side.
        if (t.recipient != ledger.buyer) out.transfers.push_back(t);
    }
    sort_by_block(out.transfers);
    out.logged_net = SignedAmount::difference(in, outflow);
    return out;
}

nlohmann::ordered_json to_json(const PoolWatch& w) {
    nlohmann::ordered_json j;
    j["schema"] = kPoolWatchSchema;
    j["pool"] = w.pool;
    j["trap_token"] = w.trap_token;
    j["base_token"] = w.base_token;
    j["start_block"] = w.start_block;
    j["last_ingested"] = w.last_ingested ? nlohmann::ordered_json(*w.last_ingested) : nlohmann::ordered_json();
    j["swaps"] = w.swaps;
    j["liquidity"] = w.liquidity;
    auto& reserves = j["reserves"] = nlohmann::ordered_json::array();
    for (const auto& [block, r] : w.reserves) {
        reserves.push_back({{"block", block}, {"x", r.x.to_decimal()}, {"y", r.y.to_decimal()}});
    }
    auto& buyers = j["buyers"] = nlohmann::ordered_json::array();
    for (const auto& address : w.buyer_order) {
        const auto& l = w.buyers.at(address);
        nlohmann::ordered_json b;
        b["buyer"] = l.buyer;
        b["registered_at"] = l.registered_at;
        b["buys"] = l.buys;
        b["snapshots"] = l.snapshots;
        b["incoming_logged"] = l.incoming_logged;
        b["outgoing_logged"] = l.outgoing_logged;
        b["approvals"] = l.approvals;
        buyers.push_back(std::move(b));
    }
    return j;
}

PoolWatch watch_from_json(const nlohmann::json& j) {
    using detail::field;
    if (!j.is_object() || j.value("schema", std::string{}) != kPoolWatchSchema) {
        throw Error{Errc::schema, "not a " + std::string{kPoolWatchSchema} + " document"};
    }
    PoolWatch w;
    field(j, "pool").get_to(w.pool);
    field(j, "trap_token").get_to(w.trap_token);
    field(j, "base_token").get_to(w.base_token);
    w.start_block = field(j, "start_block").get<BlockNumber>();
    if (const auto& li = field(j, "last_ingested"); !li.is_null()) w.last_ingested = li.get<BlockNumber>();
    field(j, "swaps").get_to(w.swaps);
    field(j, "liquidity").get_to(w.liquidity);
    for (const auto& r : field(j, "reserves")) {
        const auto block = field(r, "block").get<BlockNumber>();
        Reserves res{field(r, "x").get<TokenAmount>(), field(r, "y").get<TokenAmount>()};
        w.reserves[block] = res;
        w.has_liquidity[block] = res.has_liquidity();
    }
    for (const auto& b : field(j, "buyers")) {
        BuyerLedger l;
        field(b, "buyer").get_to(l.buyer);
        l.pool = w.pool.pool;
        l.trap_token = w.trap_token;
        l.registered_at = field(b, "registered_at").get<BlockNumber>();
        field(b, "buys").get_to(l.buys);
        field(b, "snapshots").get_to(l.snapshots);
        field(b, "incoming_logged").get_to(l.incoming_logged);
        field(b, "outgoing_logged").get_to(l.outgoing_logged);
        field(b, "approvals").get_to(l.approvals);
        w.buyer_order.push_back(l.buyer);
        w.buyers.emplace(l.buyer, std::move(l));
    }
    return w;
}

}  // namespace honeyscan::monitor
