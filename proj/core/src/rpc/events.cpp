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


#include <honeyscan/rpc/events.hpp>

#include <array>

#include <honeyscan/core/error.hpp>
#include <honeyscan/core/keccak.hpp>
#include <honeyscan/rpc/abi.hpp>

namespace honeyscan::rpc {

namespace {

constexpr std::array<EventSignature, 10> kRegistry{{
    {EventKind::Transfer, "Transfer(address,address,uint256)",
     "0xddf252ad1be2c89b69c2b068fc378daa952ba7f163c4a11628f55a4df523b3ef"},
    {EventKind::Approval, "Approval(address,address,uint256)",
     "0x8c5be1e5ebec7d5bd14f71427d1e84f3dd0314c0f7b2291e5b200ac8c7c3b925"},
    {EventKind::PairCreated, "PairCreated(address,address,address,uint256)",
     "0x0d3648bd0f6ba80134a33ba9275ac585d9d315f0ad8355cddefde31afa28d0e9"},
    {EventKind::PoolCreated, "PoolCreated(address,address,uint24,int24,address)",
     "0x783cca1c0412dd0d695e784568c96da2e9c22ff989357a2e8b1d9b2b4e6b7118"},
    {EventKind::SwapV2, "Swap(address,uint256,uint256,uint256,uint256,address)",
     "0xd78ad95fa46c994b6551d0da85fc275fe613ce37657fb8d5e3d130840159d822"},
    {EventKind::MintV2, "Mint(address,uint256,uint256)",
     "0x4c209b5fc8ad50758f13e2e1088ba56a560dff690a1c6fef26394f4c03821c4f"},
    {EventKind::BurnV2, "Burn(address,uint256,uint256,address)",
     "0xdccd412f0b1252819cb1fd330b93224ca42612892bb3f4f789976e6d81936496"},
    {EventKind::SwapV3, "Swap(address,address,int256,int256,uint160,uint128,int24)",
     "0xc42079f94a6350d7e6235f29174924f928cc2ac818eb64fed8004e115fbcca67"},
    {EventKind::MintV3, "Mint(address,address,int24,int24,uint128,uint256,uint256)",
     "0x7a53080ba414158be7ec69b987b5fb7d07dee101fe85488f0853ae16239d0bde"},
    {EventKind::BurnV3, "Burn(address,int24,int24,uint128,uint256,uint256)",
     "0x0c396cd989a39f4459b5fa1aed6a9a8dcdbc45908acfd67e028cd568da98982c"},
}};

std::uint64_t quantity(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw Error{Errc::malformed_log, std::string{"log field '"} + key + "' missing: " + j.dump()};
    }
    const auto v = TokenAmount::from_hex(j.at(key).get<std::string>());
    if (v > TokenAmount{~std::uint64_t{0}}) throw Error{Errc::malformed_log, std::string{"log field '"} + key + "' too large"};
    return static_cast<std::uint64_t>(v.raw());
}

std::string quantity_hex(std::uint64_t v) { return TokenAmount{v}.to_hex(); }

const EventSignature& expect(const RawLog& log, std::initializer_list<EventKind> kinds, std::size_t topics) {
    if (log.topics.empty()) throw Error{Errc::malformed_log, "log without topics"};
    const auto kind = kind_of(log.topics[0]);
    if (!kind) throw Error{Errc::unknown_signature, "unregistered topic0 " + log.topics[0].to_hex()};
    for (auto k : kinds) {
        if (k == *kind) {
            if (log.topics.size() != topics) {
                throw Error{Errc::malformed_log, std::string{signature_of(k).text} + ": expected " +
                                                     std::to_string(topics) + " topics, got " +
                                                     std::to_string(log.topics.size())};
            }
            return signature_of(k);
        }
    }
    throw Error{Errc::unknown_signature, "unexpected event " + std::string{signature_of(*kind).text}};
}

Address topic_address(const Hash32& t) { return abi::to_address(t.bytes()); }
Hash32 address_topic(const Address& a) { return Hash32{abi::word(a)}; }

BlockIndex index_of(const RawLog& log) { return BlockIndex{log.block, log.tx_index}; }

RawLog base_log(const Address& address, EventKind kind, const BlockIndex& at, const Hash32& tx_hash) {
    RawLog log;
    log.address = address;
    log.topics.push_back(signature_of(kind).topic0());
    log.block = at.number;
    log.tx_index = at.tx_index.value_or(0);
    log.tx_hash = tx_hash;
    return log;
}

void append(Bytes& data, const abi::Word& w) { data.insert(data.end(), w.begin(), w.end()); }

}  // namespace

std::span<const EventSignature> event_registry() noexcept { return kRegistry; }

const EventSignature& signature_of(EventKind kind) {
    for (const auto& s : kRegistry) {
        if (s.kind == kind) return s;
    }
    throw Error{Errc::unknown_signature, "event kind not registered"};
}

std::optional<EventKind> kind_of(const Hash32& topic0) {
    for (const auto& s : kRegistry) {
        if (s.topic0() == topic0) return s.kind;
    }
    return std::nullopt;
}

void verify_event_registry() {
    for (const auto& s : kRegistry) {
        const auto derived = keccak256(s.text);
        if (derived != s.topic0()) {
            throw Error{Errc::unknown_signature, "topic0 mismatch for " + std::string{s.text} + ": registered " +
                                                     std::string{s.topic0_hex} + ", derived " + derived.to_hex()};
        }
    }
}

RawLog raw_log_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error{Errc::malformed_log, "log entry is not an object: " + j.dump()};
    try {
        RawLog log;
        log.address = Address::from_hex(j.at("address").get<std::string>());
        for (const auto& t : j.at("topics")) log.topics.push_back(Hash32::from_hex(t.get<std::string>()));
        log.data = from_hex(j.at("data").get<std::string>());
        log.block = quantity(j, "blockNumber");
        log.tx_index = static_cast<std::uint32_t>(quantity(j, "transactionIndex"));
        log.log_index = static_cast<std::uint32_t>(quantity(j, "logIndex"));
        log.tx_hash = Hash32::from_hex(j.at("transactionHash").get<std::string>());
        return log;
    } catch (const nlohmann::json::exception& e) {
        throw Error{Errc::malformed_log, std::string{e.what()} + ": " + j.dump()};
    } catch (const Error& e) {
        if (e.code() == Errc::malformed_log) throw;
        throw Error{Errc::malformed_log, std::string{e.what()} + ": " + j.dump()};
    }
}

nlohmann::json to_json(const RawLog& log) {
    nlohmann::json topics = nlohmann::json::array();
    for (const auto& t : log.topics) topics.push_back(t.to_hex());
    return {{"address", log.address.to_hex()},
            {"topics", topics},
            {"data", to_hex(log.data)},
            {"blockNumber", quantity_hex(log.block)},
            {"transactionIndex", quantity_hex(log.tx_index)},
            {"logIndex", quantity_hex(log.log_index)},
            {"transactionHash", log.tx_hash.to_hex()},
            {"removed", false}};
}

TransferRecord decode_transfer(const RawLog& log) {
    expect(log, {EventKind::Transfer}, 3);
    TransferRecord t;
    t.token = log.address;
    t.block = index_of(log);
    t.sender = topic_address(log.topics[1]);
    t.recipient = topic_address(log.topics[2]);
    t.value = abi::to_amount(abi::word_at(log.data, 0));
    t.logged = true;
    t.tx_hash = log.tx_hash;
    return t;
}

ApproveRecord decode_approval(const RawLog& log) {
    expect(log, {EventKind::Approval}, 3);
    ApproveRecord a;
    a.token = log.address;
    a.block = index_of(log);
    a.approver = topic_address(log.topics[1]);
    a.spender = topic_address(log.topics[2]);
    a.value = abi::to_amount(abi::word_at(log.data, 0));
    a.tx_hash = log.tx_hash;
    return a;
}

PoolInfo decode_pool_created(const RawLog& log) {
    const bool v3 = !log.topics.empty() && kind_of(log.topics[0]) == EventKind::PoolCreated;
    expect(log, {EventKind::PairCreated, EventKind::PoolCreated}, v3 ? 4 : 3);
    PoolInfo info;
    info.token_x = topic_address(log.topics[1]);
    info.token_y = topic_address(log.topics[2]);
    info.created_at = log.block;
    if (v3) {
        const auto fee = abi::to_amount(log.topics[3].bytes());
        if (fee >= TokenAmount{1000000}) throw Error{Errc::malformed_log, "pool fee tier out of range"};
        info.dex_version = DexVersion::V3;
        info.fee = Rational{static_cast<std::uint64_t>(fee.raw()), 1000000};
        info.pool = abi::to_address(abi::word_at(log.data, 1));
    } else {
        info.dex_version = DexVersion::V2;
        info.fee = Rational{3, 1000};
        info.pool = abi::to_address(abi::word_at(log.data, 0));
    }
    return info;
}

SwapRecord decode_swap(const RawLog& log, const PoolInfo& pool) {
    const bool v3 = !log.topics.empty() && kind_of(log.topics[0]) == EventKind::SwapV3;
    expect(log, {EventKind::SwapV2, EventKind::SwapV3}, 3);
    SwapRecord s;
    s.tx_hash = log.tx_hash;
    s.block = index_of(log);
    s.sender = topic_address(log.topics[1]);
    s.recipient = topic_address(log.topics[2]);
    if (v3) {
        // Positive deltas flow into the pool.
        const auto [neg0, a0] = abi::to_signed(abi::word_at(log.data, 0));
        const auto [neg1, a1] = abi::to_signed(abi::word_at(log.data, 1));
        const bool x_in = !neg0 && !a0.is_zero();
        s.token_in = x_in ? pool.token_x : pool.token_y;
        s.token_out = x_in ? pool.token_y : pool.token_x;
        s.amount_in = x_in ? a0 : a1;
        s.amount_out = x_in ? a1 : a0;
        if (x_in ? (!neg1 && !a1.is_zero()) : (neg1 || a1.is_zero())) {
            throw Error{Errc::malformed_log, "V3 swap deltas do not have opposite signs"};
        }
    } else {
        const auto in0 = abi::to_amount(abi::word_at(log.data, 0));
        const auto in1 = abi::to_amount(abi::word_at(log.data, 1));
        const auto out0 = abi::to_amount(abi::word_at(log.data, 2));
        const auto out1 = abi::to_amount(abi::word_at(log.data, 3));
        const bool x_in = !in0.is_zero();
        s.token_in = x_in ? pool.token_x : pool.token_y;
        s.token_out = x_in ? pool.token_y : pool.token_x;
        s.amount_in = x_in ? in0 : in1;
        s.amount_out = x_in ? out1 : out0;
    }
    if (s.amount_in.is_zero()) throw Error{Errc::malformed_log, "swap log without input amount"};
    return s;
}

LiquidityEvent decode_liquidity(const RawLog& log, const PoolInfo& pool, const Address& tx_from) {
    if (log.topics.empty()) throw Error{Errc::malformed_log, "log without topics"};
    const auto kind = kind_of(log.topics[0]);
    LiquidityEvent e;
    e.pool = pool.pool;
    e.block = index_of(log);
    switch (kind.value_or(EventKind::Transfer)) {
        case EventKind::MintV2:
            expect(log, {EventKind::MintV2}, 2);
            e.kind = LiquidityKind::Add;
            e.provider = tx_from.is_zero() ? topic_address(log.topics[1]) : tx_from;
            e.amount_x = abi::to_amount(abi::word_at(log.data, 0));
            e.amount_y = abi::to_amount(abi::word_at(log.data, 1));
            break;
        case EventKind::BurnV2:
            expect(log, {EventKind::BurnV2}, 3);
            e.kind = LiquidityKind::Remove;
            e.provider = topic_address(log.topics[2]);
            e.amount_x = abi::to_amount(abi::word_at(log.data, 0));
            e.amount_y = abi::to_amount(abi::word_at(log.data, 1));
            break;
        case EventKind::MintV3:
            expect(log, {EventKind::MintV3}, 4);
            e.kind = LiquidityKind::Add;
            e.provider = topic_address(log.topics[1]);
            e.amount_x = abi::to_amount(abi::word_at(log.data, 2));
            e.amount_y = abi::to_amount(abi::word_at(log.data, 3));
            break;
        case EventKind::BurnV3:
            expect(log, {EventKind::BurnV3}, 4);
            e.kind = LiquidityKind::Remove;
            e.provider = topic_address(log.topics[1]);
            e.amount_x = abi::to_amount(abi::word_at(log.data, 1));
            e.amount_y = abi::to_amount(abi::word_at(log.data, 2));
            break;
        default:
            throw Error{Errc::unknown_signature, "not a liquidity event: " + log.topics[0].to_hex()};
    }
    return e;
}

RawLog encode_transfer(const TransferRecord& t) {
    RawLog log = base_log(t.token, EventKind::Transfer, t.block, t.tx_hash);
    log.topics.push_back(address_topic(t.sender));
    log.topics.push_back(address_topic(t.recipient));
    append(log.data, abi::word(t.value));
    return log;
}

RawLog encode_approval(const ApproveRecord& a) {
    RawLog log = base_log(a.token, EventKind::Approval, a.block, a.tx_hash);
    log.topics.push_back(address_topic(a.approver));
    log.topics.push_back(address_topic(a.spender));
    append(log.data, abi::word(a.value));
    return log;
}

RawLog encode_pair_created(const Address& factory, const PoolInfo& pool, std::uint64_t pair_count) {
    RawLog log = base_log(factory, EventKind::PairCreated, BlockIndex{pool.created_at, 0}, Hash32{});
    log.topics.push_back(address_topic(pool.token_x));
    log.topics.push_back(address_topic(pool.token_y));
    append(log.data, abi::word(pool.pool));
    append(log.data, abi::word(pair_count));
    return log;
}

RawLog encode_swap_v2(const PoolInfo& pool, const SwapRecord& s) {
    RawLog log = base_log(pool.pool, EventKind::SwapV2, s.block, s.tx_hash);
    log.topics.push_back(address_topic(s.sender));
    log.topics.push_back(address_topic(s.recipient));
    const bool x_in = s.token_in == pool.token_x;
    const TokenAmount zero{};
    append(log.data, abi::word(x_in ? s.amount_in : zero));
    append(log.data, abi::word(x_in ? zero : s.amount_in));
    append(log.data, abi::word(x_in ? zero : s.amount_out));
    append(log.data, abi::word(x_in ? s.amount_out : zero));
    return log;
}

RawLog encode_liquidity_v2(const LiquidityEvent& e) {
    const bool add = e.kind == LiquidityKind::Add;
    RawLog log = base_log(e.pool, add ? EventKind::MintV2 : EventKind::BurnV2, e.block, Hash32{});
    log.topics.push_back(address_topic(e.provider));
    if (!add) log.topics.push_back(address_topic(e.provider));
    append(log.data, abi::word(e.amount_x));
    append(log.data, abi::word(e.amount_y));
    return log;
}

}  // namespace honeyscan::rpc
