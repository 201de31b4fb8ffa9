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

// nlohmann::json adapters for the core and chainview value types. Field
// order follows declaration order, so ordered_json output is stable.

#include <string>

#include <nlohmann/json.hpp>

#include <honeyscan/chainview.hpp>
#include <honeyscan/core/amount.hpp>
#include <honeyscan/core/bytes.hpp>
#include <honeyscan/core/error.hpp>
#include <honeyscan/core/rational.hpp>
#include <honeyscan/core/types.hpp>

namespace honeyscan {

namespace detail {

template <typename J>
const J& field(const J& j, const char* key) {
    if (!j.is_object()) throw Error{Errc::schema, std::string{"expected an object holding '"} + key + "'"};
    auto it = j.find(key);
    if (it == j.end()) throw Error{Errc::schema, std::string{"missing field '"} + key + "'"};
    return *it;
}

template <typename J>
std::string text(const J& j, const char* what) {
    if (!j.is_string()) throw Error{Errc::schema, std::string{what} + " must be a string"};
    return j.template get<std::string>();
}

}  // namespace detail

template <typename J, std::size_t N>
void to_json(J& j, const FixedBytes<N>& v) {
    j = v.to_hex();
}
template <typename J, std::size_t N>
void from_json(const J& j, FixedBytes<N>& v) {
    v = FixedBytes<N>::from_hex(detail::text(j, "hex value"));
}

template <typename J>
void to_json(J& j, const TokenAmount& v) {
    j = v.to_decimal();
}
template <typename J>
void from_json(const J& j, TokenAmount& v) {
    v = TokenAmount::parse(detail::text(j, "amount"));
}

template <typename J>
void to_json(J& j, const SignedAmount& v) {
    j = v.to_decimal();
}
template <typename J>
void from_json(const J& j, SignedAmount& v) {
    v = SignedAmount::parse(detail::text(j, "signed amount"));
}

template <typename J>
void to_json(J& j, const Rational& v) {
    j = v.to_string();
}
template <typename J>
void from_json(const J& j, Rational& v) {
    v = Rational::parse(detail::text(j, "ratio"));
}

template <typename J>
void to_json(J& j, const BlockIndex& v) {
    j = J::object();
    j["number"] = v.number;
    if (v.tx_index) j["tx_index"] = *v.tx_index;
}
template <typename J>
void from_json(const J& j, BlockIndex& v) {
    v.number = detail::field(j, "number").template get<BlockNumber>();
    if (auto it = j.find("tx_index"); it != j.end() && !it->is_null()) {
        v.tx_index = it->template get<std::uint32_t>();
    } else {
        v.tx_index.reset();
    }
}

template <typename J>
void to_json(J& j, const BlockRange& v) {
    j = J::object();
    j["from"] = v.from;
    j["to"] = v.to;
}
template <typename J>
void from_json(const J& j, BlockRange& v) {
    v.from = detail::field(j, "from").template get<BlockNumber>();
    v.to = detail::field(j, "to").template get<BlockNumber>();
}

template <typename J>
void to_json(J& j, const TrapType& v) {
    j = std::string{to_string(v)};
}
template <typename J>
void from_json(const J& j, TrapType& v) {
    v = parse_trap_type(detail::text(j, "trap type"));
}

template <typename J>
void to_json(J& j, const PoolInfo& v) {
    j = J::object();
    j["pool"] = v.pool;
    j["token_x"] = v.token_x;
    j["token_y"] = v.token_y;
    j["dex_version"] = std::string{to_string(v.dex_version)};
    j["fee"] = v.fee;
    j["created_at"] = v.created_at;
}
template <typename J>
void from_json(const J& j, PoolInfo& v) {
    using detail::field;
    field(j, "pool").get_to(v.pool);
    field(j, "token_x").get_to(v.token_x);
    field(j, "token_y").get_to(v.token_y);
    v.dex_version = parse_dex_version(detail::text(field(j, "dex_version"), "dex_version"));
    field(j, "fee").get_to(v.fee);
    v.created_at = j.value("created_at", BlockNumber{0});
}

template <typename J>
void to_json(J& j, const SwapRecord& v) {
    j = J::object();
    j["tx_hash"] = v.tx_hash;
    j["block"] = v.block;
    j["sender"] = v.sender;
    j["token_in"] = v.token_in;
    j["amount_in"] = v.amount_in;
    j["token_out"] = v.token_out;
    j["amount_out"] = v.amount_out;
    j["recipient"] = v.recipient;
}
template <typename J>
void from_json(const J& j, SwapRecord& v) {
    using detail::field;
    field(j, "tx_hash").get_to(v.tx_hash);
    field(j, "block").get_to(v.block);
    field(j, "sender").get_to(v.sender);
    field(j, "token_in").get_to(v.token_in);
    field(j, "amount_in").get_to(v.amount_in);
    field(j, "token_out").get_to(v.token_out);
    field(j, "amount_out").get_to(v.amount_out);
    field(j, "recipient").get_to(v.recipient);
}

template <typename J>
void to_json(J& j, const TransferRecord& v) {
    j = J::object();
    j["token"] = v.token;
    j["block"] = v.block;
    j["sender"] = v.sender;
    j["recipient"] = v.recipient;
    j["value"] = v.value;
    j["logged"] = v.logged;
    j["tx_hash"] = v.tx_hash;
    j["tx_from"] = v.tx_from;
}
template <typename J>
void from_json(const J& j, TransferRecord& v) {
    using detail::field;
    field(j, "token").get_to(v.token);
    field(j, "block").get_to(v.block);
    field(j, "sender").get_to(v.sender);
    field(j, "recipient").get_to(v.recipient);
    field(j, "value").get_to(v.value);
    v.logged = j.value("logged", true);
    field(j, "tx_hash").get_to(v.tx_hash);
    field(j, "tx_from").get_to(v.tx_from);
}

template <typename J>
void to_json(J& j, const ApproveRecord& v) {
    j = J::object();
    j["token"] = v.token;
    j["block"] = v.block;
    j["approver"] = v.approver;
    j["spender"] = v.spender;
    j["value"] = v.value;
    j["tx_hash"] = v.tx_hash;
}
template <typename J>
void from_json(const J& j, ApproveRecord& v) {
    using detail::field;
    field(j, "token").get_to(v.token);
    field(j, "block").get_to(v.block);
    field(j, "approver").get_to(v.approver);
    field(j, "spender").get_to(v.spender);
    field(j, "value").get_to(v.value);
    field(j, "tx_hash").get_to(v.tx_hash);
}

template <typename J>
void to_json(J& j, const LiquidityEvent& v) {
    j = J::object();
    j["pool"] = v.pool;
    j["block"] = v.block;
    j["kind"] = v.kind == LiquidityKind::Add ? "add" : "remove";
    j["amount_x"] = v.amount_x;
    j["amount_y"] = v.amount_y;
    j["provider"] = v.provider;
}
template <typename J>
void from_json(const J& j, LiquidityEvent& v) {
    using detail::field;
    field(j, "pool").get_to(v.pool);
    field(j, "block").get_to(v.block);
    const auto kind = detail::text(field(j, "kind"), "kind");
    if (kind != "add" && kind != "remove") throw Error{Errc::schema, "liquidity kind must be add or remove"};
    v.kind = kind == "add" ? LiquidityKind::Add : LiquidityKind::Remove;
    field(j, "amount_x").get_to(v.amount_x);
    field(j, "amount_y").get_to(v.amount_y);
    field(j, "provider").get_to(v.provider);
}

template <typename J>
void to_json(J& j, const BalanceSnapshot& v) {
    j = J::object();
    j["token"] = v.token;
    j["holder"] = v.holder;
    j["block"] = v.block;
    j["balance"] = v.balance;
}
template <typename J>
void from_json(const J& j, BalanceSnapshot& v) {
    using detail::field;
    field(j, "token").get_to(v.token);
    field(j, "holder").get_to(v.holder);
    field(j, "block").get_to(v.block);
    field(j, "balance").get_to(v.balance);
}

}  // namespace honeyscan
