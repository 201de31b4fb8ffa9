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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include <honeyscan/chainview.hpp>
#include <honeyscan/core/bytes.hpp>

namespace honeyscan::rpc {

enum class EventKind : std::uint8_t {
    Transfer,
    Approval,
    PairCreated,
    PoolCreated,
    SwapV2,
    MintV2,
    BurnV2,
    SwapV3,
    MintV3,
    BurnV3,
};

struct EventSignature {
    EventKind kind;
    std::string_view text;
    //! Expected hash, checked against keccak256(text) by verify_event_registry.
    std::string_view topic0_hex;

    [[nodiscard]] Hash32 topic0() const { return Hash32::from_hex(topic0_hex); }
};

std::span<const EventSignature> event_registry() noexcept;
const EventSignature& signature_of(EventKind kind);
//! Kind registered for topic0, if any.
std::optional<EventKind> kind_of(const Hash32& topic0);

//! Recomputes every topic0 from its text; throws unknown_signature on the
//! first mismatch.
void verify_event_registry();

struct RawLog {
    Address address{};
    std::vector<Hash32> topics{};
    Bytes data{};
    BlockNumber block{0};
    std::uint32_t tx_index{0};
    std::uint32_t log_index{0};
    Hash32 tx_hash{};

    friend bool operator==(const RawLog&, const RawLog&) = default;
};

//! eth_getLogs entry <-> RawLog. Quantities are hex strings.
RawLog raw_log_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RawLog& log);

// Decoders throw unknown_signature when topic0 is not the expected event,
// malformed_log on a wrong topic count and short_payload on short data.
// The tx_from of decoded transfers is left zero; the caller resolves it.
TransferRecord decode_transfer(const RawLog& log);
ApproveRecord decode_approval(const RawLog& log);
PoolInfo decode_pool_created(const RawLog& log);
SwapRecord decode_swap(const RawLog& log, const PoolInfo& pool);
//! `tx_from` supplies the provider of V2 mints, whose indexed sender is
//! usually the router.
LiquidityEvent decode_liquidity(const RawLog& log, const PoolInfo& pool, const Address& tx_from);

//! Inverse encoders used by the test node and fixture tooling.
RawLog encode_transfer(const TransferRecord& t);
RawLog encode_approval(const ApproveRecord& a);
RawLog encode_pair_created(const Address& factory, const PoolInfo& pool, std::uint64_t pair_count);
RawLog encode_swap_v2(const PoolInfo& pool, const SwapRecord& s);
RawLog encode_liquidity_v2(const LiquidityEvent& e);

}  // namespace honeyscan::rpc
