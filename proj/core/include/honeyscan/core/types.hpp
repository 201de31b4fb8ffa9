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

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <honeyscan/core/amount.hpp>
#include <honeyscan/core/bytes.hpp>
#include <honeyscan/core/rational.hpp>

namespace honeyscan {

using BlockNumber = std::uint64_t;

//! Block height plus optional position of a transaction inside the block.
struct BlockIndex {
    BlockNumber number{0};
    std::optional<std::uint32_t> tx_index{};

    friend bool operator==(const BlockIndex&, const BlockIndex&) = default;
    friend auto operator<=>(const BlockIndex& a, const BlockIndex& b) {
        if (auto c = a.number <=> b.number; c != 0) return c;
        return a.tx_index.value_or(0) <=> b.tx_index.value_or(0);
    }
};

//! Inclusive block interval [from, to].
struct BlockRange {
    BlockNumber from{0};
    BlockNumber to{0};

    [[nodiscard]] bool empty() const noexcept { return from > to; }
    [[nodiscard]] bool contains(BlockNumber b) const noexcept { return b >= from && b <= to; }
    [[nodiscard]] std::uint64_t length() const noexcept { return empty() ? 0 : to - from + 1; }
    friend bool operator==(const BlockRange&, const BlockRange&) = default;
};

//! The four trap effects, in reporting order.
enum class TrapType : std::uint8_t {
    InvalidBuy,
    UnauthorizedTransfer,
    CannotSell,
    InvalidSell,
};

inline constexpr std::array<TrapType, 4> kAllTrapTypes{
    TrapType::InvalidBuy, TrapType::UnauthorizedTransfer, TrapType::CannotSell, TrapType::InvalidSell};

std::string_view to_string(TrapType type) noexcept;
TrapType parse_trap_type(std::string_view text);
using TrapSet = std::set<TrapType>;

enum class DexVersion : std::uint8_t { V2, V3 };

std::string_view to_string(DexVersion version) noexcept;
DexVersion parse_dex_version(std::string_view text);

struct PoolInfo {
    Address pool{};
    Address token_x{};
    Address token_y{};
    DexVersion dex_version{DexVersion::V2};
    Rational fee{3, 1000};
    BlockNumber created_at{0};

    //! Throws Errc::invalid_argument when token_x == token_y or fee >= 1.
    void validate() const;
    [[nodiscard]] bool has_token(const Address& token) const noexcept { return token == token_x || token == token_y; }
    [[nodiscard]] const Address& other(const Address& token) const noexcept { return token == token_x ? token_y : token_x; }

    friend bool operator==(const PoolInfo&, const PoolInfo&) = default;
};

}  // namespace honeyscan
