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
#include <limits>
#include <set>
#include <string_view>
#include <variant>

#include <honeyscan/core/bytes.hpp>
#include <honeyscan/core/rational.hpp>
#include <honeyscan/core/types.hpp>

namespace honeyscan::mock {

inline constexpr BlockNumber kNever = std::numeric_limits<BlockNumber>::max();

//! Standard token with an optional transfer tax on buys and plain transfers.
//! The tax is credited to the owner and the event reports the net amount.
//! Transfers into a pool (sells) and transfers touching the owner are untaxed.
struct Honest {
    Rational tax{0, 1};
};

//! Delivers only keep_fraction to the recipient unless the sender is exempt,
//! while the Transfer event reports the full amount.
struct HiddenTax {
    Rational keep_fraction{1, 10};
    std::set<Address> exempt{};
};

//! Honest transfers plus an owner-only function that zeroes any balance.
struct OwnerDrain {
    Address owner{};
    bool emits_event{true};
};

enum class GateMode : std::uint8_t { Allow, Deny };

//! Allow: a sender may transfer only if global_open or it is a member.
//! Deny: members may not transfer. Enforced from active_from onwards.
//! Pool-originated transfers and the owner always pass.
struct ListGate {
    GateMode mode{GateMode::Allow};
    std::set<Address> members{};
    bool global_open{false};
    BlockNumber active_from{0};
};

//! Sells (transfers into a pool) move at most balance*max_sell_rate.
struct LimitedSell {
    Rational max_sell_rate{1, 100};
    std::set<Address> fee_exempt{};
};

struct ManualTrigger {
    friend bool operator==(const ManualTrigger&, const ManualTrigger&) = default;
};
struct AtBlock {
    BlockNumber block{0};
    friend bool operator==(const AtBlock&, const AtBlock&) = default;
};
struct AfterBuyers {
    std::uint32_t count{1};
    friend bool operator==(const AfterBuyers&, const AfterBuyers&) = default;
};
using SwitchTrigger = std::variant<ManualTrigger, AtBlock, AfterBuyers>;

//! Honest with zero tax until switched, then final_sell_tax on sells.
//! `switched` never goes back to false.
struct DelayedSellTax {
    Rational final_sell_tax{1, 1};
    SwitchTrigger trigger{ManualTrigger{}};
    bool switched{false};
};

using TokenBehavior = std::variant<Honest, HiddenTax, OwnerDrain, ListGate, LimitedSell, DelayedSellTax>;

enum class BehaviorFamily : std::uint8_t { Honest, HighTax, HiddenTax, OwnerDrain, ListGate, LimitedSell, DelayedSellTax };

std::string_view to_string(BehaviorFamily family) noexcept;
BehaviorFamily family_of(const TokenBehavior& behavior);

//! Throws Errc::invalid_argument when parameters are out of range.
void validate(const TokenBehavior& behavior);

//! True for behaviors that accept flip_switch.
bool has_switch(const TokenBehavior& behavior) noexcept;

}  // namespace honeyscan::mock
