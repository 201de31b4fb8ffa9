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

#include <honeyscan/mock/behavior.hpp>

#include <type_traits>

#include <honeyscan/core/error.hpp>

namespace honeyscan::mock {

std::string_view to_string(BehaviorFamily family) noexcept {
    switch (family) {
        case BehaviorFamily::Honest: return "honest";
        case BehaviorFamily::HighTax: return "high_tax";
        case BehaviorFamily::HiddenTax: return "hidden_tax";
        case BehaviorFamily::OwnerDrain: return "owner_drain";
        case BehaviorFamily::ListGate: return "list_gate";
        case BehaviorFamily::LimitedSell: return "limited_sell";
        case BehaviorFamily::DelayedSellTax: return "delayed_sell_tax";
    }
    return "?";
}

BehaviorFamily family_of(const TokenBehavior& behavior) {
    return std::visit(
        [](const auto& b) -> BehaviorFamily {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Honest>) {
                return b.tax >= kOneHalf ? BehaviorFamily::HighTax : BehaviorFamily::Honest;
            } else if constexpr (std::is_same_v<T, HiddenTax>) {
                return BehaviorFamily::HiddenTax;
            } else if constexpr (std::is_same_v<T, OwnerDrain>) {
                return BehaviorFamily::OwnerDrain;
            } else if constexpr (std::is_same_v<T, ListGate>) {
                return BehaviorFamily::ListGate;
            } else if constexpr (std::is_same_v<T, LimitedSell>) {
                return BehaviorFamily::LimitedSell;
            } else {
                return BehaviorFamily::DelayedSellTax;
            }
        },
        behavior);
}

void validate(const TokenBehavior& behavior) {
    std::visit(
        [](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            auto fail = [](const char* what) { throw Error{Errc::invalid_argument, what}; };
            if constexpr (std::is_same_v<T, Honest>) {
                if (!b.tax.below_one()) fail("honest tax must be below 100%");
            } else if constexpr (std::is_same_v<T, HiddenTax>) {
                if (b.keep_fraction.is_zero() || !b.keep_fraction.at_most_one()) fail("keep_fraction must be in (0, 1]");
            } else if constexpr (std::is_same_v<T, LimitedSell>) {
                if (b.max_sell_rate.is_zero() || !b.max_sell_rate.at_most_one()) fail("max_sell_rate must be in (0, 1]");
            } else if constexpr (std::is_same_v<T, DelayedSellTax>) {
                if (!b.final_sell_tax.at_most_one()) fail("final_sell_tax must be in [0, 1]");
                if (const auto* after = std::get_if<AfterBuyers>(&b.trigger); after && after->count == 0) {
                    fail("AfterBuyers trigger needs a positive count");
                }
            }
        },
        behavior);
}

bool has_switch(const TokenBehavior& behavior) noexcept {
    return std::holds_alternative<DelayedSellTax>(behavior) || std::holds_alternative<ListGate>(behavior);
}

}  // namespace honeyscan::mock
