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
#include <string>
#include <string_view>

#include <honeyscan/core/amount.hpp>

namespace honeyscan {

//! Non-negative ratio of two 64-bit integers (taxes, fees, thresholds).
struct Rational {
    std::uint64_t num{0};
    std::uint64_t den{1};

    //! Accepts "3/1000", "60%", "0.25", "1".
    static Rational parse(std::string_view text);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] bool is_zero() const noexcept { return num == 0; }
    [[nodiscard]] bool below_one() const noexcept { return num < den; }
    [[nodiscard]] bool at_most_one() const noexcept { return num <= den; }
    [[nodiscard]] Rational complement() const;  // 1 - r, requires r <= 1

    //! floor(amount * num / den)
    [[nodiscard]] TokenAmount apply(const TokenAmount& amount) const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return boost::multiprecision::uint128_t{a.num} * b.den == boost::multiprecision::uint128_t{b.num} * a.den;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const auto lhs = boost::multiprecision::uint128_t{a.num} * b.den;
        const auto rhs = boost::multiprecision::uint128_t{b.num} * a.den;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

inline constexpr Rational kOneHalf{1, 2};

}  // namespace honeyscan
