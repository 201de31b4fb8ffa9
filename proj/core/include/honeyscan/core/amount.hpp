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
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace honeyscan {

using uint256 = boost::multiprecision::uint256_t;
using uint512 = boost::multiprecision::uint512_t;

//! Unsigned 256-bit token quantity in smallest units.
//!
//! Addition and subtraction are checked: an overflow past 2^256-1 or a
//! subtraction below zero raises Error{Errc::overflow}. Amounts render as
//! decimal strings so no precision is lost in reports.
class TokenAmount {
  public:
    TokenAmount() = default;
    TokenAmount(std::uint64_t value) : value_{value} {}  // NOLINT(google-explicit-constructor)
    explicit TokenAmount(const uint256& value) : value_{value} {}

    static TokenAmount from_decimal(std::string_view text);
    //! Accepts "0x"-prefixed hex (JSON-RPC quantities and ABI words).
    static TokenAmount from_hex(std::string_view text);
    static TokenAmount from_be_bytes(const std::array<std::uint8_t, 32>& bytes);
    static TokenAmount max();
    static TokenAmount pow2(unsigned exponent);
    //! Parses decimal integers and the "<digits>e<exp>" shorthand used in
    //! scenario files (e.g. "25e18").
    static TokenAmount parse(std::string_view text);

    [[nodiscard]] std::string to_decimal() const;
    [[nodiscard]] std::string to_hex() const;
    [[nodiscard]] std::array<std::uint8_t, 32> to_be_bytes() const;
    [[nodiscard]] const uint256& raw() const noexcept { return value_; }
    [[nodiscard]] bool is_zero() const noexcept { return value_.is_zero(); }

    [[nodiscard]] TokenAmount checked_add(const TokenAmount& other) const;
    [[nodiscard]] TokenAmount checked_sub(const TokenAmount& other) const;
    //! a - b when a >= b, else zero.
    [[nodiscard]] TokenAmount saturating_sub(const TokenAmount& other) const;

    friend TokenAmount operator+(const TokenAmount& a, const TokenAmount& b) { return a.checked_add(b); }
    friend TokenAmount operator-(const TokenAmount& a, const TokenAmount& b) { return a.checked_sub(b); }
    TokenAmount& operator+=(const TokenAmount& other) { return *this = checked_add(other); }
    TokenAmount& operator-=(const TokenAmount& other) { return *this = checked_sub(other); }

    friend bool operator==(const TokenAmount& a, const TokenAmount& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const TokenAmount& a, const TokenAmount& b) {
        const int c = a.value_.compare(b.value_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

  private:
    uint256 value_{0};
};

//! floor(a*b/d) with a 512-bit intermediate product.
//! Throws Errc::division_by_zero for d == 0 and Errc::overflow when the
//! quotient does not fit in 256 bits.
TokenAmount amount_mul_div(const TokenAmount& a, const TokenAmount& b, const TokenAmount& d);

//! floor(x/2), the default bound for the threshold predicates.
TokenAmount threshold_half(const TokenAmount& x);

//! Magnitude plus direction, for balance deltas.
struct SignedAmount {
    bool negative{false};
    TokenAmount magnitude{};

    static SignedAmount difference(const TokenAmount& to, const TokenAmount& from);
    [[nodiscard]] bool is_zero() const noexcept { return magnitude.is_zero(); }
    [[nodiscard]] std::string to_decimal() const;
    static SignedAmount parse(std::string_view text);

    friend bool operator==(const SignedAmount& a, const SignedAmount& b) {
        return a.magnitude == b.magnitude && (a.negative == b.negative || a.magnitude.is_zero());
    }
};

}  // namespace honeyscan
