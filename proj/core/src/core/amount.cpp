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

#include <honeyscan/core/amount.hpp>

#include <algorithm>
#include <cctype>

#include <honeyscan/core/error.hpp>

namespace honeyscan {

namespace {

const uint512 kMax256 = (uint512{1} << 256) - 1;

}  // namespace

TokenAmount TokenAmount::from_decimal(std::string_view text) {
    if (text.empty()) throw Error{Errc::parse, "empty amount"};
    uint512 acc{0};
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw Error{Errc::parse, "invalid decimal amount '" + std::string{text} + "'"};
        }
        acc = acc * 10 + static_cast<unsigned>(c - '0');
        if (acc > kMax256) throw Error{Errc::overflow, "amount exceeds 2^256-1: " + std::string{text}};
    }
    return TokenAmount{static_cast<uint256>(acc)};
}

TokenAmount TokenAmount::from_hex(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    if (text.empty()) return TokenAmount{};
    while (text.size() > 1 && text.front() == '0') text.remove_prefix(1);
    if (text.size() > 64) throw Error{Errc::overflow, "hex quantity wider than 256 bits"};
    uint256 acc{0};
    for (char c : text) {
        int v = -1;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        if (v < 0) throw Error{Errc::parse, "invalid hex quantity '" + std::string{text} + "'"};
        acc = (acc << 4) | static_cast<unsigned>(v);
    }
    return TokenAmount{acc};
}

TokenAmount TokenAmount::from_be_bytes(const std::array<std::uint8_t, 32>& bytes) {
    uint256 acc{0};
    for (auto b : bytes) acc = (acc << 8) | b;
    return TokenAmount{acc};
}

TokenAmount TokenAmount::max() { return TokenAmount{static_cast<uint256>(kMax256)}; }

TokenAmount TokenAmount::pow2(unsigned exponent) {
    if (exponent >= 256) throw Error{Errc::overflow, "2^" + std::to_string(exponent) + " exceeds 256 bits"};
    return TokenAmount{uint256{1} << exponent};
}

TokenAmount TokenAmount::parse(std::string_view text) {
    const auto e = text.find_first_of("eE");
    if (e == std::string_view::npos) return from_decimal(text);
    auto mantissa = from_decimal(text.substr(0, e));
    const auto exp_text = text.substr(e + 1);
    unsigned exp = 0;
    for (char c : exp_text) {
        if (!std::isdigit(static_cast<unsigned char>(c)) || exp > 100) {
            throw Error{Errc::parse, "invalid amount exponent in '" + std::string{text} + "'"};
        }
        exp = exp * 10 + static_cast<unsigned>(c - '0');
    }
    if (exp_text.empty()) throw Error{Errc::parse, "invalid amount exponent in '" + std::string{text} + "'"};
    uint512 acc = mantissa.raw().convert_to<uint512>();
    for (unsigned i = 0; i < exp; ++i) {
        acc *= 10;
        if (acc > kMax256) throw Error{Errc::overflow, "amount exceeds 2^256-1: " + std::string{text}};
    }
    return TokenAmount{static_cast<uint256>(acc)};
}

std::string TokenAmount::to_decimal() const { return value_.str(); }

std::string TokenAmount::to_hex() const {
    if (value_.is_zero()) return "0x0";
    std::string digits;
    uint256 v = value_;
    static constexpr char kDigits[] = "0123456789abcdef";
    while (!v.is_zero()) {
        digits += kDigits[static_cast<unsigned>(v & 0xf)];
        v >>= 4;
    }
    std::reverse(digits.begin(), digits.end());
    return "0x" + digits;
}

std::array<std::uint8_t, 32> TokenAmount::to_be_bytes() const {
    std::array<std::uint8_t, 32> out{};
    uint256 v = value_;
    for (int i = 31; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

TokenAmount TokenAmount::checked_add(const TokenAmount& other) const {
    const uint512 sum = value_.convert_to<uint512>() + other.value_.convert_to<uint512>();
    if (sum > kMax256) throw Error{Errc::overflow, "token amount addition overflows 256 bits"};
    return TokenAmount{static_cast<uint256>(sum)};
}

TokenAmount TokenAmount::checked_sub(const TokenAmount& other) const {
    if (other.value_ > value_) throw Error{Errc::overflow, "token amount subtraction underflows"};
    return TokenAmount{value_ - other.value_};
}

TokenAmount TokenAmount::saturating_sub(const TokenAmount& other) const {
    if (other.value_ >= value_) return TokenAmount{};
    return TokenAmount{value_ - other.value_};
}

TokenAmount amount_mul_div(const TokenAmount& a, const TokenAmount& b, const TokenAmount& d) {
    if (d.is_zero()) throw Error{Errc::division_by_zero, "amount_mul_div: zero divisor"};
    const uint512 product = a.raw().convert_to<uint512>() * b.raw().convert_to<uint512>();
    const uint512 quotient = product / d.raw().convert_to<uint512>();
    if (quotient > kMax256) throw Error{Errc::overflow, "amount_mul_div: quotient exceeds 256 bits"};
    return TokenAmount{static_cast<uint256>(quotient)};
}

TokenAmount threshold_half(const TokenAmount& x) { return TokenAmount{x.raw() >> 1}; }

SignedAmount SignedAmount::difference(const TokenAmount& to, const TokenAmount& from) {
    if (to >= from) return SignedAmount{false, to - from};
    return SignedAmount{true, from - to};
}

std::string SignedAmount::to_decimal() const {
    if (negative && !magnitude.is_zero()) return "-" + magnitude.to_decimal();
    return magnitude.to_decimal();
}

SignedAmount SignedAmount::parse(std::string_view text) {
    if (text.starts_with('-')) return SignedAmount{true, TokenAmount::from_decimal(text.substr(1))};
    return SignedAmount{false, TokenAmount::from_decimal(text)};
}

}  // namespace honeyscan
