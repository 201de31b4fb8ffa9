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

#include <honeyscan/core/rational.hpp>

#include <cctype>
#include <charconv>
#include <numeric>

#include <honeyscan/core/error.hpp>

namespace honeyscan {

namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view whole) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw Error{Errc::parse, "invalid ratio '" + std::string{whole} + "'"};
    }
    return value;
}

Rational reduced(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw Error{Errc::division_by_zero, "ratio with zero denominator"};
    const auto g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    const std::string_view whole = text;
    if (text.ends_with('%')) {
        const auto body = parse(text.substr(0, text.size() - 1));
        if (body.den > UINT64_MAX / 100) throw Error{Errc::parse, "ratio too precise '" + std::string{whole} + "'"};
        return reduced(body.num, body.den * 100);
    }
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        return reduced(parse_u64(text.substr(0, slash), whole), parse_u64(text.substr(slash + 1), whole));
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto frac = text.substr(dot + 1);
        if (frac.size() > 18) throw Error{Errc::parse, "ratio too precise '" + std::string{whole} + "'"};
        std::uint64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const auto int_part = dot == 0 ? 0 : parse_u64(text.substr(0, dot), whole);
        const auto frac_part = frac.empty() ? 0 : parse_u64(frac, whole);
        return reduced(int_part * den + frac_part, den);
    }
    return reduced(parse_u64(text, whole), 1);
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational Rational::complement() const {
    if (num > den) throw Error{Errc::invalid_argument, "complement of a ratio above one"};
    return reduced(den - num, den);
}

TokenAmount Rational::apply(const TokenAmount& amount) const {
    return amount_mul_div(amount, TokenAmount{num}, TokenAmount{den});
}

}  // namespace honeyscan
