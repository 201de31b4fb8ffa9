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


#include <array>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <honeyscan/core/amount.hpp>
#include <honeyscan/core/bytes.hpp>
#include <honeyscan/core/error.hpp>
#include <honeyscan/core/keccak.hpp>
#include <honeyscan/core/rational.hpp>

#include "support/oracle.hpp"

namespace honeyscan {
namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::parse;
}

TEST(Amount, ParsesDecimalHexAndShorthand) {
    EXPECT_EQ(TokenAmount::parse("25e18").to_decimal(), "25000000000000000000");
    EXPECT_EQ(TokenAmount::parse("1000"), TokenAmount{1000});
    EXPECT_EQ(TokenAmount::from_hex("0x3e8"), TokenAmount{1000});
    EXPECT_EQ(TokenAmount{1000}.to_hex(), "0x3e8");
    EXPECT_EQ(TokenAmount::max().to_hex(), "0x" + std::string(64, 'f'));
    EXPECT_EQ(code_of([] { TokenAmount::parse("12x"); }), Errc::parse);
    EXPECT_EQ(code_of([] { TokenAmount::from_decimal("1" + std::string(78, '0')); }), Errc::overflow);
}

TEST(Amount, CheckedArithmetic) {
    EXPECT_EQ(TokenAmount{5} - TokenAmount{3}, TokenAmount{2});
    EXPECT_EQ(TokenAmount{3}.saturating_sub(TokenAmount{5}), TokenAmount{});
    EXPECT_EQ(code_of([] { (void)(TokenAmount{3} - TokenAmount{5}); }), Errc::overflow);
    EXPECT_EQ(code_of([] { (void)(TokenAmount::max() + TokenAmount{1}); }), Errc::overflow);
    EXPECT_EQ(threshold_half(TokenAmount{91}), TokenAmount{45});
}

TEST(Amount, BigEndianRoundTrip) {
    const auto v = TokenAmount::parse("123456789e40");
    EXPECT_EQ(TokenAmount::from_be_bytes(v.to_be_bytes()), v);
}

TEST(Amount, MulDivMatchesGmpOracle) {
    gmp_randclass rng{gmp_randinit_mt};
    rng.seed(4242);
    mpz_class limit;
    mpz_ui_pow_ui(limit.get_mpz_t(), 2, 256);
    for (int i = 0; i < 5000; ++i) {
        const unsigned bits_a = 1 + static_cast<unsigned>(i % 256);
        const unsigned bits_b = 1 + static_cast<unsigned>((i * 37) % 256);
        const unsigned bits_d = 1 + static_cast<unsigned>((i * 91) % 256);
        const mpz_class a = rng.get_z_bits(bits_a), b = rng.get_z_bits(bits_b);
        mpz_class d = rng.get_z_bits(bits_d);
        if (d == 0) d = 1;
        const mpz_class want = oracle::mul_div(a, b, d);
        if (want >= limit) {
            EXPECT_EQ(code_of([&] { amount_mul_div(oracle::from_mpz(a), oracle::from_mpz(b), oracle::from_mpz(d)); }),
                      Errc::overflow);
        } else {
            EXPECT_EQ(amount_mul_div(oracle::from_mpz(a), oracle::from_mpz(b), oracle::from_mpz(d)),
                      oracle::from_mpz(want))
                << a.get_str() << " * " << b.get_str() << " / " << d.get_str();
        }
    }
    EXPECT_EQ(code_of([] { amount_mul_div(TokenAmount{1}, TokenAmount{1}, TokenAmount{}); }), Errc::division_by_zero);
}

TEST(Amount, MulDivFullWidthProduct) {
    // (2^256-1)^2 / (2^256-1) needs the full 512-bit intermediate.
    EXPECT_EQ(amount_mul_div(TokenAmount::max(), TokenAmount::max(), TokenAmount::max()), TokenAmount::max());
}

TEST(Rational, ParsesForms) {
    EXPECT_EQ(Rational::parse("3/1000"), (Rational{3, 1000}));
    EXPECT_EQ(Rational::parse("60%"), (Rational{3, 5}));
    EXPECT_EQ(Rational::parse("0.25"), (Rational{1, 4}));
    EXPECT_EQ(Rational::parse("1"), (Rational{1, 1}));
    EXPECT_EQ(code_of([] { Rational::parse("1/0"); }), Errc::division_by_zero);
    EXPECT_EQ(code_of([] { Rational::parse("abc"); }), Errc::parse);
}

TEST(Rational, OrderingAndApply) {
    EXPECT_LT((Rational{1, 3}), (Rational{1, 2}));
    EXPECT_EQ((Rational{2, 4}), (Rational{1, 2}));
    EXPECT_EQ((Rational{3, 10}).complement(), (Rational{7, 10}));
    EXPECT_EQ((Rational{1, 100}).apply(TokenAmount{1000000}), TokenAmount{10000});
    EXPECT_EQ((Rational{1, 3}).apply(TokenAmount{10}), TokenAmount{3});
    const auto big = TokenAmount::max();
    EXPECT_EQ((Rational{1, 1}).apply(big), big);
}

TEST(Keccak, KnownVectors) {
    EXPECT_EQ(to_hex(keccak256(std::string_view{""}).view()),
              "0xc5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    EXPECT_EQ(to_hex(keccak256(std::string_view{"abc"}).view()),
              "0x4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    EXPECT_EQ(to_hex(keccak256(std::string_view{"Transfer(address,address,uint256)"}).view()),
              "0xddf252ad1be2c89b69c2b068fc378daa952ba7f163c4a11628f55a4df523b3ef");
    const auto sel = function_selector("balanceOf(address)");
    EXPECT_EQ(to_hex(ByteView{sel.data(), sel.size()}), "0x70a08231");
}

TEST(Keccak, RateBoundaries) {
    // Inputs around the 136-byte rate; digests frozen from an independent implementation.
    const std::vector<std::pair<std::size_t, std::string>> cases{
        {135, "0xcbdfd9dee5faad3818d6b06f95a219fd290b0e1706f6a82e5a595b9ce9faca62"},
        {136, "0x7ce759f1ab7f9ce437719970c26b0a66ff11fe3e38e17df89cf5d29c7d7f807e"},
        {137, "0xac73d4fae68b8453f764007c1a20ce95994187861f0c3227a3a8e99a73a3b1db"},
        {272, "0x8e2476e65823b24d96ebe239f2c1534cdf763e689e2410c3b1cb0c74e6177bfc"},
    };
    for (const auto& [n, want] : cases) {
        Bytes data(n);
        for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<std::uint8_t>(i % 251);
        EXPECT_EQ(to_hex(keccak256(ByteView{data}).view()), want) << n;
    }
}

TEST(Address, HexRoundTripAndValidation) {
    const auto a = Address::from_hex("0x7a250d5630B4cF539739dF2C5dAcb4c659F2488D");
    EXPECT_EQ(a.to_hex(), "0x7a250d5630b4cf539739df2c5dacb4c659f2488d");
    EXPECT_EQ(code_of([] { Address::from_hex("0x1234"); }), Errc::parse);
    EXPECT_EQ(code_of([] { Address::from_hex("0xzz250d5630B4cF539739dF2C5dAcb4c659F2488D"); }), Errc::parse);
}

}  // namespace
}  // namespace honeyscan
