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


#include <honeyscan/rpc/abi.hpp>

#include <algorithm>

#include <honeyscan/core/error.hpp>
#include <honeyscan/core/keccak.hpp>

namespace honeyscan::rpc::abi {

Word word(const TokenAmount& value) { return value.to_be_bytes(); }

Word word(const Address& address) {
    Word w{};
    std::copy(address.bytes().begin(), address.bytes().end(), w.begin() + 12);
    return w;
}

Word word(std::uint64_t value) { return TokenAmount{value}.to_be_bytes(); }

TokenAmount to_amount(const Word& w) { return TokenAmount::from_be_bytes(w); }

Address to_address(const Word& w) {
    if (std::any_of(w.begin(), w.begin() + 12, [](auto b) { return b != 0; })) {
        throw Error{Errc::malformed_log, "address word has dirty upper bytes"};
    }
    return Address::from_span(ByteView{w}.subspan(12));
}

std::pair<bool, TokenAmount> to_signed(const Word& w) {
    if ((w[0] & 0x80) == 0) return {false, to_amount(w)};
    uint256 v = to_amount(w).raw();
    v = ~v + 1;
    return {true, TokenAmount{v}};
}

Word signed_word(bool negative, const TokenAmount& magnitude) {
    if (!negative || magnitude.is_zero()) return word(magnitude);
    uint256 v = ~magnitude.raw() + 1;
    return TokenAmount{v}.to_be_bytes();
}

Word word_at(ByteView data, std::size_t index) {
    if (data.size() < 32 * (index + 1)) {
        throw Error{Errc::short_payload, "ABI payload has " + std::to_string(data.size()) + " bytes, word " +
                                             std::to_string(index) + " missing"};
    }
    Word w{};
    std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(32 * index), 32, w.begin());
    return w;
}

Encoder::Encoder(const Selector& selector) : selector_{selector} {}

Encoder& Encoder::add(const Word& w) {
    head_.push_back(w);
    return *this;
}

Encoder& Encoder::add_addresses(std::vector<Address> values) {
    dynamic_.emplace_back(head_.size(), std::move(values));
    head_.push_back(Word{});
    return *this;
}

Bytes Encoder::bytes() const {
    std::vector<Word> head = head_;
    std::vector<Word> tail;
    for (const auto& [slot, values] : dynamic_) {
        head[slot] = word(static_cast<std::uint64_t>(32 * (head.size() + tail.size())));
        tail.push_back(word(static_cast<std::uint64_t>(values.size())));
        for (const auto& a : values) tail.push_back(word(a));
    }
    Bytes out(selector_.begin(), selector_.end());
    for (const auto* part : {&head, &tail}) {
        for (const auto& w : *part) out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

namespace {

std::size_t small(const Word& w, std::string_view what) {
    const auto v = to_amount(w);
    if (v > TokenAmount{std::uint64_t{1} << 32}) throw Error{Errc::short_payload, std::string{what} + " out of range"};
    return static_cast<std::size_t>(v.raw());
}

}  // namespace

std::vector<TokenAmount> decode_amount_array(ByteView data) {
    const auto offset = small(word_at(data, 0), "array offset");
    if (offset % 32 != 0) throw Error{Errc::short_payload, "misaligned array offset"};
    const auto n = small(word_at(data, offset / 32), "array length");
    std::vector<TokenAmount> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(to_amount(word_at(data, offset / 32 + 1 + i)));
    return out;
}

std::vector<Address> decode_address_array(ByteView args, std::size_t head_index) {
    const auto offset = small(word_at(args, head_index), "array offset");
    if (offset % 32 != 0) throw Error{Errc::short_payload, "misaligned array offset"};
    const auto n = small(word_at(args, offset / 32), "array length");
    std::vector<Address> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(to_address(word_at(args, offset / 32 + 1 + i)));
    return out;
}

Bytes encode_revert_reason(std::string_view reason) {
    const auto s = sel::error_string();
    Bytes out(s.begin(), s.end());
    auto put = [&](const Word& w) { out.insert(out.end(), w.begin(), w.end()); };
    put(word(std::uint64_t{32}));
    put(word(static_cast<std::uint64_t>(reason.size())));
    for (std::size_t i = 0; i < reason.size(); i += 32) {
        Word w{};
        std::copy_n(reason.begin() + static_cast<std::ptrdiff_t>(i), std::min<std::size_t>(32, reason.size() - i), w.begin());
        put(w);
    }
    return out;
}

std::optional<std::string> decode_revert_reason(ByteView data) {
    const auto s = sel::error_string();
    if (data.size() < 4 || !std::equal(s.begin(), s.end(), data.begin())) return std::nullopt;
    const auto args = data.subspan(4);
    try {
        const auto offset = small(word_at(args, 0), "reason offset");
        const auto len = small(word_at(args, offset / 32), "reason length");
        const auto start = offset + 32;
        if (args.size() < start + len) return std::nullopt;
        return std::string(args.begin() + static_cast<std::ptrdiff_t>(start),
                           args.begin() + static_cast<std::ptrdiff_t>(start + len));
    } catch (const Error&) {
        return std::nullopt;
    }
}

Hash32 mapping_slot(const Address& key, std::uint64_t slot) {
    Bytes buf;
    const auto k = word(key);
    const auto s = word(slot);
    buf.insert(buf.end(), k.begin(), k.end());
    buf.insert(buf.end(), s.begin(), s.end());
    return keccak256(ByteView{buf});
}

namespace sel {
Selector balance_of() { return function_selector("balanceOf(address)"); }
Selector approve() { return function_selector("approve(address,uint256)"); }
Selector get_reserves() { return function_selector("getReserves()"); }
Selector token0() { return function_selector("token0()"); }
Selector token1() { return function_selector("token1()"); }
Selector fee() { return function_selector("fee()"); }
Selector swap_exact_tokens_for_tokens() {
    return function_selector("swapExactTokensForTokens(uint256,uint256,address[],address,uint256)");
}
Selector exact_input_single() {
    return function_selector("exactInputSingle((address,address,uint24,address,uint256,uint256,uint160))");
}
Selector quote_exact_input_single() {
    return function_selector("quoteExactInputSingle(address,address,uint24,uint256,uint160)");
}
Selector error_string() { return function_selector("Error(string)"); }
}  // namespace sel

}  // namespace honeyscan::rpc::abi
