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
#include <utility>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <honeyscan/core/amount.hpp>
#include <honeyscan/core/bytes.hpp>

// Minimal Solidity ABI coding: static words, address arrays and the
// Error(string) revert payload. Enough for the calls the scanner issues.
namespace honeyscan::rpc::abi {

using Word = std::array<std::uint8_t, 32>;
using Selector = std::array<std::uint8_t, 4>;

Word word(const TokenAmount& value);
Word word(const Address& address);
Word word(std::uint64_t value);

TokenAmount to_amount(const Word& w);
//! Rejects words whose upper 12 bytes are not zero.
Address to_address(const Word& w);

//! Two's complement reading of an int256 word: (negative, magnitude).
std::pair<bool, TokenAmount> to_signed(const Word& w);
Word signed_word(bool negative, const TokenAmount& magnitude);

//! Word i of an ABI payload; short_payload if the data ends early.
Word word_at(ByteView data, std::size_t index);

class Encoder {
  public:
    explicit Encoder(const Selector& selector);
    Encoder& add(const Word& w);
    Encoder& add(const TokenAmount& v) { return add(word(v)); }
    Encoder& add(const Address& a) { return add(word(a)); }
    //! Dynamic address[]; encoded in the tail, offset in the head.
    Encoder& add_addresses(std::vector<Address> values);
    [[nodiscard]] Bytes bytes() const;
    [[nodiscard]] std::string hex() const { return to_hex(bytes()); }

  private:
    Selector selector_;
    std::vector<Word> head_;
    std::vector<std::pair<std::size_t, std::vector<Address>>> dynamic_;
};

//! Decodes a dynamic uint256[] return value.
std::vector<TokenAmount> decode_amount_array(ByteView data);
//! Decodes a dynamic address[] argument whose offset sits at head word i.
std::vector<Address> decode_address_array(ByteView args, std::size_t head_index);

Bytes encode_revert_reason(std::string_view reason);
//! Reason text if `data` is an Error(string) payload.
std::optional<std::string> decode_revert_reason(ByteView data);

//! Storage slot of mapping(address => ...) entry `key` at base slot `slot`.
Hash32 mapping_slot(const Address& key, std::uint64_t slot);

namespace sel {
Selector balance_of();
Selector approve();
Selector get_reserves();
Selector token0();
Selector token1();
Selector fee();
Selector swap_exact_tokens_for_tokens();
Selector exact_input_single();
Selector quote_exact_input_single();
Selector error_string();
}  // namespace sel

}  // namespace honeyscan::rpc::abi
