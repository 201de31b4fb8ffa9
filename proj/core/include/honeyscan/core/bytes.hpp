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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <honeyscan/core/error.hpp>

namespace honeyscan {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

//! Decodes hex with an optional 0x prefix. Odd-length input is left padded.
Bytes from_hex(std::string_view hex);
std::string to_hex(ByteView bytes, bool prefix = true);

//! Fixed-width byte string. Address and Hash32 are distinct instantiations,
//! so one cannot be passed where the other is expected.
template <std::size_t N>
class FixedBytes {
  public:
    static constexpr std::size_t size = N;

    constexpr FixedBytes() = default;
    constexpr explicit FixedBytes(const std::array<std::uint8_t, N>& bytes) : bytes_{bytes} {}

    static FixedBytes from_hex(std::string_view hex) {
        if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
        if (hex.size() != 2 * N) {
            throw Error{Errc::parse, "expected " + std::to_string(2 * N) + " hex digits, got '" + std::string{hex} + "'"};
        }
        const auto raw = honeyscan::from_hex(hex);
        FixedBytes out;
        std::copy(raw.begin(), raw.end(), out.bytes_.begin());
        return out;
    }

    static FixedBytes from_span(ByteView view) {
        if (view.size() != N) throw Error{Errc::short_payload, "fixed bytes length mismatch"};
        FixedBytes out;
        std::copy(view.begin(), view.end(), out.bytes_.begin());
        return out;
    }

    [[nodiscard]] std::string to_hex() const { return honeyscan::to_hex(ByteView{bytes_}); }
    [[nodiscard]] const std::array<std::uint8_t, N>& bytes() const noexcept { return bytes_; }
    [[nodiscard]] std::array<std::uint8_t, N>& bytes() noexcept { return bytes_; }
    [[nodiscard]] ByteView view() const noexcept { return ByteView{bytes_}; }

    [[nodiscard]] bool is_zero() const noexcept {
        for (auto b : bytes_) {
            if (b != 0) return false;
        }
        return true;
    }

    friend constexpr auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
    friend constexpr bool operator==(const FixedBytes&, const FixedBytes&) = default;

  private:
    std::array<std::uint8_t, N> bytes_{};
};

//! 20-byte account identifier, rendered as lowercase 0x-hex.
using Address = FixedBytes<20>;
//! 32-byte transaction hash / topic / storage key.
using Hash32 = FixedBytes<32>;

}  // namespace honeyscan

template <std::size_t N>
struct std::hash<honeyscan::FixedBytes<N>> {
    std::size_t operator()(const honeyscan::FixedBytes<N>& value) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto b : value.bytes()) h = (h ^ b) * 1099511628211ull;
        return h;
    }
};
