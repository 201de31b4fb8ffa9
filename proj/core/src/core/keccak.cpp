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

#include <honeyscan/core/keccak.hpp>

#include <cstring>

namespace honeyscan {

namespace {

constexpr std::array<std::uint64_t, 24> kRoundConstants{
    0x0000000000000001ull, 0x0000000000008082ull, 0x800000000000808aull, 0x8000000080008000ull,
    0x000000000000808bull, 0x0000000080000001ull, 0x8000000080008081ull, 0x8000000000008009ull,
    0x000000000000008aull, 0x0000000000000088ull, 0x0000000080008009ull, 0x000000008000000aull,
    0x000000008000808bull, 0x800000000000008bull, 0x8000000000008089ull, 0x8000000000008003ull,
    0x8000000000008002ull, 0x8000000000000080ull, 0x000000000000800aull, 0x800000008000000aull,
    0x8000000080008081ull, 0x8000000000008080ull, 0x0000000080000001ull, 0x8000000080008008ull,
};

constexpr std::array<int, 25> kRotations{
    0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43, 25, 39, 41, 45, 15, 21, 8, 18, 2, 61, 56, 14,
};

constexpr std::uint64_t rotl(std::uint64_t x, int n) { return n == 0 ? x : (x << n) | (x >> (64 - n)); }

void keccak_f1600(std::array<std::uint64_t, 25>& a) {
    for (const auto rc : kRoundConstants) {
        std::array<std::uint64_t, 5> c{};
        for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x) {
            const auto d = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5) a[y + x] ^= d;
        }
        std::array<std::uint64_t, 25> b{};
        for (int x = 0; x < 5; ++x) {
            for (int y = 0; y < 5; ++y) {
                b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl(a[x + 5 * y], kRotations[x + 5 * y]);
            }
        }
        for (int y = 0; y < 25; y += 5) {
            for (int x = 0; x < 5; ++x) a[y + x] = b[y + x] ^ (~b[y + (x + 1) % 5] & b[y + (x + 2) % 5]);
        }
        a[0] ^= rc;
    }
}

}  // namespace

Hash32 keccak256(ByteView data) {
    constexpr std::size_t kRate = 136;
    std::array<std::uint64_t, 25> state{};
    auto absorb = [&state](const std::uint8_t* block) {
        for (std::size_t i = 0; i < kRate / 8; ++i) {
            std::uint64_t lane = 0;
            for (int j = 7; j >= 0; --j) lane = (lane << 8) | block[i * 8 + static_cast<std::size_t>(j)];
            state[i] ^= lane;
        }
        keccak_f1600(state);
    };

    std::size_t offset = 0;
    for (; offset + kRate <= data.size(); offset += kRate) absorb(data.data() + offset);

    std::array<std::uint8_t, kRate> last{};
    const std::size_t rest = data.size() - offset;
    if (rest > 0) std::memcpy(last.data(), data.data() + offset, rest);
    last[rest] ^= 0x01;
    last[kRate - 1] ^= 0x80;
    absorb(last.data());

    std::array<std::uint8_t, 32> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 8; ++j) out[i * 8 + j] = static_cast<std::uint8_t>(state[i] >> (8 * j));
    }
    return Hash32{out};
}

Hash32 keccak256(std::string_view text) {
    return keccak256(ByteView{reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::array<std::uint8_t, 4> function_selector(std::string_view signature) {
    const auto h = keccak256(signature);
    return {h.bytes()[0], h.bytes()[1], h.bytes()[2], h.bytes()[3]};
}

}  // namespace honeyscan
