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

#include <honeyscan/core/types.hpp>

#include <honeyscan/core/error.hpp>

namespace honeyscan {

std::string_view to_string(TrapType type) noexcept {
    switch (type) {
        case TrapType::InvalidBuy: return "InvalidBuy";
        case TrapType::UnauthorizedTransfer: return "UnauthorizedTransfer";
        case TrapType::CannotSell: return "CannotSell";
        case TrapType::InvalidSell: return "InvalidSell";
    }
    return "?";
}

TrapType parse_trap_type(std::string_view text) {
    for (auto t : kAllTrapTypes) {
        if (to_string(t) == text) return t;
    }
    throw Error{Errc::parse, "unknown trap type '" + std::string{text} + "'"};
}

std::string_view to_string(DexVersion version) noexcept { return version == DexVersion::V2 ? "v2" : "v3"; }

DexVersion parse_dex_version(std::string_view text) {
    if (text == "v2" || text == "V2") return DexVersion::V2;
    if (text == "v3" || text == "V3") return DexVersion::V3;
    throw Error{Errc::parse, "unknown dex version '" + std::string{text} + "'"};
}

void PoolInfo::validate() const {
    if (token_x == token_y) throw Error{Errc::invalid_argument, "pool " + pool.to_hex() + " pairs a token with itself"};
    if (!fee.below_one()) throw Error{Errc::invalid_argument, "pool fee must be below one"};
}

}  // namespace honeyscan
