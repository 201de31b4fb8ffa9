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
#include <string_view>

#include <honeyscan/core/bytes.hpp>

namespace honeyscan {

//! Original Keccak-256 (0x01 padding), as used for Ethereum topics,
//! selectors and storage keys. Not FIPS-202 SHA3-256.
Hash32 keccak256(ByteView data);
Hash32 keccak256(std::string_view text);

//! First four bytes of keccak256(signature).
std::array<std::uint8_t, 4> function_selector(std::string_view signature);

}  // namespace honeyscan
