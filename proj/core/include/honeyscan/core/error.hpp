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

#include <stdexcept>
#include <string>
#include <string_view>

namespace honeyscan {

enum class Errc {
    parse,
    overflow,
    division_by_zero,
    invalid_argument,
    backend_unavailable,
    unknown_pool,
    unknown_token,
    no_liquidity,
    zero_balance,
    probe_failed,
    wrong_bundle_kind,
    missing_snapshot,
    block_gap,
    empty_input,
    schema,
    unknown_signature,
    short_payload,
    malformed_log,
    method_not_supported,
    node_limit,
    rpc,
    transport,
    io,
};

std::string_view to_string(Errc code) noexcept;

//! Every failure raised by the library carries one of the codes above so
//! callers can branch without parsing message text.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error{what}, code_{code} {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

}  // namespace honeyscan
