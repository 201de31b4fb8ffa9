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

#include <honeyscan/core/error.hpp>

namespace honeyscan {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::parse: return "parse";
        case Errc::overflow: return "overflow";
        case Errc::division_by_zero: return "division_by_zero";
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::backend_unavailable: return "backend_unavailable";
        case Errc::unknown_pool: return "unknown_pool";
        case Errc::unknown_token: return "unknown_token";
        case Errc::no_liquidity: return "no_liquidity";
        case Errc::zero_balance: return "zero_balance";
        case Errc::probe_failed: return "probe_failed";
        case Errc::wrong_bundle_kind: return "wrong_bundle_kind";
        case Errc::missing_snapshot: return "missing_snapshot";
        case Errc::block_gap: return "block_gap";
        case Errc::empty_input: return "empty_input";
        case Errc::schema: return "schema";
        case Errc::unknown_signature: return "unknown_signature";
        case Errc::short_payload: return "short_payload";
        case Errc::malformed_log: return "malformed_log";
        case Errc::method_not_supported: return "method_not_supported";
        case Errc::node_limit: return "node_limit";
        case Errc::rpc: return "rpc";
        case Errc::transport: return "transport";
        case Errc::io: return "io";
    }
    return "unknown";
}

}  // namespace honeyscan
