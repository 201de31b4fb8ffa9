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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include <honeyscan/core/bytes.hpp>

namespace honeyscan::rpc {

struct EndpointConfig {
    std::string url{};
    std::chrono::milliseconds request_timeout{30000};
    std::size_t max_batch{50};
    unsigned retries{3};
    //! Requests per second; 0 disables limiting.
    double rate_limit{20.0};
    //! First retry delay; doubles per attempt.
    std::chrono::milliseconds backoff{250};

    void validate() const;
};

//! Mainnet Uniswap deployments by default.
struct ContractAddresses {
    Address v2_factory{Address::from_hex("0x5C69bEe701ef814a2B6a3EDD4B1652CB9cc5aA6f")};
    Address v3_factory{Address::from_hex("0x1F98431c8aD98523631AE4a59f267346ea31F984")};
    Address v2_router{Address::from_hex("0x7a250d5630B4cF539739dF2C5dAcb4c659F2488D")};
    Address v3_router{Address::from_hex("0x68b3465833fb72A70ecDF485E0e4C7bD8665Fc45")};
    Address quoter{Address::from_hex("0xb27308f9F90D607463bb33eA1BeBb41C27CE5AB6")};
    Address weth{Address::from_hex("0xC02aaA39b223FE8D0A0e5C4F27eAD9083C756Cc2")};
};

struct RpcConfig {
    EndpointConfig endpoint{};
    ContractAddresses contracts{};
    //! Storage slot of each token's balance mapping, for simulation overrides.
    std::map<Address, std::uint64_t> balance_slots{};
    std::optional<std::uint64_t> default_balance_slot{};
    //! Largest block span sent in one eth_getLogs request.
    std::uint64_t max_log_range{2000};

    RpcConfig();
    [[nodiscard]] std::optional<std::uint64_t> balance_slot(const Address& token) const;
};

inline constexpr const char* kRpcUrlEnv = "HONEYSCAN_RPC_URL";
inline constexpr const char* kCheckpointEnv = "HONEYSCAN_CHECKPOINT";

RpcConfig rpc_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RpcConfig& config);
RpcConfig load_rpc_config(const std::filesystem::path& path);
//! Applies HONEYSCAN_RPC_URL when set.
void apply_env(RpcConfig& config);

}  // namespace honeyscan::rpc
