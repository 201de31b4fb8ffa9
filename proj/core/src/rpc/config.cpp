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


#include <honeyscan/rpc/config.hpp>

#include <cstdlib>
#include <fstream>

#include <honeyscan/core/error.hpp>

namespace honeyscan::rpc {

void EndpointConfig::validate() const {
    if (request_timeout.count() <= 0) throw Error{Errc::invalid_argument, "request_timeout must be positive"};
    if (max_batch == 0) throw Error{Errc::invalid_argument, "max_batch must be at least 1"};
    if (retries > 10) throw Error{Errc::invalid_argument, "retries must be at most 10"};
    if (rate_limit < 0) throw Error{Errc::invalid_argument, "rate_limit must not be negative"};
}

RpcConfig::RpcConfig() { balance_slots[contracts.weth] = 3; }

std::optional<std::uint64_t> RpcConfig::balance_slot(const Address& token) const {
    if (auto it = balance_slots.find(token); it != balance_slots.end()) return it->second;
    return default_balance_slot;
}

namespace {

Address address_field(const nlohmann::json& j, const char* key, const Address& fallback) {
    if (!j.contains(key)) return fallback;
    return Address::from_hex(j.at(key).get<std::string>());
}

}  // namespace

RpcConfig rpc_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error{Errc::schema, "RPC config must be a JSON object"};
    RpcConfig c;
    try {
        auto& e = c.endpoint;
        e.url = j.value("url", e.url);
        e.request_timeout = std::chrono::milliseconds{j.value("request_timeout_ms", e.request_timeout.count())};
        e.max_batch = j.value("max_batch", e.max_batch);
        e.retries = j.value("retries", e.retries);
        e.rate_limit = j.value("rate_limit", e.rate_limit);
        e.backoff = std::chrono::milliseconds{j.value("backoff_ms", e.backoff.count())};
        c.max_log_range = j.value("max_log_range", c.max_log_range);
        if (j.contains("contracts")) {
            const auto& k = j.at("contracts");
            auto& a = c.contracts;
            a.v2_factory = address_field(k, "v2_factory", a.v2_factory);
            a.v3_factory = address_field(k, "v3_factory", a.v3_factory);
            a.v2_router = address_field(k, "v2_router", a.v2_router);
            a.v3_router = address_field(k, "v3_router", a.v3_router);
            a.quoter = address_field(k, "quoter", a.quoter);
            const Address weth = address_field(k, "weth", a.weth);
            if (weth != a.weth) {
                c.balance_slots.erase(a.weth);
                c.balance_slots[weth] = 3;
                a.weth = weth;
            }
        }
        if (j.contains("balance_slots")) {
            for (const auto& [token, slot] : j.at("balance_slots").items()) {
                c.balance_slots[Address::from_hex(token)] = slot.get<std::uint64_t>();
            }
        }
        if (j.contains("default_balance_slot") && !j.at("default_balance_slot").is_null()) {
            c.default_balance_slot = j.at("default_balance_slot").get<std::uint64_t>();
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error{Errc::schema, std::string{"RPC config: "} + ex.what()};
    }
    if (c.max_log_range == 0) throw Error{Errc::schema, "RPC config: max_log_range must be positive"};
    c.endpoint.validate();
    return c;
}

nlohmann::json to_json(const RpcConfig& c) {
    nlohmann::json slots = nlohmann::json::object();
    for (const auto& [token, slot] : c.balance_slots) slots[token.to_hex()] = slot;
    const auto& a = c.contracts;
    return {{"url", c.endpoint.url},
            {"request_timeout_ms", c.endpoint.request_timeout.count()},
            {"max_batch", c.endpoint.max_batch},
            {"retries", c.endpoint.retries},
            {"rate_limit", c.endpoint.rate_limit},
            {"backoff_ms", c.endpoint.backoff.count()},
            {"max_log_range", c.max_log_range},
            {"contracts",
             {{"v2_factory", a.v2_factory.to_hex()},
              {"v3_factory", a.v3_factory.to_hex()},
              {"v2_router", a.v2_router.to_hex()},
              {"v3_router", a.v3_router.to_hex()},
              {"quoter", a.quoter.to_hex()},
              {"weth", a.weth.to_hex()}}},
            {"balance_slots", slots},
            {"default_balance_slot", c.default_balance_slot ? nlohmann::json(*c.default_balance_slot) : nlohmann::json{}}};
}

RpcConfig load_rpc_config(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw Error{Errc::io, "cannot open RPC config " + path.string()};
    try {
        return rpc_config_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error{Errc::schema, path.string() + ": " + e.what()};
    }
}

void apply_env(RpcConfig& config) {
    if (const char* url = std::getenv(kRpcUrlEnv); url != nullptr && *url != '\0') config.endpoint.url = url;
}

}  // namespace honeyscan::rpc
