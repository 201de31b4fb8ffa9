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

#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <honeyscan/core/error.hpp>
#include <honeyscan/rpc/config.hpp>
#include <honeyscan/rpc/transport.hpp>

namespace honeyscan::rpc {

//! A JSON-RPC error object returned by the node.
class RpcError : public Error {
  public:
    RpcError(int code, const std::string& message, nlohmann::json data = {});
    [[nodiscard]] int rpc_code() const noexcept { return code_; }
    [[nodiscard]] const std::string& message() const noexcept { return message_; }
    [[nodiscard]] const nlohmann::json& data() const noexcept { return data_; }

    //! -32601, or a message saying the method does not exist.
    [[nodiscard]] bool method_not_found() const;
    //! Result-size or block-range limits on log queries.
    [[nodiscard]] bool result_limit() const;
    //! Execution reverted inside an eth_call.
    [[nodiscard]] bool reverted() const;

  private:
    int code_;
    std::string message_;
    nlohmann::json data_;
};

class TokenBucket {
  public:
    explicit TokenBucket(double per_second);
    void acquire();

  private:
    using Clock = std::chrono::steady_clock;
    double rate_;
    double tokens_;
    Clock::time_point last_;
    std::mutex mutex_;
};

struct Request {
    std::string method;
    nlohmann::json params = nlohmann::json::array();
};

struct Reply {
    nlohmann::json result{};
    std::optional<RpcError> error{};

    [[nodiscard]] const nlohmann::json& value() const;
};

//! JSON-RPC 2.0 client with retries on transport failures, a shared rate
//! limit and request batching. Thread-safe.
class RpcClient {
  public:
    RpcClient(std::shared_ptr<Transport> transport, EndpointConfig config);

    //! Throws RpcError for node-reported errors.
    nlohmann::json call(const std::string& method, nlohmann::json params = nlohmann::json::array());
    //! Replies in request order; chunks of at most max_batch per round trip.
    std::vector<Reply> batch(std::span<const Request> requests);

    [[nodiscard]] std::size_t round_trips() const noexcept { return round_trips_.load(); }
    [[nodiscard]] const EndpointConfig& config() const noexcept { return config_; }

  private:
    nlohmann::json send_with_retry(const nlohmann::json& payload);
    static Reply to_reply(const nlohmann::json& response);

    std::shared_ptr<Transport> transport_;
    EndpointConfig config_;
    TokenBucket bucket_;
    std::atomic<std::uint64_t> next_id_{1};
    std::atomic<std::size_t> round_trips_{0};
};

}  // namespace honeyscan::rpc
