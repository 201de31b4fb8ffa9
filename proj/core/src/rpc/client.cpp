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


#include <honeyscan/rpc/client.hpp>

#include <algorithm>
#include <map>
#include <thread>

namespace honeyscan::rpc {

namespace {

bool contains_ci(std::string text, std::string_view needle) {
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
    return text.find(needle) != std::string::npos;
}

}  // namespace

RpcError::RpcError(int code, const std::string& message, nlohmann::json data)
    : Error{Errc::rpc, "RPC error " + std::to_string(code) + ": " + message},
      code_{code},
      message_{message},
      data_(std::move(data)) {}

bool RpcError::method_not_found() const {
    return code_ == -32601 || contains_ci(message_, "method not found") || contains_ci(message_, "does not exist");
}

bool RpcError::result_limit() const {
    return code_ == -32005 || contains_ci(message_, "more than") || contains_ci(message_, "too many") ||
           contains_ci(message_, "block range") || contains_ci(message_, "limit exceeded");
}

bool RpcError::reverted() const { return code_ == 3 || contains_ci(message_, "revert"); }

TokenBucket::TokenBucket(double per_second) : rate_{per_second}, tokens_{std::max(1.0, per_second)}, last_{Clock::now()} {}

void TokenBucket::acquire() {
    if (rate_ <= 0) return;
    std::unique_lock lock{mutex_};
    for (;;) {
        const auto now = Clock::now();
        tokens_ = std::min(std::max(1.0, rate_), tokens_ + std::chrono::duration<double>(now - last_).count() * rate_);
        last_ = now;
        if (tokens_ >= 1.0) {
            tokens_ -= 1.0;
            return;
        }
        const auto wait = std::chrono::duration<double>((1.0 - tokens_) / rate_);
        lock.unlock();
        std::this_thread::sleep_for(wait);
        lock.lock();
    }
}

const nlohmann::json& Reply::value() const {
    if (error) throw *error;
    return result;
}

RpcClient::RpcClient(std::shared_ptr<Transport> transport, EndpointConfig config)
    : transport_{std::move(transport)}, config_{std::move(config)}, bucket_{config_.rate_limit} {
    config_.validate();
}

nlohmann::json RpcClient::send_with_retry(const nlohmann::json& payload) {
    auto delay = config_.backoff;
    for (unsigned attempt = 0;; ++attempt) {
        bucket_.acquire();
        ++round_trips_;
        try {
            return transport_->send(payload);
        } catch (const Error& e) {
            if (e.code() != Errc::transport || attempt >= config_.retries) throw;
        }
        std::this_thread::sleep_for(delay);
        delay *= 2;
    }
}

Reply RpcClient::to_reply(const nlohmann::json& response) {
    Reply r;
    if (response.contains("error") && !response.at("error").is_null()) {
        const auto& e = response.at("error");
        r.error = RpcError{e.value("code", 0), e.value("message", std::string{}), e.value("data", nlohmann::json{})};
    } else if (response.contains("result")) {
        r.result = response.at("result");
    } else {
        r.error = RpcError{-32603, "response has neither result nor error: " + response.dump()};
    }
    return r;
}

nlohmann::json RpcClient::call(const std::string& method, nlohmann::json params) {
    nlohmann::json payload{{"jsonrpc", "2.0"}, {"id", next_id_++}, {"method", method}, {"params", std::move(params)}};
    const auto response = send_with_retry(payload);
    if (!response.is_object()) throw Error{Errc::transport, "non-object JSON-RPC response"};
    return to_reply(response).value();
}

std::vector<Reply> RpcClient::batch(std::span<const Request> requests) {
    std::vector<Reply> out(requests.size());
    for (std::size_t start = 0; start < requests.size(); start += config_.max_batch) {
        const auto end = std::min(requests.size(), start + config_.max_batch);
        nlohmann::json payload = nlohmann::json::array();
        std::map<std::uint64_t, std::size_t> slot_of;
        for (std::size_t i = start; i < end; ++i) {
            const auto id = next_id_++;
            slot_of[id] = i;
            payload.push_back({{"jsonrpc", "2.0"}, {"id", id}, {"method", requests[i].method}, {"params", requests[i].params}});
        }
        const auto response = send_with_retry(payload);
        if (!response.is_array()) {
            // Some nodes answer a whole batch with one error object.
            const auto r = to_reply(response);
            throw r.error.value_or(RpcError{-32603, "batch answered with a non-array"});
        }
        for (const auto& item : response) {
            const auto id = item.value("id", nlohmann::json{});
            if (!id.is_number_unsigned()) continue;
            if (auto it = slot_of.find(id.get<std::uint64_t>()); it != slot_of.end()) {
                out[it->second] = to_reply(item);
                slot_of.erase(it);
            }
        }
        if (!slot_of.empty()) throw Error{Errc::transport, "batch response is missing " + std::to_string(slot_of.size()) + " replies"};
    }
    return out;
}

}  // namespace honeyscan::rpc
