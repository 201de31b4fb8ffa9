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
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <nlohmann/json.hpp>

namespace honeyscan::rpc {

//! Moves one JSON-RPC payload (a request object or a batch array) and
//! returns the decoded response. Network-level failures throw
//! Error{Errc::transport}; implementations must be thread-safe.
class Transport {
  public:
    virtual ~Transport() = default;
    virtual nlohmann::json send(const nlohmann::json& payload) = 0;
};

class HttpTransport final : public Transport {
  public:
    HttpTransport(std::string url, std::chrono::milliseconds timeout);
    nlohmann::json send(const nlohmann::json& payload) override;

  private:
    std::string origin_;
    std::string path_;
    std::chrono::milliseconds timeout_;
};

//! Identity of a request for replay: method plus canonical params, id ignored.
std::string request_key(const nlohmann::json& request);

inline constexpr const char* kFixtureSchema = "honeyscan.rpc-fixture/v1";

//! Answers requests from a recorded exchange list; never touches the network.
class FixtureTransport final : public Transport {
  public:
    explicit FixtureTransport(const nlohmann::json& fixture);
    static std::shared_ptr<FixtureTransport> load(const std::filesystem::path& path);

    nlohmann::json send(const nlohmann::json& payload) override;
    [[nodiscard]] std::size_t served() const noexcept { return served_.load(); }
    [[nodiscard]] std::size_t size() const noexcept { return responses_.size(); }

  private:
    nlohmann::json answer(const nlohmann::json& request);

    std::map<std::string, nlohmann::json> responses_;
    std::atomic<std::size_t> served_{0};
};

//! Forwards to `inner` and keeps every (request, response) pair for replay.
class RecordingTransport final : public Transport {
  public:
    explicit RecordingTransport(std::shared_ptr<Transport> inner);
    nlohmann::json send(const nlohmann::json& payload) override;

    [[nodiscard]] nlohmann::json fixture() const;
    void save(const std::filesystem::path& path) const;

  private:
    void keep(const nlohmann::json& request, const nlohmann::json& response);

    std::shared_ptr<Transport> inner_;
    mutable std::mutex mutex_;
    std::map<std::string, std::pair<nlohmann::json, nlohmann::json>> exchanges_;
};

}  // namespace honeyscan::rpc
