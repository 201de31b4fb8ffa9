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


#include <honeyscan/rpc/transport.hpp>

#include <fstream>

#include <httplib.h>

#include <honeyscan/core/error.hpp>

namespace honeyscan::rpc {

HttpTransport::HttpTransport(std::string url, std::chrono::milliseconds timeout) : timeout_{timeout} {
    const auto scheme = url.find("://");
    if (scheme == std::string::npos) throw Error{Errc::invalid_argument, "endpoint URL needs a scheme: " + url};
    const auto slash = url.find('/', scheme + 3);
    origin_ = url.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : url.substr(slash);
}

nlohmann::json HttpTransport::send(const nlohmann::json& payload) {
    httplib::Client client{origin_};
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    const auto res = client.Post(path_, payload.dump(), "application/json");
    if (!res) throw Error{Errc::transport, "POST " + origin_ + path_ + ": " + httplib::to_string(res.error())};
    if (res->status != 200) {
        throw Error{Errc::transport, "POST " + origin_ + path_ + ": HTTP " + std::to_string(res->status)};
    }
    try {
        return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error{Errc::transport, std::string{"unparseable response: "} + e.what()};
    }
}

std::string request_key(const nlohmann::json& request) {
    return request.value("method", std::string{}) + request.value("params", nlohmann::json::array()).dump();
}

FixtureTransport::FixtureTransport(const nlohmann::json& fixture) {
    if (fixture.value("schema", std::string{}) != kFixtureSchema) {
        throw Error{Errc::schema, std::string{"fixture schema must be "} + kFixtureSchema};
    }
    for (const auto& e : fixture.at("exchanges")) responses_.emplace(request_key(e.at("request")), e.at("response"));
}

std::shared_ptr<FixtureTransport> FixtureTransport::load(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw Error{Errc::io, "cannot open fixture " + path.string()};
    return std::make_shared<FixtureTransport>(nlohmann::json::parse(in));
}

nlohmann::json FixtureTransport::answer(const nlohmann::json& request) {
    const auto it = responses_.find(request_key(request));
    if (it == responses_.end()) throw Error{Errc::transport, "fixture has no response for " + request_key(request)};
    ++served_;
    nlohmann::json out = it->second;
    out["jsonrpc"] = "2.0";
    out["id"] = request.value("id", nlohmann::json{});
    return out;
}

nlohmann::json FixtureTransport::send(const nlohmann::json& payload) {
    if (!payload.is_array()) return answer(payload);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : payload) out.push_back(answer(r));
    return out;
}

RecordingTransport::RecordingTransport(std::shared_ptr<Transport> inner) : inner_{std::move(inner)} {}

void RecordingTransport::keep(const nlohmann::json& request, const nlohmann::json& response) {
    nlohmann::json req{{"method", request.at("method")}, {"params", request.value("params", nlohmann::json::array())}};
    nlohmann::json res = nlohmann::json::object();
    if (response.contains("result")) res["result"] = response.at("result");
    if (response.contains("error")) res["error"] = response.at("error");
    std::lock_guard lock{mutex_};
    exchanges_.try_emplace(request_key(req), std::move(req), std::move(res));
}

nlohmann::json RecordingTransport::send(const nlohmann::json& payload) {
    auto response = inner_->send(payload);
    if (!payload.is_array()) {
        keep(payload, response);
        return response;
    }
    std::map<std::string, const nlohmann::json*> by_id;
    for (const auto& r : response) by_id[r.value("id", nlohmann::json{}).dump()] = &r;
    for (const auto& r : payload) {
        if (auto it = by_id.find(r.value("id", nlohmann::json{}).dump()); it != by_id.end()) keep(r, *it->second);
    }
    return response;
}

nlohmann::json RecordingTransport::fixture() const {
    nlohmann::json exchanges = nlohmann::json::array();
    std::lock_guard lock{mutex_};
    for (const auto& [key, e] : exchanges_) exchanges.push_back({{"request", e.first}, {"response", e.second}});
    return {{"schema", kFixtureSchema}, {"exchanges", exchanges}};
}

void RecordingTransport::save(const std::filesystem::path& path) const {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out{tmp};
        if (!out) throw Error{Errc::io, "cannot write " + tmp};
        out << fixture().dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace honeyscan::rpc
