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


// Regenerates the chainview conformance fixture by running the suite
// against the in-process mock node and recording every exchange.

#include <iostream>

#include <honeyscan/rpc/rpc_chain.hpp>

#include "conformance.hpp"
#include "mock_node.hpp"

int main(int argc, char** argv) {
    using namespace honeyscan;
    if (argc != 2) {
        std::cerr << "usage: " << argv[0] << " <fixture.json>\n";
        return 2;
    }
    mock::MockChain chain;
    const auto world = testing::build_conformance_world(chain);
    auto node = std::make_shared<testing::MockNodeTransport>(chain);
    auto recorder = std::make_shared<rpc::RecordingTransport>(node);
    rpc::RpcChain rpc_chain{recorder, testing::mock_node_config()};
    int failed = 0;
    for (const auto& c : testing::run_conformance_suite(rpc_chain, world)) {
        if (!c.passed) {
            ++failed;
            std::cerr << "FAIL " << c.name << ": " << c.detail << "\n";
        }
    }
    if (failed != 0) return 1;
    recorder->save(argv[1]);
    std::cout << "recorded " << recorder->fixture().at("exchanges").size() << " exchanges to " << argv[1] << "\n";
    return 0;
}
