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


// Opt-in check against a real archive node. Skipped unless
// HONEYSCAN_SMOKE_RPC_URL names an Ethereum mainnet endpoint.

#include <cstdlib>
#include <iostream>

#include <gtest/gtest.h>

#include <honeyscan/rpc/rpc_chain.hpp>
#include <honeyscan/rpc/transport.hpp>

namespace honeyscan::rpc {
namespace {

TEST(LiveSmoke, MainnetEndpoint) {
    const char* url = std::getenv("HONEYSCAN_SMOKE_RPC_URL");
    if (url == nullptr || *url == '\0') GTEST_SKIP() << "HONEYSCAN_SMOKE_RPC_URL not set";
    RpcConfig config;
    config.endpoint.url = url;
    RpcChain chain{std::make_shared<HttpTransport>(config.endpoint.url, config.endpoint.request_timeout), config};
    const auto caps = chain.probe();
    std::cout << "eth_callMany: " << (caps.call_many ? "yes" : "no") << ' ' << caps.detail << '\n';

    const BlockNumber head = chain.head();
    ASSERT_GT(head, 10008355u);
    // USDC/WETH Uniswap V2 pair.
    const auto pool = chain.pool_info(Address::from_hex("0xB4e16d0168e52d35CaCD2c6185b44281Ec28C9Dc"));
    EXPECT_EQ(pool.dex_version, DexVersion::V2);
    EXPECT_EQ(pool.token_x, Address::from_hex("0xA0b86991c6218b36c1d19D4a2e9Eb0cE3606eB48"));
    EXPECT_EQ(pool.token_y, config.contracts.weth);
    EXPECT_TRUE(chain.get_reserves(pool.pool, head).has_liquidity());
    EXPECT_NO_THROW((void)chain.get_swaps(pool.pool, BlockRange{head - 20, head}));
}

}  // namespace
}  // namespace honeyscan::rpc
