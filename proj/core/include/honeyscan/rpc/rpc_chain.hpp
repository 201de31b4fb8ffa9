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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <honeyscan/chainview.hpp>
#include <honeyscan/rpc/client.hpp>
#include <honeyscan/rpc/config.hpp>
#include <honeyscan/rpc/events.hpp>

namespace honeyscan::rpc {

struct LogFilter {
    std::vector<Address> addresses{};
    std::vector<Hash32> topic0{};
    BlockRange range{};
};

struct Capabilities {
    bool call_many{false};
    std::string detail{};
};

//! ChainView over an archive node's JSON-RPC interface.
//!
//! Bundles go through eth_callMany with the parameter shape
//!   [[{"transactions": [...]}], {"blockNumber": N, "transactionIndex": -1}, overrides]
//! where overrides map a token to {"stateDiff": {slot: value}}. Nodes without
//! the method get per-call eth_call, and outcomes are marked degraded.
class RpcChain final : public ChainView {
  public:
    RpcChain(std::shared_ptr<Transport> transport, RpcConfig config);

    //! Checks eth_callMany support once; later bundles use the result.
    Capabilities probe();

    //! eth_getLogs, split into max_log_range chunks and halved further
    //! whenever the node reports a result limit.
    [[nodiscard]] std::vector<RawLog> fetch_logs(const LogFilter& filter) const;
    //! Logs dropped because they could not be decoded.
    [[nodiscard]] std::size_t skipped_logs() const noexcept { return skipped_.load(); }
    [[nodiscard]] PoolInfo pool_info(const Address& pool) const;
    [[nodiscard]] RpcClient& client() const noexcept { return *client_; }
    [[nodiscard]] const RpcConfig& config() const noexcept { return config_; }

    [[nodiscard]] BlockNumber head() const override;
    [[nodiscard]] std::vector<PoolInfo> get_pool_created(BlockRange range) const override;
    [[nodiscard]] std::vector<SwapRecord> get_swaps(const Address& pool, BlockRange range) const override;
    [[nodiscard]] std::vector<LiquidityEvent> get_liquidity_events(const Address& pool, BlockRange range) const override;
    [[nodiscard]] std::vector<TransferRecord> get_transfers(const Address& token, BlockRange range) const override;
    [[nodiscard]] std::vector<ApproveRecord> get_approvals(const Address& token, BlockRange range) const override;
    [[nodiscard]] BalanceReading balance_of(const Address& token, const Address& holder, BlockNumber block) const override;
    [[nodiscard]] std::vector<BalanceReading> balances_of(const Address& token, std::span<const Address> holders,
                                                          BlockNumber block) const override;
    [[nodiscard]] Reserves get_reserves(const Address& pool, BlockNumber block) const override;
    [[nodiscard]] std::vector<CallOutcome> simulate_bundle(BlockNumber block, std::span<const Call> calls,
                                                           const StateOverrides& overrides = {}) const override;
    [[nodiscard]] Address router(DexVersion version) const override;
    [[nodiscard]] std::optional<TokenAmount> quote_exact_input(const PoolInfo& pool, const Address& token_in,
                                                               const TokenAmount& amount_in,
                                                               BlockNumber block) const override;

  private:
    struct Tx {
        Address from;
        Address to;
        Bytes data;
    };
    struct TxResult {
        bool ok{true};
        Bytes value{};
        std::string reason{};
    };

    void fetch_chunk(const LogFilter& filter, BlockRange range, std::vector<RawLog>& out) const;
    void require_code(const Address& account, Errc missing) const;
    void resolve_senders(std::span<const Hash32> hashes) const;
    [[nodiscard]] Address sender_of(const Hash32& hash) const;
    [[nodiscard]] std::vector<TxResult> run_bundle(BlockNumber block, const std::vector<Tx>& txs,
                                                   const nlohmann::json& overrides, bool& degraded) const;
    [[nodiscard]] nlohmann::json override_json(const StateOverrides& overrides) const;
    [[nodiscard]] Tx swap_tx(const Call& call, const SwapExactInCall& swap, BlockNumber block) const;

    RpcConfig config_;
    std::unique_ptr<RpcClient> client_;
    mutable std::atomic<std::size_t> skipped_{0};
    mutable std::atomic<int> call_many_{-1};  // -1 unknown, 0 unsupported, 1 supported
    mutable std::mutex mutex_;
    mutable std::map<Address, PoolInfo> pools_;
    mutable std::map<Address, bool> has_code_;
    mutable std::unordered_map<Hash32, Address> senders_;
};

//! Parses one eth_callMany entry: {"value": hex} or {"error": ..., "value"?: revert data}.
//! Returns (ok, return data, revert reason).
std::tuple<bool, Bytes, std::string> parse_call_result(const nlohmann::json& entry);

}  // namespace honeyscan::rpc
