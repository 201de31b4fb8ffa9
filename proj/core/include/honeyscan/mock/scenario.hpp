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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include <honeyscan/core/amount.hpp>
#include <honeyscan/core/bytes.hpp>
#include <honeyscan/core/rational.hpp>
#include <honeyscan/core/types.hpp>
#include <honeyscan/mock/behavior.hpp>
#include <honeyscan/mock/mock_chain.hpp>

namespace honeyscan::mock {

inline constexpr std::string_view kScenarioSchema = "honeyscan.scenario/v1";

//! Stable account-name to address mapping for one scenario seed.
class AccountBook {
  public:
    explicit AccountBook(std::uint64_t seed) : seed_{seed} {}

    [[nodiscard]] Address address(std::string_view name) const;
    [[nodiscard]] std::optional<std::string> name_of(const Address& address) const;
    [[nodiscard]] const std::map<std::string, Address>& known() const noexcept { return names_; }

  private:
    std::uint64_t seed_;
    mutable std::map<std::string, Address> names_;
};

//! Behavior as written in a scenario: account references are still names.
struct BehaviorSpec {
    std::string kind;  // honest, high_tax, hidden_tax, owner_drain, list_gate, limited_sell, delayed_sell_tax
    nlohmann::json params = nlohmann::json::object();
};

struct TokenSpec {
    std::string name;
    BehaviorSpec behavior;
    TokenAmount supply;
    std::string owner;
    bool base{false};
};

struct PoolSpec {
    std::string name;
    std::string token_x;
    std::string token_y;
    Rational fee{3, 1000};
};

struct DeployToken { std::string token; };
struct CreatePool { std::string pool; };
struct AddLiquidity { std::string pool; std::string provider; TokenAmount x; TokenAmount y; };
struct Fund { std::string token; std::string to; TokenAmount amount; };
struct WashBuy { std::string pool; std::string trader; TokenAmount amount; std::uint32_t times{1}; };
struct VictimBuy { std::string pool; std::string victim; TokenAmount amount; };
struct FlipSwitch { std::string token; };
struct Drain { std::string token; std::string victim; };
struct RemoveLiquidity { std::string pool; };
struct Wait { std::uint64_t blocks{1}; };

using Step = std::variant<DeployToken, CreatePool, AddLiquidity, Fund, WashBuy, VictimBuy, FlipSwitch, Drain,
                          RemoveLiquidity, Wait>;

struct Scenario {
    std::string name;
    std::uint64_t seed{0};
    std::vector<TokenSpec> tokens;
    std::vector<PoolSpec> pools;
    std::vector<Step> steps;
    //! Per-pool label overrides; pools not listed use the behavior rule.
    std::map<std::string, TrapSet> expected;
};

//! Parse or validation failure. line/column are 1-based and zero when the
//! problem is structural rather than syntactic.
class ScenarioError : public Error {
  public:
    ScenarioError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error{Errc::schema, what}, line_{line}, column_{column} {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

Scenario parse_scenario(std::string_view text, std::string name = {});
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

//! Resolves names in a behavior spec. The owner address fills OwnerDrain.owner.
TokenBehavior resolve_behavior(const BehaviorSpec& spec, const Address& owner, const AccountBook& accounts);

//! Throws ScenarioError when the script breaks ordering rules (pool before
//! its tokens, trades before the pool, switch on a switchless token...).
void validate_scenario(const Scenario& scenario);

struct PoolOutcome {
    std::string name;
    PoolInfo info;
    Address trap_token;
    Address base_token;
    BehaviorFamily family{BehaviorFamily::Honest};
    TrapSet ground_truth;
    std::optional<BlockNumber> activated_at;
    //! Buyer addresses in first-buy order.
    std::vector<Address> buyers;
};

struct ScenarioTrace {
    std::string name;
    std::uint64_t seed{0};
    BlockNumber head{0};
    std::map<std::string, Address> accounts;
    std::map<std::string, Address> tokens;
    std::set<Address> base_tokens;
    std::vector<PoolOutcome> pools;
    //! Block in which each step started, parallel to Scenario::steps.
    std::vector<BlockNumber> step_blocks;
    std::vector<std::pair<std::string, std::string>> failed_steps;  // step label, revert reason
};

//! Executes the script block by block on `chain` (which must be fresh).
//! Every step occupies its own block; WashBuy with times = n occupies n.
ScenarioTrace run_attack_script(MockChain& chain, const Scenario& scenario);

//! JSON-lines trace: one object per event in execution order.
std::string export_trace(const MockChain& chain, const ScenarioTrace& trace);

}  // namespace honeyscan::mock
