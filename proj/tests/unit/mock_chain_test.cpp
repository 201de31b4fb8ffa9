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


#include <map>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <honeyscan/mock/behavior.hpp>
#include <honeyscan/mock/corpus.hpp>
#include <honeyscan/mock/mock_chain.hpp>
#include <honeyscan/mock/scenario.hpp>
#include <honeyscan/simulator.hpp>

namespace honeyscan::mock {
namespace {

const Address kOwner = Address::from_hex("0x00000000000000000000000000000000000000a1");
const Address kAlice = Address::from_hex("0x00000000000000000000000000000000000000b2");
const Address kBob = Address::from_hex("0x00000000000000000000000000000000000000c3");

struct PoolFixture {
    MockChain chain;
    Address x, y, pool;

    explicit PoolFixture(TokenBehavior y_behavior = Honest{}, TokenAmount x_liq = 1000, TokenAmount y_liq = 1000) {
        x = chain.deploy_token(Honest{}, TokenAmount{1000000}, kOwner, "X");
        y = chain.deploy_token(std::move(y_behavior), TokenAmount{1000000}, kOwner, "Y");
        pool = chain.create_pool(x, y, Rational{3, 1000}, kOwner);
        chain.advance_block();
        EXPECT_TRUE(chain.add_liquidity(pool, kOwner, x_liq, y_liq).ok());
        EXPECT_TRUE(chain.token_transfer(x, kOwner, kAlice, TokenAmount{10000}).ok());
        chain.advance_block();
    }

    TokenAmount balance(const Address& token, const Address& holder) {
        return chain.balance_of(token, holder, chain.head()).snapshot.balance;
    }
};

TEST(MockChain, DeployCreditsOwnerAndLogsMint) {
    MockChain chain;
    const auto supply = TokenAmount::parse("1e24");
    const Address t = chain.deploy_token(Honest{}, supply, kOwner);
    chain.advance_block();
    EXPECT_EQ(chain.balance_of(t, kOwner, 1).snapshot.balance, supply);
    const auto logs = chain.get_transfers(t, BlockRange{1, 1});
    ASSERT_EQ(logs.size(), 1u);
    EXPECT_TRUE(logs[0].sender.is_zero());
    EXPECT_EQ(logs[0].value, supply);
}

TEST(MockChain, HonestSwapMatchesConstantProduct) {
    PoolFixture f;
    const auto out = f.chain.swap(f.pool, kAlice, f.x, TokenAmount{100}, kAlice);
    f.chain.advance_block();
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(out.return_value, TokenAmount{90});
    const auto swaps = f.chain.get_swaps(f.pool, BlockRange{1, f.chain.head()});
    ASSERT_EQ(swaps.size(), 1u);
    EXPECT_EQ(swaps[0].amount_out, TokenAmount{90});
    EXPECT_EQ(f.balance(f.y, kAlice), TokenAmount{90});
    EXPECT_EQ(f.chain.get_reserves(f.pool, f.chain.head()), (Reserves{1100, 910}));
}

TEST(MockChain, HiddenTaxDistortsDeliveryNotAccounting) {
    PoolFixture f{HiddenTax{Rational{1, 10}, {}}};
    ASSERT_TRUE(f.chain.swap(f.pool, kAlice, f.x, TokenAmount{100}, kAlice).ok());
    f.chain.advance_block();
    const auto swaps = f.chain.get_swaps(f.pool, BlockRange{1, f.chain.head()});
    ASSERT_EQ(swaps.size(), 1u);
    EXPECT_EQ(swaps[0].amount_out, TokenAmount{90});
    EXPECT_EQ(f.balance(f.y, kAlice), TokenAmount{9});
}

TEST(MockChain, RemoveLiquidityReturnsReserves) {
    PoolFixture f;
    ASSERT_TRUE(f.chain.swap(f.pool, kAlice, f.x, TokenAmount{100}, kAlice).ok());
    f.chain.advance_block();
    const auto x0 = f.balance(f.x, kOwner), y0 = f.balance(f.y, kOwner);
    ASSERT_TRUE(f.chain.remove_liquidity(f.pool, kOwner).ok());
    f.chain.advance_block();
    EXPECT_EQ(f.balance(f.x, kOwner) - x0, TokenAmount{1100});
    EXPECT_EQ(f.balance(f.y, kOwner) - y0, TokenAmount{910});
    EXPECT_FALSE(f.chain.remove_liquidity(f.pool, kOwner).ok());
}

TEST(MockChain, SwapRejectsZeroInputAndEmptyPool) {
    PoolFixture f;
    EXPECT_FALSE(f.chain.swap(f.pool, kAlice, f.x, TokenAmount{}, kAlice).ok());
    MockChain chain;
    const Address a = chain.deploy_token(Honest{}, TokenAmount{1000}, kOwner);
    const Address b = chain.deploy_token(Honest{}, TokenAmount{1000}, kOwner);
    const Address p = chain.create_pool(a, b);
    chain.advance_block();
    EXPECT_FALSE(chain.swap(p, kOwner, a, TokenAmount{10}, kOwner).ok());
}

TEST(MockChain, HonestTaxLogsNetAmount) {
    MockChain chain;
    const Address t = chain.deploy_token(Honest{Rational{3, 5}}, TokenAmount{10000}, kOwner);
    ASSERT_TRUE(chain.token_transfer(t, kOwner, kAlice, TokenAmount{5000}).ok());
    chain.advance_block();
    ASSERT_TRUE(chain.token_transfer(t, kAlice, kBob, TokenAmount{1000}).ok());
    chain.advance_block();
    EXPECT_EQ(chain.balance_of(t, kBob, 2).snapshot.balance, TokenAmount{400});
    const auto logs = chain.get_transfers(t, BlockRange{2, 2});
    ASSERT_FALSE(logs.empty());
    EXPECT_EQ(logs[0].recipient, kBob);
    EXPECT_EQ(logs[0].value, TokenAmount{400});
}

TEST(MockChain, HiddenTaxLogsFullAmount) {
    MockChain chain;
    const Address t = chain.deploy_token(HiddenTax{Rational{1, 10}, {}}, TokenAmount{10000}, kOwner);
    ASSERT_TRUE(chain.token_transfer(t, kOwner, kAlice, TokenAmount{5000}).ok());
    chain.advance_block();
    ASSERT_TRUE(chain.token_transfer(t, kAlice, kBob, TokenAmount{1000}).ok());
    chain.advance_block();
    EXPECT_EQ(chain.balance_of(t, kBob, 2).snapshot.balance, TokenAmount{100});
    const auto logs = chain.get_transfers(t, BlockRange{2, 2});
    ASSERT_EQ(logs.size(), 1u);
    EXPECT_EQ(logs[0].value, TokenAmount{1000});
}

TEST(MockChain, LimitedSellCapsPoolInTransfers) {
    MockChain chain;
    const Address t = chain.deploy_token(LimitedSell{Rational{1, 100}, {}}, TokenAmount{2000000}, kOwner);
    ASSERT_TRUE(chain.token_transfer(t, kOwner, kAlice, TokenAmount{1000000}).ok());
    chain.advance_block();
    ASSERT_TRUE(chain.token_transfer(t, kAlice, kBob, TokenAmount{100000}, TransferContext::PoolIn).ok());
    chain.advance_block();
    EXPECT_EQ(chain.balance_of(t, kBob, 2).snapshot.balance, TokenAmount{10000});
    EXPECT_EQ(chain.balance_of(t, kAlice, 2).snapshot.balance, TokenAmount{990000});
}

TEST(MockChain, ListGateBlocksSellAndKeepsReserves) {
    PoolFixture f{ListGate{GateMode::Allow, {}, false, 0}};
    ASSERT_TRUE(f.chain.token_transfer(f.y, kOwner, kBob, TokenAmount{500}).ok());
    f.chain.advance_block();
    const auto before = f.chain.get_reserves(f.pool, f.chain.head());
    EXPECT_FALSE(f.chain.token_transfer(f.y, kBob, kAlice, TokenAmount{10}).ok());
    const auto sell = f.chain.swap(f.pool, kBob, f.y, TokenAmount{100}, kBob);
    EXPECT_FALSE(sell.ok());
    f.chain.advance_block();
    EXPECT_EQ(f.chain.get_reserves(f.pool, f.chain.head()), before);
    EXPECT_EQ(f.balance(f.y, kBob), TokenAmount{500});
}

TEST(MockChain, OwnerDrainLoggedAndSilent) {
    for (const bool emits : {true, false}) {
        MockChain chain;
        const Address t = chain.deploy_token(OwnerDrain{kOwner, emits}, TokenAmount{10000}, kOwner);
        ASSERT_TRUE(chain.token_transfer(t, kOwner, kAlice, TokenAmount{500}).ok());
        chain.advance_block();
        EXPECT_FALSE(chain.owner_drain(t, kBob, kAlice).ok());
        ASSERT_TRUE(chain.owner_drain(t, kOwner, kAlice).ok());
        chain.advance_block();
        EXPECT_EQ(chain.balance_of(t, kAlice, 2).snapshot.balance, TokenAmount{});
        const auto logs = chain.get_transfers(t, BlockRange{2, 2});
        if (emits) {
            ASSERT_EQ(logs.size(), 1u);
            EXPECT_EQ(logs[0].sender, kAlice);
            EXPECT_TRUE(logs[0].recipient.is_zero());
            EXPECT_EQ(logs[0].value, TokenAmount{500});
        } else {
            EXPECT_TRUE(logs.empty());
        }
        EXPECT_TRUE(chain.owner_drain(t, kOwner, kBob).ok());
    }
}

TEST(MockChain, FlipSwitchTurnsSellsWorthless) {
    PoolFixture f{DelayedSellTax{Rational{1, 1}, ManualTrigger{}, false}};
    ASSERT_TRUE(f.chain.token_transfer(f.y, kOwner, kBob, TokenAmount{200}).ok());
    f.chain.advance_block();
    const auto x0 = f.balance(f.x, kBob);
    ASSERT_TRUE(f.chain.swap(f.pool, kBob, f.y, TokenAmount{50}, kBob).ok());
    f.chain.advance_block();
    EXPECT_GT(f.balance(f.x, kBob), x0);

    EXPECT_FALSE(f.chain.flip_switch(f.y, kBob).ok());
    EXPECT_TRUE(f.chain.flip_switch(f.y, kOwner).ok());
    EXPECT_TRUE(f.chain.flip_switch(f.y, kOwner).ok());
    f.chain.advance_block();
    const auto x1 = f.balance(f.x, kBob);
    ASSERT_TRUE(f.chain.swap(f.pool, kBob, f.y, TokenAmount{50}, kBob).ok());
    f.chain.advance_block();
    EXPECT_EQ(f.balance(f.x, kBob), x1);
    EXPECT_FALSE(f.chain.flip_switch(f.x, kOwner).ok());
}

TEST(MockChain, AtBlockTriggerSwitchesOnSchedule) {
    MockChain chain;
    const Address t = chain.deploy_token(DelayedSellTax{Rational{1, 2}, AtBlock{15}, false}, TokenAmount{100}, kOwner);
    chain.advance_block(13);
    EXPECT_EQ(chain.head(), 13u);
    auto switched = [&](BlockNumber b) {
        return std::get<DelayedSellTax>(chain.state_at(b)->tokens.at(t).behavior).switched;
    };
    EXPECT_FALSE(switched(13));
    chain.advance_block();
    EXPECT_FALSE(switched(14));
    chain.advance_block();
    EXPECT_TRUE(switched(15));
    EXPECT_EQ(chain.state_at(15)->tokens.at(t).activated_at, BlockNumber{15});
}

TEST(MockChain, SealedSnapshotsAreImmutable) {
    MockChain chain;
    const Address t = chain.deploy_token(Honest{}, TokenAmount{1000}, kOwner);
    chain.advance_block(10);
    EXPECT_EQ(chain.head(), 10u);
    ASSERT_TRUE(chain.token_transfer(t, kOwner, kAlice, TokenAmount{300}).ok());
    EXPECT_EQ(chain.advance_block(), 11u);
    EXPECT_EQ(chain.balance_of(t, kOwner, 10).snapshot.balance, TokenAmount{1000});
    EXPECT_EQ(chain.balance_of(t, kOwner, 11).snapshot.balance, TokenAmount{700});
    EXPECT_THROW(chain.advance_block(0), Error);
}

TEST(MockChain, SimulationLeavesChainUntouched) {
    PoolFixture f;
    const auto head = f.chain.head();
    const auto reserves = f.chain.get_reserves(f.pool, head);
    const auto log_size = f.chain.log_snapshot().transfers.size();
    const std::vector<Call> calls{
        Call{kAlice, MockChain::kRouterV2, SwapExactInCall{MockChain::kRouterV2, f.pool, f.x, TokenAmount{100}, kAlice}}};
    const auto out = f.chain.simulate_bundle(head, calls);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_TRUE(out[0].ok());
    EXPECT_EQ(f.chain.head(), head);
    EXPECT_EQ(f.chain.get_reserves(f.pool, head), reserves);
    EXPECT_EQ(f.chain.log_snapshot().transfers.size(), log_size);
}

// Random operation sequences over tax-free honest tokens.
class RandomOps : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomOps, ConservationAndConstantProduct) {
    std::mt19937_64 rng{GetParam()};
    auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>{lo, hi}(rng); };
    MockChain chain;
    const TokenAmount supply = TokenAmount::parse("1e30");
    const Address x = chain.deploy_token(Honest{}, supply, kOwner);
    const Address y = chain.deploy_token(Honest{}, supply, kOwner);
    const Address pool = chain.create_pool(x, y);
    chain.advance_block();
    ASSERT_TRUE(chain.add_liquidity(pool, kOwner, TokenAmount::parse("1e24"), TokenAmount::parse("3e23")).ok());
    const std::vector<Address> people{kOwner, kAlice, kBob};
    for (const auto& p : {kAlice, kBob}) {
        ASSERT_TRUE(chain.token_transfer(x, kOwner, p, TokenAmount::parse("1e25")).ok());
        ASSERT_TRUE(chain.token_transfer(y, kOwner, p, TokenAmount::parse("1e25")).ok());
    }
    chain.advance_block();

    for (int step = 0; step < 200; ++step) {
        const Address who = people[pick(0, 2)];
        const Address token = pick(0, 1) ? x : y;
        const auto state = chain.state_at(chain.head());
        const TokenAmount have = state->tokens.at(token).balance(who);
        if (have.is_zero()) continue;
        const TokenAmount amount = have.raw() > 1000 ? TokenAmount{have.raw() / pick(2, 1000)} : have;
        if (pick(0, 2) == 0) {
            chain.token_transfer(token, who, people[pick(0, 2)], amount);
        } else {
            const auto before = chain.get_reserves(pool, chain.head());
            chain.swap(pool, who, token, amount, who);
            chain.advance_block();
            const auto after = chain.get_reserves(pool, chain.head());
            const auto k0 = boost::multiprecision::uint512_t{before.x.raw()} * before.y.raw();
            const auto k1 = boost::multiprecision::uint512_t{after.x.raw()} * after.y.raw();
            EXPECT_GE(k1, k0) << "step " << step;
            continue;
        }
        chain.advance_block();
    }
    const auto final_state = chain.state_at(chain.head());
    for (const auto& token : {x, y}) {
        boost::multiprecision::uint512_t sum = 0;
        for (const auto& [holder, bal] : final_state->tokens.at(token).balances) sum += bal.raw();
        EXPECT_EQ(sum, boost::multiprecision::uint512_t{supply.raw()});
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomOps, ::testing::Values(1, 2, 3, 4, 5));

TEST(AttackScript, DeterministicTraces) {
    for (const auto& entry : generate_corpus(14, 99)) {
        MockChain a, b;
        const auto ta = run_attack_script(a, entry.scenario);
        const auto tb = run_attack_script(b, entry.scenario);
        EXPECT_EQ(export_trace(a, ta), export_trace(b, tb)) << entry.file_name;
    }
}

TEST(AttackScript, HonestLogsExplainEveryBalance) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto sc = generate_scenario(Stratum::HonestControl, 300 + seed, "h");
        MockChain chain;
        const auto trace = run_attack_script(chain, sc);
        const auto state = chain.state_at(trace.head);
        for (const auto& [name, token] : trace.tokens) {
            std::map<Address, boost::multiprecision::int512_t> replay;
            for (const auto& t : chain.get_transfers(token, BlockRange{1, trace.head})) {
                if (!t.sender.is_zero()) replay[t.sender] -= boost::multiprecision::int512_t{t.value.raw()};
                if (!t.recipient.is_zero()) replay[t.recipient] += boost::multiprecision::int512_t{t.value.raw()};
            }
            for (const auto& [holder, bal] : state->tokens.at(token).balances) {
                EXPECT_EQ(replay[holder], boost::multiprecision::int512_t{bal.raw()}) << sc.name << ' ' << name;
            }
        }
    }
}

TEST(AttackScript, ValidationRejectsBadOrdering) {
    const std::string text = R"({"schema":"honeyscan.scenario/v1","name":"bad","seed":1,
      "tokens":[{"name":"WETH","behavior":"honest","params":{},"supply":"1000","owner":"bank","base":true},
                {"name":"TKN","behavior":"honest","params":{},"supply":"1000","owner":"dev"}],
      "pools":[{"name":"main","token_x":"WETH","token_y":"TKN"}],
      "steps":[{"op":"deploy_token","token":"WETH"},{"op":"create_pool","pool":"main"}]})";
    EXPECT_THROW(validate_scenario(parse_scenario(text)), ScenarioError);
    const std::string flip = R"({"schema":"honeyscan.scenario/v1","name":"bad","seed":1,
      "tokens":[{"name":"TKN","behavior":"honest","params":{},"supply":"1000","owner":"dev"}],
      "pools":[],
      "steps":[{"op":"deploy_token","token":"TKN"},{"op":"flip_switch","token":"TKN"}]})";
    EXPECT_THROW(validate_scenario(parse_scenario(flip)), ScenarioError);
}

TEST(AttackScript, SyntaxErrorsCarryPosition) {
    try {
        parse_scenario("{\n  \"schema\": ,\n}");
        FAIL();
    } catch (const ScenarioError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_GT(e.column(), 0u);
    }
}

TEST(AttackScript, ScenarioJsonRoundTrip) {
    for (const auto& entry : generate_corpus(8, 5)) {
        const auto text = scenario_to_json(entry.scenario).dump();
        EXPECT_EQ(scenario_to_json(parse_scenario(text)).dump(), text) << entry.file_name;
    }
}

TEST(Corpus, StratifiedAndDeterministic) {
    const auto a = generate_corpus(200, 7);
    const auto b = generate_corpus(200, 7);
    ASSERT_EQ(a.size(), 200u);
    std::map<Stratum, int> counts;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++counts[a[i].stratum];
        EXPECT_EQ(scenario_to_json(a[i].scenario).dump(), scenario_to_json(b[i].scenario).dump());
    }
    EXPECT_EQ(counts[Stratum::HonestControl], 50);
    for (const auto& [s, n] : counts) EXPECT_GE(n, 20) << to_string(s);
    EXPECT_EQ(generate_corpus(1, 7).size(), 1u);
}

}  // namespace
}  // namespace honeyscan::mock
