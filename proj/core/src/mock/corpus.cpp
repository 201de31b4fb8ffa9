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

#include <honeyscan/mock/corpus.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <random>

#include <honeyscan/core/error.hpp>
#include <honeyscan/mock/mock_chain.hpp>

namespace honeyscan::mock {

namespace {

constexpr std::array kTrapStrata{Stratum::HiddenTax,        Stratum::HighTax,  Stratum::OwnerDrainLogged,
                                 Stratum::OwnerDrainSilent, Stratum::ListGate, Stratum::LimitedSell,
                                 Stratum::DelayedSellTax};

// Portable draws: std::uniform_int_distribution differs across standard
// libraries, which would break cross-platform byte-identical corpora.
class Draw {
  public:
    explicit Draw(std::uint64_t seed) : rng_{seed} {}
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + rng_() % (hi - lo + 1); }
    bool chance(unsigned percent) { return between(0, 99) < percent; }
    std::uint64_t raw() { return rng_(); }

  private:
    std::mt19937_64 rng_;
};

const TokenAmount kEther{1'000'000'000'000'000'000ull};

std::string ratio(std::uint64_t num, std::uint64_t den) { return std::to_string(num) + "/" + std::to_string(den); }

class Builder {
  public:
    explicit Builder(Scenario& sc) : sc_{sc} {}

    void step(Step s, std::uint64_t blocks = 1) {
        sc_.steps.push_back(std::move(s));
        blocks_ += blocks;
    }
    void wait(std::uint64_t n) { step(Wait{n}, n); }
    //! Block the next step will execute in.
    [[nodiscard]] std::uint64_t next_block() const { return blocks_ + 1; }

  private:
    Scenario& sc_;
    std::uint64_t blocks_{0};
};

}  // namespace

std::string_view to_string(Stratum stratum) noexcept {
    switch (stratum) {
        case Stratum::HiddenTax: return "hidden_tax";
        case Stratum::HighTax: return "high_tax";
        case Stratum::OwnerDrainLogged: return "owner_drain_logged";
        case Stratum::OwnerDrainSilent: return "owner_drain_silent";
        case Stratum::ListGate: return "list_gate";
        case Stratum::LimitedSell: return "limited_sell";
        case Stratum::DelayedSellTax: return "delayed_sell_tax";
        case Stratum::HonestControl: return "honest";
    }
    return "?";
}

Scenario generate_scenario(Stratum stratum, std::uint64_t seed, std::string name) {
    Draw draw{seed};
    Scenario sc;
    sc.name = std::move(name);
    sc.seed = seed;

    const TokenAmount base_liquidity = amount_mul_div(kEther, TokenAmount{draw.between(10, 1000)}, TokenAmount{1});
    const TokenAmount supply = amount_mul_div(kEther, TokenAmount{draw.between(1'000'000, 1'000'000'000)}, TokenAmount{1});
    const TokenAmount token_liquidity = amount_mul_div(supply, TokenAmount{draw.between(30, 90)}, TokenAmount{100});

    TokenSpec weth{"WETH", BehaviorSpec{"honest", nlohmann::json::object()},
                   amount_mul_div(kEther, TokenAmount{1'000'000'000}, TokenAmount{1}), "bank", true};
    TokenSpec trap{"TKN", BehaviorSpec{}, supply, "dev", false};
    const std::size_t victims = draw.between(1, 3);
    std::vector<std::string> victim_names;
    for (std::size_t i = 0; i < victims; ++i) victim_names.push_back("victim" + std::to_string(i + 1));

    auto& p = trap.behavior.params;
    p = nlohmann::json::object();
    bool flip = false;
    switch (stratum) {
        case Stratum::HonestControl:
            trap.behavior.kind = "honest";
            p["tax"] = ratio(draw.between(0, 490), 1000);
            break;
        case Stratum::HighTax:
            trap.behavior.kind = "high_tax";
            p["tax"] = ratio(draw.between(500, 950), 1000);
            break;
        case Stratum::HiddenTax:
            trap.behavior.kind = "hidden_tax";
            p["keep_fraction"] = ratio(draw.between(10, 400), 1000);
            p["exempt"] = nlohmann::json::array({"dev"});
            break;
        case Stratum::OwnerDrainLogged:
        case Stratum::OwnerDrainSilent:
            trap.behavior.kind = "owner_drain";
            p["emits_event"] = stratum == Stratum::OwnerDrainLogged;
            break;
        case Stratum::ListGate: {
            trap.behavior.kind = "list_gate";
            flip = draw.chance(50);
            if (draw.chance(50)) {
                p["mode"] = "allow";
                p["members"] = nlohmann::json::array({"wash"});
            } else {
                p["mode"] = "deny";
                p["members"] = victim_names;
            }
            p["global_open"] = false;
            p["active_from"] = flip ? nlohmann::json(nullptr) : nlohmann::json(0);
            break;
        }
        case Stratum::LimitedSell:
            trap.behavior.kind = "limited_sell";
            p["max_sell_rate"] = ratio(draw.between(1, 400), 1000);
            p["fee_exempt"] = nlohmann::json::array({"dev", "wash"});
            break;
        case Stratum::DelayedSellTax:
            trap.behavior.kind = "delayed_sell_tax";
            p["final_sell_tax"] = ratio(draw.between(600, 1000), 1000);
            break;
    }

    const bool base_is_x = draw.chance(50);
    sc.tokens = {weth, trap};
    sc.pools = {PoolSpec{"main", base_is_x ? "WETH" : "TKN", base_is_x ? "TKN" : "WETH", Rational{3, 1000}}};

    Builder b{sc};
    b.step(DeployToken{"WETH"});
    b.step(DeployToken{"TKN"});
    b.step(CreatePool{"main"});
    b.step(AddLiquidity{"main", "dev", base_is_x ? base_liquidity : token_liquidity,
                        base_is_x ? token_liquidity : base_liquidity});

    // Buys stay below 1% of the base reserve so price impact is small.
    auto buy_size = [&](std::uint64_t max_bp) {
        return amount_mul_div(base_liquidity, TokenAmount{draw.between(1, max_bp)}, TokenAmount{10'000});
    };
    const auto wash_times = static_cast<std::uint32_t>(draw.between(1, 3));
    b.step(WashBuy{"main", "wash", buy_size(50), wash_times}, wash_times);

    if (stratum == Stratum::DelayedSellTax) {
        const auto mode = draw.between(0, 2);
        if (mode == 0) {
            flip = true;
            p["trigger"] = "manual";
        } else if (mode == 1) {
            // Victim buys come first; the switch lands a little after them.
            p["trigger"] = {{"at_block", b.next_block() + victims + draw.between(0, 2)}};
        } else {
            p["trigger"] = {{"after_buyers", 1 + victims}};
        }
        sc.tokens[1].behavior.params = p;
    }

    for (const auto& v : victim_names) b.step(VictimBuy{"main", v, buy_size(100)});

    switch (stratum) {
        case Stratum::OwnerDrainLogged:
        case Stratum::OwnerDrainSilent:
            b.wait(draw.between(1, 3));
            b.step(Drain{"TKN", victim_names[draw.between(0, victims - 1)]});
            break;
        case Stratum::ListGate:
        case Stratum::DelayedSellTax:
            if (flip) {
                b.wait(draw.between(1, 2));
                b.step(FlipSwitch{"TKN"});
            }
            break;
        default: break;
    }
    if (stratum == Stratum::DelayedSellTax) sc.tokens[1].behavior.params = p;
    if (stratum == Stratum::ListGate) sc.tokens[1].behavior.params = p;

    b.wait(draw.between(4, 6));
    if (draw.chance(30)) {
        b.step(RemoveLiquidity{"main"});
        b.wait(2);
    }
    validate_scenario(sc);

    // Embed the label so the file is self-describing.
    MockChain chain;
    const auto trace = run_attack_script(chain, sc);
    for (const auto& pool : trace.pools) sc.expected[pool.name] = pool.ground_truth;
    return sc;
}

std::vector<CorpusEntry> generate_corpus(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error{Errc::invalid_argument, "corpus size must be at least 1"};
    Draw draw{seed};
    const std::size_t honest = n / 4;
    std::vector<Stratum> plan;
    for (std::size_t i = 0; i < n - honest; ++i) plan.push_back(kTrapStrata[i % kTrapStrata.size()]);
    for (std::size_t i = 0; i < honest; ++i) plan.push_back(Stratum::HonestControl);

    std::vector<CorpusEntry> corpus;
    corpus.reserve(n);
    for (std::size_t i = 0; i < plan.size(); ++i) {
        char index[24];
        std::snprintf(index, sizeof index, "%04zu", i);
        std::string name = std::string{"s"} + index + "_" + std::string{to_string(plan[i])};
        CorpusEntry entry;
        entry.stratum = plan[i];
        entry.file_name = name + ".json";
        entry.scenario = generate_scenario(plan[i], draw.raw(), std::move(name));
        corpus.push_back(std::move(entry));
    }
    return corpus;
}

void write_corpus(const std::vector<CorpusEntry>& corpus, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error{Errc::io, "cannot create " + out_dir.string() + ": " + ec.message()};
    nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
    for (const auto& e : corpus) {
        const auto path = out_dir / e.file_name;
        std::ofstream out{path, std::ios::binary | std::ios::trunc};
        if (!out) throw Error{Errc::io, "cannot write " + path.string()};
        out << scenario_to_json(e.scenario).dump(2) << '\n';
        manifest.push_back({{"file", e.file_name}, {"stratum", std::string{to_string(e.stratum)}}});
    }
    std::ofstream out{out_dir / "manifest.json", std::ios::binary | std::ios::trunc};
    if (!out) throw Error{Errc::io, "cannot write manifest"};
    out << manifest.dump(2) << '\n';
}

}  // namespace honeyscan::mock
