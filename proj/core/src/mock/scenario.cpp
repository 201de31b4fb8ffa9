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

#include <honeyscan/mock/scenario.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <honeyscan/core/keccak.hpp>
#include <honeyscan/json.hpp>

namespace honeyscan::mock {

using nlohmann::json;
using nlohmann::ordered_json;

Address AccountBook::address(std::string_view name) const {
    auto it = names_.find(std::string{name});
    if (it != names_.end()) return it->second;
    Bytes preimage;
    const std::string_view domain = "honeyscan.account";
    preimage.insert(preimage.end(), domain.begin(), domain.end());
    for (int i = 7; i >= 0; --i) preimage.push_back(static_cast<std::uint8_t>(seed_ >> (8 * i)));
    preimage.insert(preimage.end(), name.begin(), name.end());
    const auto h = keccak256(ByteView{preimage});
    const Address a = Address::from_span(ByteView{h.bytes()}.subspan(12));
    names_.emplace(std::string{name}, a);
    return a;
}

std::optional<std::string> AccountBook::name_of(const Address& address) const {
    for (const auto& [name, a] : names_) {
        if (a == address) return name;
    }
    return std::nullopt;
}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

// Schema helpers carry a dotted path for diagnostics.
struct Ctx {
    std::string path;

    [[noreturn]] void fail(const std::string& what) const { throw ScenarioError{path + ": " + what}; }

    Ctx operator/(const std::string& key) const { return Ctx{path.empty() ? key : path + "." + key}; }
    Ctx operator[](std::size_t i) const { return Ctx{path + "[" + std::to_string(i) + "]"}; }
};

const json& need(const json& obj, const Ctx& ctx, const char* key) {
    if (!obj.is_object()) ctx.fail("expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) (ctx / key).fail("required field missing");
    return *it;
}

std::string need_string(const json& obj, const Ctx& ctx, const char* key) {
    const json& v = need(obj, ctx, key);
    if (!v.is_string() || v.get<std::string>().empty()) (ctx / key).fail("expected a non-empty string");
    return v.get<std::string>();
}

std::string opt_string(const json& obj, const Ctx& ctx, const char* key, std::string fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string() || it->get<std::string>().empty()) (ctx / key).fail("expected a non-empty string");
    return it->get<std::string>();
}

TokenAmount as_amount(const json& v, const Ctx& ctx) {
    try {
        if (v.is_number_unsigned()) return TokenAmount{v.get<std::uint64_t>()};
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
            return TokenAmount{static_cast<std::uint64_t>(v.get<std::int64_t>())};
        }
        if (v.is_string()) return TokenAmount::parse(v.get<std::string>());
    } catch (const Error& e) {
        ctx.fail(e.what());
    }
    ctx.fail("expected an amount (decimal string, \"<n>e<k>\" or unsigned integer)");
}

Rational as_ratio(const json& v, const Ctx& ctx) {
    try {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_unsigned()) return Rational{v.get<std::uint64_t>(), 1};
    } catch (const Error& e) {
        ctx.fail(e.what());
    }
    ctx.fail("expected a ratio such as \"3/1000\", \"5%\" or \"0.25\"");
}

std::uint64_t as_count(const json& v, const Ctx& ctx) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    ctx.fail("expected an unsigned integer");
}

bool opt_bool(const json& obj, const Ctx& ctx, const char* key, bool fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) (ctx / key).fail("expected true or false");
    return it->get<bool>();
}

std::set<Address> name_set(const json& params, const Ctx& ctx, const char* key, const AccountBook& accounts) {
    std::set<Address> out;
    auto it = params.find(key);
    if (it == params.end()) return out;
    if (!it->is_array()) (ctx / key).fail("expected an array of account names");
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& v = (*it)[i];
        if (!v.is_string()) (ctx / key)[i].fail("expected an account name");
        out.insert(accounts.address(v.get<std::string>()));
    }
    return out;
}

const std::set<std::string>& behavior_kinds() {
    static const std::set<std::string> kinds{"honest",      "high_tax",     "hidden_tax",      "owner_drain",
                                             "list_gate",   "limited_sell", "delayed_sell_tax"};
    return kinds;
}

TokenBehavior resolve(const BehaviorSpec& spec, const Address& owner, const AccountBook& accounts, const Ctx& ctx) {
    const json& p = spec.params;
    if (!p.is_object()) ctx.fail("params must be an object");
    auto ratio = [&](const char* key, Rational fallback) {
        auto it = p.find(key);
        return it == p.end() ? fallback : as_ratio(*it, ctx / key);
    };
    TokenBehavior behavior;
    if (spec.kind == "honest" || spec.kind == "high_tax") {
        behavior = Honest{ratio("tax", Rational{0, 1})};
    } else if (spec.kind == "hidden_tax") {
        behavior = HiddenTax{ratio("keep_fraction", Rational{1, 10}), name_set(p, ctx, "exempt", accounts)};
    } else if (spec.kind == "owner_drain") {
        behavior = OwnerDrain{owner, opt_bool(p, ctx, "emits_event", true)};
    } else if (spec.kind == "list_gate") {
        ListGate gate;
        const auto mode = opt_string(p, ctx, "mode", "allow");
        if (mode != "allow" && mode != "deny") (ctx / "mode").fail("expected \"allow\" or \"deny\"");
        gate.mode = mode == "allow" ? GateMode::Allow : GateMode::Deny;
        gate.members = name_set(p, ctx, "members", accounts);
        gate.global_open = opt_bool(p, ctx, "global_open", false);
        if (auto it = p.find("active_from"); it != p.end()) {
            gate.active_from = it->is_null() ? kNever : as_count(*it, ctx / "active_from");
        }
        behavior = gate;
    } else if (spec.kind == "limited_sell") {
        behavior = LimitedSell{ratio("max_sell_rate", Rational{1, 100}), name_set(p, ctx, "fee_exempt", accounts)};
    } else if (spec.kind == "delayed_sell_tax") {
        DelayedSellTax d;
        d.final_sell_tax = ratio("final_sell_tax", Rational{1, 1});
        if (auto it = p.find("trigger"); it != p.end()) {
            const Ctx tctx = ctx / "trigger";
            if (it->is_string() && it->get<std::string>() == "manual") {
                d.trigger = ManualTrigger{};
            } else if (it->is_object() && it->contains("at_block")) {
                d.trigger = AtBlock{as_count(it->at("at_block"), tctx / "at_block")};
            } else if (it->is_object() && it->contains("after_buyers")) {
                d.trigger = AfterBuyers{static_cast<std::uint32_t>(as_count(it->at("after_buyers"), tctx / "after_buyers"))};
            } else {
                tctx.fail("expected \"manual\", {\"at_block\": n} or {\"after_buyers\": n}");
            }
        }
        behavior = d;
    } else {
        (ctx / "behavior").fail("unknown behavior '" + spec.kind + "'");
    }
    try {
        validate(behavior);
    } catch (const Error& e) {
        ctx.fail(e.what());
    }
    if (spec.kind == "high_tax" && family_of(behavior) != BehaviorFamily::HighTax) {
        (ctx / "params" / "tax").fail("high_tax needs a tax of at least 50%");
    }
    return behavior;
}

Step parse_step(const json& s, const Ctx& ctx) {
    const std::string op = need_string(s, ctx, "op");
    if (op == "deploy_token") return DeployToken{need_string(s, ctx, "token")};
    if (op == "create_pool") return CreatePool{need_string(s, ctx, "pool")};
    if (op == "add_liquidity") {
        return AddLiquidity{need_string(s, ctx, "pool"), need_string(s, ctx, "provider"),
                            as_amount(need(s, ctx, "x"), ctx / "x"), as_amount(need(s, ctx, "y"), ctx / "y")};
    }
    if (op == "fund") {
        return Fund{need_string(s, ctx, "token"), need_string(s, ctx, "to"),
                    as_amount(need(s, ctx, "amount"), ctx / "amount")};
    }
    if (op == "wash_buy") {
        WashBuy w{need_string(s, ctx, "pool"), opt_string(s, ctx, "trader", "wash"),
                  as_amount(need(s, ctx, "amount"), ctx / "amount")};
        if (auto it = s.find("times"); it != s.end()) {
            const auto times = as_count(*it, ctx / "times");
            if (times == 0 || times > 10'000) (ctx / "times").fail("must be in [1, 10000]");
            w.times = static_cast<std::uint32_t>(times);
        }
        return w;
    }
    if (op == "victim_buy") {
        return VictimBuy{need_string(s, ctx, "pool"), need_string(s, ctx, "victim"),
                         as_amount(need(s, ctx, "amount"), ctx / "amount")};
    }
    if (op == "flip_switch") return FlipSwitch{need_string(s, ctx, "token")};
    if (op == "drain") return Drain{need_string(s, ctx, "token"), need_string(s, ctx, "victim")};
    if (op == "remove_liquidity") return RemoveLiquidity{need_string(s, ctx, "pool")};
    if (op == "wait") {
        Wait w;
        if (auto it = s.find("blocks"); it != s.end()) w.blocks = as_count(*it, ctx / "blocks");
        if (w.blocks == 0 || w.blocks > 100'000) (ctx / "blocks").fail("must be in [1, 100000]");
        return w;
    }
    (ctx / "op").fail("unknown step '" + op + "'");
}

}  // namespace

TokenBehavior resolve_behavior(const BehaviorSpec& spec, const Address& owner, const AccountBook& accounts) {
    return resolve(spec, owner, accounts, Ctx{"behavior"});
}

Scenario parse_scenario(std::string_view text, std::string name) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        std::string what = e.what();
        if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
        throw ScenarioError{"line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what, line,
                            column};
    }
    const Ctx root{};
    if (!doc.is_object()) throw ScenarioError{"document root must be an object"};

    Scenario sc;
    sc.name = std::move(name);
    if (auto it = doc.find("schema"); it != doc.end()) {
        if (!it->is_string() || it->get<std::string>() != kScenarioSchema) {
            (root / "schema").fail("expected \"" + std::string{kScenarioSchema} + "\"");
        }
    }
    if (auto it = doc.find("name"); it != doc.end() && sc.name.empty()) {
        if (!it->is_string()) (root / "name").fail("expected a string");
        sc.name = it->get<std::string>();
    }
    sc.seed = as_count(need(doc, root, "seed"), root / "seed");

    const json& tokens = need(doc, root, "tokens");
    if (!tokens.is_array() || tokens.empty()) (root / "tokens").fail("expected a non-empty array");
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Ctx ctx = (root / "tokens")[i];
        const json& t = tokens[i];
        TokenSpec spec;
        spec.name = need_string(t, ctx, "name");
        spec.behavior.kind = opt_string(t, ctx, "behavior", "honest");
        if (!behavior_kinds().contains(spec.behavior.kind)) {
            (ctx / "behavior").fail("unknown behavior '" + spec.behavior.kind + "'");
        }
        if (auto it = t.find("params"); it != t.end()) {
            if (!it->is_object()) (ctx / "params").fail("expected an object");
            spec.behavior.params = *it;
        }
        spec.supply = as_amount(need(t, ctx, "supply"), ctx / "supply");
        spec.owner = opt_string(t, ctx, "owner", "deployer");
        spec.base = opt_bool(t, ctx, "base", false);
        // Resolve once so parameter errors surface at load time.
        AccountBook scratch{sc.seed};
        (void)resolve(spec.behavior, scratch.address(spec.owner), scratch, ctx);
        sc.tokens.push_back(std::move(spec));
    }

    if (auto it = doc.find("pools"); it != doc.end()) {
        if (!it->is_array()) (root / "pools").fail("expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const Ctx ctx = (root / "pools")[i];
            const json& p = (*it)[i];
            PoolSpec spec{need_string(p, ctx, "name"), need_string(p, ctx, "token_x"), need_string(p, ctx, "token_y")};
            if (auto f = p.find("fee"); f != p.end()) spec.fee = as_ratio(*f, ctx / "fee");
            if (!spec.fee.below_one()) (ctx / "fee").fail("fee must be below 1");
            sc.pools.push_back(std::move(spec));
        }
    }

    const json& steps = need(doc, root, "steps");
    if (!steps.is_array()) (root / "steps").fail("expected an array");
    for (std::size_t i = 0; i < steps.size(); ++i) sc.steps.push_back(parse_step(steps[i], (root / "steps")[i]));

    if (auto it = doc.find("expected"); it != doc.end()) {
        const Ctx ctx = root / "expected";
        if (!it->is_object()) ctx.fail("expected an object mapping pool names to trap lists");
        for (const auto& [pool, traps] : it->items()) {
            if (!traps.is_array()) (ctx / pool).fail("expected an array of trap names");
            TrapSet set;
            for (std::size_t i = 0; i < traps.size(); ++i) {
                try {
                    set.insert(parse_trap_type(traps[i].is_string() ? traps[i].get<std::string>() : std::string{}));
                } catch (const Error& e) {
                    (ctx / pool)[i].fail(e.what());
                }
            }
            sc.expected[pool] = std::move(set);
        }
    }
    validate_scenario(sc);
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw Error{Errc::io, "cannot open " + path.string()};
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.stem().string());
}

void validate_scenario(const Scenario& sc) {
    std::map<std::string, const TokenSpec*> tokens;
    for (const auto& t : sc.tokens) {
        if (!tokens.emplace(t.name, &t).second) throw ScenarioError{"duplicate token name '" + t.name + "'"};
    }
    std::map<std::string, const PoolSpec*> pools;
    for (const auto& p : sc.pools) {
        if (!pools.emplace(p.name, &p).second) throw ScenarioError{"duplicate pool name '" + p.name + "'"};
        if (!tokens.contains(p.token_x) || !tokens.contains(p.token_y)) {
            throw ScenarioError{"pool '" + p.name + "' references an undeclared token"};
        }
        if (p.token_x == p.token_y) throw ScenarioError{"pool '" + p.name + "' pairs a token with itself"};
    }
    for (const auto& [name, traps] : sc.expected) {
        if (!pools.contains(name)) throw ScenarioError{"expected: unknown pool '" + name + "'"};
    }

    std::set<std::string> deployed;
    std::set<std::string> created;
    auto step_error = [](std::size_t i, const std::string& what) {
        return ScenarioError{"steps[" + std::to_string(i) + "]: " + what};
    };
    auto need_token = [&](std::size_t i, const std::string& t) {
        if (!tokens.contains(t)) throw step_error(i, "unknown token '" + t + "'");
        if (!deployed.contains(t)) throw step_error(i, "token '" + t + "' used before deploy_token");
    };
    auto need_pool = [&](std::size_t i, const std::string& p) {
        if (!pools.contains(p)) throw step_error(i, "unknown pool '" + p + "'");
        if (!created.contains(p)) throw step_error(i, "pool '" + p + "' used before create_pool");
    };
    for (std::size_t i = 0; i < sc.steps.size(); ++i) {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, DeployToken>) {
                    if (!tokens.contains(s.token)) throw step_error(i, "unknown token '" + s.token + "'");
                    if (!deployed.insert(s.token).second) throw step_error(i, "token '" + s.token + "' deployed twice");
                } else if constexpr (std::is_same_v<T, CreatePool>) {
                    if (!pools.contains(s.pool)) throw step_error(i, "unknown pool '" + s.pool + "'");
                    need_token(i, pools.at(s.pool)->token_x);
                    need_token(i, pools.at(s.pool)->token_y);
                    if (!created.insert(s.pool).second) throw step_error(i, "pool '" + s.pool + "' created twice");
                } else if constexpr (std::is_same_v<T, Fund>) {
                    need_token(i, s.token);
                } else if constexpr (std::is_same_v<T, FlipSwitch>) {
                    need_token(i, s.token);
                    const auto& kind = tokens.at(s.token)->behavior.kind;
                    if (kind != "delayed_sell_tax" && kind != "list_gate") {
                        throw step_error(i, "flip_switch on token '" + s.token + "' whose behavior has no switch");
                    }
                } else if constexpr (std::is_same_v<T, Drain>) {
                    need_token(i, s.token);
                    if (tokens.at(s.token)->behavior.kind != "owner_drain") {
                        throw step_error(i, "drain on token '" + s.token + "' which is not owner_drain");
                    }
                } else if constexpr (std::is_same_v<T, Wait>) {
                } else {
                    need_pool(i, s.pool);
                }
            },
            sc.steps[i]);
    }
}

ordered_json scenario_to_json(const Scenario& sc) {
    ordered_json doc;
    doc["schema"] = kScenarioSchema;
    doc["name"] = sc.name;
    doc["seed"] = sc.seed;
    doc["tokens"] = ordered_json::array();
    for (const auto& t : sc.tokens) {
        ordered_json j;
        j["name"] = t.name;
        j["behavior"] = t.behavior.kind;
        j["params"] = ordered_json::parse(t.behavior.params.dump());
        j["supply"] = t.supply.to_decimal();
        j["owner"] = t.owner;
        if (t.base) j["base"] = true;
        doc["tokens"].push_back(std::move(j));
    }
    doc["pools"] = ordered_json::array();
    for (const auto& p : sc.pools) {
        doc["pools"].push_back(
            ordered_json{{"name", p.name}, {"token_x", p.token_x}, {"token_y", p.token_y}, {"fee", p.fee.to_string()}});
    }
    doc["steps"] = ordered_json::array();
    for (const auto& step : sc.steps) {
        ordered_json j;
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, DeployToken>) {
                    j = {{"op", "deploy_token"}, {"token", s.token}};
                } else if constexpr (std::is_same_v<T, CreatePool>) {
                    j = {{"op", "create_pool"}, {"pool", s.pool}};
                } else if constexpr (std::is_same_v<T, AddLiquidity>) {
                    j = {{"op", "add_liquidity"}, {"pool", s.pool}, {"provider", s.provider},
                         {"x", s.x.to_decimal()}, {"y", s.y.to_decimal()}};
                } else if constexpr (std::is_same_v<T, Fund>) {
                    j = {{"op", "fund"}, {"token", s.token}, {"to", s.to}, {"amount", s.amount.to_decimal()}};
                } else if constexpr (std::is_same_v<T, WashBuy>) {
                    j = {{"op", "wash_buy"}, {"pool", s.pool}, {"trader", s.trader},
                         {"amount", s.amount.to_decimal()}, {"times", s.times}};
                } else if constexpr (std::is_same_v<T, VictimBuy>) {
                    j = {{"op", "victim_buy"}, {"pool", s.pool}, {"victim", s.victim}, {"amount", s.amount.to_decimal()}};
                } else if constexpr (std::is_same_v<T, FlipSwitch>) {
                    j = {{"op", "flip_switch"}, {"token", s.token}};
                } else if constexpr (std::is_same_v<T, Drain>) {
                    j = {{"op", "drain"}, {"token", s.token}, {"victim", s.victim}};
                } else if constexpr (std::is_same_v<T, RemoveLiquidity>) {
                    j = {{"op", "remove_liquidity"}, {"pool", s.pool}};
                } else {
                    j = {{"op", "wait"}, {"blocks", s.blocks}};
                }
            },
            step);
        doc["steps"].push_back(std::move(j));
    }
    if (!sc.expected.empty()) {
        ordered_json expected = ordered_json::object();
        for (const auto& [pool, traps] : sc.expected) {
            ordered_json list = ordered_json::array();
            for (auto t : traps) list.push_back(std::string{to_string(t)});
            expected[pool] = std::move(list);
        }
        doc["expected"] = std::move(expected);
    }
    return doc;
}

namespace {

struct PoolRun {
    const PoolSpec* spec{nullptr};
    Address address;
    std::string trap_name;
    std::string base_name;
    std::vector<Address> buyers;
    std::map<Address, BlockNumber> first_buy;
    bool any_buy{false};
    bool buyer_drained{false};
};

bool gate_blocks(const ListGate& gate, const Address& sender) {
    if (gate.mode == GateMode::Deny) return gate.members.contains(sender);
    return !gate.global_open && !gate.members.contains(sender);
}

// Blocks at which the pool was liquid and the trap token state satisfies pred.
template <class Pred>
std::size_t liquid_blocks_where(const MockChain& chain, const Address& pool, const Address& trap, BlockNumber from,
                                BlockNumber head, Pred pred) {
    std::size_t n = 0;
    for (BlockNumber b = from; b <= head; ++b) {
        const auto state = chain.state_at(b);
        const auto p = state->pools.find(pool);
        if (p == state->pools.end() || !chain.get_reserves(pool, b).has_liquidity()) continue;
        if (pred(b, state->tokens.at(trap))) ++n;
    }
    return n;
}

TrapSet label(const TokenState& token, const PoolRun& run, const MockChain& chain, BlockNumber head,
              const Address& pool, const Address& trap, BlockNumber created, bool ever_liquid) {
    TrapSet traps;
    if (!ever_liquid) return traps;
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Honest>) {
                if (b.tax >= kOneHalf) traps.insert(TrapType::InvalidBuy);
            } else if constexpr (std::is_same_v<T, HiddenTax>) {
                if (b.keep_fraction <= kOneHalf) {
                    traps.insert(TrapType::InvalidBuy);
                    if (run.any_buy) traps.insert(TrapType::UnauthorizedTransfer);
                }
                if (b.keep_fraction < kOneHalf) traps.insert(TrapType::InvalidSell);
            } else if constexpr (std::is_same_v<T, OwnerDrain>) {
                if (run.buyer_drained) traps.insert(TrapType::UnauthorizedTransfer);
            } else if constexpr (std::is_same_v<T, ListGate>) {
                // A stuck holder has to be observed on at least two liquid blocks.
                const auto stuck = liquid_blocks_where(chain, pool, trap, created, head, [&](BlockNumber at, const TokenState& t) {
                    const auto& gate = std::get<ListGate>(t.behavior);
                    if (gate.active_from == kNever || at < gate.active_from) return false;
                    for (const auto& [buyer, bought] : run.first_buy) {
                        if (bought <= at && buyer != t.owner && gate_blocks(gate, buyer) && !t.balance(buyer).is_zero()) {
                            return true;
                        }
                    }
                    return false;
                });
                if (stuck >= 2) traps.insert(TrapType::CannotSell);
            } else if constexpr (std::is_same_v<T, LimitedSell>) {
                if (b.max_sell_rate < kOneHalf) traps.insert(TrapType::InvalidSell);
            } else {
                if (b.final_sell_tax <= kOneHalf) return;
                const auto taxed = liquid_blocks_where(chain, pool, trap, created, head, [](BlockNumber, const TokenState& t) {
                    return std::get<DelayedSellTax>(t.behavior).switched;
                });
                if (taxed > 0) traps.insert(TrapType::InvalidSell);
            }
        },
        token.behavior);
    return traps;
}

}  // namespace

ScenarioTrace run_attack_script(MockChain& chain, const Scenario& sc) {
    validate_scenario(sc);
    if (chain.head() != 0 || !chain.state_at(0)->tokens.empty()) {
        throw Error{Errc::invalid_argument, "run_attack_script needs a fresh chain"};
    }
    AccountBook accounts{sc.seed};
    ScenarioTrace trace;
    trace.name = sc.name;
    trace.seed = sc.seed;

    std::map<std::string, const TokenSpec*> token_specs;
    for (const auto& t : sc.tokens) token_specs[t.name] = &t;
    std::map<std::string, PoolRun> pools;
    for (const auto& p : sc.pools) {
        PoolRun run;
        run.spec = &p;
        const bool x_base = token_specs.at(p.token_x)->base;
        const bool y_base = token_specs.at(p.token_y)->base;
        // Trap side: the non-base token; token_y when the pair is ambiguous.
        run.trap_name = (x_base && !y_base) ? p.token_y : (!x_base && y_base) ? p.token_x : p.token_y;
        run.base_name = run.trap_name == p.token_x ? p.token_y : p.token_x;
        pools.emplace(p.name, std::move(run));
    }
    std::map<Address, std::string> pool_names;

    auto token_address = [&](const std::string& name) { return trace.tokens.at(name); };
    auto record = [&](const std::string& what, const CallOutcome& outcome) {
        if (!outcome.ok()) trace.failed_steps.emplace_back(what, outcome.revert_reason.value_or(""));
    };
    auto fund_if_short = [&](const Address& token, const std::string& token_name, const Address& to,
                             const TokenAmount& amount) {
        const TokenAmount have = chain.state_at(chain.head())->tokens.count(token)
                                     ? chain.state_at(chain.head())->tokens.at(token).balance(to)
                                     : TokenAmount{};
        if (have >= amount) return;
        const Address owner = accounts.address(token_specs.at(token_name)->owner);
        record("fund " + token_name, chain.token_transfer(token, owner, to, amount - have));
    };
    auto buy = [&](PoolRun& run, const std::string& who, const TokenAmount& amount) {
        const Address trader = accounts.address(who);
        const Address base = token_address(run.base_name);
        fund_if_short(base, run.base_name, trader, amount);
        const auto outcome = chain.swap(run.address, trader, base, amount, trader);
        record("buy " + run.spec->name + " by " + who, outcome);
        if (outcome.ok() && outcome.return_value && !outcome.return_value->is_zero()) {
            run.any_buy = true;
            if (std::find(run.buyers.begin(), run.buyers.end(), trader) == run.buyers.end()) {
                run.buyers.push_back(trader);
                run.first_buy.emplace(trader, chain.head());
            }
        }
        chain.advance_block();
    };

    for (const auto& step : sc.steps) {
        trace.step_blocks.push_back(chain.pending_block());
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, DeployToken>) {
                    const TokenSpec& spec = *token_specs.at(s.token);
                    const Address owner = accounts.address(spec.owner);
                    const Address token =
                        chain.deploy_token(resolve_behavior(spec.behavior, owner, accounts), spec.supply, owner, spec.name);
                    trace.tokens[spec.name] = token;
                    if (spec.base) trace.base_tokens.insert(token);
                    chain.advance_block();
                } else if constexpr (std::is_same_v<T, CreatePool>) {
                    PoolRun& run = pools.at(s.pool);
                    const Address creator = accounts.address(token_specs.at(run.trap_name)->owner);
                    run.address = chain.create_pool(token_address(run.spec->token_x), token_address(run.spec->token_y),
                                                    run.spec->fee, creator);
                    pool_names[run.address] = s.pool;
                    chain.advance_block();
                } else if constexpr (std::is_same_v<T, AddLiquidity>) {
                    PoolRun& run = pools.at(s.pool);
                    const Address provider = accounts.address(s.provider);
                    fund_if_short(token_address(run.spec->token_x), run.spec->token_x, provider, s.x);
                    fund_if_short(token_address(run.spec->token_y), run.spec->token_y, provider, s.y);
                    record("add_liquidity " + s.pool, chain.add_liquidity(run.address, provider, s.x, s.y));
                    chain.advance_block();
                } else if constexpr (std::is_same_v<T, Fund>) {
                    const Address owner = accounts.address(token_specs.at(s.token)->owner);
                    record("fund " + s.token,
                           chain.token_transfer(token_address(s.token), owner, accounts.address(s.to), s.amount));
                    chain.advance_block();
                } else if constexpr (std::is_same_v<T, WashBuy>) {
                    for (std::uint32_t i = 0; i < s.times; ++i) buy(pools.at(s.pool), s.trader, s.amount);
                } else if constexpr (std::is_same_v<T, VictimBuy>) {
                    buy(pools.at(s.pool), s.victim, s.amount);
                } else if constexpr (std::is_same_v<T, FlipSwitch>) {
                    const Address owner = accounts.address(token_specs.at(s.token)->owner);
                    record("flip_switch " + s.token, chain.flip_switch(token_address(s.token), owner));
                    chain.advance_block();
                } else if constexpr (std::is_same_v<T, Drain>) {
                    const Address owner = accounts.address(token_specs.at(s.token)->owner);
                    const Address victim = accounts.address(s.victim);
                    const auto outcome = chain.owner_drain(token_address(s.token), owner, victim);
                    record("drain " + s.victim, outcome);
                    if (outcome.ok() && outcome.return_value && !outcome.return_value->is_zero()) {
                        for (auto& [name, run] : pools) {
                            if (run.trap_name == s.token &&
                                std::find(run.buyers.begin(), run.buyers.end(), victim) != run.buyers.end()) {
                                run.buyer_drained = true;
                            }
                        }
                    }
                    chain.advance_block();
                } else if constexpr (std::is_same_v<T, RemoveLiquidity>) {
                    PoolRun& run = pools.at(s.pool);
                    const auto state = chain.state_at(chain.head());
                    const auto& pool = state->pools.at(run.address);
                    const Address provider = pool.provider.value_or(accounts.address(token_specs.at(run.trap_name)->owner));
                    record("remove_liquidity " + s.pool, chain.remove_liquidity(run.address, provider));
                    chain.advance_block();
                } else {
                    chain.advance_block(s.blocks);
                }
            },
            step);
    }

    trace.head = chain.head();
    const auto final_state = chain.state_at(trace.head);
    for (const auto& p : sc.pools) {
        const PoolRun& run = pools.at(p.name);
        if (run.address.is_zero()) continue;  // declared but never created
        PoolOutcome out;
        out.name = p.name;
        out.info = final_state->pools.at(run.address).info;
        out.trap_token = token_address(run.trap_name);
        out.base_token = token_address(run.base_name);
        const TokenState& token = final_state->tokens.at(out.trap_token);
        out.family = family_of(token.behavior);
        out.activated_at = token.activated_at;
        if (const auto* gate = std::get_if<ListGate>(&token.behavior); gate && gate->active_from != kNever) {
            out.activated_at = gate->active_from;
        }
        out.buyers = run.buyers;
        bool ever_liquid = false;
        for (BlockNumber b = out.info.created_at; b <= trace.head && !ever_liquid; ++b) {
            ever_liquid = chain.get_reserves(run.address, b).has_liquidity();
        }
        if (auto it = sc.expected.find(p.name); it != sc.expected.end()) {
            out.ground_truth = it->second;
        } else {
            out.ground_truth = label(token, run, chain, trace.head, run.address, out.trap_token, out.info.created_at, ever_liquid);
        }
        trace.pools.push_back(std::move(out));
    }
    trace.accounts = accounts.known();
    return trace;
}

std::string export_trace(const MockChain& chain, const ScenarioTrace& trace) {
    const auto log = chain.log_snapshot();
    // (block, tx index, kind order, sequence) keeps export order stable.
    std::vector<std::tuple<BlockNumber, std::uint32_t, int, std::size_t, ordered_json>> rows;
    auto push = [&](const BlockIndex& at, int kind, ordered_json j) {
        if (at.number > trace.head) return;
        rows.emplace_back(at.number, at.tx_index.value_or(0), kind, rows.size(), std::move(j));
    };
    for (const auto& p : log.pools_created) {
        ordered_json j;
        j["event"] = "pool_created";
        j["block"] = BlockIndex{p.created_at, std::nullopt};
        j["pool"] = p;
        push(BlockIndex{p.created_at, 0}, 0, std::move(j));
    }
    for (const auto& a : log.approvals) {
        ordered_json j;
        j["event"] = "approval";
        j["record"] = a;
        push(a.block, 1, std::move(j));
    }
    for (const auto& t : log.transfers) {
        ordered_json j;
        j["event"] = t.logged ? "transfer" : "unlogged_transfer";
        j["record"] = t;
        push(t.block, 2, std::move(j));
    }
    for (const auto& [pool, s] : log.swaps) {
        ordered_json j;
        j["event"] = "swap";
        j["pool"] = pool;
        j["record"] = s;
        push(s.block, 3, std::move(j));
    }
    for (const auto& l : log.liquidity) {
        ordered_json j;
        j["event"] = "liquidity";
        j["record"] = l;
        push(l.block, 4, std::move(j));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a)) <
               std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b));
    });

    std::string out;
    ordered_json header;
    header["event"] = "scenario";
    header["name"] = trace.name;
    header["seed"] = trace.seed;
    header["head"] = trace.head;
    header["accounts"] = ordered_json::object();
    for (const auto& [name, a] : trace.accounts) header["accounts"][name] = a;
    header["pools"] = ordered_json::array();
    for (const auto& p : trace.pools) {
        ordered_json j;
        j["name"] = p.name;
        j["pool"] = p.info.pool;
        j["trap_token"] = p.trap_token;
        j["family"] = std::string{to_string(p.family)};
        j["ground_truth"] = p.ground_truth;
        if (p.activated_at) j["activated_at"] = *p.activated_at;
        header["pools"].push_back(std::move(j));
    }
    out += header.dump();
    out += '\n';
    for (auto& row : rows) {
        out += std::get<4>(row).dump();
        out += '\n';
    }
    return out;
}

}  // namespace honeyscan::mock
