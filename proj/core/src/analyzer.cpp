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

#include <honeyscan/analyzer.hpp>

#include <algorithm>
#include <map>

#include <honeyscan/json.hpp>

namespace honeyscan::analyzer {

using sim::BundleKind;
using sim::SimulationResult;

std::string_view to_string(Rule rule) noexcept {
    switch (rule) {
        case Rule::BuyShortfall: return "buy_shortfall";
        case Rule::SellShortfall: return "sell_shortfall";
        case Rule::UnapprovedTransfer: return "unapproved_transfer";
        case Rule::OverstatedLogs: return "overstated_logs";
        case Rule::UnloggedMovement: return "unlogged_movement";
        case Rule::RepeatedRevert: return "repeated_revert";
    }
    return "?";
}

Rule parse_rule(std::string_view text) {
    for (auto r : {Rule::BuyShortfall, Rule::SellShortfall, Rule::UnapprovedTransfer, Rule::OverstatedLogs,
                   Rule::UnloggedMovement, Rule::RepeatedRevert}) {
        if (to_string(r) == text) return r;
    }
    throw Error{Errc::parse, "unknown evidence rule '" + std::string{text} + "'"};
}

TrapType trap_of(Rule rule) noexcept {
    switch (rule) {
        case Rule::BuyShortfall: return TrapType::InvalidBuy;
        case Rule::SellShortfall: return TrapType::InvalidSell;
        case Rule::RepeatedRevert: return TrapType::CannotSell;
        default: return TrapType::UnauthorizedTransfer;
    }
}

TokenAmount bound(const TokenAmount& x, const Rational& threshold) {
    if (threshold == kOneHalf) return threshold_half(x);
    return amount_mul_div(x, TokenAmount{threshold.num}, TokenAmount{threshold.den});
}

bool shortfall(const TokenAmount& pre, const TokenAmount& post, const TokenAmount& estimate, const Rational& threshold) {
    if (post <= pre) return true;
    return post - pre <= bound(estimate, threshold);
}

namespace {

std::optional<Finding> shortfall_finding(const SimulationResult& r, Rule rule, const Rational& threshold) {
    if (r.estimate.is_zero()) return std::nullopt;
    if (!shortfall(r.pre_balance.balance, r.post_balance.balance, r.estimate, threshold)) return std::nullopt;
    Finding f;
    f.trap = trap_of(rule);
    f.pool = r.bundle.pool.pool;
    f.subject = r.bundle.actor;
    f.block = BlockIndex{r.bundle.block, std::nullopt};
    f.evidence.rule = rule;
    f.evidence.threshold = threshold;
    f.evidence.pre_balance = r.pre_balance.balance;
    f.evidence.post_balance = r.post_balance.balance;
    f.evidence.estimate = r.estimate;
    return f;
}

bool overstated(const SignedAmount& d, const SignedAmount& l, const Rational& threshold) {
    return !l.is_zero() && d.magnitude <= bound(l.magnitude, threshold);
}

bool unlogged(const SignedAmount& d, const SignedAmount& l, const Rational& threshold) {
    return !d.is_zero() && l.magnitude <= bound(d.magnitude, threshold);
}

}  // namespace

std::optional<Finding> check_invalid_buy(const SimulationResult& result, const Rational& threshold) {
    if (result.bundle.kind != BundleKind::BuyProbe) {
        throw Error{Errc::wrong_bundle_kind, "check_invalid_buy needs a buy probe result"};
    }
    if (result.buy_reverted) return std::nullopt;
    return shortfall_finding(result, Rule::BuyShortfall, threshold);
}

std::optional<Finding> check_invalid_sell(const SimulationResult& result, const Rational& threshold) {
    if (result.bundle.kind == BundleKind::BuyProbe) {
        throw Error{Errc::wrong_bundle_kind, "check_invalid_sell needs a sell or buy-sell result"};
    }
    if (result.sell_reverted || result.buy_reverted) return std::nullopt;
    return shortfall_finding(result, Rule::SellShortfall, threshold);
}

std::optional<Finding> check_unauthorized_transfer(const monitor::BuyerLedger& ledger, BlockNumber from_block,
                                                   BlockNumber to_block, const Rational& threshold) {
    const auto delta = monitor::buyer_delta(ledger, from_block, to_block);

    // Case 1: a third party moved the buyer's tokens beyond its approvals.
    for (const auto& t : ledger.outgoing_logged) {
        if (t.block.number <= from_block || t.block.number > to_block) continue;
        if (t.tx_from == ledger.buyer) continue;
        TokenAmount approved;
        for (const auto& a : ledger.approvals) {
            if (a.spender == t.tx_from && a.block <= t.block) approved = approved.checked_add(a.value);
        }
        if (approved < t.value) {
            Finding f;
            f.trap = TrapType::UnauthorizedTransfer;
            f.pool = ledger.pool;
            f.subject = ledger.buyer;
            f.block = t.block;
            f.evidence.rule = Rule::UnapprovedTransfer;
            f.evidence.threshold = threshold;
            f.evidence.transfer_value = t.value;
            f.evidence.approved = approved;
            f.evidence.tx_from = t.tx_from;
            f.evidence.tx_hash = t.tx_hash;
            f.evidence.window = BlockRange{from_block, to_block};
            return f;
        }
    }

    // Case 2: balance change and logged movement disagree.
    std::optional<Rule> rule;
    if (overstated(delta.delta, delta.logged_net, threshold)) {
        rule = Rule::OverstatedLogs;
    } else if (unlogged(delta.delta, delta.logged_net, threshold)) {
        rule = Rule::UnloggedMovement;
    }
    if (!rule) return std::nullopt;
    Finding f;
    f.trap = TrapType::UnauthorizedTransfer;
    f.pool = ledger.pool;
    f.subject = ledger.buyer;
    f.block = BlockIndex{to_block, std::nullopt};
    f.evidence.rule = *rule;
    f.evidence.threshold = threshold;
    f.evidence.balance_delta = delta.delta;
    f.evidence.logged_net = delta.logged_net;
    f.evidence.window = BlockRange{from_block, to_block};
    return f;
}

std::optional<Finding> check_cannot_sell(const Address& pool, const Address& subject,
                                         std::span<const SellAttempt> attempts) {
    if (attempts.empty()) throw Error{Errc::empty_input, "check_cannot_sell: no sell attempts"};
    std::vector<SellAttempt> ordered(attempts.begin(), attempts.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.block < b.block; });
    std::vector<BlockNumber> streak;
    for (const auto& a : ordered) {
        if (!a.reverted) {
            streak.clear();
            continue;
        }
        if (streak.empty() || streak.back() != a.block) streak.push_back(a.block);
        if (streak.size() >= 2) {
            Finding f;
            f.trap = TrapType::CannotSell;
            f.pool = pool;
            f.subject = subject;
            f.block = BlockIndex{a.block, std::nullopt};
            f.evidence.rule = Rule::RepeatedRevert;
            f.evidence.revert_blocks = streak;
            return f;
        }
    }
    return std::nullopt;
}

std::optional<Finding> check_cannot_sell(std::span<const SimulationResult> results) {
    if (results.empty()) throw Error{Errc::empty_input, "check_cannot_sell: no results"};
    std::vector<SellAttempt> attempts;
    const auto& first = results.front().bundle;
    for (const auto& r : results) {
        if (r.bundle.kind != BundleKind::Sell) throw Error{Errc::wrong_bundle_kind, "check_cannot_sell needs sell bundles"};
        if (r.bundle.actor != first.actor || r.bundle.pool.pool != first.pool.pool) {
            throw Error{Errc::invalid_argument, "check_cannot_sell: results mix buyers or pools"};
        }
        attempts.push_back(SellAttempt{r.bundle.block, r.sell_reverted});
    }
    return check_cannot_sell(first.pool.pool, first.actor, attempts);
}

bool recompute(const Finding& f) {
    const Evidence& e = f.evidence;
    if (trap_of(e.rule) != f.trap) return false;
    switch (e.rule) {
        case Rule::BuyShortfall:
        case Rule::SellShortfall:
            return !e.estimate.is_zero() && shortfall(e.pre_balance, e.post_balance, e.estimate, e.threshold);
        case Rule::UnapprovedTransfer: return f.subject != e.tx_from && e.approved < e.transfer_value;
        case Rule::OverstatedLogs: return overstated(e.balance_delta, e.logged_net, e.threshold);
        case Rule::UnloggedMovement: return unlogged(e.balance_delta, e.logged_net, e.threshold);
        case Rule::RepeatedRevert: {
            std::set<BlockNumber> distinct(e.revert_blocks.begin(), e.revert_blocks.end());
            return distinct.size() >= 2;
        }
    }
    return false;
}

PoolVerdict classify_pool(const PoolInfo& pool, std::span<const Finding> findings, BlockRange scanned_range,
                          const std::set<Address>& review_allowlist) {
    PoolVerdict v;
    v.pool = pool;
    v.scanned_range = scanned_range;
    std::set<std::pair<TrapType, Address>> seen;
    for (const auto& f : findings) {
        if (!seen.emplace(f.trap, f.subject).second) continue;
        v.findings.push_back(f);
        v.traps.insert(f.trap);
        if (!v.first_flagged_block || f.block < *v.first_flagged_block) v.first_flagged_block = f.block;
    }
    std::stable_sort(v.findings.begin(), v.findings.end(), [](const Finding& a, const Finding& b) {
        if (a.block != b.block) return a.block < b.block;
        return a.trap < b.trap;
    });
    v.requires_manual_review = !v.traps.empty() &&
                               (review_allowlist.contains(pool.token_x) || review_allowlist.contains(pool.token_y));
    return v;
}

nlohmann::ordered_json to_json(const Finding& f) {
    nlohmann::ordered_json j;
    j["trap"] = f.trap;
    j["pool"] = f.pool;
    j["subject"] = f.subject;
    j["block"] = f.block;
    const Evidence& e = f.evidence;
    nlohmann::ordered_json ev;
    ev["rule"] = std::string{to_string(e.rule)};
    switch (e.rule) {
        case Rule::BuyShortfall:
        case Rule::SellShortfall:
            ev["threshold"] = e.threshold;
            ev["pre_balance"] = e.pre_balance;
            ev["post_balance"] = e.post_balance;
            ev["estimate"] = e.estimate;
            ev["bound"] = bound(e.estimate, e.threshold);
            break;
        case Rule::UnapprovedTransfer:
            ev["transfer_value"] = e.transfer_value;
            ev["approved"] = e.approved;
            ev["tx_from"] = e.tx_from;
            ev["tx_hash"] = e.tx_hash;
            ev["window"] = e.window;
            break;
        case Rule::OverstatedLogs:
        case Rule::UnloggedMovement:
            ev["threshold"] = e.threshold;
            ev["balance_delta"] = e.balance_delta;
            ev["logged_net"] = e.logged_net;
            ev["window"] = e.window;
            break;
        case Rule::RepeatedRevert: ev["revert_blocks"] = e.revert_blocks; break;
    }
    j["evidence"] = std::move(ev);
    return j;
}

Finding finding_from_json(const nlohmann::json& j) {
    using detail::field;
    Finding f;
    field(j, "trap").get_to(f.trap);
    field(j, "pool").get_to(f.pool);
    field(j, "subject").get_to(f.subject);
    field(j, "block").get_to(f.block);
    const auto& ev = field(j, "evidence");
    Evidence& e = f.evidence;
    e.rule = parse_rule(detail::text(field(ev, "rule"), "rule"));
    switch (e.rule) {
        case Rule::BuyShortfall:
        case Rule::SellShortfall:
            field(ev, "threshold").get_to(e.threshold);
            field(ev, "pre_balance").get_to(e.pre_balance);
            field(ev, "post_balance").get_to(e.post_balance);
            field(ev, "estimate").get_to(e.estimate);
            break;
        case Rule::UnapprovedTransfer:
            field(ev, "transfer_value").get_to(e.transfer_value);
            field(ev, "approved").get_to(e.approved);
            field(ev, "tx_from").get_to(e.tx_from);
            field(ev, "tx_hash").get_to(e.tx_hash);
            field(ev, "window").get_to(e.window);
            break;
        case Rule::OverstatedLogs:
        case Rule::UnloggedMovement:
            field(ev, "threshold").get_to(e.threshold);
            field(ev, "balance_delta").get_to(e.balance_delta);
            field(ev, "logged_net").get_to(e.logged_net);
            field(ev, "window").get_to(e.window);
            break;
        case Rule::RepeatedRevert: field(ev, "revert_blocks").get_to(e.revert_blocks); break;
    }
    return f;
}

nlohmann::ordered_json to_json(const PoolVerdict& v) {
    nlohmann::ordered_json j;
    j["pool"] = v.pool.pool;
    j["tokens"] = {v.pool.token_x, v.pool.token_y};
    j["dex_version"] = std::string{to_string(v.pool.dex_version)};
    j["fee"] = v.pool.fee;
    j["created_at"] = v.pool.created_at;
    j["traps"] = v.traps;
    j["findings"] = nlohmann::ordered_json::array();
    for (const auto& f : v.findings) j["findings"].push_back(to_json(f));
    j["first_flagged_block"] = v.first_flagged_block ? nlohmann::ordered_json(*v.first_flagged_block)
                                                     : nlohmann::ordered_json();
    j["scanned_range"] = v.scanned_range;
    j["requires_manual_review"] = v.requires_manual_review;
    return j;
}

PoolVerdict verdict_from_json(const nlohmann::json& j) {
    using detail::field;
    PoolVerdict v;
    field(j, "pool").get_to(v.pool.pool);
    const auto& tokens = field(j, "tokens");
    if (!tokens.is_array() || tokens.size() != 2) throw Error{Errc::schema, "tokens must hold two addresses"};
    tokens[0].get_to(v.pool.token_x);
    tokens[1].get_to(v.pool.token_y);
    v.pool.dex_version = parse_dex_version(detail::text(field(j, "dex_version"), "dex_version"));
    field(j, "fee").get_to(v.pool.fee);
    v.pool.created_at = field(j, "created_at").get<BlockNumber>();
    field(j, "traps").get_to(v.traps);
    for (const auto& f : field(j, "findings")) v.findings.push_back(finding_from_json(f));
    if (const auto& fb = field(j, "first_flagged_block"); !fb.is_null()) v.first_flagged_block = fb.get<BlockIndex>();
    field(j, "scanned_range").get_to(v.scanned_range);
    v.requires_manual_review = field(j, "requires_manual_review").get<bool>();
    return v;
}

}  // namespace honeyscan::analyzer
