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

#include <honeyscan/scan/report.hpp>

#include <iomanip>
#include <sstream>

#include <honeyscan/core/error.hpp>

namespace honeyscan::scan {

ReportFormat parse_report_format(std::string_view text) {
    if (text == "jsonl") return ReportFormat::Jsonl;
    if (text == "csv") return ReportFormat::Csv;
    throw Error{Errc::invalid_argument, "unknown report format '" + std::string{text} + "' (jsonl or csv)"};
}

std::string verdict_line(const analyzer::PoolVerdict& verdict) { return analyzer::to_json(verdict).dump(); }

std::string csv_header() {
    return "pool,token_x,token_y,traps,findings,first_flagged_block,scanned_from,scanned_to,requires_manual_review";
}

std::string csv_row(const analyzer::PoolVerdict& v) {
    std::string traps;
    for (auto t : v.traps) {
        if (!traps.empty()) traps += ';';
        traps += to_string(t);
    }
    std::ostringstream out;
    out << v.pool.pool.to_hex() << ',' << v.pool.token_x.to_hex() << ',' << v.pool.token_y.to_hex() << ',' << traps
        << ',' << v.findings.size() << ','
        << (v.first_flagged_block ? std::to_string(v.first_flagged_block->number) : std::string{}) << ','
        << v.scanned_range.from << ',' << v.scanned_range.to << ',' << (v.requires_manual_review ? "true" : "false");
    return out.str();
}

Summary summarize(std::span<const analyzer::PoolVerdict> verdicts, std::size_t failed) {
    Summary s;
    for (auto t : kAllTrapTypes) s.counts[t] = 0;
    for (const auto& v : verdicts) {
        for (auto t : v.traps) ++s.counts[t];
        if (!v.traps.empty()) ++s.flagged;
    }
    s.total = verdicts.size();
    s.failed = failed;
    return s;
}

std::string format_summary(const Summary& s) {
    auto label = [](TrapType t) -> std::string {
        switch (t) {
            case TrapType::InvalidBuy: return "Invalid Buy";
            case TrapType::UnauthorizedTransfer: return "Unauthorized Transfer";
            case TrapType::CannotSell: return "Cannot Sell";
            case TrapType::InvalidSell: return "Invalid Sell";
        }
        return "?";
    };
    std::ostringstream out;
    out << std::left << std::setw(24) << "Trap type" << "Pools\n";
    for (auto t : kAllTrapTypes) {
        const auto it = s.counts.find(t);
        out << std::left << std::setw(24) << label(t) << (it == s.counts.end() ? 0 : it->second) << '\n';
    }
    out << std::left << std::setw(24) << "Total" << s.flagged << '/' << s.total << '\n';
    if (s.failed > 0) out << std::left << std::setw(24) << "Failed" << s.failed << '\n';
    return out.str();
}

}  // namespace honeyscan::scan
