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

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include <honeyscan/analyzer.hpp>

namespace honeyscan::scan {

enum class ReportFormat : std::uint8_t { Jsonl, Csv };

ReportFormat parse_report_format(std::string_view text);

//! One verdict as a single JSON line (no trailing newline).
std::string verdict_line(const analyzer::PoolVerdict& verdict);
std::string csv_header();
std::string csv_row(const analyzer::PoolVerdict& verdict);

struct Summary {
    std::map<TrapType, std::size_t> counts{};
    std::size_t flagged{0};
    std::size_t total{0};
    std::size_t failed{0};
};

Summary summarize(std::span<const analyzer::PoolVerdict> verdicts, std::size_t failed = 0);

//! Per-type pool counts (types overlap) and a distinct-pool total line
//! "Total <flagged>/<scanned>".
std::string format_summary(const Summary& summary);

}  // namespace honeyscan::scan
