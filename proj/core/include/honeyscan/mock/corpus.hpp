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
#include <string>
#include <vector>

#include <honeyscan/mock/scenario.hpp>

namespace honeyscan::mock {

//! Generation strata: the trap families plus the two OwnerDrain variants
//! and honest controls.
enum class Stratum : std::uint8_t {
    HiddenTax,
    HighTax,
    OwnerDrainLogged,
    OwnerDrainSilent,
    ListGate,
    LimitedSell,
    DelayedSellTax,
    HonestControl,
};

std::string_view to_string(Stratum stratum) noexcept;

struct CorpusEntry {
    std::string file_name;
    Stratum stratum{Stratum::HonestControl};
    Scenario scenario;
};

//! n scenarios: a quarter honest controls (tax in [0, 49%]), the rest spread
//! round-robin over the seven trap strata. Same (n, seed) -> same output.
std::vector<CorpusEntry> generate_corpus(std::size_t n, std::uint64_t seed);

//! One scenario of the given stratum drawn from `seed`.
Scenario generate_scenario(Stratum stratum, std::uint64_t seed, std::string name);

//! Writes each entry as pretty-printed JSON plus a manifest.json listing
//! file names, strata and labels.
void write_corpus(const std::vector<CorpusEntry>& corpus, const std::filesystem::path& out_dir);

}  // namespace honeyscan::mock
