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

#include <honeyscan/chainview.hpp>

namespace honeyscan {

std::vector<BalanceReading> ChainView::balances_of(const Address& token, std::span<const Address> holders,
                                                   BlockNumber block) const {
    std::vector<BalanceReading> out;
    out.reserve(holders.size());
    for (const auto& holder : holders) out.push_back(balance_of(token, holder, block));
    return out;
}

std::optional<TokenAmount> ChainView::quote_exact_input(const PoolInfo&, const Address&, const TokenAmount&,
                                                        BlockNumber) const {
    return std::nullopt;
}

}  // namespace honeyscan
