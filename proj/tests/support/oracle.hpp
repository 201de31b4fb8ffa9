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


// Reference arithmetic on GMP integers, independent of the library's
// fixed-width implementation.

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <gmpxx.h>

#include <honeyscan/core/amount.hpp>

namespace honeyscan::oracle {

inline mpz_class to_mpz(const TokenAmount& a) { return mpz_class{a.to_decimal(), 10}; }
inline TokenAmount from_mpz(const mpz_class& v) { return TokenAmount::from_decimal(v.get_str(10)); }

//! floor(in·(den−num)·rout / (rin·den + in·(den−num))).
inline mpz_class swap_out(const mpz_class& rin, const mpz_class& rout, const mpz_class& in, std::uint64_t fee_num,
                          std::uint64_t fee_den) {
    const mpz_class in_with_fee = in * static_cast<unsigned long>(fee_den - fee_num);
    const mpz_class num = in_with_fee * rout;
    const mpz_class den = rin * static_cast<unsigned long>(fee_den) + in_with_fee;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

inline mpz_class mul_div(const mpz_class& a, const mpz_class& b, const mpz_class& d) {
    mpz_class q;
    const mpz_class p = a * b;
    mpz_fdiv_q(q.get_mpz_t(), p.get_mpz_t(), d.get_mpz_t());
    return q;
}

//! Uniform integer in [lo, hi].
inline mpz_class uniform(gmp_randclass& rng, const mpz_class& lo, const mpz_class& hi) {
    return lo + rng.get_z_range(hi - lo + 1);
}

//! 10^e with e uniform in [lo_exp, hi_exp], times a uniform mantissa, clamped
//! to [10^lo_exp, 10^hi_exp]. Spreads samples across magnitudes.
inline mpz_class log_uniform(gmp_randclass& rng, unsigned lo_exp, unsigned hi_exp) {
    mpz_class lo, hi;
    mpz_ui_pow_ui(lo.get_mpz_t(), 10, lo_exp);
    mpz_ui_pow_ui(hi.get_mpz_t(), 10, hi_exp);
    const unsigned e = lo_exp + static_cast<unsigned>(mpz_class{rng.get_z_range(hi_exp - lo_exp + 1)}.get_ui());
    mpz_class base;
    mpz_ui_pow_ui(base.get_mpz_t(), 10, e);
    mpz_class v = uniform(rng, base, base * 10 - 1);
    if (v > hi) v = hi;
    if (v < lo) v = lo;
    return v;
}

}  // namespace honeyscan::oracle
