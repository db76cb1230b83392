#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace cayley {

/// Exact counts. Enumerated quantities fit in 64 bits at desk scale (the
/// work budget guarantees it), but closed-form binomials and divisor sums
/// must never wrap, so the public count type is arbitrary precision.
using BigCount = mpz_class;

inline BigCount big_from_u64(std::uint64_t v) {
    // mpz_class has no uint64 constructor on LP64-unfriendly platforms;
    // go through the import path to stay exact everywhere.
    BigCount r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline std::string to_string(const BigCount& v) { return v.get_str(); }

inline double to_double(const BigCount& v) { return v.get_d(); }

/// binomial(n, k) exactly.
inline BigCount binomial(std::uint64_t n, std::uint64_t k) {
    BigCount r;
    if (k > n) return BigCount(0);
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

} // namespace cayley
