#include "cayley/core.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace cayley {

GeneratorTuple make_tuple(std::int64_t n, std::vector<std::int64_t> a) {
    OddModulus mod(n);
    if (a.empty()) fail(errc::out_of_range, "generator tuple must have k >= 1 entries");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 1 || a[i] > mod.half())
            fail(errc::out_of_range, "generator " + std::to_string(a[i]) + " out of range [1, " +
                                         std::to_string(mod.half()) + "]");
        if (i > 0 && a[i] <= a[i - 1])
            fail(errc::not_strictly_increasing, "generators must be strictly increasing");
    }
    return GeneratorTuple{mod, std::move(a)};
}

SliceId slice_params(const OddModulus& n, std::int64_t m) {
    if (m < 0 || m >= n.value())
        fail(errc::m_out_of_range, "m = " + std::to_string(m) + " outside [0, n-1]");
    std::int64_t d = std::gcd(m, n.value()); // gcd(0, n) = n
    return SliceId{n.value(), m, d, n.value() / d, m / d};
}

SliceClass classify_tuple(const GeneratorTuple& t, const SliceId& s) {
    if (t.n.value() != s.n) fail(errc::mismatched_modulus, "tuple and slice moduli differ");
    if (s.m == 0) return SliceClass::DoublePrimed;
    std::int64_t n1 = s.n1;
    for (std::size_t i = 0; i + 1 < t.a.size(); ++i) {
        for (std::size_t j = i + 1; j < t.a.size(); ++j) {
            std::int64_t diff = (t.a[j] - t.a[i]) % n1;
            std::int64_t sum = (t.a[i] + t.a[j]) % n1;
            if (diff == 0 || sum == 0) return SliceClass::DoublePrimed;
        }
    }
    return SliceClass::Primed;
}

double kappa(double x) {
    double f = x - std::floor(x);
    return f <= 0.5 ? f : 1.0 - f;
}

LatticePoint lattice_point(const GeneratorTuple& t, const std::vector<std::size_t>& perm,
                           const SliceId& s) {
    if (t.n.value() != s.n) fail(errc::mismatched_modulus, "tuple and slice moduli differ");
    if (s.m == 0) fail(errc::zero_slice, "lattice point undefined for the m = 0 slice");
    if (perm.size() != t.a.size()) fail(errc::dimension_mismatch, "permutation size != k");
    LatticePoint p;
    p.denom = s.n1;
    p.num.resize(t.a.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        std::int64_t v = (s.m1 * t.a[perm[i]]) % s.n1;
        // integer fold: v/n1 <= 1/2 iff 2v <= n1; n1 odd so equality never occurs
        p.num[i] = 2 * v <= s.n1 ? v : s.n1 - v;
    }
    return p;
}

BigCount count_tuples(const OddModulus& n, std::int64_t k) {
    if (k < 0 || k > n.half())
        fail(errc::k_too_large, "k = " + std::to_string(k) + " exceeds (n-1)/2 = " +
                                    std::to_string(n.half()));
    return binomial(static_cast<std::uint64_t>(n.half()), static_cast<std::uint64_t>(k));
}

void for_each_tuple(const OddModulus& n, std::int64_t k,
                    const std::function<void(const std::int64_t*)>& fn) {
    if (k < 1 || k > n.half()) fail(errc::k_too_large, "k outside [1, (n-1)/2]");
    std::int64_t half = n.half();
    std::vector<std::int64_t> a(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) a[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        fn(a.data());
        // next lexicographic combination
        std::int64_t i = k - 1;
        while (i >= 0 && a[static_cast<std::size_t>(i)] == half - (k - 1 - i)) --i;
        if (i < 0) return;
        ++a[static_cast<std::size_t>(i)];
        for (std::int64_t j = i + 1; j < k; ++j)
            a[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j - 1)] + 1;
    }
}

std::vector<std::int64_t> unrank_tuple(const OddModulus& n, std::int64_t k, std::uint64_t rank) {
    if (k < 1 || k > n.half()) fail(errc::k_too_large, "k outside [1, (n-1)/2]");
    BigCount total = count_tuples(n, k);
    if (big_from_u64(rank) >= total) fail(errc::out_of_range, "rank beyond last tuple");
    std::vector<std::int64_t> a(static_cast<std::size_t>(k));
    BigCount rem = big_from_u64(rank);
    std::int64_t lo = 1;
    std::int64_t half = n.half();
    for (std::int64_t i = 0; i < k; ++i) {
        for (std::int64_t v = lo;; ++v) {
            // tuples starting with v at slot i: C(half - v, k - i - 1)
            BigCount block = binomial(static_cast<std::uint64_t>(half - v),
                                      static_cast<std::uint64_t>(k - i - 1));
            if (rem < block) {
                a[static_cast<std::size_t>(i)] = v;
                lo = v + 1;
                break;
            }
            rem -= block;
        }
    }
    return a;
}

void for_each_tuple_range(const OddModulus& n, std::int64_t k, std::uint64_t from, std::uint64_t to,
                          const std::function<void(const std::int64_t*)>& fn) {
    if (from >= to) return;
    std::vector<std::int64_t> a = unrank_tuple(n, k, from);
    std::int64_t half = n.half();
    for (std::uint64_t r = from; r < to; ++r) {
        fn(a.data());
        std::int64_t i = k - 1;
        while (i >= 0 && a[static_cast<std::size_t>(i)] == half - (k - 1 - i)) --i;
        if (i < 0) return;
        ++a[static_cast<std::size_t>(i)];
        for (std::int64_t j = i + 1; j < k; ++j)
            a[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j - 1)] + 1;
    }
}

} // namespace cayley
