#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "cayley/kernels.hpp"
#include "cayley/rng.hpp"

using namespace cayley;
using namespace cayley::kernels;

namespace {

std::vector<double> random_values(std::uint64_t seed, std::size_t count, double scale) {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = (counter_uniform(seed, i) - 0.5) * scale;
    return v;
}

} // namespace

TEST_CASE("KahanPrefix finish equals one more push") {
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v =
            random_values(static_cast<std::uint64_t>(trial), 5, 2.0);
        KahanPrefix full;
        for (double x : v) full.push(x);
        KahanPrefix head;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) head.push(v[i]);
        CHECK(head.finish(v.back()) == full.sum); // bit-identical by construction
    }
}

TEST_CASE("backends available") {
    std::vector<Backend> sup = supported_backends();
    REQUIRE(!sup.empty());
    CHECK(sup.front() == Backend::scalar);
    CHECK(set_backend(Backend::scalar));
    CHECK(active_backend() == Backend::scalar);
    // restore best
    for (Backend b : sup) set_backend(b);
}

TEST_CASE("count_in_interval: SIMD equals scalar bit-for-bit") {
    std::vector<Backend> sup = supported_backends();
    for (int trial = 0; trial < 300; ++trial) {
        std::uint64_t s = 1000 + static_cast<std::uint64_t>(trial);
        std::size_t len = 1 + static_cast<std::size_t>(counter_uniform(s, 900) * 130);
        std::vector<double> vals = random_values(s, len, 4.0);
        KahanPrefix pre;
        pre.sum = (counter_uniform(s, 901) - 0.5) * 3.0;
        pre.comp = (counter_uniform(s, 902) - 0.5) * 1e-16;
        double c = (counter_uniform(s, 903) - 0.5) * 4.0;
        double d = c + counter_uniform(s, 904) * 2.0;
        // force exact endpoint hits in some trials
        if (trial % 5 == 0 && len > 2) {
            c = pre.finish(vals[len / 2]);
            d = pre.finish(vals[len / 3]) >= c ? pre.finish(vals[len / 3]) : c;
        }
        std::size_t lo = len > 4 ? len / 5 : 0;

        std::uint64_t expect =
            detail::count_in_interval_scalar(vals.data(), lo, len - 1, pre, c, d);
        for (Backend b : sup) {
            REQUIRE(set_backend(b));
            CHECK(count_in_interval(vals.data(), lo, len - 1, pre, c, d) == expect);
        }
    }
    for (Backend b : sup) set_backend(b);
}

TEST_CASE("bin_accumulate: SIMD equals scalar bit-for-bit") {
    std::vector<Backend> sup = supported_backends();
    for (int trial = 0; trial < 100; ++trial) {
        std::uint64_t s = 5000 + static_cast<std::uint64_t>(trial);
        std::size_t len = 3 + static_cast<std::size_t>(counter_uniform(s, 900) * 90);
        std::vector<double> vals = random_values(s, len, 2.0);
        KahanPrefix pre;
        pre.sum = (counter_uniform(s, 901) - 0.5);
        std::size_t nbins = 1 + static_cast<std::size_t>(counter_uniform(s, 905) * 12);
        double lo = -2.5, hi = 2.5;

        std::vector<std::uint64_t> expect(nbins, 0);
        detail::bin_accumulate_scalar(vals.data(), 0, len - 1, pre, lo, hi, nbins, 2,
                                      expect.data());
        for (Backend b : sup) {
            REQUIRE(set_backend(b));
            std::vector<std::uint64_t> got(nbins, 0);
            bin_accumulate(vals.data(), 0, len - 1, pre, lo, hi, nbins, 2, got.data());
            CHECK(got == expect);
        }
    }
    for (Backend b : sup) set_backend(b);
}

TEST_CASE("remap_mod_table: SIMD equals scalar, both match direct indexing") {
    std::vector<Backend> sup = supported_backends();
    for (std::int64_t n : {3, 5, 9, 31, 101, 257}) {
        std::vector<double> table(static_cast<std::size_t>(n));
        for (std::int64_t j = 0; j < n; ++j)
            table[static_cast<std::size_t>(j)] = std::cos(2 * M_PI * j / static_cast<double>(n));
        for (std::int64_t m = 0; m < n; m += (n > 20 ? 7 : 1)) {
            std::size_t count = static_cast<std::size_t>((n + 1) / 2);
            std::vector<double> direct(count);
            for (std::size_t a = 0; a < count; ++a)
                direct[a] = table[static_cast<std::size_t>(
                    (m * static_cast<std::int64_t>(a)) % n)];
            for (Backend b : sup) {
                REQUIRE(set_backend(b));
                std::vector<double> got(count, -9.0);
                remap_mod_table(got.data(), table.data(), n, m, count);
                CHECK(got == direct);
            }
        }
    }
    for (Backend b : sup) set_backend(b);
}
