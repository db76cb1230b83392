#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cayley/rng.hpp"
#include "cayley/spectra.hpp"

using namespace cayley;

TEST_CASE("tau anchors") {
    CHECK(tau(make_tuple(5, {1}), 0) == 1.0); // tau_0 = k
    CHECK(tau(make_tuple(5, {1}), 1) == doctest::Approx(0.3090170).epsilon(1e-6));
    CHECK(tau(make_tuple(5, {2}), 2) == doctest::Approx(0.3090170).epsilon(1e-6));
    CHECK_THROWS_AS((void)tau(make_tuple(5, {1}), 5), Error);
}

TEST_CASE("eigenvalue anchors") {
    CayleySpec even{make_tuple(5, {1}), false};
    CayleySpec odd{make_tuple(5, {1}), true};
    CHECK(eigenvalue(even, 0) == 2.0);
    CHECK(eigenvalue(even, 1) == doctest::Approx(0.6180340).epsilon(1e-6));
    CHECK(eigenvalue(odd, 1) == doctest::Approx(1.6180340).epsilon(1e-6));
    CHECK(eigenvalue(odd, 0) == 3.0);
}

TEST_CASE("spectrum anchors and invariants") {
    CayleySpec c3{make_tuple(3, {1}), false};
    std::vector<double> s3 = sorted_values(spectrum(c3));
    CHECK(s3[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s3[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s3[2] == doctest::Approx(2.0).epsilon(1e-12));

    CayleySpec c5{make_tuple(5, {1}), false};
    std::vector<double> s5 = sorted_values(spectrum(c5));
    double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(s5[0] == doctest::Approx(-phi - 1.0).epsilon(1e-9));
    CHECK(s5[2] == doctest::Approx(phi).epsilon(1e-9));
    CHECK(s5[4] == doctest::Approx(2.0).epsilon(1e-12));

    for (std::int64_t n : {9, 25, 63, 121}) {
        for (bool zero : {false, true}) {
            CayleySpec spec{make_tuple(n, {1, 3, 4}), zero};
            SpectrumMultiset sp = spectrum(spec);
            double s1 = 0, s2 = 0;
            for (double lam : sp.values) {
                CHECK(std::abs(lam) <= static_cast<double>(spec.r()) + 1e-12);
                s1 += lam;
                s2 += lam * lam;
            }
            double expect1 = zero ? static_cast<double>(n) : 0.0;
            CHECK(std::abs(s1 - expect1) <= static_cast<double>(n) * 1e-10);
            CHECK(std::abs(s2 - static_cast<double>(n * spec.r())) <=
                  static_cast<double>(n) * 1e-10);
            // exact mirror symmetry from the mirrored cosine table
            for (std::int64_t m = 1; m < n; ++m)
                CHECK(sp.values[static_cast<std::size_t>(m)] ==
                      sp.values[static_cast<std::size_t>(n - m)]);
        }
    }
}

TEST_CASE("adjacency matrix") {
    CayleySpec c3{make_tuple(3, {1}), false};
    std::vector<double> a3 = adjacency_matrix(c3);
    std::vector<double> expect{0, 1, 1, 1, 0, 1, 1, 1, 0};
    CHECK(a3 == expect);

    CayleySpec c5{make_tuple(5, {1}), true};
    std::vector<double> a5 = adjacency_matrix(c5);
    std::vector<double> first_row(a5.begin(), a5.begin() + 5);
    CHECK(first_row == std::vector<double>{1, 1, 0, 0, 1}); // S = {0, 1, 4}

    for (std::int64_t n : {9, 15}) {
        CayleySpec spec{make_tuple(n, {2, 4}), n == 15};
        std::vector<double> a = adjacency_matrix(spec);
        for (std::int64_t i = 0; i < n; ++i) {
            double row = 0;
            for (std::int64_t j = 0; j < n; ++j) {
                row += a[static_cast<std::size_t>(i * n + j)];
                CHECK(a[static_cast<std::size_t>(i * n + j)] ==
                      a[static_cast<std::size_t>(j * n + i)]);
            }
            CHECK(row == static_cast<double>(spec.r()));
        }
    }
}

TEST_CASE("dense oracle equivalence") {
    CayleySpec c5{make_tuple(5, {1}), false};
    std::vector<double> jac = spectrum_via_matrix(c5);
    std::vector<double> chr = sorted_values(spectrum(c5));
    REQUIRE(jac.size() == chr.size());
    for (std::size_t i = 0; i < jac.size(); ++i)
        CHECK(std::abs(jac[i] - chr[i]) <= 1e-8 * 2.0);

    CayleySpec c9{make_tuple(9, {1, 3}), false};
    jac = spectrum_via_matrix(c9);
    chr = sorted_values(spectrum(c9));
    for (std::size_t i = 0; i < jac.size(); ++i)
        CHECK(std::abs(jac[i] - chr[i]) <= 1e-8 * 4.0);

    CayleySpec c3{make_tuple(3, {1}), false};
    jac = spectrum_via_matrix(c3);
    CHECK(jac[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(jac[2] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("interval_map") {
    IntervalPair p = interval_map(-2, 2, 2);
    CHECK(p.c == -1.0);
    CHECK(p.d == 1.0);

    p = interval_map(-3, 3, 3);
    CHECK(p.c == -2.0); // raw parity map; below -k is massless
    CHECK(p.d == 1.0);

    p = interval_map(0, 0, 2);
    CHECK(p.c == 0.0);
    CHECK(p.d == 0.0);

    CHECK_THROWS_AS((void)interval_map(-3, 3, 2), Error);
    // J entirely below the tau range for odd r: massless I
    p = interval_map(-3, -2, 3);
    CHECK(p.c == -2.0);
    CHECK(p.d == -1.5);
}

TEST_CASE("interval equivalence: lambda in J iff tau in I") {
    CayleySpec spec{make_tuple(21, {2, 5}), true};
    CosTable table(spec.tuple.n);
    for (int trial = 0; trial < 400; ++trial) {
        double a = (counter_uniform(17, 2 * static_cast<std::uint64_t>(trial)) - 0.5) * 10.0;
        double b = a + counter_uniform(17, 2 * static_cast<std::uint64_t>(trial) + 1) * 6.0;
        a = std::clamp(a, -5.0, 5.0);
        b = std::clamp(b, a, 5.0);
        IntervalPair p = interval_map(a, b, spec.r());
        for (std::int64_t m = 0; m < 21; ++m) {
            double lam = eigenvalue(spec, m);
            double tm = tau(spec.tuple, m, table);
            CHECK((lam >= a && lam <= b) == (tm >= p.c && tm <= p.d));
        }
    }
}

TEST_CASE("dense oracle size guard") {
    CayleySpec big{make_tuple(4099, {1}), false};
    try {
        (void)spectrum_via_matrix(big);
        FAIL("expected too_large");
    } catch (const Error& e) {
        CHECK(e.code() == errc::too_large);
    }
}
