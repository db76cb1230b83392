#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "cayley/core.hpp"
#include "cayley/rng.hpp"

using namespace cayley;

namespace {

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return errc::invalid_argument;
}

} // namespace

TEST_CASE("make_tuple validation") {
    GeneratorTuple t = make_tuple(5, {1});
    CHECK(t.k() == 1);
    CHECK(make_tuple(9, {1, 3}).k() == 2);

    CHECK(code_of([] { make_tuple(5, {3}); }) == errc::out_of_range);
    CHECK(code_of([] { make_tuple(4, {1}); }) == errc::even_modulus);
    CHECK(code_of([] { make_tuple(9, {3, 1}); }) == errc::not_strictly_increasing);
    CHECK(code_of([] { make_tuple(9, {2, 2}); }) == errc::not_strictly_increasing);
    CHECK(code_of([] { make_tuple(9, {}); }) == errc::out_of_range);
}

TEST_CASE("enumerate_tuples order and counts") {
    std::vector<std::vector<std::int64_t>> seen;
    for_each_tuple(OddModulus(5), 1,
                   [&](const std::int64_t* a) { seen.push_back({a[0]}); });
    CHECK(seen == std::vector<std::vector<std::int64_t>>{{1}, {2}});

    seen.clear();
    for_each_tuple(OddModulus(9), 2,
                   [&](const std::int64_t* a) { seen.push_back({a[0], a[1]}); });
    REQUIRE(seen.size() == 6);
    CHECK(seen.front() == std::vector<std::int64_t>{1, 2});
    CHECK(seen.back() == std::vector<std::int64_t>{3, 4});

    std::uint64_t count = 0;
    for_each_tuple(OddModulus(101), 3, [&](const std::int64_t*) { ++count; });
    CHECK(count == 19600);
}

TEST_CASE("count_tuples closed forms") {
    CHECK(count_tuples(OddModulus(5), 1) == 2);
    CHECK(count_tuples(OddModulus(9), 2) == 6);
    CHECK(count_tuples(OddModulus(2001), 3) == 166167000);
    CHECK(count_tuples(OddModulus(9), 0) == 1);
    // far beyond 64 bits, must not wrap
    BigCount huge = count_tuples(OddModulus(2001), 500);
    CHECK(mpz_sizeinbase(huge.get_mpz_t(), 2) > 64);
    CHECK(code_of([] { count_tuples(OddModulus(9), 5); }) == errc::k_too_large);
}

TEST_CASE("enumeration count equals closed form") {
    for (std::int64_t n : {7, 15, 21, 33}) {
        OddModulus mod(n);
        for (std::int64_t k = 1; k <= std::min<std::int64_t>(4, mod.half()); ++k) {
            std::uint64_t streamed = 0;
            for_each_tuple(mod, k, [&](const std::int64_t*) { ++streamed; });
            CHECK(big_from_u64(streamed) == count_tuples(mod, k));
        }
    }
}

TEST_CASE("unrank matches enumeration and splits cleanly") {
    OddModulus n(15);
    std::vector<std::vector<std::int64_t>> all;
    for_each_tuple(n, 2, [&](const std::int64_t* a) { all.push_back({a[0], a[1]}); });
    for (std::uint64_t r = 0; r < all.size(); ++r)
        CHECK(unrank_tuple(n, 2, r) == all[r]);

    std::vector<std::vector<std::int64_t>> split;
    std::uint64_t mid = all.size() / 3;
    for_each_tuple_range(n, 2, 0, mid,
                         [&](const std::int64_t* a) { split.push_back({a[0], a[1]}); });
    for_each_tuple_range(n, 2, mid, all.size(),
                         [&](const std::int64_t* a) { split.push_back({a[0], a[1]}); });
    CHECK(split == all);
}

TEST_CASE("slice_params") {
    SliceId s = slice_params(OddModulus(9), 3);
    CHECK(s.d == 3);
    CHECK(s.n1 == 3);
    CHECK(s.m1 == 1);

    s = slice_params(OddModulus(15), 6);
    CHECK(s.d == 3);
    CHECK(s.n1 == 5);
    CHECK(s.m1 == 2);

    s = slice_params(OddModulus(9), 0);
    CHECK(s.d == 9);
    CHECK(s.n1 == 1);
    CHECK(s.m1 == 0);

    CHECK(code_of([] { slice_params(OddModulus(9), 9); }) == errc::m_out_of_range);
    for (std::int64_t n : {9, 15, 45}) {
        OddModulus mod(n);
        for (std::int64_t m = 1; m < n; ++m) {
            SliceId sl = slice_params(mod, m);
            CHECK(sl.d * sl.n1 == n);
            CHECK(sl.d * sl.m1 == m);
            CHECK(std::gcd(sl.m1, sl.n1) == 1);
        }
    }
}

TEST_CASE("classify_tuple") {
    OddModulus n(9);
    SliceId s3 = slice_params(n, 3);
    CHECK(classify_tuple(make_tuple(9, {1, 2}), s3) == SliceClass::DoublePrimed); // 1 = -2 mod 3
    CHECK(classify_tuple(make_tuple(9, {1, 3}), s3) == SliceClass::Primed);
    CHECK(classify_tuple(make_tuple(9, {1, 3}), slice_params(n, 0)) == SliceClass::DoublePrimed);
    CHECK(code_of([&] { classify_tuple(make_tuple(15, {1}), s3); }) == errc::mismatched_modulus);

    // invariance under m -> n-m: the split depends on m only through n1
    for (std::int64_t m = 1; m < 9; ++m) {
        SliceId a = slice_params(n, m);
        SliceId b = slice_params(n, 9 - m);
        for_each_tuple(n, 2, [&](const std::int64_t* t) {
            GeneratorTuple g{n, {t[0], t[1]}};
            CHECK(classify_tuple(g, a) == classify_tuple(g, b));
        });
    }
}

TEST_CASE("kappa") {
    CHECK(kappa(0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(kappa(0.7) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(kappa(2.25) == doctest::Approx(0.25).epsilon(1e-15));

    for (int i = 0; i < 5000; ++i) {
        double x = (counter_uniform(3, static_cast<std::uint64_t>(i)) - 0.5) * 50.0;
        double kx = kappa(x);
        CHECK(kx >= 0.0);
        CHECK(kx <= 0.5);
        CHECK(std::cos(2 * M_PI * x) ==
              doctest::Approx(std::cos(2 * M_PI * kx)).epsilon(1e-11));
        CHECK(kappa(kx) == kx);
        CHECK(kappa(-x) == doctest::Approx(kx).epsilon(1e-14));
    }
}

TEST_CASE("lattice_point folding") {
    OddModulus n5(5);
    SliceId s = slice_params(n5, 2);
    LatticePoint p = lattice_point(make_tuple(5, {1}), {0}, s);
    CHECK(p.denom == 5);
    CHECK(p.num == std::vector<std::int64_t>{2}); // {2/5} = 0.4 <= 1/2

    p = lattice_point(make_tuple(5, {2}), {0}, s);
    CHECK(p.num == std::vector<std::int64_t>{1}); // {4/5} = 0.8 -> 1/5

    // swap permutation example: coords (kappa(3/3), kappa(1/3)) = (0, 1/3)
    SliceId s9 = slice_params(OddModulus(9), 3);
    p = lattice_point(make_tuple(9, {1, 3}), {1, 0}, s9);
    CHECK(p.denom == 3);
    CHECK(p.num == std::vector<std::int64_t>{0, 1});

    CHECK(code_of([&] {
              lattice_point(make_tuple(5, {1}), {0}, slice_params(n5, 0));
          }) == errc::zero_slice);
}

TEST_CASE("lattice_point coordinates are exact folds in [0, (n1-1)/2]") {
    OddModulus n(45);
    for (std::int64_t m : {1, 3, 5, 9, 15, 22}) {
        SliceId s = slice_params(n, m);
        for_each_tuple(n, 2, [&](const std::int64_t* t) {
            GeneratorTuple g{n, {t[0], t[1]}};
            for (const std::vector<std::size_t>& perm :
                 {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
                LatticePoint p = lattice_point(g, perm, s);
                for (std::size_t i = 0; i < p.size(); ++i) {
                    CHECK(p.num[i] >= 0);
                    CHECK(2 * p.num[i] < p.denom); // strictly below 1/2, n1 odd
                    double direct = kappa(static_cast<double>(s.m1 * g.a[perm[i]]) /
                                          static_cast<double>(s.n1));
                    CHECK(p.coord(i) == doctest::Approx(direct).epsilon(1e-14));
                }
                if (classify_tuple(g, s) == SliceClass::Primed)
                    CHECK(p.num[0] != p.num[1]);
            }
        });
    }
}

TEST_CASE("enumeration guard") {
    CHECK(code_of([] {
              for_each_tuple(OddModulus(9), 7, [](const std::int64_t*) {});
          }) == errc::k_too_large);
    CHECK(code_of([] { (void)unrank_tuple(OddModulus(9), 2, 6); }) == errc::out_of_range);
}
