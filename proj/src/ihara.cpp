#include "cayley/ihara.hpp"

#include <cmath>

#include "cayley/density.hpp"
#include "cayley/parallel.hpp"
#include "cayley/spectra.hpp"
#include "cayley/stats.hpp"

namespace cayley {

namespace {

constexpr double kCoeffCap = 1e300;

void check_magnitude(const std::vector<double>& c, std::int64_t upto) {
    for (std::int64_t i = 0; i <= upto; ++i)
        if (!(std::abs(c[static_cast<std::size_t>(i)]) < kCoeffCap))
            fail(errc::budget_exceeded, "polynomial coefficients exceed the magnitude guard");
}

} // namespace

IharaPolynomial ihara_polynomial(const CayleySpec& spec, WorkBudget* budget) {
    std::int64_t n = spec.n();
    std::int64_t r = spec.r();
    if (r < 2) fail(errc::invalid_argument, "Ihara polynomial requires degree r >= 2");
    if (budget)
        budget->charge_estimate(2.0 * static_cast<double>(n) * static_cast<double>(n),
                                "ihara_polynomial");
    SpectrumMultiset sp = spectrum(spec);
    double q = static_cast<double>(r - 1);

    IharaPolynomial h;
    h.n = n;
    h.r = r;
    std::int64_t edges = n * spec.tuple.k() + (spec.includes_zero ? n : 0);
    h.rank = edges - n + 1;
    h.coeffs.assign(static_cast<std::size_t>(2 * n + 1), 0.0);
    h.coeffs[0] = 1.0;
    std::int64_t deg = 0;
    for (double lambda : sp.values) {
        // multiply by (1 - lambda u + q u^2), updating high to low
        for (std::int64_t i = deg + 2; i >= 0; --i) {
            double v = h.coeffs[static_cast<std::size_t>(i)];
            if (i >= 1) v -= lambda * h.coeffs[static_cast<std::size_t>(i - 1)];
            if (i >= 2) v += q * h.coeffs[static_cast<std::size_t>(i - 2)];
            h.coeffs[static_cast<std::size_t>(i)] = v;
        }
        deg += 2;
        check_magnitude(h.coeffs, deg);
    }
    return h;
}

std::vector<double> zeta_inverse(const CayleySpec& spec, WorkBudget* budget) {
    IharaPolynomial h = ihara_polynomial(spec, budget);
    std::int64_t p = h.rank - 1;
    // (1 - u^2)^p has coefficient (-1)^j C(p, j) at u^(2j)
    std::vector<double> prefactor(static_cast<std::size_t>(2 * p + 1), 0.0);
    double binom = 1.0;
    for (std::int64_t j = 0; j <= p; ++j) {
        prefactor[static_cast<std::size_t>(2 * j)] = (j % 2 == 0 ? binom : -binom);
        binom = binom * static_cast<double>(p - j) / static_cast<double>(j + 1);
        if (!(binom < kCoeffCap))
            fail(errc::budget_exceeded, "prefactor coefficients exceed the magnitude guard");
    }
    std::vector<double> out(prefactor.size() + h.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < prefactor.size(); ++i) {
        if (prefactor[i] == 0.0) continue;
        for (std::size_t j = 0; j < h.coeffs.size(); ++j) out[i + j] += prefactor[i] * h.coeffs[j];
    }
    check_magnitude(out, static_cast<std::int64_t>(out.size()) - 1);
    return out;
}

double eval_poly(const std::vector<double>& coeffs, double u) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * u + coeffs[i];
    return acc;
}

PolePair pole_pair(double alpha, std::int64_t r) {
    if (r < 2) fail(errc::invalid_argument, "pole_pair requires r >= 2");
    double q = static_cast<double>(r - 1);
    double disc = alpha * alpha - 4.0 * q;
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        return PolePair{{(alpha + s) / (2.0 * q), 0.0}, {(alpha - s) / (2.0 * q), 0.0}};
    }
    double s = std::sqrt(-disc);
    return PolePair{{alpha / (2.0 * q), s / (2.0 * q)}, {alpha / (2.0 * q), -s / (2.0 * q)}};
}

RamanujanReport ramanujan_fraction(const OddModulus& n, std::int64_t k, bool includes_zero,
                                   double tolerance, WorkBudget* budget, int threads) {
    std::int64_t r = 2 * k + (includes_zero ? 1 : 0);
    RamanujanReport rep;
    rep.n = n.value();
    rep.k = k;
    rep.r = r;
    rep.threshold = 2.0 * std::sqrt(static_cast<double>(r - 1));
    IntervalPair p = interval_map(-rep.threshold, rep.threshold, r);

    std::int64_t half = n.half();
    std::vector<BigCount> per_m(static_cast<std::size_t>(half));
    parallel_for(static_cast<std::uint64_t>(half), threads, [&](std::uint64_t i) {
        per_m[i] = count_slice(n, k, static_cast<std::int64_t>(i) + 1, p.c, p.d, budget);
    });
    BigCount cnt(0);
    for (const BigCount& cm : per_m) cnt += 2 * cm; // slices m and n-m coincide
    rep.count = cnt;
    rep.total = BigCount(static_cast<long>(n.value() - 1)) * count_tuples(n, k);
    rep.empirical = to_double(rep.count) / to_double(rep.total);
    rep.predicted = conv_mass(static_cast<int>(k), p.c, p.d, tolerance, budget, threads).value;
    return rep;
}

} // namespace cayley
