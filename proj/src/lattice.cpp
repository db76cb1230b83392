#include "cayley/lattice.hpp"

#include <cmath>

#include "cayley/density.hpp"
#include "cayley/error.hpp"
#include "cayley/kernels.hpp"
#include "cayley/spectra.hpp"

namespace cayley {

bool in_region(std::span<const double> x, const RegionSpec& r) {
    if (static_cast<std::int64_t>(x.size()) != r.k)
        fail(errc::dimension_mismatch, "vector length != k");
    for (double xi : x)
        if (!(xi >= 0.0 && xi < 0.5)) return false;
    if (r.distinct_coords) {
        for (std::size_t i = 0; i + 1 < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j)
                if (x[i] == x[j]) return false;
    }
    if (r.interval) {
        kernels::KahanPrefix acc;
        for (double xi : x) acc.push(std::cos(2.0 * M_PI * xi));
        if (!(acc.sum >= r.interval->first && acc.sum <= r.interval->second)) return false;
    }
    return true;
}

namespace {

/// Guard from the contract: ordered search space ((n+1)/2)^k must fit the
/// budget before any enumeration starts.
void guard_lattice_size(const OddModulus& n, std::int64_t k, WorkBudget* budget) {
    double space = std::pow(static_cast<double>(n.half() + 1), static_cast<double>(k));
    double limit = static_cast<double>(budget ? budget->remaining() : WorkBudget::kDefaultLimit);
    if (!(space <= limit))
        fail(errc::k_too_large, "lattice enumeration of ((n+1)/2)^k = " + std::to_string(space) +
                                    " points exceeds budget");
}

/// Ordered count of lattice tuples with cosine sum in [c, d]. Enumerates
/// coordinate multisets (nondecreasing b) and weights each by its number of
/// orderings, maintained incrementally: appending a value equal to the last
/// one extends the final run, appending a larger one starts a new run.
std::uint64_t count_interval_ordered(const CosTable& table, std::int64_t k, double c, double d,
                                     bool distinct) {
    std::int64_t half = (table.n() - 1) / 2;
    const double* vals = table.data();
    std::uint64_t kfact = 1;
    for (std::int64_t i = 2; i <= k; ++i) kfact *= static_cast<std::uint64_t>(i);

    if (distinct) {
        // strictly increasing representatives, k! orderings each
        struct Rec {
            const double* vals;
            std::int64_t half, k;
            double c, d;
            std::uint64_t weight;
            std::uint64_t total = 0;
            void go(std::int64_t pos, std::int64_t lo, kernels::KahanPrefix acc) {
                if (pos == k - 1) {
                    total += weight * kernels::count_in_interval(vals, static_cast<std::size_t>(lo),
                                                                 static_cast<std::size_t>(half),
                                                                 acc, c, d);
                    return;
                }
                for (std::int64_t b = lo; b <= half - (k - 1 - pos); ++b) {
                    kernels::KahanPrefix next = acc;
                    next.push(vals[b]);
                    go(pos + 1, b + 1, next);
                }
            }
        } rec{vals, half, k, c, d, kfact};
        rec.go(0, 0, kernels::KahanPrefix{});
        return rec.total;
    }

    // nondecreasing representatives; perms = L!/prod(run lengths!) kept
    // incrementally as described above
    struct Rec {
        const double* vals;
        std::int64_t half, k;
        double c, d;
        std::uint64_t total = 0;
        void go(std::int64_t pos, std::int64_t lastval, std::uint64_t perms, std::int64_t lastrun,
                kernels::KahanPrefix acc) {
            std::uint64_t len = static_cast<std::uint64_t>(pos); // prefix length so far
            if (pos == k - 1) {
                if (pos > 0) {
                    // b_k == lastval: extend the final run
                    kernels::KahanPrefix eq = acc;
                    double t = eq.finish(vals[lastval]);
                    if (t >= c && t <= d)
                        total += perms * (len + 1) / static_cast<std::uint64_t>(lastrun + 1);
                    // b_k > lastval: new run of length 1
                    total += perms * (len + 1) *
                             kernels::count_in_interval(vals, static_cast<std::size_t>(lastval + 1),
                                                        static_cast<std::size_t>(half), acc, c, d);
                } else {
                    total += kernels::count_in_interval(vals, 0, static_cast<std::size_t>(half),
                                                        acc, c, d);
                }
                return;
            }
            std::int64_t from = pos == 0 ? 0 : lastval;
            for (std::int64_t b = from; b <= half; ++b) {
                kernels::KahanPrefix next = acc;
                next.push(vals[b]);
                bool extends = pos > 0 && b == lastval;
                std::uint64_t p = extends
                                      ? perms * (len + 1) / static_cast<std::uint64_t>(lastrun + 1)
                                      : perms * (len + 1);
                go(pos + 1, b, p, extends ? lastrun + 1 : 1, next);
            }
        }
    } rec{vals, half, k, c, d};
    rec.go(0, -1, 1, 0, kernels::KahanPrefix{});
    return rec.total;
}

} // namespace

BigCount count_lattice(const OddModulus& n, const RegionSpec& r, WorkBudget* budget, int threads) {
    (void)threads;
    if (r.k < 1) fail(errc::k_too_large, "k must be >= 1");
    std::int64_t points = n.half() + 1; // (n+1)/2 values per coordinate
    if (!r.interval) {
        BigCount total = 1;
        if (r.distinct_coords) {
            if (r.k > points) return BigCount(0);
            for (std::int64_t i = 0; i < r.k; ++i) total *= BigCount(points - i);
        } else {
            for (std::int64_t i = 0; i < r.k; ++i) total *= BigCount(points);
        }
        return total;
    }
    guard_lattice_size(n, r.k, budget);
    if (budget)
        budget->charge_estimate(
            std::pow(static_cast<double>(points), static_cast<double>(r.k)), "count_lattice");
    CosTable table(n);
    return big_from_u64(
        count_interval_ordered(table, r.k, r.interval->first, r.interval->second, r.distinct_coords));
}

BigCount count_lattice_strict(const OddModulus& n, std::int64_t k, double c, double d,
                              WorkBudget* budget) {
    if (k < 1) fail(errc::k_too_large, "k must be >= 1");
    if (k > n.half() + 1) return BigCount(0);
    guard_lattice_size(n, k, budget);
    if (budget)
        budget->charge_estimate(
            std::pow(static_cast<double>(n.half() + 1), static_cast<double>(k)),
            "count_lattice_strict");
    CosTable table(n);
    std::uint64_t kfact = 1; // divides the ordered count exactly
    for (std::int64_t i = 2; i <= k; ++i) kfact *= static_cast<std::uint64_t>(i);
    std::uint64_t ordered = count_interval_ordered(table, k, c, d, true);
    return big_from_u64(ordered / kfact);
}

ShiftReport shift_check(const OddModulus& n, std::int64_t k, double c, double d,
                        WorkBudget* budget) {
    if (k < 1) fail(errc::k_too_large, "k must be >= 1");
    guard_lattice_size(n, k, budget);
    if (budget)
        budget->charge_estimate(std::pow(static_cast<double>(n.half() + 1), static_cast<double>(k)),
                                "shift_check");
    CosTable table(n);
    std::int64_t half = n.half();
    double margin = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n.value());
    double clo = c - margin, chi = d + margin;

    ShiftReport rep;
    std::vector<std::int64_t> b(static_cast<std::size_t>(k), 0);
    // nondecreasing representatives cover every point up to coordinate order,
    // and both sums are permutation-invariant
    while (true) {
        kernels::KahanPrefix sum0;
        for (std::int64_t bi : b) sum0.push(table.at(bi));
        if (sum0.sum >= c && sum0.sum <= d) {
            ++rep.checked;
            kernels::KahanPrefix sum1;
            for (std::int64_t bi : b) sum1.push(table.at(bi + 1)); // b+1 <= (n+1)/2 < n
            if (!(sum1.sum >= clo && sum1.sum <= chi)) {
                rep.pass = false;
                if (rep.counterexample.empty()) {
                    rep.counterexample = b;
                    rep.shifted_sum = sum1.sum;
                }
            }
        }
        // next nondecreasing tuple
        std::int64_t i = k - 1;
        while (i >= 0 && b[static_cast<std::size_t>(i)] == half) --i;
        if (i < 0) break;
        std::int64_t v = b[static_cast<std::size_t>(i)] + 1;
        for (std::int64_t j = i; j < k; ++j) b[static_cast<std::size_t>(j)] = v;
    }
    return rep;
}

double volume_count_gap(const OddModulus& n, std::int64_t k, double c, double d, double tolerance,
                        WorkBudget* budget, int threads) {
    RegionSpec r{k, std::make_pair(c, d), false};
    BigCount count = count_lattice(n, r, budget, threads);
    double ratio = to_double(count) / std::pow(static_cast<double>(n.value()), static_cast<double>(k));
    MassEstimate vol = box_volume(static_cast<int>(k), c, d, tolerance, budget, threads);
    return std::abs(ratio - vol.value);
}

} // namespace cayley
