#include "cayley/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cayley/density.hpp"
#include "cayley/kernels.hpp"
#include "cayley/lattice.hpp"
#include "cayley/parallel.hpp"

namespace cayley {

namespace {

/// #{a in A_k(n): prefix-sum + reordered cosines in [c, d]} for one slice,
/// with rt[a] = cos(2 pi m a / n) already remapped. The final tuple slot is
/// the kernel inner loop.
std::uint64_t slice_count(const double* rt, std::int64_t half, std::int64_t k, double c, double d) {
    struct Rec {
        const double* rt;
        std::int64_t half, k;
        double c, d;
        std::uint64_t total = 0;
        void go(std::int64_t pos, std::int64_t lo, kernels::KahanPrefix acc) {
            if (pos == k - 1) {
                total += kernels::count_in_interval(rt, static_cast<std::size_t>(lo),
                                                    static_cast<std::size_t>(half), acc, c, d);
                return;
            }
            for (std::int64_t a = lo; a <= half - (k - 1 - pos); ++a) {
                kernels::KahanPrefix next = acc;
                next.push(rt[a]);
                go(pos + 1, a + 1, next);
            }
        }
    } rec{rt, half, k, c, d};
    rec.go(0, 1, kernels::KahanPrefix{});
    return rec.total;
}

double estimated_slice_work(const OddModulus& n, std::int64_t k, std::int64_t slices) {
    return static_cast<double>(slices) * to_double(count_tuples(n, k));
}

} // namespace

double doubleprime_constant(std::int64_t k) {
    double choose2 = static_cast<double>(k * (k - 1)) / 2.0;
    return 4.0 * choose2 * std::ldexp(1.0, static_cast<int>(k - 1)) + 1.0;
}

BigCount count_slice(const OddModulus& n, std::int64_t k, std::int64_t m, double c, double d,
                     WorkBudget* budget) {
    if (k < 1 || k > n.half()) fail(errc::k_too_large, "k outside [1, (n-1)/2]");
    if (m < 0 || m >= n.value()) fail(errc::m_out_of_range, "m outside [0, n-1]");
    BigCount slice_size = count_tuples(n, k);
    if (m == 0) {
        // tau_0 = k exactly for every tuple
        double kd = static_cast<double>(k);
        return (kd >= c && kd <= d) ? slice_size : BigCount(0);
    }
    if (budget) budget->charge_estimate(to_double(slice_size), "count_slice");
    CosTable table(n);
    std::vector<double> rt(static_cast<std::size_t>(n.half() + 1));
    table.remap(m, rt.data(), rt.size());
    return big_from_u64(slice_count(rt.data(), n.half(), k, c, d));
}

SweepRecord prob_exact(const OddModulus& n, std::int64_t k, double c, double d, WorkBudget* budget,
                       int threads) {
    if (k < 1 || k > n.half()) fail(errc::k_too_large, "k outside [1, (n-1)/2]");
    std::int64_t half = n.half();
    if (budget) budget->charge_estimate(estimated_slice_work(n, k, half), "prob_exact");

    BigCount slice_size = count_tuples(n, k);
    CosTable table(n);
    // slices m and n-m have bit-identical counts (table symmetry)
    std::vector<std::uint64_t> per_m(static_cast<std::size_t>(half), 0);
    parallel_for(static_cast<std::uint64_t>(half), threads, [&](std::uint64_t i) {
        std::int64_t m = static_cast<std::int64_t>(i) + 1;
        std::vector<double> rt(static_cast<std::size_t>(half + 1));
        table.remap(m, rt.data(), rt.size());
        per_m[i] = slice_count(rt.data(), half, k, c, d);
    });
    BigCount in_count(0);
    for (std::uint64_t cm : per_m) in_count += big_from_u64(2 * cm);
    double kd = static_cast<double>(k);
    if (kd >= c && kd <= d) in_count += slice_size; // m = 0 slice

    SweepRecord rec;
    rec.n = n.value();
    rec.k = k;
    rec.r = 2 * k;
    rec.c = c;
    rec.d = d;
    rec.a = 2.0 * c;
    rec.b = 2.0 * d;
    rec.method = "exact";
    rec.exact_count = in_count;
    rec.total_count = BigCount(n.value()) * slice_size;
    rec.probability = to_double(in_count) / to_double(rec.total_count);
    return rec;
}

SweepRecord prob_fast(const OddModulus& n, std::int64_t k, double c, double d, WorkBudget* budget,
                      int threads) {
    if (k < 1 || k > n.half()) fail(errc::k_too_large, "k outside [1, (n-1)/2]");
    double kfact = 1.0;
    for (std::int64_t i = 2; i <= k; ++i) kfact *= static_cast<double>(i);

    double fast = 0.0;
    for (std::int64_t dd : divisors(n.value())) {
        double scale = std::pow(static_cast<double>(dd + 1) / 2.0, static_cast<double>(k));
        double omega_count;
        if (dd == n.value()) {
            // n1 = 1: the single lattice point 0 with cosine sum k (the m = 0 class)
            double kd = static_cast<double>(k);
            omega_count = (kd >= c && kd <= d) ? 1.0 : 0.0;
        } else {
            OddModulus n1(n.value() / dd);
            RegionSpec region{k, std::make_pair(c, d), false};
            omega_count = to_double(count_lattice(n1, region, budget, threads));
        }
        fast += static_cast<double>(totient(n.value() / dd)) * scale * omega_count / kfact;
    }

    SweepRecord rec;
    rec.n = n.value();
    rec.k = k;
    rec.r = 2 * k;
    rec.c = c;
    rec.d = d;
    rec.a = 2.0 * c;
    rec.b = 2.0 * d;
    rec.method = "fast";
    rec.fast_count = fast;
    rec.total_count = BigCount(n.value()) * count_tuples(n, k);
    rec.probability = fast / to_double(rec.total_count);
    rec.deviation_budget = doubleprime_constant(k) * static_cast<double>(divisor_count(n.value())) *
                           std::pow(static_cast<double>(n.value()), static_cast<double>(k));
    return rec;
}

DoublePrimeReport count_doubleprime(const OddModulus& n, std::int64_t k, WorkBudget* budget) {
    if (k < 1 || k > n.half()) fail(errc::k_too_large, "k outside [1, (n-1)/2]");
    std::vector<std::int64_t> divs = divisors(n.value());
    if (budget)
        budget->charge_estimate(
            static_cast<double>(divs.size()) * to_double(count_tuples(n, k)),
            "count_doubleprime");

    DoublePrimeReport rep;
    rep.n = n.value();
    rep.k = k;
    rep.ck = doubleprime_constant(k);
    rep.m0_count = count_tuples(n, k);
    rep.total = rep.m0_count;
    double nk = std::pow(static_cast<double>(n.value()), static_cast<double>(k));
    for (std::int64_t dd : divs) {
        if (dd == n.value()) continue; // the m = 0 slice, handled above
        std::int64_t n1 = n.value() / dd;
        std::uint64_t cnt = 0;
        for_each_tuple(n, k, [&](const std::int64_t* a) {
            for (std::int64_t i = 0; i + 1 < k; ++i)
                for (std::int64_t j = i + 1; j < k; ++j) {
                    if ((a[j] - a[i]) % n1 == 0 || (a[i] + a[j]) % n1 == 0) {
                        ++cnt;
                        return;
                    }
                }
        });
        DoublePrimeClass cls;
        cls.d = dd;
        cls.n1 = n1;
        cls.slices = totient(n1);
        cls.per_slice = big_from_u64(cnt);
        cls.per_slice_bound = rep.ck * nk / static_cast<double>(n1);
        if (!(static_cast<double>(cnt) < cls.per_slice_bound)) rep.per_slice_ok = false;
        rep.tight_per_slice_c = std::max(
            rep.tight_per_slice_c, static_cast<double>(cnt) * static_cast<double>(n1) / nk);
        rep.total += big_from_u64(cnt) * BigCount(static_cast<long>(cls.slices));
        rep.classes.push_back(std::move(cls));
    }
    rep.global_bound = rep.ck * static_cast<double>(divisor_count(n.value())) * nk;
    rep.global_ok = to_double(rep.total) < rep.global_bound;
    rep.tight_global_c =
        to_double(rep.total) / (static_cast<double>(divisor_count(n.value())) * nk);
    return rep;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            out.push_back(i);
            if (i != n / i) out.push_back(n / i);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t divisor_count(std::int64_t n) {
    return static_cast<std::int64_t>(divisors(n).size());
}

std::int64_t omega(std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ++count;
            while (n % p == 0) n /= p;
        }
    }
    return count + (n > 1 ? 1 : 0);
}

std::int64_t totient(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

BigCount pillai(std::int64_t n) {
    if (n < 1) fail(errc::out_of_range, "pillai requires n >= 1");
    BigCount g(0);
    for (std::int64_t dv : divisors(n))
        g += BigCount(static_cast<long>(totient(dv))) * BigCount(static_cast<long>(n / dv));
    return g;
}

bool broughan_check(std::int64_t n) {
    if (n < 2) return true;
    double w = static_cast<double>(omega(n));
    double bound = 27.0 * static_cast<double>(n) *
                   std::pow(std::log(static_cast<double>(n)) / w, w);
    return to_double(pillai(n)) <= bound;
}

namespace {

/// #S'(N, k, M) (optionally restricted to tau in [c, d]) by enumeration.
/// Returns 0 when A_k(N) is empty (k > (N-1)/2).
BigCount primed_count(std::int64_t nval, std::int64_t k, std::int64_t m,
                      std::optional<std::pair<double, double>> interval, WorkBudget* budget) {
    OddModulus n(nval);
    if (k > n.half()) return BigCount(0);
    if (m == 0) return BigCount(0); // S'(n, k, 0) is empty by convention
    if (budget) budget->charge_estimate(to_double(count_tuples(n, k)), "audit_identity");
    SliceId s = slice_params(n, m);
    CosTable table(n);
    std::vector<double> rt(static_cast<std::size_t>(n.half() + 1));
    table.remap(m, rt.data(), rt.size());
    std::uint64_t cnt = 0;
    for_each_tuple(n, k, [&](const std::int64_t* a) {
        for (std::int64_t i = 0; i + 1 < k; ++i)
            for (std::int64_t j = i + 1; j < k; ++j)
                if ((a[j] - a[i]) % s.n1 == 0 || (a[i] + a[j]) % s.n1 == 0) return;
        if (interval) {
            kernels::KahanPrefix acc;
            for (std::int64_t i = 0; i < k; ++i) acc.push(rt[a[i]]);
            if (!(acc.sum >= interval->first && acc.sum <= interval->second)) return;
        }
        ++cnt;
    });
    return big_from_u64(cnt);
}

BigCount strict_lattice_count(std::int64_t n1, std::int64_t k,
                              std::optional<std::pair<double, double>> interval,
                              WorkBudget* budget) {
    OddModulus n(n1);
    if (interval) return count_lattice_strict(n, k, interval->first, interval->second, budget);
    // closed form: C((n1+1)/2, k) strictly increasing tuples from (n1+1)/2 values
    return binomial(static_cast<std::uint64_t>(n.half() + 1), static_cast<std::uint64_t>(k));
}

} // namespace

DefectReport audit_identity(IdentityTag tag, const OddModulus& n, std::int64_t k, std::int64_t m,
                         std::optional<std::pair<double, double>> interval, WorkBudget* budget) {
    if (m < 1 || m >= n.value()) fail(errc::m_out_of_range, "audits require 1 <= m <= n-1");
    if (k < 1 || k > n.half()) fail(errc::k_too_large, "k outside [1, (n-1)/2]");
    SliceId s = slice_params(n, m);

    BigCount kfact(1);
    for (std::int64_t i = 2; i <= k; ++i) kfact *= BigCount(static_cast<long>(i));
    BigCount lift_scale(1); // ((d+1)/2)^k
    for (std::int64_t i = 0; i < k; ++i) lift_scale *= BigCount(static_cast<long>((s.d + 1) / 2));

    DefectReport rep;
    rep.tag = tag;
    rep.n = n.value();
    rep.k = k;
    rep.m = m;
    rep.d = s.d;
    rep.n1 = s.n1;
    rep.m1 = s.m1;
    rep.interval = interval;

    switch (tag) {
    case IdentityTag::slice_lift:
        rep.measured = primed_count(n.value(), k, m, interval, budget);
        rep.claimed = lift_scale * primed_count(s.n1, k, s.m1, interval, budget);
        break;
    case IdentityTag::point_fibration:
        rep.measured = kfact * strict_lattice_count(s.n1, k, interval, budget);
        rep.claimed = kfact * primed_count(s.n1, k, s.m1, interval, budget);
        break;
    case IdentityTag::slice_point_count:
        rep.measured = primed_count(n.value(), k, m, interval, budget);
        rep.claimed = lift_scale * strict_lattice_count(s.n1, k, interval, budget);
        break;
    }
    BigCount diff = rep.measured >= rep.claimed ? rep.measured - rep.claimed
                                                : rep.claimed - rep.measured;
    rep.defect = to_double(diff);
    rep.normalized = rep.defect / (static_cast<double>(s.d) *
                                   std::pow(static_cast<double>(n.value()),
                                            static_cast<double>(k - 1)));
    return rep;
}

ConvergenceResult convergence_experiment(std::int64_t k, double c, double d,
                                         const std::vector<std::int64_t>& n_grid, double tolerance,
                                         WorkBudget* budget, int threads) {
    MassEstimate ref = conv_mass(static_cast<int>(k), c, d, tolerance, budget, threads);
    ConvergenceResult result;
    result.records.reserve(n_grid.size());
    for (std::int64_t nv : n_grid) {
        OddModulus n(nv);
        SweepRecord rec;
        try {
            rec = prob_exact(n, k, c, d, budget, threads);
        } catch (const Error& e) {
            if (e.code() == errc::budget_exceeded)
                fail(errc::budget_exceeded, "n = " + std::to_string(nv) + ": " + e.what());
            throw;
        }
        rec.reference_mass = ref.value;
        rec.abs_error = std::abs(rec.probability - ref.value);
        rec.tolerance = tolerance;
        result.records.push_back(std::move(rec));
    }
    // least-squares slope of log(err) vs log(n), ignoring exact hits
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t pts = 0;
    for (const SweepRecord& rec : result.records) {
        if (rec.abs_error < 1e-12) continue; // noise floor
        double x = std::log(static_cast<double>(rec.n));
        double y = std::log(rec.abs_error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++pts;
    }
    result.fitted_points = pts;
    if (pts == 0) {
        result.all_zero = true;
        result.slope = std::numeric_limits<double>::quiet_NaN();
    } else if (pts == 1) {
        result.slope = std::numeric_limits<double>::quiet_NaN();
    } else {
        double denom = static_cast<double>(pts) * sxx - sx * sx;
        result.slope = (static_cast<double>(pts) * sxy - sx * sy) / denom;
    }
    return result;
}

EigenHistogram eigen_histogram(const OddModulus& n, std::int64_t k, bool includes_zero,
                               std::int64_t bins, double tolerance, WorkBudget* budget,
                               int threads) {
    if (bins < 1) fail(errc::invalid_argument, "bins must be >= 1");
    if (k < 1 || k > n.half()) fail(errc::k_too_large, "k outside [1, (n-1)/2]");
    std::int64_t half = n.half();
    if (budget) budget->charge_estimate(estimated_slice_work(n, k, half + 1), "eigen_histogram");

    std::int64_t r = 2 * k + (includes_zero ? 1 : 0);
    double rd = static_cast<double>(r);
    // lambda = 2 tau + [r odd]: bin on the tau scale with mapped edges
    double tau_lo = (-rd - (includes_zero ? 1.0 : 0.0)) / 2.0;
    double tau_hi = (rd - (includes_zero ? 1.0 : 0.0)) / 2.0;

    EigenHistogram h;
    h.n = n.value();
    h.k = k;
    h.r = r;
    h.bins = bins;
    h.edges.resize(static_cast<std::size_t>(bins + 1));
    for (std::int64_t i = 0; i <= bins; ++i)
        h.edges[static_cast<std::size_t>(i)] =
            -rd + 2.0 * rd * static_cast<double>(i) / static_cast<double>(bins);
    h.counts.assign(static_cast<std::size_t>(bins), 0);

    CosTable table(n);
    std::vector<std::vector<std::uint64_t>> partial(
        static_cast<std::size_t>(half + 1),
        std::vector<std::uint64_t>(static_cast<std::size_t>(bins), 0));
    parallel_for(static_cast<std::uint64_t>(half + 1), threads, [&](std::uint64_t mi) {
        std::vector<std::uint64_t>& bucket = partial[mi];
        std::int64_t m = static_cast<std::int64_t>(mi);
        std::uint64_t weight = m == 0 ? 1 : 2; // m and n-m coincide
        std::vector<double> rt(static_cast<std::size_t>(half + 1));
        table.remap(m, rt.data(), rt.size());
        struct Rec {
            const double* rt;
            std::int64_t half, k;
            double lo, hi;
            std::int64_t bins;
            std::uint64_t weight;
            std::uint64_t* bucket;
            void go(std::int64_t pos, std::int64_t from, kernels::KahanPrefix acc) {
                if (pos == k - 1) {
                    kernels::bin_accumulate(rt, static_cast<std::size_t>(from),
                                            static_cast<std::size_t>(half), acc, lo, hi,
                                            static_cast<std::size_t>(bins), weight, bucket);
                    return;
                }
                for (std::int64_t a = from; a <= half - (k - 1 - pos); ++a) {
                    kernels::KahanPrefix next = acc;
                    next.push(rt[a]);
                    go(pos + 1, a + 1, next);
                }
            }
        } rec{rt.data(), half, k, tau_lo, tau_hi, bins, weight, bucket.data()};
        rec.go(0, 1, kernels::KahanPrefix{});
    });
    for (const auto& bucket : partial)
        for (std::int64_t i = 0; i < bins; ++i)
            h.counts[static_cast<std::size_t>(i)] += bucket[static_cast<std::size_t>(i)];

    h.total = BigCount(n.value()) * count_tuples(n, k);
    h.predicted.resize(static_cast<std::size_t>(bins));
    for (std::int64_t i = 0; i < bins; ++i) {
        IntervalPair p = interval_map(h.edges[static_cast<std::size_t>(i)],
                                      h.edges[static_cast<std::size_t>(i + 1)], r);
        h.predicted[static_cast<std::size_t>(i)] =
            conv_mass(static_cast<int>(k), p.c, p.d, tolerance, budget, threads).value;
    }
    return h;
}

} // namespace cayley
