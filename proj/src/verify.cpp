#include "cayley/verify.hpp"

#include <cmath>
#include <sstream>

#include "cayley/density.hpp"
#include "cayley/ihara.hpp"
#include "cayley/lattice.hpp"
#include "cayley/records.hpp"
#include "cayley/rng.hpp"
#include "cayley/spectra.hpp"
#include "cayley/stats.hpp"

namespace cayley {

namespace {

struct Suite {
    std::vector<CheckResult> results;
    WorkBudget& budget;
    int threads;

    void check(const std::string& name, const std::string& params, bool pass,
               const std::string& detail = "") {
        results.push_back(CheckResult{name, params, pass, detail});
    }
};

std::string fmt_nkm(std::int64_t n, std::int64_t k, std::int64_t m = -1) {
    std::ostringstream os;
    os << "n=" << n << " k=" << k;
    if (m >= 0) os << " m=" << m;
    return os.str();
}

void run_core(Suite& s) {
    for (std::int64_t nv : {5, 9, 15, 21, 31, 45}) {
        OddModulus n(nv);
        for (std::int64_t k = 1; k <= std::min<std::int64_t>(3, n.half()); ++k) {
            std::uint64_t seen = 0;
            std::vector<std::int64_t> prev;
            bool ordered = true;
            for_each_tuple(n, k, [&](const std::int64_t* a) {
                std::vector<std::int64_t> cur(a, a + k);
                if (!prev.empty() && !(prev < cur)) ordered = false;
                prev = cur;
                ++seen;
            });
            bool count_ok = big_from_u64(seen) == count_tuples(n, k);
            s.check("core.enumerate_count", fmt_nkm(nv, k), count_ok && ordered,
                    "streamed " + std::to_string(seen));
        }
    }
    s.check("core.count_anchor", "n=2001 k=3", count_tuples(OddModulus(2001), 3) == 166167000);

    bool kappa_ok = kappa(0.3) == 0.3 && std::abs(kappa(0.7) - 0.3) < 1e-15 && kappa(2.25) == 0.25;
    for (int i = 0; i < 2000 && kappa_ok; ++i) {
        double x = (counter_uniform(11, static_cast<std::uint64_t>(i)) - 0.5) * 40.0;
        double kx = kappa(x);
        kappa_ok = kx >= 0.0 && kx <= 0.5 &&
                   std::abs(std::cos(2 * M_PI * x) - std::cos(2 * M_PI * kx)) < 1e-12 &&
                   kappa(kx) == kx && std::abs(kappa(-x) - kx) < 1e-15;
    }
    s.check("core.kappa", "2000 samples", kappa_ok);

    SliceId sl = slice_params(OddModulus(9), 3);
    s.check("core.slice_params", "n=9 m=3", sl.d == 3 && sl.n1 == 3 && sl.m1 == 1);
    sl = slice_params(OddModulus(9), 0);
    s.check("core.slice_params", "n=9 m=0", sl.d == 9 && sl.n1 == 1 && sl.m1 == 0);

    // classification is a function of n1 only, hence invariant under m -> n-m
    bool sym_ok = true;
    for (std::int64_t nv : {9, 15, 21, 45}) {
        OddModulus n(nv);
        for (std::int64_t k = 1; k <= std::min<std::int64_t>(2, n.half()); ++k)
            for (std::int64_t m = 1; m < nv; ++m) {
                SliceId a = slice_params(n, m);
                SliceId b = slice_params(n, nv - m);
                for_each_tuple(n, k, [&](const std::int64_t* t) {
                    GeneratorTuple g{n, std::vector<std::int64_t>(t, t + k)};
                    if (classify_tuple(g, a) != classify_tuple(g, b)) sym_ok = false;
                });
            }
    }
    s.check("core.classify_m_reflection", "n<=45 k<=2", sym_ok);

    // Primed tuples give pairwise distinct folded coordinates, any permutation
    bool distinct_ok = true;
    for (std::int64_t nv : {15, 45}) {
        OddModulus n(nv);
        for (std::int64_t m = 1; m < nv; ++m) {
            SliceId sm = slice_params(n, m);
            for_each_tuple(n, 2, [&](const std::int64_t* t) {
                GeneratorTuple g{n, {t[0], t[1]}};
                if (classify_tuple(g, sm) != SliceClass::Primed) return;
                for (const std::vector<std::size_t>& perm :
                     {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
                    LatticePoint p = lattice_point(g, perm, sm);
                    if (p.num[0] == p.num[1]) distinct_ok = false;
                }
            });
        }
    }
    s.check("core.primed_distinct_coords", "n in {15,45} k=2", distinct_ok);
}

void run_spectra(Suite& s) {
    // oracle equivalence and trace identities over a mixed grid
    double worst_oracle = 0.0, worst_trace = 0.0;
    int specs = 0;
    for (std::int64_t nv : {5, 9, 15, 25, 45, 63, 99}) {
        OddModulus n(nv);
        for (std::int64_t k = 1; k <= std::min<std::int64_t>(3, n.half()); ++k) {
            std::vector<std::int64_t> gens;
            std::int64_t stride = std::max<std::int64_t>(1, (n.half() - 1) / std::max<std::int64_t>(1, k));
            for (std::int64_t i = 0; i < k; ++i) gens.push_back(1 + i * stride);
            for (bool zero : {false, true}) {
                CayleySpec spec{make_tuple(nv, gens), zero};
                SpectrumMultiset sp = spectrum(spec);
                std::vector<double> a = sorted_values(sp);
                std::vector<double> b = spectrum_via_matrix(spec);
                for (std::size_t i = 0; i < a.size(); ++i)
                    worst_oracle = std::max(worst_oracle,
                                            std::abs(a[i] - b[i]) / static_cast<double>(spec.r()));
                double s1 = 0, s2 = 0;
                for (double lam : sp.values) {
                    s1 += lam;
                    s2 += lam * lam;
                }
                double nr = static_cast<double>(nv) * static_cast<double>(spec.r());
                worst_trace = std::max(worst_trace,
                                       std::abs(s1 - (zero ? static_cast<double>(nv) : 0.0)) /
                                           static_cast<double>(nv));
                worst_trace = std::max(worst_trace, std::abs(s2 - nr) / static_cast<double>(nv));
                ++specs;
            }
        }
    }
    s.check("spectra.oracle_equivalence", std::to_string(specs) + " specs", worst_oracle <= 1e-8,
            "max |char - jacobi|/r = " + fmt_double(worst_oracle));
    s.check("spectra.trace_identities", std::to_string(specs) + " specs", worst_trace <= 1e-10,
            "max defect/n = " + fmt_double(worst_trace));

    // lambda(n-m) == lambda(m) exactly (table symmetry)
    bool mirror_ok = true;
    {
        CayleySpec spec{make_tuple(45, {2, 7, 9}), false};
        SpectrumMultiset sp = spectrum(spec);
        for (std::int64_t m = 1; m < 45; ++m)
            if (sp.values[static_cast<std::size_t>(m)] !=
                sp.values[static_cast<std::size_t>(45 - m)])
                mirror_ok = false;
    }
    s.check("spectra.mirror_exact", "n=45 k=3", mirror_ok);

    // interval equivalence: lambda in J iff tau in I
    bool equiv_ok = true;
    {
        CayleySpec spec{make_tuple(31, {2, 5}), true};
        CosTable table(spec.tuple.n);
        for (int trial = 0; trial < 500; ++trial) {
            double a = (counter_uniform(5, 2 * static_cast<std::uint64_t>(trial)) - 0.5) * 10.0;
            double b = a + counter_uniform(5, 2 * static_cast<std::uint64_t>(trial) + 1) * 5.0;
            a = std::max(a, -5.0);
            b = std::min(b, 5.0);
            if (a > b) continue;
            IntervalPair p = interval_map(a, b, spec.r());
            for (std::int64_t m = 0; m < 31; ++m) {
                double lam = eigenvalue(spec, m);
                double tm = tau(spec.tuple, m, table);
                bool in_j = lam >= a && lam <= b;
                bool in_i = tm >= p.c && tm <= p.d;
                if (in_j != in_i) equiv_ok = false;
            }
        }
    }
    s.check("spectra.interval_equivalence", "n=31 r=5, 500 intervals", equiv_ok);
}

void run_density(Suite& s) {
    for (int k = 1; k <= 4; ++k) {
        MassEstimate full = conv_mass(k, -k, k, 1e-9, &s.budget, s.threads);
        s.check("density.normalization", "k=" + std::to_string(k),
                std::abs(full.value - 1.0) <= 1e-9, fmt_double(full.value));
    }
    {
        MassEstimate m = conv_mass(1, 0.0, 0.5, 1e-10);
        s.check("density.k1_closed_form", "[0,1/2]", std::abs(m.value - 1.0 / 6.0) < 1e-12);
        MassEstimate h = conv_mass(2, -2.0, 0.0, 1e-9, &s.budget, s.threads);
        s.check("density.k2_half", "[-2,0]", std::abs(h.value - 0.5) <= 1e-9, fmt_double(h.value));
    }
    // symmetry + additivity at k = 2, 3
    for (int k = 2; k <= 3; ++k) {
        double tol = 1e-8;
        double worst_sym = 0.0, worst_add = 0.0;
        for (int i = 0; i < 6; ++i) {
            double c = -k + 2.0 * k * counter_uniform(21, static_cast<std::uint64_t>(2 * i));
            double d = c + (k - c) * counter_uniform(21, static_cast<std::uint64_t>(2 * i + 1));
            double m1 = conv_mass(k, c, d, tol, &s.budget, s.threads).value;
            double m2 = conv_mass(k, -d, -c, tol, &s.budget, s.threads).value;
            worst_sym = std::max(worst_sym, std::abs(m1 - m2));
            double mid = 0.5 * (c + d);
            double a1 = conv_mass(k, c, mid, tol, &s.budget, s.threads).value;
            double a2 = conv_mass(k, mid, d, tol, &s.budget, s.threads).value;
            worst_add = std::max(worst_add, std::abs(a1 + a2 - m1));
        }
        s.check("density.symmetry", "k=" + std::to_string(k), worst_sym <= 2 * tol,
                fmt_double(worst_sym));
        s.check("density.additivity", "k=" + std::to_string(k), worst_add <= 2 * tol,
                fmt_double(worst_add));
    }
    // Monte Carlo against quadrature, moderate sample size
    {
        std::uint64_t samples = 1000000;
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            double c = -2.0 + i * 0.7;
            double d = c + 1.2;
            MassEstimate q = conv_mass(2, c, d, 1e-9, &s.budget, s.threads);
            MassEstimate mc = conv_mass_mc(2, c, d, samples, 42, s.threads);
            if (std::abs(q.value - mc.value) > 3.0 * std::max(mc.error, 1e-9)) ok = false;
        }
        s.check("density.mc_oracle", "k=2, 5 intervals, 1e6 samples", ok);
        MassEstimate a = conv_mass_mc(2, -1.0, 0.5, 100000, 7, 1);
        MassEstimate b = conv_mass_mc(2, -1.0, 0.5, 100000, 7, 8);
        s.check("density.mc_deterministic", "seed=7", a.value == b.value && a.error == b.error);
    }
    {
        MassEstimate v = box_volume(1, -1.0, 1.0, 1e-10);
        s.check("density.box_volume", "k=1 full", std::abs(v.value - 0.5) < 1e-12);
    }
}

void run_lattice(Suite& s) {
    {
        OddModulus n(5);
        BigCount c0 = count_lattice(n, RegionSpec{1, std::nullopt, false});
        BigCount c1 = count_lattice(n, RegionSpec{1, std::make_pair(0.0, 1.0), false}, &s.budget);
        s.check("lattice.count_anchors", "n=5 k=1", c0 == 3 && c1 == 2);
    }
    {
        OddModulus n(9);
        BigCount c = count_lattice(n, RegionSpec{2, std::nullopt, true});
        s.check("lattice.distinct_closed_form", "n=9 k=2", c == 20);
    }
    bool closed_ok = true, mono_ok = true, defect_ok = true;
    for (std::int64_t nv : {9, 21, 45}) {
        OddModulus n(nv);
        for (std::int64_t k = 1; k <= 3; ++k) {
            double kd = static_cast<double>(k);
            BigCount full =
                count_lattice(n, RegionSpec{k, std::make_pair(-kd, kd), false}, &s.budget);
            if (full != count_lattice(n, RegionSpec{k, std::nullopt, false})) closed_ok = false;
            BigCount inner =
                count_lattice(n, RegionSpec{k, std::make_pair(-kd / 2, kd / 2), false}, &s.budget);
            if (inner > full) mono_ok = false;
            BigCount plain = count_lattice(n, RegionSpec{k, std::nullopt, false});
            BigCount dist = count_lattice(n, RegionSpec{k, std::nullopt, true});
            double bound = (static_cast<double>(k * (k - 1)) / 2.0) *
                           std::pow(static_cast<double>(n.half() + 1), static_cast<double>(k - 1));
            BigCount gap = plain - dist;
            if (gap < 0 || to_double(gap) > bound) defect_ok = false;
        }
    }
    s.check("lattice.full_interval_closed_form", "n<=45 k<=3", closed_ok);
    s.check("lattice.interval_monotonicity", "n<=45 k<=3", mono_ok);
    s.check("lattice.distinct_defect_bound", "n<=45 k<=3", defect_ok);

    ShiftReport r1 = shift_check(OddModulus(15), 1, 0.0, 1.0, &s.budget);
    ShiftReport r2 = shift_check(OddModulus(9), 2, -1.0, 1.0, &s.budget);
    s.check("lattice.shift_check", "n=15 k=1 I=[0,1]; n=9 k=2 I=[-1,1]", r1.pass && r2.pass,
            "checked " + std::to_string(r1.checked) + "+" + std::to_string(r2.checked));

    double gap5 = volume_count_gap(OddModulus(5), 1, 0.0, 1.0, 1e-9, &s.budget, s.threads);
    s.check("lattice.gap_anchor", "n=5 k=1 I=[0,1]", std::abs(gap5 - 0.15) < 1e-9,
            fmt_double(gap5));

    double worst = 0.0;
    for (std::int64_t nv : {101, 201, 401, 801, 1001}) {
        double g = volume_count_gap(OddModulus(nv), 1, 0.0, 1.0, 1e-9, &s.budget, s.threads);
        worst = std::max(worst, static_cast<double>(nv) * g);
    }
    s.check("lattice.rate_bounded", "k=1 I=[0,1] n in [101,1001]", worst <= 2.0,
            "max n*gap = " + fmt_double(worst));
}

void run_stats(Suite& s) {
    {
        OddModulus n5(5);
        bool anchors = count_slice(n5, 1, 0, 0.0, 1.0, &s.budget) == 2 &&
                       count_slice(n5, 1, 1, 0.0, 1.0, &s.budget) == 1 &&
                       count_slice(OddModulus(9), 1, 3, 0.0, 1.0, &s.budget) == 1;
        s.check("stats.count_slice_anchors", "n=5,9", anchors);

        SweepRecord p5 = prob_exact(n5, 1, 0.0, 1.0, &s.budget, s.threads);
        SweepRecord p9 = prob_exact(OddModulus(9), 1, 0.0, 1.0, &s.budget, s.threads);
        SweepRecord pf = prob_exact(n5, 1, -1.0, 1.0, &s.budget, s.threads);
        s.check("stats.prob_anchors", "n=5: 0.6, n=9: 0.5, full: 1",
                p5.probability == 0.6 && p9.probability == 0.5 && pf.probability == 1.0);
    }
    // S' + S'' = C((n-1)/2, k) on every slice
    bool split_ok = true;
    for (std::int64_t nv : {9, 15, 45}) {
        OddModulus n(nv);
        for (std::int64_t k = 1; k <= 2; ++k) {
            DoublePrimeReport rep = count_doubleprime(n, k, &s.budget);
            BigCount size = count_tuples(n, k);
            for (const DoublePrimeClass& cls : rep.classes)
                if (cls.per_slice > size) split_ok = false;
            if (rep.m0_count != size) split_ok = false;
        }
    }
    s.check("stats.slice_split", "n<=45 k<=2", split_ok);

    {
        DoublePrimeReport rep = count_doubleprime(OddModulus(9), 2, &s.budget);
        BigCount m3;
        BigCount m1;
        for (const DoublePrimeClass& cls : rep.classes) {
            if (cls.d == 3) m3 = cls.per_slice;
            if (cls.d == 1) m1 = cls.per_slice;
        }
        s.check("stats.doubleprime_anchors", "n=9 k=2",
                m3 == 3 && m1 == 0 && rep.m0_count == 6 && rep.per_slice_ok && rep.global_ok);
    }
    bool bounds_ok = true;
    double worst_c = 0.0;
    for (std::int64_t nv = 9; nv <= 99; nv += 2) {
        OddModulus n(nv);
        for (std::int64_t k = 2; k <= std::min<std::int64_t>(3, n.half()); ++k) {
            DoublePrimeReport rep = count_doubleprime(n, k, &s.budget);
            bounds_ok = bounds_ok && rep.per_slice_ok && rep.global_ok;
            worst_c = std::max(worst_c, rep.tight_per_slice_c);
        }
    }
    s.check("stats.doubleprime_bounds", "odd n<=99, k in {2,3}", bounds_ok,
            "tightest per-slice C = " + fmt_double(worst_c));

    s.check("stats.pillai_anchors", "g(1), g(9), g(15)",
            pillai(1) == 1 && pillai(9) == 21 && pillai(15) == 45);
    bool br = true;
    for (std::int64_t nv = 2; nv <= 20000; ++nv) br = br && broughan_check(nv);
    s.check("stats.broughan", "2 <= n <= 20000", br);

    {
        DefectReport a = audit_identity(IdentityTag::slice_lift, OddModulus(15), 1, 3, std::nullopt,
                                     &s.budget);
        DefectReport b = audit_identity(IdentityTag::slice_lift, OddModulus(9), 2, 3, std::nullopt,
                                     &s.budget);
        s.check("stats.audit_counterexamples", "slice_lift (15,1,3), (9,2,3)",
                a.measured == 7 && a.claimed == 4 && a.defect == 3.0 && b.measured == 3 &&
                    b.claimed == 0,
                "defect table rows: (n=15,k=1,m=3, defect " + fmt_double(a.defect) +
                    "), (n=9,k=2,m=3, defect " + fmt_double(b.defect) + ")");
        DefectReport c = audit_identity(IdentityTag::point_fibration, OddModulus(15), 1, 3, std::nullopt,
                                     &s.budget);
        s.check("stats.audit_point_fibration", "n=15 k=1 m=3", c.defect == 1.0,
                "the b = 0 lattice point");
    }
    {
        ConvergenceResult cr = convergence_experiment(1, -1.0, 1.0, {5, 9, 15}, 1e-8, &s.budget,
                                                      s.threads);
        s.check("stats.convergence_all_zero", "k=1 I=[-1,1]", cr.all_zero);
        ConvergenceResult c2 =
            convergence_experiment(1, 0.0, 1.0, {5, 21, 101}, 1e-8, &s.budget, s.threads);
        s.check("stats.convergence_smoke", "k=1 I=[0,1]",
                std::abs(c2.records[0].abs_error - 0.1) < 1e-12 &&
                    c2.records[2].abs_error < c2.records[0].abs_error);
    }
    {
        EigenHistogram h = eigen_histogram(OddModulus(5), 1, false, 4, 1e-8, &s.budget, s.threads);
        bool anchor = h.counts == std::vector<std::uint64_t>{4, 0, 4, 2};
        std::uint64_t sum = 0;
        for (std::uint64_t c : h.counts) sum += c;
        s.check("stats.histogram_anchor", "n=5 k=1 bins=4",
                anchor && big_from_u64(sum) == h.total);
    }
}

void run_ihara(Suite& s) {
    {
        CayleySpec c5{make_tuple(5, {1}), false};
        IharaPolynomial h = ihara_polynomial(c5, &s.budget);
        bool ok = h.rank == 1 && h.coeffs.size() == 11;
        // (1 - u^5)^2 = 1 - 2u^5 + u^10
        for (std::size_t i = 0; i < h.coeffs.size() && ok; ++i) {
            double expect = i == 0 ? 1.0 : (i == 5 ? -2.0 : (i == 10 ? 1.0 : 0.0));
            ok = std::abs(h.coeffs[i] - expect) <= 1e-9;
        }
        s.check("ihara.cycle_closed_form", "n=5 r=2", ok);
        std::vector<double> z = zeta_inverse(c5, &s.budget);
        s.check("ihara.zeta_cycle", "n=5 r=2",
                z.size() == 11 && std::abs(z[5] + 2.0) <= 1e-9);
    }
    {
        CayleySpec spec{make_tuple(15, {2, 6}), true};
        IharaPolynomial h = ihara_polynomial(spec, &s.budget);
        SpectrumMultiset sp = spectrum(spec);
        double scale = 0.0;
        for (double cv : h.coeffs) scale = std::max(scale, std::abs(cv));
        bool ok = std::abs(eval_poly(h.coeffs, 1.0)) <= 1e-8 * scale;
        for (double u0 : {-0.7, -0.3, 0.3, 0.7}) {
            double direct = 1.0;
            for (double lam : sp.values)
                direct *= 1.0 - lam * u0 + static_cast<double>(spec.r() - 1) * u0 * u0;
            double expanded = eval_poly(h.coeffs, u0);
            if (std::abs(expanded - direct) > 1e-8 * std::max(1.0, std::abs(direct))) ok = false;
        }
        std::int64_t expect_deg = 2 * (h.rank - 1) + 2 * spec.n();
        std::vector<double> z = zeta_inverse(spec, &s.budget);
        ok = ok && static_cast<std::int64_t>(z.size()) == expect_deg + 1;
        s.check("ihara.product_and_degree", "n=15 r=5", ok);
    }
    {
        bool ok = true;
        for (double alpha : {-3.0, -1.0, 0.0, 0.5, 2.0, 3.5})
            for (std::int64_t r : {2, 3, 4, 5}) {
                PolePair p = pole_pair(alpha, r);
                std::complex<double> prod = p.plus * p.minus;
                std::complex<double> sum = p.plus + p.minus;
                double q = static_cast<double>(r - 1);
                if (std::abs(prod - std::complex<double>(1.0 / q, 0.0)) > 1e-12) ok = false;
                if (std::abs(sum - std::complex<double>(alpha / q, 0.0)) > 1e-12) ok = false;
                if (alpha * alpha <= 4.0 * q &&
                    std::abs(std::abs(p.plus) - 1.0 / std::sqrt(q)) > 1e-12)
                    ok = false;
            }
        s.check("ihara.pole_identities", "alpha grid x r in [2,5]", ok);
    }
    {
        RamanujanReport r2 = ramanujan_fraction(OddModulus(45), 1, false, 1e-8, &s.budget,
                                                s.threads);
        s.check("ihara.ramanujan_r2", "n=45 k=1", r2.empirical == 1.0,
                "all cosine eigenvalues lie in [-2, 2]");
        RamanujanReport r4 = ramanujan_fraction(OddModulus(101), 2, false, 1e-8, &s.budget,
                                                s.threads);
        s.check("ihara.ramanujan_r4", "n=101 k=2",
                std::abs(r4.empirical - r4.predicted) <= 0.05,
                "empirical " + fmt_double(r4.empirical) + " vs " + fmt_double(r4.predicted));
    }
}

} // namespace

std::vector<CheckResult> verify_suite(const std::string& suite, WorkBudget& budget, int threads) {
    Suite s{{}, budget, threads};
    bool all = suite == "all";
    if (all || suite == "core") run_core(s);
    if (all || suite == "spectra") run_spectra(s);
    if (all || suite == "density") run_density(s);
    if (all || suite == "lattice") run_lattice(s);
    if (all || suite == "stats") run_stats(s);
    if (all || suite == "ihara") run_ihara(s);
    if (s.results.empty())
        fail(errc::invalid_argument,
             "unknown suite '" + suite + "' (core|spectra|density|lattice|stats|ihara|all)");
    return s.results;
}

} // namespace cayley
