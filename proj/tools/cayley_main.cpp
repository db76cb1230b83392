#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cayley/cache.hpp"
#include "cayley/density.hpp"
#include "cayley/ihara.hpp"
#include "cayley/records.hpp"
#include "cayley/spectra.hpp"
#include "cayley/stats.hpp"
#include "cayley/verify.hpp"

namespace {

using namespace cayley;

constexpr int kExitVerifyFail = 1;
constexpr int kExitValidation = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitBudget = 4;

struct GlobalOpts {
    int threads = 0;
    std::uint64_t budget = WorkBudget::kDefaultLimit;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string cache_dir;
    std::string out_path;
};

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(g.out_path, std::ios::trunc | std::ios::binary);
    if (!out) fail(errc::invalid_argument, "cannot open output file " + g.out_path);
    out << text;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\n') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string join_fields(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    return out;
}

int run_spectrum(const GlobalOpts& g, std::int64_t n, const std::vector<std::int64_t>& gens,
                 bool odd) {
    CayleySpec spec{make_tuple(n, gens), odd};
    SpectrumMultiset sp = spectrum(spec);
    Table t;
    t.columns = {"m", "lambda"};
    t.numeric = {true, true};
    t.headerless = true;
    for (std::int64_t m = 0; m < sp.n; ++m)
        t.add_row({std::to_string(m), fmt_double(sp.values[static_cast<std::size_t>(m)])});
    emit(g, render(t, parse_format(g.format)));
    return 0;
}

int run_density(const GlobalOpts& g, int k, double c, double d, const std::string& method,
                std::uint64_t samples) {
    WorkBudget budget(g.budget);
    MassEstimate m;
    std::string method_name;
    if (method == "mc") {
        m = conv_mass_mc(k, c, d, samples, g.seed, g.threads);
        method_name = "mc";
    } else if (method == "quad") {
        m = conv_mass(k, c, d, g.tolerance, &budget, g.threads);
        method_name = "quadrature";
    } else {
        fail(errc::invalid_argument, "unknown method '" + method + "' (quad|mc)");
    }
    Table t;
    t.columns = {"k", "c", "d", "value", "error", "method", "tolerance", "samples", "seed"};
    t.numeric = {true, true, true, true, true, false, true, true, true};
    t.add_row({std::to_string(k), fmt_double(c), fmt_double(d), fmt_double(m.value),
               fmt_double(m.error), method_name, fmt_double(g.tolerance),
               std::to_string(samples), std::to_string(g.seed)});
    emit(g, render(t, parse_format(g.format)));
    return 0;
}

/// Fill the J-interval presentation fields and the reference mass.
void attach_reference(SweepRecord& rec, std::int64_t r, double a, double b, const IntervalPair& p,
                      double tolerance, std::uint64_t seed, WorkBudget& budget, int threads) {
    rec.r = r;
    rec.a = a;
    rec.b = b;
    rec.c = p.c;
    rec.d = p.d;
    rec.tolerance = tolerance;
    rec.seed = seed;
    rec.reference_mass =
        conv_mass(static_cast<int>(rec.k), p.c, p.d, tolerance, &budget, threads).value;
    rec.abs_error = std::abs(rec.probability - rec.reference_mass);
}

int run_prob(const GlobalOpts& g, std::int64_t nv, std::int64_t k, bool odd, double a, double b,
             const std::string& path) {
    OddModulus n(nv);
    std::int64_t r = 2 * k + (odd ? 1 : 0);
    IntervalPair p = interval_map(a, b, r);
    WorkBudget budget(g.budget);

    Table t = sweep_table();
    SweepRecord exact, fast;
    if (path == "exact" || path == "both") {
        exact = prob_exact(n, k, p.c, p.d, &budget, g.threads);
        attach_reference(exact, r, a, b, p, g.tolerance, g.seed, budget, g.threads);
        t.add_row(sweep_fields(exact));
    }
    if (path == "fast" || path == "both") {
        fast = prob_fast(n, k, p.c, p.d, &budget, g.threads);
        attach_reference(fast, r, a, b, p, g.tolerance, g.seed, budget, g.threads);
        t.add_row(sweep_fields(fast));
    }
    if (path == "both") {
        // deviation row: |fast - exact| in count and probability scale, plus
        // the guaranteed budget (probability scale) in reference_mass
        SweepRecord dev = exact;
        dev.method = "deviation";
        double count_gap = std::abs(fast.fast_count - to_double(exact.exact_count));
        double prob_gap = std::abs(fast.probability - exact.probability);
        std::vector<std::string> fields = sweep_fields(dev);
        fields[7] = fmt_double(count_gap);
        fields[9] = fmt_double(prob_gap);
        fields[10] = fmt_double(fast.deviation_budget / to_double(exact.total_count));
        fields[11] = fmt_double(prob_gap);
        fields[12] = "deviation";
        t.add_row(fields);
    }
    if (path != "exact" && path != "fast" && path != "both")
        fail(errc::invalid_argument, "unknown path '" + path + "' (exact|fast|both)");
    emit(g, render(t, parse_format(g.format)));
    return 0;
}

int run_sweep(const GlobalOpts& g, std::int64_t k, bool odd, double a, double b,
              std::vector<std::int64_t> n_list, bool use_cache) {
    if (n_list.empty()) fail(errc::invalid_argument, "sweep needs a nonempty n list");
    std::int64_t r = 2 * k + (odd ? 1 : 0);
    IntervalPair p = interval_map(a, b, r);
    std::string parity = odd ? "odd" : "even";
    RecordCache cache(RecordCache::resolve_dir(g.cache_dir), use_cache);
    WorkBudget budget(g.budget);

    Table t = sweep_table();
    struct Point {
        double n, err;
    };
    std::vector<Point> pts;
    for (std::int64_t nv : n_list) {
        std::string key =
            make_cache_key("sweep", nv, k, parity, a, b, "exact", g.tolerance, g.seed);
        std::vector<std::string> fields;
        if (auto hit = cache.get(key)) {
            fields = split_fields(*hit);
        } else {
            OddModulus n(nv);
            SweepRecord rec;
            try {
                rec = prob_exact(n, k, p.c, p.d, &budget, g.threads);
            } catch (const Error& e) {
                if (e.code() == errc::budget_exceeded)
                    fail(errc::budget_exceeded, "n = " + std::to_string(nv) + ": " + e.what());
                throw;
            }
            attach_reference(rec, r, a, b, p, g.tolerance, g.seed, budget, g.threads);
            fields = sweep_fields(rec);
            cache.put(key, join_fields(fields));
        }
        double err = std::strtod(fields[11].c_str(), nullptr);
        pts.push_back(Point{static_cast<double>(nv), err});
        t.add_row(std::move(fields));
    }

    // least-squares slope of log(err) vs log(n), exact hits excluded
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (const Point& pt : pts) {
        if (pt.err < 1e-12) continue;
        double x = std::log(pt.n), y = std::log(pt.err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    std::string slope_method = "slope";
    double slope = std::numeric_limits<double>::quiet_NaN();
    if (cnt == 0)
        slope_method = "slope_all_zero";
    else if (cnt >= 2)
        slope = (static_cast<double>(cnt) * sxy - sx * sy) /
                (static_cast<double>(cnt) * sxx - sx * sx);
    t.add_row({"0", std::to_string(k), std::to_string(r), fmt_double(a), fmt_double(b),
               fmt_double(p.c), fmt_double(p.d), "0", "0", fmt_double(slope), "0", "0",
               slope_method, fmt_double(g.tolerance), std::to_string(g.seed)});
    emit(g, render(t, parse_format(g.format)));
    return 0;
}

int run_verify(const GlobalOpts& g, const std::string& suite) {
    WorkBudget budget(g.budget);
    std::vector<CheckResult> results = verify_suite(suite, budget, g.threads);
    std::size_t failed = 0;
    std::string out;
    for (const CheckResult& r : results) {
        out += r.pass ? "[ok]   " : "[FAIL] ";
        out += r.name + "  " + r.params;
        if (!r.detail.empty()) out += "  (" + r.detail + ")";
        out += '\n';
        if (!r.pass) ++failed;
    }
    out += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) +
           " checks passed\n";
    emit(g, out);
    return failed == 0 ? 0 : kExitVerifyFail;
}

int run_histogram(const GlobalOpts& g, std::int64_t nv, std::int64_t k, bool odd,
                  std::int64_t bins) {
    OddModulus n(nv);
    WorkBudget budget(g.budget);
    EigenHistogram h = eigen_histogram(n, k, odd, bins, g.tolerance, &budget, g.threads);
    Table t;
    t.columns = {"bin_lo", "bin_hi", "empirical_frequency", "predicted_mass"};
    t.numeric = {true, true, true, true};
    double total = to_double(h.total);
    for (std::int64_t i = 0; i < bins; ++i)
        t.add_row({fmt_double(h.edges[static_cast<std::size_t>(i)]),
                   fmt_double(h.edges[static_cast<std::size_t>(i + 1)]),
                   fmt_double(static_cast<double>(h.counts[static_cast<std::size_t>(i)]) / total),
                   fmt_double(h.predicted[static_cast<std::size_t>(i)])});
    emit(g, render(t, parse_format(g.format)));
    return 0;
}

int run_ihara(const GlobalOpts& g, std::int64_t n, const std::vector<std::int64_t>& gens, bool odd,
              bool poles) {
    CayleySpec spec{make_tuple(n, gens), odd};
    WorkBudget budget(g.budget);
    Table t;
    if (poles) {
        SpectrumMultiset sp = spectrum(spec);
        t.columns = {"m", "lambda", "pole_plus_re", "pole_plus_im", "pole_minus_re",
                     "pole_minus_im"};
        t.numeric = {true, true, true, true, true, true};
        for (std::int64_t m = 0; m < sp.n; ++m) {
            double lam = sp.values[static_cast<std::size_t>(m)];
            PolePair pp = pole_pair(lam, spec.r());
            t.add_row({std::to_string(m), fmt_double(lam), fmt_double(pp.plus.real()),
                       fmt_double(pp.plus.imag()), fmt_double(pp.minus.real()),
                       fmt_double(pp.minus.imag())});
        }
    } else {
        IharaPolynomial h = ihara_polynomial(spec, &budget);
        std::vector<double> z = zeta_inverse(spec, &budget);
        t.columns = {"j", "h", "zeta_inv"};
        t.numeric = {true, true, true};
        for (std::size_t j = 0; j < z.size(); ++j) {
            double hc = j < h.coeffs.size() ? h.coeffs[j] : 0.0;
            t.add_row({std::to_string(j), fmt_double(hc), fmt_double(z[j])});
        }
    }
    emit(g, render(t, parse_format(g.format)));
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Exact eigenvalue statistics for circulant Cayley graphs on odd cyclic groups"};
    app.require_subcommand(1);
    app.fallthrough(true);

    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
    app.add_option("--budget", g.budget, "work budget in enumeration items");
    app.add_option("--tolerance", g.tolerance, "quadrature tolerance");
    app.add_option("--seed", g.seed, "Monte Carlo seed");
    app.add_option("--format", g.format, "output format: csv|tsv|json");
    app.add_option("--cache-dir", g.cache_dir, "cache directory (default $CAYLEY_CACHE_DIR or ./.cayley-cache)");
    app.add_option("--out", g.out_path, "write output to a file instead of stdout");

    std::int64_t n = 0, k = 1, bins = 10;
    std::vector<std::int64_t> gens, n_list;
    std::int64_t n_min = 0, n_max = 0, n_step = 2;
    double a = 0, b = 0, c = 0, d = 0;
    bool odd = false, even = false, poles = false;
    std::string method = "quad", path = "exact", suite = "all", cache_mode = "on";
    std::uint64_t samples = 1000000;

    auto add_parity = [&](CLI::App* cmd) {
        cmd->add_flag("--odd", odd, "degree r = 2k+1 (0 in the generating set)");
        cmd->add_flag("--even", even, "degree r = 2k (default)");
    };

    CLI::App* sp = app.add_subcommand("spectrum", "eigenvalues of one Cayley graph");
    sp->add_option("--n", n)->required();
    sp->add_option("--gen", gens, "generator exponents")->required()->delimiter(',');
    add_parity(sp);

    CLI::App* de = app.add_subcommand("density", "arcsine convolution interval mass");
    de->add_option("--k", k)->required();
    de->add_option("--c", c)->required();
    de->add_option("--d", d)->required();
    de->add_option("--method", method, "quad|mc");
    de->add_option("--samples", samples, "Monte Carlo sample count");

    CLI::App* pr = app.add_subcommand("prob", "eigenvalue interval probability at one n");
    pr->add_option("--n", n)->required();
    pr->add_option("--k", k)->required();
    pr->add_option("--a", a)->required();
    pr->add_option("--b", b)->required();
    pr->add_option("--path", path, "exact|fast|both");
    add_parity(pr);

    CLI::App* sw = app.add_subcommand("sweep", "convergence sweep over a grid of n");
    sw->add_option("--k", k)->required();
    sw->add_option("--a", a)->required();
    sw->add_option("--b", b)->required();
    sw->add_option("--n-list", n_list, "explicit odd n values")->delimiter(',');
    sw->add_option("--n-min", n_min);
    sw->add_option("--n-max", n_max);
    sw->add_option("--step", n_step, "grid step (default 2)");
    sw->add_option("--cache", cache_mode, "on|off");
    add_parity(sw);

    CLI::App* ve = app.add_subcommand("verify", "run invariant suites");
    ve->add_option("suite", suite, "core|spectra|density|lattice|stats|ihara|all");

    CLI::App* hi = app.add_subcommand("histogram", "eigenvalue histogram with limit overlay");
    hi->add_option("--n", n)->required();
    hi->add_option("--k", k)->required();
    hi->add_option("--bins", bins)->required();
    add_parity(hi);

    CLI::App* ih = app.add_subcommand("ihara", "Ihara polynomial, zeta inverse, poles");
    ih->add_option("--n", n)->required();
    ih->add_option("--gen", gens, "generator exponents")->required()->delimiter(',');
    ih->add_flag("--poles", poles, "emit pole pairs instead of coefficients");
    add_parity(ih);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitValidation;
    }

    if (odd && even) {
        std::fprintf(stderr, "error: --odd and --even are mutually exclusive\n");
        return kExitValidation;
    }

    try {
        if (sp->parsed()) return run_spectrum(g, n, gens, odd);
        if (de->parsed()) return run_density(g, static_cast<int>(k), c, d, method, samples);
        if (pr->parsed()) return run_prob(g, n, k, odd, a, b, path);
        if (sw->parsed()) {
            if (n_list.empty() && n_max >= n_min && n_min > 0)
                for (std::int64_t v = n_min; v <= n_max; v += n_step) n_list.push_back(v);
            return run_sweep(g, k, odd, a, b, n_list, cache_mode != "off");
        }
        if (ve->parsed()) return run_verify(g, suite);
        if (hi->parsed()) return run_histogram(g, n, k, odd, bins);
        if (ih->parsed()) return run_ihara(g, n, gens, odd, poles);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        switch (e.code()) {
        case errc::tolerance_not_met: return kExitTolerance;
        case errc::budget_exceeded: return kExitBudget;
        default: return kExitValidation;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return kExitValidation;
}

} // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
