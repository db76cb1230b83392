#include "cayley/density.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cayley/error.hpp"
#include "cayley/parallel.hpp"
#include "cayley/rng.hpp"

namespace cayley {

double arcsine_pdf(double u) {
    if (!(std::abs(u) < 1.0)) return 0.0;
    return 1.0 / (M_PI * std::sqrt(1.0 - u * u));
}

double arcsine_cdf(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 0.5 + std::asin(x) / M_PI;
}

namespace {

// ---------------------------------------------------------------------------
// Gauss-Legendre tables
// ---------------------------------------------------------------------------

// 4-point rule on [-1, 1]; used per panel in the composite level recursion.
constexpr double kGl4X[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                             0.8611363115940526};
constexpr double kGl4W[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                             0.3478548451374538};

/// Nodes/weights of the N-point rule on [0, 1], by Newton iteration on the
/// Legendre polynomial. Computed once per refinement level; N stays small.
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        double xi = 0.5 * (1.0 - z); // map to [0,1], ascending
        double wi = 1.0 / ((1.0 - z * z) * pp * pp);
        x[static_cast<std::size_t>(i)] = xi;
        w[static_cast<std::size_t>(i)] = wi;
        x[static_cast<std::size_t>(n - 1 - i)] = 1.0 - xi;
        w[static_cast<std::size_t>(n - 1 - i)] = wi;
    }
}

// ---------------------------------------------------------------------------
// Level 2: F2(t) = P(cos th1 + cos th2 <= t), th_i uniform on [0, pi]
// ---------------------------------------------------------------------------
//
// F2(t) = (1/pi) Int_0^pi F1(t - cos th) dth with F1 the arcsine CDF. For
// t in (0, 2) the integrand saturates to 1 past th* = arccos(t-1) and has a
// square-root crossing at th*. The substitution th = th* - s^2 turns the
// remaining piece into an analytic integrand on [0, sqrt(th*)], so a single
// Gauss-Legendre rule converges geometrically in the node count.

double level2_cdf_nonneg(double t, const std::vector<double>& gx, const std::vector<double>& gw) {
    if (t >= 2.0) return 1.0;
    double theta_star = std::acos(t - 1.0);
    double len = std::sqrt(theta_star);
    double acc = 0.0;
    for (std::size_t q = 0; q < gx.size(); ++q) {
        double s = len * gx[q];
        double theta = theta_star - s * s;
        acc += gw[q] * arcsine_cdf(t - std::cos(theta)) * 2.0 * s;
    }
    acc *= len;
    return (acc + (M_PI - theta_star)) / M_PI;
}

double level2_cdf(double t, const std::vector<double>& gx, const std::vector<double>& gw) {
    if (t >= 2.0) return 1.0;
    if (t <= -2.0) return 0.0;
    if (t == 0.0) return 0.5;
    if (t < 0.0) return 1.0 - level2_cdf_nonneg(-t, gx, gw);
    return level2_cdf_nonneg(t, gx, gw);
}

// ---------------------------------------------------------------------------
// Levels j >= 3: uniform-grid CDF of the j-term cosine sum
// ---------------------------------------------------------------------------

struct GridCdf {
    double lo, hi, h;
    std::vector<double> v; // v[i] at lo + i*h

    /// Cubic (4-point Lagrange) interpolation, saturating outside [lo, hi].
    double eval(double x) const {
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        double u = (x - lo) / h;
        std::int64_t cells = static_cast<std::int64_t>(v.size()) - 1;
        std::int64_t i = static_cast<std::int64_t>(u);
        std::int64_t s = std::clamp<std::int64_t>(i - 1, 0, cells - 3);
        double xi = u - static_cast<double>(s);
        double w0 = -(xi - 1.0) * (xi - 2.0) * (xi - 3.0) / 6.0;
        double w1 = xi * (xi - 2.0) * (xi - 3.0) / 2.0;
        double w2 = -xi * (xi - 1.0) * (xi - 3.0) / 2.0;
        double w3 = xi * (xi - 1.0) * (xi - 2.0) / 6.0;
        const double* p = v.data() + s;
        return w0 * p[0] + w1 * p[1] + w2 * p[2] + w3 * p[3];
    }
};

/// (1/pi) Int_0^pi F_prev(t - cos th) dth by composite GL-4 with panel
/// boundaries aligned to the angles where the integrand changes character:
/// saturation entry/exit (argument = ±prev_bound, where F_prev has a
/// derivative jump) and the argument's zero crossing (log-singular higher
/// derivatives). Alignment keeps the quadrature error a smooth function of
/// the panel count, so the doubling loop sees clean monotone differences.
double convolve_point(const GridCdf& prev, double prev_bound, double t,
                      std::int64_t base_panels) {
    // the argument t - cos th increases with th from t-1 to t+1; split at the
    // angles where it crosses -prev_bound, 0, +prev_bound
    double bounds[5];
    std::size_t nb = 0;
    bounds[nb++] = 0.0;
    for (double argv : {-prev_bound, 0.0, prev_bound}) {
        double cosv = t - argv;
        if (cosv > -1.0 && cosv < 1.0) bounds[nb++] = std::acos(cosv);
    }
    bounds[nb++] = M_PI;
    std::sort(bounds, bounds + nb);

    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < nb; ++s) {
        double th_a = bounds[s], th_b = bounds[s + 1];
        if (th_b - th_a < 1e-15) continue;
        // saturation shortcuts: argument increasing in theta
        double arg_lo = t - std::cos(th_a);
        double arg_hi = t - std::cos(th_b);
        if (arg_lo >= prev_bound - 1e-15) {
            acc += th_b - th_a; // F_prev saturated at 1
            continue;
        }
        if (arg_hi <= -prev_bound + 1e-15) continue; // saturated at 0
        std::int64_t panels = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::ceil(static_cast<double>(base_panels) *
                                                   (th_b - th_a) / M_PI)));
        double ph = (th_b - th_a) / static_cast<double>(panels);
        for (std::int64_t p = 0; p < panels; ++p) {
            double mid = th_a + (static_cast<double>(p) + 0.5) * ph;
            for (int q = 0; q < 4; ++q) {
                double th = mid + 0.5 * ph * kGl4X[q];
                acc += 0.5 * ph * kGl4W[q] * prev.eval(t - std::cos(th));
            }
        }
    }
    return acc / M_PI;
}

GridCdf convolve_level(const GridCdf& prev, double bound, std::int64_t grid_panels,
                       std::int64_t theta_panels, int threads) {
    GridCdf next;
    next.lo = -bound;
    next.hi = bound;
    next.h = 2.0 * bound / static_cast<double>(grid_panels);
    next.v.assign(static_cast<std::size_t>(grid_panels + 1), 0.0);
    double prev_bound = bound - 1.0;
    parallel_for(next.v.size(), threads, [&](std::uint64_t iu) {
        double t = next.lo + next.h * static_cast<double>(iu);
        next.v[iu] = convolve_point(prev, prev_bound, t, theta_panels);
    });
    return next;
}

struct Refinement {
    std::int64_t grid_panels;
    int level2_nodes;
    std::int64_t theta_panels;
};

Refinement refinement_for(std::int64_t g) {
    Refinement r;
    r.grid_panels = g;
    r.level2_nodes = static_cast<int>(std::min<std::int64_t>(12 + g / 32, 20000));
    r.theta_panels = std::clamp<std::int64_t>(g / 8, 32, 8192);
    return r;
}

double estimate_mass(int k, double c, double d, const Refinement& ref, WorkBudget* budget,
                     int threads) {
    std::vector<double> gx, gw;
    gauss_legendre_01(ref.level2_nodes, gx, gw);
    if (k == 2) {
        if (budget) budget->charge(static_cast<std::uint64_t>(2 * ref.level2_nodes), "conv_mass");
        return level2_cdf(d, gx, gw) - level2_cdf(c, gx, gw);
    }
    if (budget) {
        double items = static_cast<double>(ref.grid_panels + 1) *
                       (static_cast<double>(ref.level2_nodes) +
                        static_cast<double>(k - 2) * static_cast<double>(ref.theta_panels) * 4.0);
        budget->charge_estimate(items, "conv_mass");
    }
    GridCdf cur;
    cur.lo = -2.0;
    cur.hi = 2.0;
    cur.h = 4.0 / static_cast<double>(ref.grid_panels);
    cur.v.resize(static_cast<std::size_t>(ref.grid_panels + 1));
    parallel_for(cur.v.size(), threads, [&](std::uint64_t iu) {
        cur.v[iu] = level2_cdf(cur.lo + cur.h * static_cast<double>(iu), gx, gw);
    });
    for (int level = 3; level <= k; ++level)
        cur = convolve_level(cur, static_cast<double>(level), ref.grid_panels, ref.theta_panels,
                             threads);
    return cur.eval(d) - cur.eval(c);
}

} // namespace

MassEstimate conv_mass(int k, double c, double d, double tolerance, WorkBudget* budget,
                       int threads) {
    if (k < 1) fail(errc::invalid_argument, "k must be >= 1");
    if (!(c <= d)) fail(errc::bad_interval, "interval requires c <= d");
    if (!(tolerance > 0.0)) fail(errc::invalid_argument, "tolerance must be positive");
    double kd = static_cast<double>(k);
    c = std::max(c, -kd);
    d = std::min(d, kd);
    if (c >= d) return MassEstimate{0.0, 0.0}; // clamped away or a single point
    if (k == 1) return MassEstimate{arcsine_cdf(d) - arcsine_cdf(c), 3e-16};

    constexpr std::int64_t kPanelCap = std::int64_t(1) << 22;
    double prev = 0.0;
    bool have_prev = false;
    for (std::int64_t g = 256; g <= kPanelCap; g *= 2) {
        double est;
        try {
            est = estimate_mass(k, c, d, refinement_for(g), budget, threads);
        } catch (const Error& e) {
            // refinement cut off by the work meter: a tolerance failure, so
            // the CLI reports it as such (exit 3, not 4)
            if (e.code() == errc::budget_exceeded)
                fail(errc::tolerance_not_met,
                     std::string("conv_mass: work budget exhausted at ") + std::to_string(g) +
                         " panels before reaching tolerance");
            throw;
        }
        if (have_prev) {
            double diff = std::abs(est - prev);
            if (diff < tolerance)
                return MassEstimate{std::clamp(est, 0.0, 1.0), diff};
        }
        prev = est;
        have_prev = true;
    }
    fail(errc::tolerance_not_met, "conv_mass: refinement cap reached before tolerance");
}

MassEstimate conv_mass_mc(int k, double c, double d, std::uint64_t samples, std::uint64_t seed,
                          int threads) {
    if (k < 1) fail(errc::invalid_argument, "k must be >= 1");
    if (samples < 1) fail(errc::invalid_argument, "samples must be >= 1");
    if (!(c <= d)) fail(errc::bad_interval, "interval requires c <= d");
    constexpr std::uint64_t kChunk = 1 << 16;
    std::uint64_t nchunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> hits(nchunks, 0);
    parallel_for(nchunks, threads, [&](std::uint64_t chunk) {
        std::uint64_t begin = chunk * kChunk;
        std::uint64_t end = std::min(begin + kChunk, samples);
        std::uint64_t h = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
            double sum = 0.0;
            for (int j = 0; j < k; ++j)
                sum += std::cos(M_PI * counter_uniform(seed, s * static_cast<std::uint64_t>(k) +
                                                                 static_cast<std::uint64_t>(j)));
            h += (sum >= c) & (sum <= d);
        }
        hits[chunk] = h;
    });
    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h;
    double p = static_cast<double>(total) / static_cast<double>(samples);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return MassEstimate{p, se};
}

MassEstimate box_volume(int k, double c, double d, double tolerance, WorkBudget* budget,
                        int threads) {
    double kd = static_cast<double>(k);
    if (c < -kd || d > kd) fail(errc::bad_interval, "I must be contained in [-k, k]");
    MassEstimate m = conv_mass(k, c, d, tolerance, budget, threads);
    return MassEstimate{std::ldexp(m.value, -k), std::ldexp(m.error, -k)};
}

MassEstimate mass(const DensityQuery& q, WorkBudget* budget, int threads) {
    if (q.method == MassMethod::MonteCarlo)
        return conv_mass_mc(q.k, q.c, q.d, q.samples, q.seed, threads);
    return conv_mass(q.k, q.c, q.d, q.tolerance, budget, threads);
}

} // namespace cayley
