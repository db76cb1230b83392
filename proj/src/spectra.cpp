#include "cayley/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cayley {

CosTable::CosTable(const OddModulus& n) : n_(n.value()), values_(static_cast<std::size_t>(n_)) {
    const double two_pi = 2.0 * M_PI;
    std::int64_t half = n.half();
    for (std::int64_t j = 0; j <= half; ++j)
        values_[static_cast<std::size_t>(j)] =
            std::cos(two_pi * static_cast<double>(j) / static_cast<double>(n_));
    for (std::int64_t j = half + 1; j < n_; ++j)
        values_[static_cast<std::size_t>(j)] = values_[static_cast<std::size_t>(n_ - j)];
}

void CosTable::remap(std::int64_t m, double* dst, std::size_t count) const {
    kernels::remap_mod_table(dst, values_.data(), n_, m, count);
}

double tau(const GeneratorTuple& t, std::int64_t m, const CosTable& table) {
    if (m < 0 || m >= t.n.value()) fail(errc::m_out_of_range, "m outside [0, n-1]");
    kernels::KahanPrefix acc;
    for (std::int64_t ai : t.a) acc.push(table.at((m * ai) % t.n.value()));
    return acc.sum;
}

double tau(const GeneratorTuple& t, std::int64_t m) {
    CosTable table(t.n);
    return tau(t, m, table);
}

double eigenvalue(const CayleySpec& spec, std::int64_t m) {
    if (m == 0) return static_cast<double>(spec.r()); // exact by convention and by the sum of 1s
    CosTable table(spec.tuple.n);
    double tm = tau(spec.tuple, m, table);
    return spec.includes_zero ? 1.0 + 2.0 * tm : 2.0 * tm;
}

SpectrumMultiset spectrum(const CayleySpec& spec) {
    std::int64_t n = spec.n();
    CosTable table(spec.tuple.n);
    SpectrumMultiset s{n, spec.r(), std::vector<double>(static_cast<std::size_t>(n))};
    for (std::int64_t m = 0; m < n; ++m) {
        double tm = tau(spec.tuple, m, table);
        s.values[static_cast<std::size_t>(m)] =
            spec.includes_zero ? 1.0 + 2.0 * tm : 2.0 * tm;
    }
    return s;
}

std::vector<double> adjacency_matrix(const CayleySpec& spec) {
    std::int64_t n = spec.n();
    std::vector<char> in_set(static_cast<std::size_t>(n), 0);
    if (spec.includes_zero) in_set[0] = 1;
    for (std::int64_t ai : spec.tuple.a) {
        in_set[static_cast<std::size_t>(ai)] = 1;
        in_set[static_cast<std::size_t>(n - ai)] = 1;
    }
    std::vector<double> a(static_cast<std::size_t>(n * n));
    for (std::int64_t g = 0; g < n; ++g)
        for (std::int64_t h = 0; h < n; ++h) {
            std::int64_t diff = g - h;
            if (diff < 0) diff += n;
            a[static_cast<std::size_t>(g * n + h)] = in_set[static_cast<std::size_t>(diff)];
        }
    return a;
}

namespace {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations
/// (eigenvalues only; the accumulated error is O(eps * ||A||)).
void jacobi_eigenvalues(std::vector<double>& a, std::int64_t n, std::vector<double>& d) {
    d.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i * n + i)];
    auto off = [&](void) {
        double s = 0.0;
        for (std::int64_t p = 0; p < n - 1; ++p)
            for (std::int64_t q = p + 1; q < n; ++q) {
                double v = a[static_cast<std::size_t>(p * n + q)];
                s += v * v;
            }
        return s;
    };
    double norm0 = std::sqrt(off());
    if (norm0 == 0.0) return;
    for (int sweep = 0; sweep < 50; ++sweep) {
        double o = std::sqrt(off());
        if (o <= 1e-14 * static_cast<double>(n)) break;
        double thresh = sweep < 3 ? 0.2 * o * o / static_cast<double>(n * n) : 0.0;
        for (std::int64_t p = 0; p < n - 1; ++p) {
            for (std::int64_t q = p + 1; q < n; ++q) {
                double apq = a[static_cast<std::size_t>(p * n + q)];
                if (apq * apq <= thresh) continue;
                double app = d[static_cast<std::size_t>(p)];
                double aqq = d[static_cast<std::size_t>(q)];
                double theta = 0.5 * (aqq - app) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                double tau_r = s / (1.0 + c);
                d[static_cast<std::size_t>(p)] = app - t * apq;
                d[static_cast<std::size_t>(q)] = aqq + t * apq;
                a[static_cast<std::size_t>(p * n + q)] = 0.0;
                auto rotate = [&](std::int64_t i, std::int64_t j, std::int64_t k, std::int64_t l) {
                    double g = a[static_cast<std::size_t>(i * n + j)];
                    double h = a[static_cast<std::size_t>(k * n + l)];
                    a[static_cast<std::size_t>(i * n + j)] = g - s * (h + g * tau_r);
                    a[static_cast<std::size_t>(k * n + l)] = h + s * (g - h * tau_r);
                };
                for (std::int64_t j = 0; j < p; ++j) rotate(j, p, j, q);
                for (std::int64_t j = p + 1; j < q; ++j) rotate(p, j, j, q);
                for (std::int64_t j = q + 1; j < n; ++j) rotate(p, j, q, j);
            }
        }
    }
}

} // namespace

std::vector<double> spectrum_via_matrix(const CayleySpec& spec) {
    std::int64_t n = spec.n();
    if (n > 4096) fail(errc::too_large, "dense eigensolve guarded to n <= 4096");
    std::vector<double> a = adjacency_matrix(spec);
    std::vector<double> d;
    jacobi_eigenvalues(a, n, d);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> sorted_values(const SpectrumMultiset& s) {
    std::vector<double> v = s.values;
    std::sort(v.begin(), v.end());
    return v;
}

IntervalPair interval_map(double a, double b, std::int64_t r) {
    if (r < 2) fail(errc::invalid_argument, "degree r must be >= 2");
    double rd = static_cast<double>(r);
    if (!(a <= b)) fail(errc::bad_interval, "interval requires a <= b");
    if (a < -rd || b > rd) fail(errc::j_out_of_range, "J must be contained in [-r, r]");
    double c, d;
    if (r % 2 == 0) {
        c = a / 2.0;
        d = b / 2.0;
    } else {
        c = (a - 1.0) / 2.0;
        d = (b - 1.0) / 2.0;
    }
    // for odd r the raw endpoints can poke below -k; tau never goes there,
    // so membership is unaffected and the mass routines clamp to [-k, k]
    return IntervalPair{a, b, c, d};
}

} // namespace cayley
