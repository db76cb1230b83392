#include "cayley/kernels.hpp"

namespace cayley::kernels {

namespace {

using CountFn = std::uint64_t (*)(const double*, std::size_t, std::size_t, KahanPrefix, double,
                                  double);
using BinFn = void (*)(const double*, std::size_t, std::size_t, KahanPrefix, double, double,
                       std::size_t, std::uint64_t, std::uint64_t*);
using RemapFn = void (*)(double*, const double*, std::int64_t, std::int64_t, std::size_t);

struct Table {
    Backend which;
    CountFn count;
    BinFn bin;
    RemapFn remap;
};

constexpr Table kScalar{Backend::scalar, detail::count_in_interval_scalar,
                        detail::bin_accumulate_scalar, detail::remap_mod_table_scalar};

#if defined(CAYLEY_HAVE_AVX2)
constexpr Table kAvx2{Backend::avx2, detail::count_in_interval_avx2, detail::bin_accumulate_avx2,
                      detail::remap_mod_table_avx2};

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") != 0; }
#endif

Table pick_best() {
#if defined(CAYLEY_HAVE_AVX2)
    if (cpu_has_avx2()) return kAvx2;
#endif
    return kScalar;
}

Table g_active = pick_best();

} // namespace

const char* name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    }
    return "?";
}

Backend active_backend() { return g_active.which; }

bool set_backend(Backend b) {
    if (b == Backend::scalar) {
        g_active = kScalar;
        return true;
    }
#if defined(CAYLEY_HAVE_AVX2)
    if (b == Backend::avx2 && cpu_has_avx2()) {
        g_active = kAvx2;
        return true;
    }
#endif
    return false;
}

std::vector<Backend> supported_backends() {
    std::vector<Backend> v{Backend::scalar};
#if defined(CAYLEY_HAVE_AVX2)
    if (cpu_has_avx2()) v.push_back(Backend::avx2);
#endif
    return v;
}

std::uint64_t count_in_interval(const double* vals, std::size_t lo, std::size_t hi,
                                KahanPrefix prefix, double c, double d) {
    if (lo > hi) return 0;
    return g_active.count(vals, lo, hi, prefix, c, d);
}

void bin_accumulate(const double* vals, std::size_t lo, std::size_t hi, KahanPrefix prefix,
                    double bin_lo, double bin_hi, std::size_t nbins, std::uint64_t weight,
                    std::uint64_t* bins) {
    if (lo > hi || nbins == 0) return;
    g_active.bin(vals, lo, hi, prefix, bin_lo, bin_hi, nbins, weight, bins);
}

void remap_mod_table(double* dst, const double* table, std::int64_t n, std::int64_t m,
                     std::size_t count) {
    g_active.remap(dst, table, n, m, count);
}

} // namespace cayley::kernels
