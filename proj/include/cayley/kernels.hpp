#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cayley::kernels {

/// Compensated (Kahan) accumulator state. The inner counting loops carry
/// the state of the first k-1 summands and apply the final summand per
/// candidate; finish() performs exactly the two operations
///     t = sum + (v - comp)
/// in both the scalar and the SIMD backends, so every backend classifies
/// every candidate bit-identically.
struct KahanPrefix {
    double sum = 0.0;
    double comp = 0.0;

    void push(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double finish(double v) const { return sum + (v - comp); }
};

enum class Backend { scalar, avx2 };

const char* name(Backend b);

/// Backend selected at startup (best supported); override with set_backend.
Backend active_backend();
bool set_backend(Backend b); // false if unsupported on this CPU/build
std::vector<Backend> supported_backends();

/// Count j in [lo, hi] (inclusive) with c <= prefix.finish(vals[j]) <= d.
std::uint64_t count_in_interval(const double* vals, std::size_t lo, std::size_t hi,
                                KahanPrefix prefix, double c, double d);

/// bins[idx(j)] += weight for j in [lo, hi], where idx is the histogram bin
/// of prefix.finish(vals[j]) under `nbins` uniform bins on [bin_lo, bin_hi]
/// (half-open bins, last bin closed). Values outside the range are clamped
/// into the end bins; callers guarantee the data range.
void bin_accumulate(const double* vals, std::size_t lo, std::size_t hi, KahanPrefix prefix,
                    double bin_lo, double bin_hi, std::size_t nbins, std::uint64_t weight,
                    std::uint64_t* bins);

/// dst[a] = table[(m*a) mod n] for a in [0, count). table has n entries.
void remap_mod_table(double* dst, const double* table, std::int64_t n, std::int64_t m,
                     std::size_t count);

namespace detail {
std::uint64_t count_in_interval_scalar(const double*, std::size_t, std::size_t, KahanPrefix,
                                       double, double);
void bin_accumulate_scalar(const double*, std::size_t, std::size_t, KahanPrefix, double, double,
                           std::size_t, std::uint64_t, std::uint64_t*);
void remap_mod_table_scalar(double*, const double*, std::int64_t, std::int64_t, std::size_t);
#if defined(CAYLEY_HAVE_AVX2)
std::uint64_t count_in_interval_avx2(const double*, std::size_t, std::size_t, KahanPrefix, double,
                                     double);
void bin_accumulate_avx2(const double*, std::size_t, std::size_t, KahanPrefix, double, double,
                         std::size_t, std::uint64_t, std::uint64_t*);
void remap_mod_table_avx2(double*, const double*, std::int64_t, std::int64_t, std::size_t);
#endif
} // namespace detail

} // namespace cayley::kernels
