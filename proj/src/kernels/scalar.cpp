#include "cayley/kernels.hpp"

#include "kernels_common.hpp"

namespace cayley::kernels::detail {

std::uint64_t count_in_interval_scalar(const double* vals, std::size_t lo, std::size_t hi,
                                       KahanPrefix prefix, double c, double d) {
    std::uint64_t count = 0;
    for (std::size_t j = lo; j <= hi; ++j) {
        double t = prefix.finish(vals[j]);
        count += (t >= c) & (t <= d);
    }
    return count;
}

void bin_accumulate_scalar(const double* vals, std::size_t lo, std::size_t hi, KahanPrefix prefix,
                           double bin_lo, double bin_hi, std::size_t nbins, std::uint64_t weight,
                           std::uint64_t* bins) {
    double inv_width = static_cast<double>(nbins) / (bin_hi - bin_lo);
    for (std::size_t j = lo; j <= hi; ++j) {
        double t = prefix.finish(vals[j]);
        bins[bin_index(t, bin_lo, inv_width, nbins)] += weight;
    }
}

void remap_mod_table_scalar(double* dst, const double* table, std::int64_t n, std::int64_t m,
                            std::size_t count) {
    std::int64_t step = m % n;
    std::int64_t idx = 0;
    for (std::size_t a = 0; a < count; ++a) {
        dst[a] = table[idx];
        idx += step;
        if (idx >= n) idx -= n;
    }
}

} // namespace cayley::kernels::detail
