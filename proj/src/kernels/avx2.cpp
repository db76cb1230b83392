#include "cayley/kernels.hpp"

#if defined(CAYLEY_HAVE_AVX2)

#include <immintrin.h>

#include "kernels_common.hpp"

namespace cayley::kernels::detail {

// Lanes perform the same t = sum + (v - comp) as the scalar kernel, so the
// classification of every element is bit-identical across backends.

std::uint64_t count_in_interval_avx2(const double* vals, std::size_t lo, std::size_t hi,
                                     KahanPrefix prefix, double c, double d) {
    const __m256d vsum = _mm256_set1_pd(prefix.sum);
    const __m256d vcomp = _mm256_set1_pd(prefix.comp);
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vd = _mm256_set1_pd(d);
    __m256i acc = _mm256_setzero_si256();
    std::size_t j = lo;
    for (; j + 4 <= hi + 1; j += 4) {
        __m256d v = _mm256_loadu_pd(vals + j);
        __m256d t = _mm256_add_pd(vsum, _mm256_sub_pd(v, vcomp));
        __m256d ge = _mm256_cmp_pd(t, vc, _CMP_GE_OQ);
        __m256d le = _mm256_cmp_pd(t, vd, _CMP_LE_OQ);
        __m256i hit = _mm256_castpd_si256(_mm256_and_pd(ge, le));
        acc = _mm256_sub_epi64(acc, hit); // hit lanes are -1
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; j <= hi; ++j) {
        double t = prefix.finish(vals[j]);
        count += (t >= c) & (t <= d);
    }
    return count;
}

void bin_accumulate_avx2(const double* vals, std::size_t lo, std::size_t hi, KahanPrefix prefix,
                         double bin_lo, double bin_hi, std::size_t nbins, std::uint64_t weight,
                         std::uint64_t* bins) {
    double inv_width = static_cast<double>(nbins) / (bin_hi - bin_lo);
    const __m256d vsum = _mm256_set1_pd(prefix.sum);
    const __m256d vcomp = _mm256_set1_pd(prefix.comp);
    std::size_t j = lo;
    alignas(32) double t[4];
    for (; j + 4 <= hi + 1; j += 4) {
        __m256d v = _mm256_loadu_pd(vals + j);
        _mm256_store_pd(t, _mm256_add_pd(vsum, _mm256_sub_pd(v, vcomp)));
        bins[bin_index(t[0], bin_lo, inv_width, nbins)] += weight;
        bins[bin_index(t[1], bin_lo, inv_width, nbins)] += weight;
        bins[bin_index(t[2], bin_lo, inv_width, nbins)] += weight;
        bins[bin_index(t[3], bin_lo, inv_width, nbins)] += weight;
    }
    for (; j <= hi; ++j)
        bins[bin_index(prefix.finish(vals[j]), bin_lo, inv_width, nbins)] += weight;
}

void remap_mod_table_avx2(double* dst, const double* table, std::int64_t n, std::int64_t m,
                          std::size_t count) {
    std::int64_t step = m % n;
    if (count < 8) {
        remap_mod_table_scalar(dst, table, n, m, count);
        return;
    }
    std::int64_t step4 = (4 * step) % n;
    alignas(32) std::int64_t start[4];
    start[0] = 0;
    for (int l = 1; l < 4; ++l) {
        start[l] = start[l - 1] + step;
        if (start[l] >= n) start[l] -= n;
    }
    __m256i idx = _mm256_load_si256(reinterpret_cast<const __m256i*>(start));
    const __m256i vn = _mm256_set1_epi64x(n);
    const __m256i vstep4 = _mm256_set1_epi64x(step4);
    std::size_t a = 0;
    for (; a + 4 <= count; a += 4) {
        _mm256_storeu_pd(dst + a, _mm256_i64gather_pd(table, idx, 8));
        idx = _mm256_add_epi64(idx, vstep4);
        // idx < 2n after the add; one conditional subtract restores idx < n
        __m256i over = _mm256_cmpgt_epi64(vn, idx); // n > idx ? all-ones : 0
        idx = _mm256_sub_epi64(idx, _mm256_andnot_si256(over, vn));
    }
    // tail: resume from lane-0 index
    alignas(32) std::int64_t cur[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(cur), idx);
    std::int64_t k = cur[0];
    for (; a < count; ++a) {
        dst[a] = table[k];
        k += step;
        if (k >= n) k -= n;
    }
}

} // namespace cayley::kernels::detail

#endif // CAYLEY_HAVE_AVX2
