#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace cayley::kernels::detail {

/// Histogram bin of t under nbins uniform bins on [bin_lo, bin_hi); the last
/// bin is closed. Shared by all backends so the index math is identical.
inline std::size_t bin_index(double t, double bin_lo, double inv_width, std::size_t nbins) {
    double x = (t - bin_lo) * inv_width;
    if (!(x > 0.0)) return 0;
    std::size_t i = static_cast<std::size_t>(x);
    return i >= nbins ? nbins - 1 : i;
}

} // namespace cayley::kernels::detail
