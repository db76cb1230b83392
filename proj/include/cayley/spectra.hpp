#pragma once

#include <cstdint>
#include <vector>

#include "cayley/budget.hpp"
#include "cayley/core.hpp"
#include "cayley/kernels.hpp"

namespace cayley {

/// Shared table of cos(2*pi*j/n), j in [0, n-1]. The upper half is mirrored
/// from the lower half, so table[j] == table[n-j] holds bit-exactly; every
/// symmetry the eigenvalue formulas promise "exactly" rests on this.
/// Immutable after construction and safe to share across threads.
class CosTable {
public:
    explicit CosTable(const OddModulus& n);

    std::int64_t n() const noexcept { return n_; }
    const double* data() const noexcept { return values_.data(); }
    double at(std::int64_t j) const { return values_[static_cast<std::size_t>(j)]; }

    /// cos values reordered by generator exponent: dst[a] = table[(m*a) mod n]
    /// for a in [0, count). The slice enumeration loops read this
    /// contiguously.
    void remap(std::int64_t m, double* dst, std::size_t count) const;

private:
    std::int64_t n_;
    std::vector<double> values_;
};

/// tau_m = sum_i cos(2*pi*m*a_i/n), accumulated with Kahan compensation in
/// tuple order through the shared table. Result lies in [-k, k] up to a few
/// ulp.
double tau(const GeneratorTuple& t, std::int64_t m);
double tau(const GeneratorTuple& t, std::int64_t m, const CosTable& table);

/// lambda_m = 2*tau_m (r even) or 1 + 2*tau_m (r odd); lambda_0 = r exactly.
double eigenvalue(const CayleySpec& spec, std::int64_t m);

/// All n eigenvalues indexed by character index m.
struct SpectrumMultiset {
    std::int64_t n;
    std::int64_t r;
    std::vector<double> values; // values[m] = lambda_m
};

SpectrumMultiset spectrum(const CayleySpec& spec);

/// Dense circulant adjacency matrix, row-major n x n; entry (g, h) is 1 iff
/// (g - h) mod n lies in the generating set. Diagonal is all ones iff r is
/// odd (a vertex loop contributes 1 with this convention, which is the one
/// reproduced by the character-sum formula lambda = 1 + 2*tau).
std::vector<double> adjacency_matrix(const CayleySpec& spec);

/// Independent oracle: eigenvalues of adjacency_matrix via cyclic Jacobi
/// rotations, sorted ascending. Guarded to n <= 4096.
std::vector<double> spectrum_via_matrix(const CayleySpec& spec);

/// Sorted copy of a character-sum spectrum, for oracle comparisons.
std::vector<double> sorted_values(const SpectrumMultiset& s);

/// Eigenvalue interval J = [a, b] together with the induced cosine-sum
/// interval I = [c, d]: lambda in J iff tau in I.
struct IntervalPair {
    double a, b; // J, eigenvalue scale
    double c, d; // I, cosine-sum scale (clamped to [-k, k])
};

/// J = [a,b] in [-r, r]  ->  I = [a/2, b/2] (r even) or [(a-1)/2, (b-1)/2]
/// (r odd). For odd r the lower endpoint can reach -(k+1); tau never leaves
/// [-k, k], so membership tests are unaffected, and the mass routines clamp
/// the query interval to the support.
IntervalPair interval_map(double a, double b, std::int64_t r);

} // namespace cayley
