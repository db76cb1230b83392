#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cayley/bigcount.hpp"
#include "cayley/error.hpp"

namespace cayley {

/// Order of the cyclic group; odd and > 1 by construction.
class OddModulus {
public:
    explicit OddModulus(std::int64_t n) : n_(n) {
        if (n <= 1) fail(errc::out_of_range, "modulus must be > 1");
        if (n % 2 == 0) fail(errc::even_modulus, "modulus must be odd");
    }
    std::int64_t value() const noexcept { return n_; }
    std::int64_t half() const noexcept { return (n_ - 1) / 2; } // (n-1)/2

private:
    std::int64_t n_;
};

/// Strictly increasing generator exponents 1 <= a_1 < ... < a_k <= (n-1)/2.
/// Identifies the symmetric generating set {±a_1, ..., ±a_k} of C_n.
struct GeneratorTuple {
    OddModulus n;
    std::vector<std::int64_t> a;

    std::int64_t k() const noexcept { return static_cast<std::int64_t>(a.size()); }
};

/// Validating constructor for GeneratorTuple.
GeneratorTuple make_tuple(std::int64_t n, std::vector<std::int64_t> a);

/// An r-regular circulant graph: generators plus the degree parity.
/// r = 2k when the generating set excludes 0, r = 2k+1 when it includes 0.
struct CayleySpec {
    GeneratorTuple tuple;
    bool includes_zero = false;

    std::int64_t r() const noexcept { return 2 * tuple.k() + (includes_zero ? 1 : 0); }
    std::int64_t n() const noexcept { return tuple.n.value(); }
};

/// The m-slice coordinates: d = gcd(m, n) (with gcd(0, n) = n), n = d*n1,
/// m = d*m1. m = 0 yields (d, n1, m1) = (n, 1, 0).
struct SliceId {
    std::int64_t n;
    std::int64_t m;
    std::int64_t d;
    std::int64_t n1;
    std::int64_t m1;
};

SliceId slice_params(const OddModulus& n, std::int64_t m);

enum class SliceClass { Primed, DoublePrimed };

/// Primed iff m >= 1 and a_i != ±a_j (mod n1) for every pair i < j.
/// The m = 0 slice is DoublePrimed by convention.
SliceClass classify_tuple(const GeneratorTuple& t, const SliceId& s);

/// Fold of the fractional part into [0, 1/2]; preserves cos(2*pi*x).
double kappa(double x);

/// A point of the 1/n1 lattice inside [0, 1/2)^k, held exactly as integer
/// numerators over the common denominator n1.
struct LatticePoint {
    std::int64_t denom;
    std::vector<std::int64_t> num;

    double coord(std::size_t i) const { return static_cast<double>(num[i]) / static_cast<double>(denom); }
    std::size_t size() const noexcept { return num.size(); }
};

/// Coordinate i is the fold of m1*a_{perm(i)}/n1, computed in integer
/// arithmetic. perm is a permutation of {0, ..., k-1}; m must be >= 1.
LatticePoint lattice_point(const GeneratorTuple& t, const std::vector<std::size_t>& perm,
                           const SliceId& s);

/// Number of strictly increasing k-tuples in [1, (n-1)/2]: C((n-1)/2, k).
BigCount count_tuples(const OddModulus& n, std::int64_t k);

/// Visit every tuple of A_k(n) exactly once in lexicographic order.
/// fn receives the tuple as a span of k values valid during the call.
void for_each_tuple(const OddModulus& n, std::int64_t k,
                    const std::function<void(const std::int64_t*)>& fn);

/// Lexicographic rank -> tuple (combinatorial number system). Together with
/// for_each_tuple_range this lets callers split the stream into independent
/// index ranges for parallel consumption.
std::vector<std::int64_t> unrank_tuple(const OddModulus& n, std::int64_t k, std::uint64_t rank);

void for_each_tuple_range(const OddModulus& n, std::int64_t k, std::uint64_t from, std::uint64_t to,
                          const std::function<void(const std::int64_t*)>& fn);

} // namespace cayley
