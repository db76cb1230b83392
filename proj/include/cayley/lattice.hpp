#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cayley/bigcount.hpp"
#include "cayley/budget.hpp"
#include "cayley/core.hpp"

namespace cayley {

/// Region inside the box [0, 1/2)^k: optionally restricted to
/// sum_i cos(2 pi x_i) in [c, d], optionally to pairwise distinct
/// coordinates.
struct RegionSpec {
    std::int64_t k = 1;
    std::optional<std::pair<double, double>> interval; // [c, d]
    bool distinct_coords = false;
};

bool in_region(std::span<const double> x, const RegionSpec& r);

/// Exact number of lattice vectors b in [0, (n-1)/2]^k (coordinates b_i/n)
/// inside the region. Counts are independent of the enumeration order: the
/// cosine sum of a point is evaluated once per coordinate multiset, in
/// nondecreasing coordinate order, and ordered tuples are counted by
/// multiplicity.
BigCount count_lattice(const OddModulus& n, const RegionSpec& r, WorkBudget* budget = nullptr,
                       int threads = 1);

/// Strictly increasing variant: lattice points with b_1 < ... < b_k inside
/// the region, i.e. count_lattice(distinct)/k!.
BigCount count_lattice_strict(const OddModulus& n, std::int64_t k, double c, double d,
                              WorkBudget* budget = nullptr);

/// Exhaustive check of the shift property: every counted point of
/// Omega_n([c,d]), shifted by (1/n, ..., 1/n), still satisfies the cosine
/// sum condition for the enlarged interval [c - 2 pi k/n, d + 2 pi k/n].
/// Box membership is evaluated through the cosine sum (the fold kappa maps
/// any shifted coordinate back into [0, 1/2] without changing its cosine).
struct ShiftReport {
    bool pass = true;
    std::uint64_t checked = 0;
    std::vector<std::int64_t> counterexample; // first failing point, if any
    double shifted_sum = 0.0;
};

ShiftReport shift_check(const OddModulus& n, std::int64_t k, double c, double d,
                        WorkBudget* budget = nullptr);

/// | #Omega_n(I)/n^k - Vol(B_k(I)) |, the quantity whose n-decay the rate
/// experiments track.
double volume_count_gap(const OddModulus& n, std::int64_t k, double c, double d,
                        double tolerance = 1e-8, WorkBudget* budget = nullptr, int threads = 1);

} // namespace cayley
