#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayley/bigcount.hpp"
#include "cayley/budget.hpp"
#include "cayley/core.hpp"
#include "cayley/spectra.hpp"

namespace cayley {

/// One persisted experiment row. abs_error = |probability - reference_mass|
/// whenever a reference is attached.
struct SweepRecord {
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::int64_t r = 0;
    std::optional<std::int64_t> m;               // slice rows only
    double a = 0.0, b = 0.0;                     // J (eigenvalue scale)
    double c = 0.0, d = 0.0;                     // I (cosine-sum scale)
    BigCount exact_count = BigCount(0);          // exact path
    double fast_count = 0.0;                     // fast path (real-valued)
    BigCount total_count = BigCount(0);
    double probability = 0.0;
    double reference_mass = 0.0;
    double abs_error = 0.0;
    double deviation_budget = 0.0;               // fast path: guaranteed count-scale budget
    std::string method = "exact";
    double tolerance = 0.0;
    std::uint64_t seed = 0;
};

/// #{a in A_k(n) : tau_m(a) in [c, d]}, by full enumeration of the slice.
BigCount count_slice(const OddModulus& n, std::int64_t k, std::int64_t m, double c, double d,
                     WorkBudget* budget = nullptr);

/// Exact Prob_I(n, k) = #S_I(n,k) / (n * C((n-1)/2, k)); every slice is
/// enumerated (slices m and n-m share their count, so only m <= (n-1)/2 is
/// walked). Slices are independent work units; partial counts are integers,
/// so the result does not depend on the thread count.
SweepRecord prob_exact(const OddModulus& n, std::int64_t k, double c, double d,
                       WorkBudget* budget = nullptr, int threads = 1);

/// Geometric fast path: slices grouped by d = gcd(m, n),
///   fast = sum_{d | n} phi(n/d) ((d+1)/2)^k #Omega_{n/d}(I) / k!,
/// one lattice count per distinct divisor. Ignores the S'' tuples and the
/// lattice boundary defects; deviation_budget carries the guaranteed
/// count-scale bound C_k d(n) n^k with C_k = 4 C(k,2) 2^(k-1) + 1.
SweepRecord prob_fast(const OddModulus& n, std::int64_t k, double c, double d,
                      WorkBudget* budget = nullptr, int threads = 1);

/// Per-divisor-class S'' census. The Primed/DoublePrimed split depends on m
/// only through n1 = n/gcd(m, n), so each divisor class is classified once.
struct DoublePrimeClass {
    std::int64_t d;         // gcd value of the class
    std::int64_t n1;        // n/d
    std::int64_t slices;    // #m in [1, n-1] with gcd(m, n) = d, i.e. phi(n/d)
    BigCount per_slice;     // #S''(n, k, m) for any such m
    double per_slice_bound; // C_k n^k / n1
};

struct DoublePrimeReport {
    std::int64_t n = 0, k = 0;
    double ck = 0.0;                      // the polynomial constant used
    std::vector<DoublePrimeClass> classes; // m >= 1 classes, ascending d
    BigCount m0_count = BigCount(0);      // #S''(n, k, 0) = C((n-1)/2, k)
    BigCount total = BigCount(0);
    double global_bound = 0.0;            // C_k d(n) n^k
    bool per_slice_ok = true;
    bool global_ok = true;
    double tight_per_slice_c = 0.0; // smallest C with #S'' < C n^k / n1 on all slices
    double tight_global_c = 0.0;    // smallest C with total < C d(n) n^k
};

DoublePrimeReport count_doubleprime(const OddModulus& n, std::int64_t k,
                                    WorkBudget* budget = nullptr);

/// Pillai's arithmetical function g(n) = sum_{d|n} phi(d) (n/d).
BigCount pillai(std::int64_t n);
std::int64_t divisor_count(std::int64_t n);
std::int64_t omega(std::int64_t n);
std::int64_t totient(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

/// g(n) <= 27 n (log n / omega(n))^omega(n), for n >= 2 (true for n = 1).
bool broughan_check(std::int64_t n);

enum class IdentityTag { slice_lift, point_fibration, slice_point_count };

/// Both sides of one of the slice identities, computed exactly. The
/// identities hold only away from boundary residues, so this is an audit:
/// it reports the defect |measured - claimed| and the smallest C with
/// defect <= C * d * n^(k-1).
struct DefectReport {
    IdentityTag tag;
    std::int64_t n, k, m, d, n1, m1;
    std::optional<std::pair<double, double>> interval;
    BigCount measured = BigCount(0); // left side
    BigCount claimed = BigCount(0);  // right side per the identity
    double defect = 0.0;
    double normalized = 0.0; // defect / (d * n^(k-1))
};

DefectReport audit_identity(IdentityTag tag, const OddModulus& n, std::int64_t k, std::int64_t m,
                         std::optional<std::pair<double, double>> interval = std::nullopt,
                         WorkBudget* budget = nullptr);

/// Convergence experiment: abs_error(n) = |prob_exact - conv_mass| over the
/// grid, plus the least-squares slope of log(err) vs log(n). Grid points
/// with abs_error below 1e-12 are treated as exact hits and excluded from
/// the fit; when every point is excluded the result is flagged all_zero.
struct ConvergenceResult {
    std::vector<SweepRecord> records;
    double slope = 0.0;
    bool all_zero = false;
    std::size_t fitted_points = 0;
};

ConvergenceResult convergence_experiment(std::int64_t k, double c, double d,
                                         const std::vector<std::int64_t>& n_grid,
                                         double tolerance = 1e-8, WorkBudget* budget = nullptr,
                                         int threads = 1);

/// Eigenvalue histogram over [-r, r] with uniform bins (half-open, last bin
/// closed), over all pairs (tuple, m); predicted[i] is the limit mass of
/// bin i.
struct EigenHistogram {
    std::int64_t n = 0, k = 0, r = 0, bins = 0;
    std::vector<double> edges;        // bins+1 edges on the eigenvalue scale
    std::vector<std::uint64_t> counts;
    BigCount total = BigCount(0);
    std::vector<double> predicted;
};

EigenHistogram eigen_histogram(const OddModulus& n, std::int64_t k, bool includes_zero,
                               std::int64_t bins, double tolerance = 1e-8,
                               WorkBudget* budget = nullptr, int threads = 1);

/// The S'' polynomial constant 4 C(k,2) 2^(k-1) + 1.
double doubleprime_constant(std::int64_t k);

} // namespace cayley
