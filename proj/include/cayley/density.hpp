#pragma once

#include <cstdint>

#include "cayley/budget.hpp"

namespace cayley {

/// Normalized arcsine density 1/(pi*sqrt(1-u^2)) on (-1, 1), 0 elsewhere.
/// Returns 0 at u = ±1 as well: the two points carry no mass and the
/// integral paths never evaluate the density there.
double arcsine_pdf(double u);

/// Arcsine CDF: 0 for x <= -1, 1/2 + asin(x)/pi on [-1, 1], 1 for x >= 1.
double arcsine_cdf(double x);

enum class MassMethod { Quadrature, MonteCarlo };

/// A request for the mass of the k-fold arcsine convolution on [c, d].
struct DensityQuery {
    int k = 1;
    double c = 0.0;
    double d = 0.0;
    MassMethod method = MassMethod::Quadrature;
    double tolerance = 1e-8;       // quadrature refinement target
    std::uint64_t samples = 0;     // Monte Carlo only
    std::uint64_t seed = 0;        // Monte Carlo only
};

struct MassEstimate {
    double value;  // in [0, 1]
    double error;  // quadrature: last refinement difference; MC: standard error
};

/// Integral of the k-fold arcsine convolution over [c, d] by quadrature.
///
/// All integration happens in the angle domain: with u_i = cos(theta_i) and
/// theta_i uniform on [0, pi], the mass is the probability that
/// sum_i cos(theta_i) lands in [c, d], which removes every endpoint
/// singularity of the density. The CDF of the partial sums is maintained
/// per level on a uniform grid of G panels using composite Gauss-Legendre
/// in theta (level one is the arcsine CDF in closed form; level two places
/// quadrature nodes so that the square-root crossings of level one are
/// resolved exactly). G doubles until two successive estimates differ by
/// less than `tolerance`; the reported error is that last difference.
///
/// Throws tolerance_not_met when the panel cap (2^22) is reached and
/// budget_exceeded when the work meter runs out.
MassEstimate conv_mass(int k, double c, double d, double tolerance = 1e-8,
                       WorkBudget* budget = nullptr, int threads = 1);

/// Monte Carlo estimate of the same mass: `samples` draws of
/// sum_i cos(pi * u_i) with u_i from the seeded counter generator
/// (SplitMix64 in counter mode; see rng.hpp). Identical seed gives an
/// identical result for any thread count. error is the binomial standard
/// error sqrt(p(1-p)/samples).
MassEstimate conv_mass_mc(int k, double c, double d, std::uint64_t samples, std::uint64_t seed,
                          int threads = 1);

/// Vol(B_k([c,d])) = 2^-k * conv_mass(k, [c, d]).
MassEstimate box_volume(int k, double c, double d, double tolerance = 1e-8,
                        WorkBudget* budget = nullptr, int threads = 1);

/// Dispatch on query.method.
MassEstimate mass(const DensityQuery& q, WorkBudget* budget = nullptr, int threads = 1);

} // namespace cayley
