#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cayley/budget.hpp"
#include "cayley/core.hpp"

namespace cayley {

/// h_X(u) = prod_m (1 - lambda_m u + (r-1) u^2), degree 2n, plus the rank
/// of the fundamental group r(X) = |E| - |V| + 1. An undirected loop counts
/// as one edge, so |E| = n k + n [r odd].
struct IharaPolynomial {
    std::int64_t n = 0;
    std::int64_t r = 0;
    std::int64_t rank = 0;
    std::vector<double> coeffs; // coeffs[i] multiplies u^i; coeffs[0] == 1
};

/// Expand the spectral product in double precision. Throws budget_exceeded
/// if a coefficient magnitude passes 1e300 (the (r-1)^n growth for r >= 3).
IharaPolynomial ihara_polynomial(const CayleySpec& spec, WorkBudget* budget = nullptr);

/// zeta_X(u)^{-1} = (1 - u^2)^{r(X)-1} h_X(u), as a coefficient vector of
/// degree 2(r(X)-1) + 2n.
std::vector<double> zeta_inverse(const CayleySpec& spec, WorkBudget* budget = nullptr);

/// Evaluate a coefficient vector at u (Horner).
double eval_poly(const std::vector<double>& coeffs, double u);

/// The two roots of 1 - alpha u + (r-1) u^2, i.e. the poles attached to
/// eigenvalue alpha: (alpha ± sqrt(alpha^2 - 4(r-1))) / (2(r-1)), complex
/// when alpha^2 < 4(r-1). Their product is 1/(r-1); when alpha^2 <= 4(r-1)
/// both lie on the circle of radius 1/sqrt(r-1).
struct PolePair {
    std::complex<double> plus;
    std::complex<double> minus;
};

PolePair pole_pair(double alpha, std::int64_t r);

/// Fraction of nontrivial pairs (tuple, m != 0) whose eigenvalue satisfies
/// |lambda| <= 2 sqrt(r-1), against the limiting mass of the corresponding
/// cosine-sum interval.
struct RamanujanReport {
    std::int64_t n = 0, k = 0, r = 0;
    double threshold = 0.0; // 2 sqrt(r-1)
    BigCount count = BigCount(0);
    BigCount total = BigCount(0);
    double empirical = 0.0;
    double predicted = 0.0;
};

RamanujanReport ramanujan_fraction(const OddModulus& n, std::int64_t k, bool includes_zero,
                                   double tolerance = 1e-8, WorkBudget* budget = nullptr,
                                   int threads = 1);

} // namespace cayley
