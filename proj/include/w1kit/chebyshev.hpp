#pragma once

#include "w1kit/dd.hpp"

#include <span>
#include <vector>

namespace w1kit::chebyshev {

// A polynomial in the monomial basis: coeffs[j] multiplies x^j.
// coeffs_lo, when nonempty, holds trailing correction terms from a
// double-double construction; evaluation uses them for accuracy but all
// contracts (bounds, printing) refer to coeffs alone.
struct MonomialCoeffs {
    int degree = 0;
    std::vector<double> coeffs;
    std::vector<double> coeffs_lo;
};

struct Options {
    int degree_cap = 256;
};

// Exact monomial coefficients of T_k via the three-term recurrence
// T_{k+1} = 2x T_k - T_{k-1}. The recurrence runs in double-double, so the
// integer coefficients are exact well past the 2^53 ceiling of plain doubles;
// the returned coeffs are those integers rounded to double, with coeffs_lo
// carrying the residual. Throws on k < 0 or k > degree_cap.
MonomialCoeffs chebyshev_monomial(int k, const Options& opts = {});

// |[T_k]_0| <= 1 and max_{1<=j<=k} |[T_k]_j| <= (1+sqrt 2)^k.
bool verify_coeff_bound(int k, const Options& opts = {});

// Horner evaluation (compensated when coeffs_lo is present).
double eval_monomial(const MonomialCoeffs& p, double x);
void eval_monomial(const MonomialCoeffs& p, std::span<const double> xs,
                   std::span<double> out);

// Clenshaw evaluation of sum_k a[k] T_k(x) for x in [-1, 1]; the
// well-conditioned reference path.
double eval_chebyshev_series(std::span<const double> a, double x);
void eval_chebyshev_series(std::span<const double> a, std::span<const double> xs,
                           std::span<double> out);

// Internal double-double recurrence, exposed for the monomial conversion in
// the Jackson construction (coefficients exact up to ~2^106).
std::vector<dd> chebyshev_monomial_dd(int k, const Options& opts = {});

} // namespace w1kit::chebyshev
