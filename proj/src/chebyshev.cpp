#include "w1kit/chebyshev.hpp"

#include "w1kit/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace w1kit::chebyshev {

std::vector<dd> chebyshev_monomial_dd(int k, const Options& opts) {
    if (k < 0)
        throw std::invalid_argument("chebyshev_monomial: k must be nonnegative");
    if (k > opts.degree_cap)
        throw std::domain_error("chebyshev_monomial: degree " + std::to_string(k) +
                                " exceeds cap " + std::to_string(opts.degree_cap) +
                                " (coefficient magnitudes beyond safe float range)");
    std::vector<dd> prev = {dd_from(1.0)};
    if (k == 0)
        return prev;
    std::vector<dd> cur = {dd_from(0.0), dd_from(1.0)};
    for (int deg = 1; deg < k; ++deg) {
        std::vector<dd> next(static_cast<std::size_t>(deg) + 2, dd_from(0.0));
        for (int j = 0; j <= deg; ++j)
            next[static_cast<std::size_t>(j) + 1] = dd_mul(cur[static_cast<std::size_t>(j)], 2.0);
        for (int j = 0; j < deg; ++j)
            next[static_cast<std::size_t>(j)] =
                dd_sub(next[static_cast<std::size_t>(j)], prev[static_cast<std::size_t>(j)]);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

MonomialCoeffs chebyshev_monomial(int k, const Options& opts) {
    auto exact = chebyshev_monomial_dd(k, opts);
    MonomialCoeffs p;
    p.degree = k;
    p.coeffs.resize(exact.size());
    p.coeffs_lo.resize(exact.size());
    for (std::size_t j = 0; j < exact.size(); ++j) {
        p.coeffs[j] = exact[j].hi;
        p.coeffs_lo[j] = exact[j].lo;
    }
    return p;
}

bool verify_coeff_bound(int k, const Options& opts) {
    auto p = chebyshev_monomial(k, opts);
    if (std::fabs(p.coeffs[0]) > 1.0)
        return false;
    const double bound = std::pow(1.0 + std::sqrt(2.0), k);
    for (int j = 1; j <= k; ++j)
        if (std::fabs(p.coeffs[static_cast<std::size_t>(j)]) > bound)
            return false;
    return true;
}

double eval_monomial(const MonomialCoeffs& p, double x) {
    double out;
    kernels::horner_dd(p.coeffs, p.coeffs_lo, std::span<const double>(&x, 1),
                       std::span<double>(&out, 1));
    return out;
}

void eval_monomial(const MonomialCoeffs& p, std::span<const double> xs,
                   std::span<double> out) {
    kernels::horner_dd(p.coeffs, p.coeffs_lo, xs, out);
}

double eval_chebyshev_series(std::span<const double> a, double x) {
    double out;
    kernels::clenshaw(a, std::span<const double>(&x, 1), std::span<double>(&out, 1));
    return out;
}

void eval_chebyshev_series(std::span<const double> a, std::span<const double> xs,
                           std::span<double> out) {
    kernels::clenshaw(a, xs, out);
}

} // namespace w1kit::chebyshev
