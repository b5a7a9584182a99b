#include "kernels_table.hpp"

#include <cassert>
#include <cmath>
#include <limits>

// Reference implementations. Per-point kernels stick to fma so the AVX2
// variants can reproduce them bit-for-bit; reductions carry a Neumaier
// compensation term.

namespace w1kit::kernels::detail {
namespace {

inline void neumaier_add(double& s, double& c, double v) {
    double t = s + v;
    if (std::fabs(s) >= std::fabs(v))
        c += (s - t) + v;
    else
        c += (v - t) + s;
    s = t;
}

void horner_scalar(std::span<const double> coeffs, std::span<const double> xs,
                   std::span<double> out) {
    assert(out.size() == xs.size() && !coeffs.empty());
    const std::size_t m = coeffs.size() - 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double x = xs[i];
        double acc = coeffs[m];
        for (std::size_t j = m; j-- > 0;)
            acc = std::fma(acc, x, coeffs[j]);
        out[i] = acc;
    }
}

void horner_dd_scalar(std::span<const double> hi, std::span<const double> lo,
                      std::span<const double> xs, std::span<double> out) {
    assert(out.size() == xs.size() && !hi.empty());
    assert(lo.empty() || lo.size() == hi.size());
    const std::size_t m = hi.size() - 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        double sh = hi[m];
        double sl = lo.empty() ? 0.0 : lo[m];
        for (std::size_t j = m; j-- > 0;) {
            // (sh, sl) <- (sh, sl)*x + (hi[j], lo[j]) with error-free products
            double ph = sh * x;
            double pl = std::fma(sh, x, -ph);
            pl = std::fma(sl, x, pl);
            double s = ph + hi[j];
            double bb = s - ph;
            double err = (ph - (s - bb)) + (hi[j] - bb);
            sl = pl + err + (lo.empty() ? 0.0 : lo[j]);
            sh = s + sl;
            sl -= (sh - s);
        }
        out[i] = sh + sl;
    }
}

void clenshaw_scalar(std::span<const double> a, std::span<const double> xs,
                     std::span<double> out) {
    assert(out.size() == xs.size() && !a.empty());
    const std::size_t m = a.size() - 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double twox = 2.0 * x;
        double b1 = 0.0, b2 = 0.0;
        for (std::size_t k = m; k > 0; --k) {
            double b0 = std::fma(twox, b1, a[k] - b2);
            b2 = b1;
            b1 = b0;
        }
        out[i] = std::fma(x, b1, a[0] - b2);
    }
}

inline double ipow(double x, long long k) {
    double result = 1.0;
    double base = x;
    long long e = k;
    while (e > 0) {
        if (e & 1)
            result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

void pow_elements_scalar(std::span<const double> xs, long long k, std::span<double> out) {
    assert(out.size() == xs.size() && k >= 0);
    for (std::size_t i = 0; i < xs.size(); ++i)
        out[i] = ipow(xs[i], k);
}

double psi_mean_scalar(std::span<const double> xs, double inv_scale, int terms) {
    assert(terms >= 1);
    double s = 0.0, c = 0.0;
    for (double v : xs) {
        double u = v * inv_scale;
        double u2 = u * u;
        double term = u2;
        double acc = u2;
        for (int j = 2; j <= terms; ++j) {
            term = term * u2 / static_cast<double>(j);
            acc += term;
        }
        neumaier_add(s, c, acc);
    }
    double total = s + c;
    if (std::isnan(total))
        total = std::numeric_limits<double>::infinity();
    return total / static_cast<double>(xs.size());
}

double sum_scalar(std::span<const double> xs) {
    double s = 0.0, c = 0.0;
    for (double v : xs)
        neumaier_add(s, c, v);
    return s + c;
}

double weighted_ipow_sum_scalar(std::span<const double> xs, std::span<const double> ws,
                                long long k) {
    assert(xs.size() == ws.size() && k >= 0);
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        neumaier_add(s, c, ws[i] * ipow(xs[i], k));
    return s + c;
}

double ipow_mean_scalar(std::span<const double> xs, long long k) {
    assert(k >= 0);
    double s = 0.0, c = 0.0;
    for (double v : xs)
        neumaier_add(s, c, ipow(v, k));
    return (s + c) / static_cast<double>(xs.size());
}

double tail_abs_ipow_sum_scalar(std::span<const double> xs, std::span<const double> ws,
                                long long p, double cutoff) {
    assert(xs.size() == ws.size() && p >= 0);
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double a = std::fabs(xs[i]);
        if (a > cutoff)
            neumaier_add(s, c, ws[i] * ipow(a, p));
    }
    return s + c;
}

double max_abs_diff_scalar(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

void power_sums_mean_scalar(std::span<const double> xs, long long kmax,
                            std::span<double> out) {
    assert(out.size() == static_cast<std::size_t>(kmax) + 1);
    for (auto& v : out)
        v = 0.0;
    for (double x : xs) {
        double p = 1.0;
        for (long long j = 0; j <= kmax; ++j) {
            out[static_cast<std::size_t>(j)] += p;
            p *= x;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(xs.size());
    for (auto& v : out)
        v *= inv_n;
}

void project2_scalar(std::span<const double> xy, double t0, double t1,
                     std::span<double> out) {
    assert(xy.size() == 2 * out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::fma(t1, xy[2 * i + 1], t0 * xy[2 * i]);
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable t = {
        horner_scalar,       horner_dd_scalar, clenshaw_scalar,
        pow_elements_scalar, psi_mean_scalar,  sum_scalar,
        weighted_ipow_sum_scalar, ipow_mean_scalar, tail_abs_ipow_sum_scalar,
        max_abs_diff_scalar, power_sums_mean_scalar, project2_scalar,
    };
    return t;
}

} // namespace w1kit::kernels::detail
