#include "kernels_table.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <vector>

// AVX2+FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be reached through the dispatch table after a CPU check.
//
// Per-point kernels perform exactly the operations of the scalar reference,
// four lanes at a time, so results match bit-for-bit (remainders reuse the
// scalar code path inline). Reductions keep four Neumaier-compensated lanes
// and merge them in a fixed order.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

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

inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

struct VecAccum {
    __m256d s = _mm256_setzero_pd();
    __m256d c = _mm256_setzero_pd();

    inline void add(__m256d v) {
        __m256d t = _mm256_add_pd(s, v);
        __m256d swap = _mm256_cmp_pd(abs_pd(s), abs_pd(v), _CMP_GE_OQ);
        __m256d big = _mm256_blendv_pd(v, s, swap);
        __m256d small = _mm256_blendv_pd(s, v, swap);
        c = _mm256_add_pd(c, _mm256_add_pd(_mm256_sub_pd(big, t), small));
        s = t;
    }

    // merge lanes 0..3 into a scalar Neumaier pair, fixed order
    inline void drain(double& os, double& oc) const {
        alignas(32) double ls[4], lc[4];
        _mm256_store_pd(ls, s);
        _mm256_store_pd(lc, c);
        for (int l = 0; l < 4; ++l) {
            neumaier_add(os, oc, ls[l]);
            oc += lc[l];
        }
    }
};

void horner_avx2(std::span<const double> coeffs, std::span<const double> xs,
                 std::span<double> out) {
    assert(out.size() == xs.size() && !coeffs.empty());
    const std::size_t m = coeffs.size() - 1;
    const std::size_t n4 = xs.size() / 4 * 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d x = _mm256_loadu_pd(xs.data() + i);
        __m256d acc = _mm256_set1_pd(coeffs[m]);
        for (std::size_t j = m; j-- > 0;)
            acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(coeffs[j]));
        _mm256_storeu_pd(out.data() + i, acc);
    }
    for (std::size_t i = n4; i < xs.size(); ++i) {
        double x = xs[i];
        double acc = coeffs[m];
        for (std::size_t j = m; j-- > 0;)
            acc = std::fma(acc, x, coeffs[j]);
        out[i] = acc;
    }
}

void horner_dd_avx2(std::span<const double> hi, std::span<const double> lo,
                    std::span<const double> xs, std::span<double> out) {
    assert(out.size() == xs.size() && !hi.empty());
    assert(lo.empty() || lo.size() == hi.size());
    const std::size_t m = hi.size() - 1;
    const bool has_lo = !lo.empty();
    const std::size_t n4 = xs.size() / 4 * 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d x = _mm256_loadu_pd(xs.data() + i);
        __m256d sh = _mm256_set1_pd(hi[m]);
        __m256d sl = _mm256_set1_pd(has_lo ? lo[m] : 0.0);
        for (std::size_t j = m; j-- > 0;) {
            __m256d ph = _mm256_mul_pd(sh, x);
            __m256d pl = _mm256_fmsub_pd(sh, x, ph);
            pl = _mm256_fmadd_pd(sl, x, pl);
            __m256d cj = _mm256_set1_pd(hi[j]);
            __m256d s = _mm256_add_pd(ph, cj);
            __m256d bb = _mm256_sub_pd(s, ph);
            __m256d err = _mm256_add_pd(_mm256_sub_pd(ph, _mm256_sub_pd(s, bb)),
                                        _mm256_sub_pd(cj, bb));
            sl = _mm256_add_pd(pl, err);
            if (has_lo)
                sl = _mm256_add_pd(sl, _mm256_set1_pd(lo[j]));
            sh = _mm256_add_pd(s, sl);
            sl = _mm256_sub_pd(sl, _mm256_sub_pd(sh, s));
        }
        _mm256_storeu_pd(out.data() + i, _mm256_add_pd(sh, sl));
    }
    for (std::size_t i = n4; i < xs.size(); ++i) {
        const double x = xs[i];
        double sh = hi[m];
        double sl = has_lo ? lo[m] : 0.0;
        for (std::size_t j = m; j-- > 0;) {
            double ph = sh * x;
            double pl = std::fma(sh, x, -ph);
            pl = std::fma(sl, x, pl);
            double s = ph + hi[j];
            double bb = s - ph;
            double err = (ph - (s - bb)) + (hi[j] - bb);
            sl = pl + err + (has_lo ? lo[j] : 0.0);
            sh = s + sl;
            sl -= (sh - s);
        }
        out[i] = sh + sl;
    }
}

void clenshaw_avx2(std::span<const double> a, std::span<const double> xs,
                   std::span<double> out) {
    assert(out.size() == xs.size() && !a.empty());
    const std::size_t m = a.size() - 1;
    const std::size_t n4 = xs.size() / 4 * 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d x = _mm256_loadu_pd(xs.data() + i);
        __m256d twox = _mm256_add_pd(x, x);
        __m256d b1 = _mm256_setzero_pd();
        __m256d b2 = _mm256_setzero_pd();
        for (std::size_t k = m; k > 0; --k) {
            __m256d b0 = _mm256_fmadd_pd(twox, b1,
                                         _mm256_sub_pd(_mm256_set1_pd(a[k]), b2));
            b2 = b1;
            b1 = b0;
        }
        _mm256_storeu_pd(out.data() + i,
                         _mm256_fmadd_pd(x, b1, _mm256_sub_pd(_mm256_set1_pd(a[0]), b2)));
    }
    for (std::size_t i = n4; i < xs.size(); ++i) {
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

inline double ipow_s(double x, long long k) {
    double result = 1.0;
    double base = x;
    while (k > 0) {
        if (k & 1)
            result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

inline __m256d ipow_v(__m256d x, long long k) {
    __m256d result = _mm256_set1_pd(1.0);
    __m256d base = x;
    while (k > 0) {
        if (k & 1)
            result = _mm256_mul_pd(result, base);
        base = _mm256_mul_pd(base, base);
        k >>= 1;
    }
    return result;
}

void pow_elements_avx2(std::span<const double> xs, long long k, std::span<double> out) {
    assert(out.size() == xs.size() && k >= 0);
    const std::size_t n4 = xs.size() / 4 * 4;
    for (std::size_t i = 0; i < n4; i += 4)
        _mm256_storeu_pd(out.data() + i, ipow_v(_mm256_loadu_pd(xs.data() + i), k));
    for (std::size_t i = n4; i < xs.size(); ++i)
        out[i] = ipow_s(xs[i], k);
}

double psi_mean_avx2(std::span<const double> xs, double inv_scale, int terms) {
    assert(terms >= 1);
    const std::size_t n4 = xs.size() / 4 * 4;
    VecAccum acc;
    const __m256d inv = _mm256_set1_pd(inv_scale);
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d u = _mm256_mul_pd(_mm256_loadu_pd(xs.data() + i), inv);
        __m256d u2 = _mm256_mul_pd(u, u);
        __m256d term = u2;
        __m256d val = u2;
        for (int j = 2; j <= terms; ++j) {
            term = _mm256_div_pd(_mm256_mul_pd(term, u2),
                                 _mm256_set1_pd(static_cast<double>(j)));
            val = _mm256_add_pd(val, term);
        }
        acc.add(val);
    }
    double s = 0.0, c = 0.0;
    acc.drain(s, c);
    for (std::size_t i = n4; i < xs.size(); ++i) {
        double u = xs[i] * inv_scale;
        double u2 = u * u;
        double term = u2;
        double val = u2;
        for (int j = 2; j <= terms; ++j) {
            term = term * u2 / static_cast<double>(j);
            val += term;
        }
        neumaier_add(s, c, val);
    }
    double total = s + c;
    if (std::isnan(total))
        total = std::numeric_limits<double>::infinity();
    return total / static_cast<double>(xs.size());
}

double sum_avx2(std::span<const double> xs) {
    const std::size_t n4 = xs.size() / 4 * 4;
    VecAccum acc;
    for (std::size_t i = 0; i < n4; i += 4)
        acc.add(_mm256_loadu_pd(xs.data() + i));
    double s = 0.0, c = 0.0;
    acc.drain(s, c);
    for (std::size_t i = n4; i < xs.size(); ++i)
        neumaier_add(s, c, xs[i]);
    return s + c;
}

double weighted_ipow_sum_avx2(std::span<const double> xs, std::span<const double> ws,
                              long long k) {
    assert(xs.size() == ws.size() && k >= 0);
    const std::size_t n4 = xs.size() / 4 * 4;
    VecAccum acc;
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d p = ipow_v(_mm256_loadu_pd(xs.data() + i), k);
        acc.add(_mm256_mul_pd(_mm256_loadu_pd(ws.data() + i), p));
    }
    double s = 0.0, c = 0.0;
    acc.drain(s, c);
    for (std::size_t i = n4; i < xs.size(); ++i)
        neumaier_add(s, c, ws[i] * ipow_s(xs[i], k));
    return s + c;
}

double ipow_mean_avx2(std::span<const double> xs, long long k) {
    assert(k >= 0);
    const std::size_t n4 = xs.size() / 4 * 4;
    VecAccum acc;
    for (std::size_t i = 0; i < n4; i += 4)
        acc.add(ipow_v(_mm256_loadu_pd(xs.data() + i), k));
    double s = 0.0, c = 0.0;
    acc.drain(s, c);
    for (std::size_t i = n4; i < xs.size(); ++i)
        neumaier_add(s, c, ipow_s(xs[i], k));
    return (s + c) / static_cast<double>(xs.size());
}

double tail_abs_ipow_sum_avx2(std::span<const double> xs, std::span<const double> ws,
                              long long p, double cutoff) {
    assert(xs.size() == ws.size() && p >= 0);
    const std::size_t n4 = xs.size() / 4 * 4;
    VecAccum acc;
    const __m256d cut = _mm256_set1_pd(cutoff);
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d a = abs_pd(_mm256_loadu_pd(xs.data() + i));
        __m256d keep = _mm256_cmp_pd(a, cut, _CMP_GT_OQ);
        __m256d v = _mm256_mul_pd(_mm256_loadu_pd(ws.data() + i), ipow_v(a, p));
        acc.add(_mm256_blendv_pd(zero, v, keep));
    }
    double s = 0.0, c = 0.0;
    acc.drain(s, c);
    for (std::size_t i = n4; i < xs.size(); ++i) {
        double a = std::fabs(xs[i]);
        if (a > cutoff)
            neumaier_add(s, c, ws[i] * ipow_s(a, p));
    }
    return s + c;
}

double max_abs_diff_avx2(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    const std::size_t n4 = a.size() / 4 * 4;
    __m256d vm = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a.data() + i),
                                         _mm256_loadu_pd(b.data() + i)));
        vm = _mm256_max_pd(vm, d);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (std::size_t i = n4; i < a.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

void power_sums_mean_avx2(std::span<const double> xs, long long kmax,
                          std::span<double> out) {
    assert(out.size() == static_cast<std::size_t>(kmax) + 1);
    const std::size_t nk = out.size();
    std::vector<__m256d> acc(nk, _mm256_setzero_pd());
    const std::size_t n4 = xs.size() / 4 * 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d x = _mm256_loadu_pd(xs.data() + i);
        __m256d p = _mm256_set1_pd(1.0);
        for (std::size_t j = 0; j < nk; ++j) {
            acc[j] = _mm256_add_pd(acc[j], p);
            p = _mm256_mul_pd(p, x);
        }
    }
    alignas(32) double lanes[4];
    for (std::size_t j = 0; j < nk; ++j) {
        _mm256_store_pd(lanes, acc[j]);
        out[j] = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    }
    for (std::size_t i = n4; i < xs.size(); ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < nk; ++j) {
            out[j] += p;
            p *= xs[i];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(xs.size());
    for (auto& v : out)
        v *= inv_n;
}

void project2_avx2(std::span<const double> xy, double t0, double t1,
                   std::span<double> out) {
    assert(xy.size() == 2 * out.size());
    const std::size_t n4 = out.size() / 4 * 4;
    const __m256d v0 = _mm256_set1_pd(t0);
    const __m256d v1 = _mm256_set1_pd(t1);
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d a = _mm256_loadu_pd(xy.data() + 2 * i);     // x0 y0 x1 y1
        __m256d b = _mm256_loadu_pd(xy.data() + 2 * i + 4); // x2 y2 x3 y3
        __m256d px = _mm256_unpacklo_pd(a, b);              // x0 x2 x1 x3
        __m256d py = _mm256_unpackhi_pd(a, b);              // y0 y2 y1 y3
        __m256d r = _mm256_fmadd_pd(v1, py, _mm256_mul_pd(v0, px));
        _mm256_storeu_pd(out.data() + i, _mm256_permute4x64_pd(r, 0xD8));
    }
    for (std::size_t i = n4; i < out.size(); ++i)
        out[i] = std::fma(t1, xy[2 * i + 1], t0 * xy[2 * i]);
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable t = {
        horner_avx2,       horner_dd_avx2, clenshaw_avx2,
        pow_elements_avx2, psi_mean_avx2,  sum_avx2,
        weighted_ipow_sum_avx2, ipow_mean_avx2, tail_abs_ipow_sum_avx2,
        max_abs_diff_avx2, power_sums_mean_avx2, project2_avx2,
    };
    return t;
}

} // namespace w1kit::kernels::detail

#else // no AVX2 at compile time (non-x86 target): alias the scalar table

namespace w1kit::kernels::detail {
const KernelTable& avx2_table() { return scalar_table(); }
} // namespace w1kit::kernels::detail

#endif
