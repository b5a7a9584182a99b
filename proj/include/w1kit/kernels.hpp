#pragma once

#include <cstddef>
#include <span>

// Data-parallel arithmetic kernels. Every routine has a scalar reference
// implementation and an AVX2+FMA variant; the active backend is chosen at
// runtime from CPU features (override with set_backend or the W1KIT_KERNELS
// environment variable, values "scalar" / "avx2").
//
// Per-point kernels (horner, horner_dd, clenshaw, pow_elements) perform the
// same floating-point operations in every backend and agree bit-for-bit.
// Reductions group partial sums differently (4 lanes vs sequential), so they
// agree only up to roundoff; both use Neumaier compensation.

namespace w1kit::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name();
bool backend_supported(Backend b);
// Returns false (and leaves the backend unchanged) if unsupported on this CPU.
bool set_backend(Backend b);

// out[i] = sum_j coeffs[j] * xs[i]^j, Horner with fma.
void horner(std::span<const double> coeffs, std::span<const double> xs,
            std::span<double> out);

// Compensated Horner over coefficient pairs hi[j] + lo[j] (lo may be empty).
// Accuracy is as if evaluated in roughly twice working precision, which the
// Chebyshev-to-monomial conversion needs at high degree.
void horner_dd(std::span<const double> hi, std::span<const double> lo,
               std::span<const double> xs, std::span<double> out);

// out[i] = sum_k a[k] T_k(xs[i]) via Clenshaw, xs in [-1, 1].
void clenshaw(std::span<const double> a, std::span<const double> xs,
              std::span<double> out);

// out[i] = xs[i]^k by binary exponentiation (k >= 0).
void pow_elements(std::span<const double> xs, long long k, std::span<double> out);

// mean over i of sum_{j=1}^{terms} (xs[i]*inv_scale)^(2j) / j!;
// saturates to +inf on overflow.
double psi_mean(std::span<const double> xs, double inv_scale, int terms);

// Neumaier-compensated reductions.
double sum(std::span<const double> xs);
double weighted_ipow_sum(std::span<const double> xs, std::span<const double> ws,
                         long long k);
double ipow_mean(std::span<const double> xs, long long k);
// sum over {i : |xs[i]| > cutoff} of ws[i] * |xs[i]|^p (integer p >= 0).
double tail_abs_ipow_sum(std::span<const double> xs, std::span<const double> ws,
                         long long p, double cutoff);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

// out[j] = (1/n) sum_i xs[i]^j for j = 0..kmax (out has kmax+1 entries).
void power_sums_mean(std::span<const double> xs, long long kmax,
                     std::span<double> out);

// out[i] = t0*xy[2i] + t1*xy[2i+1] (interleaved 2-d points).
void project2(std::span<const double> xy, double t0, double t1,
              std::span<double> out);

} // namespace w1kit::kernels
