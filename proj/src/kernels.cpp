#include "kernels_table.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace w1kit::kernels {

namespace {

using detail::KernelTable;

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect_backend() {
    if (const char* env = std::getenv("W1KIT_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0)
            return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2())
            return Backend::avx2;
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

struct State {
    std::atomic<const KernelTable*> table;
    std::atomic<Backend> backend;
    State() {
        Backend b = detect_backend();
        backend.store(b);
        table.store(b == Backend::avx2 ? &detail::avx2_table() : &detail::scalar_table());
    }
};

State& state() {
    static State s;
    return s;
}

inline const KernelTable& tab() { return *state().table.load(std::memory_order_relaxed); }

} // namespace

Backend active_backend() { return state().backend.load(std::memory_order_relaxed); }

const char* backend_name() {
    return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend b) {
    return b == Backend::scalar || cpu_has_avx2();
}

bool set_backend(Backend b) {
    if (!backend_supported(b))
        return false;
    state().backend.store(b);
    state().table.store(b == Backend::avx2 ? &detail::avx2_table() : &detail::scalar_table());
    return true;
}

void horner(std::span<const double> coeffs, std::span<const double> xs,
            std::span<double> out) {
    tab().horner(coeffs, xs, out);
}

void horner_dd(std::span<const double> hi, std::span<const double> lo,
               std::span<const double> xs, std::span<double> out) {
    tab().horner_dd(hi, lo, xs, out);
}

void clenshaw(std::span<const double> a, std::span<const double> xs,
              std::span<double> out) {
    tab().clenshaw(a, xs, out);
}

void pow_elements(std::span<const double> xs, long long k, std::span<double> out) {
    tab().pow_elements(xs, k, out);
}

double psi_mean(std::span<const double> xs, double inv_scale, int terms) {
    return tab().psi_mean(xs, inv_scale, terms);
}

double sum(std::span<const double> xs) { return tab().sum(xs); }

double weighted_ipow_sum(std::span<const double> xs, std::span<const double> ws,
                         long long k) {
    return tab().weighted_ipow_sum(xs, ws, k);
}

double ipow_mean(std::span<const double> xs, long long k) {
    return tab().ipow_mean(xs, k);
}

double tail_abs_ipow_sum(std::span<const double> xs, std::span<const double> ws,
                         long long p, double cutoff) {
    return tab().tail_abs_ipow_sum(xs, ws, p, cutoff);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    return tab().max_abs_diff(a, b);
}

void power_sums_mean(std::span<const double> xs, long long kmax, std::span<double> out) {
    tab().power_sums_mean(xs, kmax, out);
}

void project2(std::span<const double> xy, double t0, double t1, std::span<double> out) {
    tab().project2(xy, t0, t1, out);
}

} // namespace w1kit::kernels
