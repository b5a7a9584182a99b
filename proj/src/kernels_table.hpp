#pragma once

#include "w1kit/kernels.hpp"

namespace w1kit::kernels::detail {

struct KernelTable {
    void (*horner)(std::span<const double>, std::span<const double>, std::span<double>);
    void (*horner_dd)(std::span<const double>, std::span<const double>,
                      std::span<const double>, std::span<double>);
    void (*clenshaw)(std::span<const double>, std::span<const double>, std::span<double>);
    void (*pow_elements)(std::span<const double>, long long, std::span<double>);
    double (*psi_mean)(std::span<const double>, double, int);
    double (*sum)(std::span<const double>);
    double (*weighted_ipow_sum)(std::span<const double>, std::span<const double>, long long);
    double (*ipow_mean)(std::span<const double>, long long);
    double (*tail_abs_ipow_sum)(std::span<const double>, std::span<const double>,
                                long long, double);
    double (*max_abs_diff)(std::span<const double>, std::span<const double>);
    void (*power_sums_mean)(std::span<const double>, long long, std::span<double>);
    void (*project2)(std::span<const double>, double, double, std::span<double>);
};

const KernelTable& scalar_table();
const KernelTable& avx2_table();

} // namespace w1kit::kernels::detail
