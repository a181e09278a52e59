#pragma once

#include "goldbach/common.hpp"

#include <vector>

namespace gb {

/// omega(u) on the grid u_i = 1 + i h, 0 <= i <= (u_max - 1)/h.
struct OmegaTable {
    double u_max = 12;
    double h = 1.0 / 4096;
    std::vector<double> values;

    std::size_t per_unit() const { return static_cast<std::size_t>(std::lround(1.0 / h)); }
};

/// 1/h must be an integer >= 4 and u_max - 1 a multiple of h.
OmegaTable build_omega_table(double u_max = 12, double h = 1.0 / 4096);

/// omega(u); zero below 1, cubic interpolation within unit intervals.
double omega_eval(const OmegaTable &t, double u);

struct RoughCount {
    u64 exact = 0;
    double predicted = 0;
    double ratio = 0;
};

RoughCount rough_count_compare(u64 x, double z);

} // namespace gb
