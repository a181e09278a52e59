#include "goldbach/buchstab.hpp"
#include "goldbach/sieve.hpp"

#include <algorithm>

namespace gb {

namespace {

// integral over [x_i, x_{i+1}] of the cubic through four consecutive nodes,
// in units of h/24, for stencils starting at offsets -2, -1, 0
constexpr double kStencil[3][4] = {
    {1, -5, 19, 9},
    {-1, 13, 13, -1},
    {9, 19, -5, 1},
};

/// First node of a 4-point stencil around [i, i+1] kept inside one unit
/// interval [floor, floor+1] of the grid (n nodes per unit).
std::size_t stencil_start(std::size_t i, std::size_t n) {
    std::size_t unit_lo = i / n * n;
    std::size_t s = i >= 1 ? i - 1 : 0;
    if (s < unit_lo) s = unit_lo;
    if (s + 3 > unit_lo + n) s = unit_lo + n - 3;
    return s;
}

} // namespace

OmegaTable build_omega_table(double u_max, double h) {
    if (!(u_max >= 2)) throw ConfigError("omega table: u_max must be at least 2");
    if (!(h > 0)) throw ConfigError("omega table: h must be positive");
    double inv = 1.0 / h;
    if (std::abs(inv - std::round(inv)) > 1e-9 || std::round(inv) < 4)
        throw ConfigError("omega table: 1/h must be an integer >= 4");
    const std::size_t n = static_cast<std::size_t>(std::lround(inv));
    double steps = (u_max - 1) * inv;
    if (std::abs(steps - std::round(steps)) > 1e-6)
        throw ConfigError("omega table: u_max - 1 must be a multiple of h");
    const std::size_t total = static_cast<std::size_t>(std::llround(steps));

    OmegaTable t;
    t.u_max = u_max;
    t.h = h;
    t.values.resize(total + 1);
    auto u_at = [&](std::size_t i) { return 1.0 + static_cast<double>(i) / static_cast<double>(n); };
    for (std::size_t i = 0; i <= std::min(n, total); ++i) t.values[i] = 1.0 / u_at(i);
    // (u omega)' = omega(u - 1): g = u omega gains the integral of the lagged
    // values, which are already on the grid n nodes back
    double g = 2.0 * t.values[n];
    for (std::size_t i = n; i < total; ++i) {
        std::size_t j = i - n; // lagged index of the left endpoint
        std::size_t s = stencil_start(j, n);
        const double *w = kStencil[s + 2 - j];
        double integral = 0;
        for (int k = 0; k < 4; ++k) integral += w[k] * t.values[s + static_cast<std::size_t>(k)];
        g += integral * h / 24.0;
        t.values[i + 1] = g / u_at(i + 1);
    }
    return t;
}

double omega_eval(const OmegaTable &t, double u) {
    if (u < 1) return 0.0;
    if (u > t.u_max + 1e-12) throw RangeError("omega_eval: u exceeds table range");
    if (u <= 2) return 1.0 / u;
    const std::size_t n = t.per_unit();
    double x = (u - 1) * static_cast<double>(n);
    std::size_t i = static_cast<std::size_t>(x);
    if (i >= t.values.size() - 1) i = t.values.size() - 2;
    // keep the stencil within one unit interval; the left node of the last
    // cell of a unit belongs to that unit
    std::size_t s = stencil_start(i, n);
    if (s + 3 >= t.values.size()) s = t.values.size() - 4;
    double xs[4], ys[4];
    for (int k = 0; k < 4; ++k) {
        xs[k] = static_cast<double>(s + static_cast<std::size_t>(k));
        ys[k] = t.values[s + static_cast<std::size_t>(k)];
    }
    double r = 0;
    for (int a = 0; a < 4; ++a) {
        double l = 1;
        for (int b = 0; b < 4; ++b)
            if (b != a) l *= (x - xs[b]) / (xs[a] - xs[b]);
        r += l * ys[a];
    }
    return r;
}

RoughCount rough_count_compare(u64 x, double z) {
    if (x > 100000000ULL) throw RangeError("rough_count_compare: x exceeds 10^8");
    if (!(z >= 2) || z > static_cast<double>(x)) throw RangeError("rough_count_compare: need 2 <= z <= x");
    RoughCount rc;
    rc.exact = sift_count(SiftSpec{1, x + 1, 1, 0, 0, z});
    double u = std::log(static_cast<double>(x)) / std::log(z);
    double umax = std::max(12.0, std::ceil(u) + 1);
    OmegaTable t = build_omega_table(umax, 1.0 / 1024);
    rc.predicted = static_cast<double>(x) * omega_eval(t, u) / std::log(z);
    rc.ratio = static_cast<double>(rc.exact) / rc.predicted;
    return rc;
}

} // namespace gb
