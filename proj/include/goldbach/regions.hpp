#pragma once

#include "goldbach/buchstab.hpp"
#include "goldbach/common.hpp"
#include "goldbach/pshapiro.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace gb {

/// coef . u + constant >= 0
struct Inequality {
    std::vector<double> coef;
    double constant = 0;
};

/// coef . u must avoid [lo, hi]
struct Band {
    std::vector<double> coef;
    double lo = 0, hi = 0;
};

struct Polytope {
    int dim = 1;
    std::vector<Inequality> inequalities;
    std::vector<Band> excluded_bands;
    /// Set when the defining parameters leave nothing (theta1 >= theta2).
    bool empty = false;

    bool contains(const double *u) const;
    bool contains(const std::vector<double> &u) const { return contains(u.data()); }
    /// Box inside [0,1]^dim from interval propagation over the inequalities;
    /// an empty vector when propagation proves the polytope empty.
    std::vector<std::pair<double, double>> bounding_box() const;
};

/// Reading choices for the nine regions. Defaults are the repaired reading.
struct RegionOptions {
    /// I_1 keeps its lower bound u + v > 1 - theta1; off means the undefined
    /// level is taken as X^0 and the bound is dropped.
    bool z0_as_z6 = true;
    /// R_5's pair-sum condition as an empty intersection with [theta1, theta2];
    /// off makes it vacuous.
    bool r5_empty_intersection = true;
    /// I_1 adds v <= u <= theta1 from its summation ranges.
    bool i1_order_repair = true;
    /// R_2 uses v + w > theta2 (from qr > z_3); off keeps v + w < theta2.
    bool i4_lower_repair = true;
    /// Every subset sum in I_3..I_6 and I_9 avoids [theta1, theta2] and
    /// [1 - theta2, 1 - theta1].
    bool discard_all_type2 = false;
};

struct IntegralSpec {
    int j = 1;
    double epsilon = 1e-4;
    double theta1 = 0, theta2 = 0;
    u64 samples = 1000000;
    u64 seed = 42;

    static IntegralSpec make(int j, double epsilon, u64 samples, u64 seed);
};

inline double theta1_of(double eps) { return 9.0 / 25.0 + 2 * eps; }
inline double theta2_of(double eps) { return 17.0 / 40.0 - 2 * eps; }

Polytope region(int j, double eps, const RegionOptions &opt = {});

/// Integrand of I_j at u (zero outside the region is not applied here).
double integrand(int j, const OmegaTable &omega, const double *u);

struct Estimate {
    double value = 0;
    double stderr_ = 0;
};

using PointFn = std::function<double(const double *)>;

/// Stratified Monte Carlo over the bounding box with rejection: 4^dim
/// equal cells, a pilot pass, Neyman allocation of the rest. Cells draw
/// from their own derived seeds, so results do not depend on threads.
Estimate mc_integrate(const Polytope &poly, const PointFn &f, u64 samples, u64 seed,
                      bool parallel = true);

Estimate integrate(const IntegralSpec &spec, const OmegaTable &omega, const RegionOptions &opt = {});
Estimate integrate_serial(const IntegralSpec &spec, const OmegaTable &omega,
                          const RegionOptions &opt = {});

struct IntegralSum {
    double total = 0;
    double stderr_ = 0;
    std::vector<Estimate> per_j;
};

/// Table range needed by the integrands at this eps.
double omega_range_for(double eps);

IntegralSum integral_sum(double eps, u64 samples, u64 seed, const RegionOptions &opt = {});

struct SingularSeries {
    double value = 0;
    double lo = 0;
    double hi = 0;
};

SingularSeries singular_series(i64 N0, u64 P);

/// (X #B* / (4 log X)) S(N0) times the integral over the region of
/// omega((1 - sum u)/z(u)) / (prod u * z(u)).
double main_term(const GoldbachInstance &inst, const Polytope &region, const PointFn &zfun,
                 const OmegaTable &omega, u64 samples = 1000000, u64 seed = 1, u64 P = 100000);

/// (X/4)(#A*/log X) S(N0)(1 - sum_I), optionally with #A* scaled by kappa.
double main_term_aggregate(const GoldbachInstance &inst, double sum_I, bool kappa_weighted,
                           u64 P = 100000);

} // namespace gb
