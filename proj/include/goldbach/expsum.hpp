#pragma once

#include "goldbach/common.hpp"

#include <utility>
#include <vector>

namespace gb {

struct FrequencyPoint {
    double theta = 0;
    bool anchored = false;
    i64 c = 0, q = 1;
    double eta = 0;
};

/// F_Y(theta) for Y = 10^m via the per-digit product.
double fy_eval(int a0, u64 Y, double theta);
/// F_Y(b/Y) with each digit phase reduced exactly in integers.
double fy_eval_grid(int a0, u64 Y, u64 b);
/// Direct 9^m-term evaluation; reference for the product form.
double fy_eval_direct(int a0, u64 Y, double theta);

/// counts[j] = #{b < Y : F_Y(b/Y) in (2^{-j-1}, 2^{-j}]}; the last bin also
/// takes everything smaller, including zeros.
std::vector<u64> fy_level_sets(int a0, u64 Y, int bin_count);
std::vector<u64> fy_level_sets_serial(int a0, u64 Y, int bin_count);

double fy_l1(int a0, u64 Y, int oversample);

struct LargeSieveResult {
    double lhs = 0;
    double rhs = 0;
    double delta = 0;
};

/// Coefficient a[i] sits at n = M + 1 + i, i < N.
LargeSieveResult large_sieve_check(const std::vector<double> &points, const std::vector<cplx> &coeffs,
                                   i64 M, i64 N);

cplx prime_expsum(u64 N, double theta);
cplx prime_expsum_serial(u64 N, double theta);

double vinogradov_bound(u64 N, u64 q);

struct Approx {
    i64 c = 0;
    i64 q = 1;
};

/// Smallest q <= N with |theta - c/q| <= 1/(qN), via continued fractions
/// on the exact binary value of theta.
Approx dirichlet_approx(double theta, i64 N);
/// Same for theta = num/den exactly.
Approx dirichlet_approx(i64 num, i64 den, i64 N);

/// Exact check of |theta - c/q| <= 1/(qN) for a double theta.
bool dirichlet_holds(double theta, i64 N, Approx a);

} // namespace gb
