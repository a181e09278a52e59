#pragma once

#include "goldbach/common.hpp"

#include <utility>
#include <vector>

namespace gb {

/// Integers in [0, 10^k) whose k base-10 digits (leading zeros included)
/// all differ from a0.
struct DigitSystem {
    int a0 = 0;
    int k = 1;
    u64 X = 10;

    static DigitSystem make(int a0, int k);
};

struct AnchorWindow {
    int H = 0;
    u64 n_star = 0;
    u64 b_star_lo = 0;
    u64 b_star_hi = 0;

    u64 length() const { return b_star_hi - b_star_lo; }
};

/// True when the lowest `positions` digits of v all differ from a0.
bool digits_avoid(u64 v, int positions, int a0);

bool contains(const DigitSystem &sys, u64 n);

/// #{n < m : contains(n)} by digit DP.
u64 count_below(const DigitSystem &sys, u64 m);

std::vector<u64> enumerate(const DigitSystem &sys, u64 lo, u64 hi);

Rational kappa(const DigitSystem &sys);

/// Top H digit positions and the remaining k-H low positions; sum is n.
std::pair<u64, u64> split_digits(const DigitSystem &sys, u64 n, int H);

AnchorWindow make_anchor(const DigitSystem &sys, int H);

/// Anchor without the H >= 3 requirement; the prefix is cut to H digits.
/// Used for tiny instances (k < 3) where the window is the whole prefix.
AnchorWindow make_anchor_truncated(const DigitSystem &sys, int H);

u64 count_in_window(const DigitSystem &sys, const AnchorWindow &aw);

} // namespace gb
