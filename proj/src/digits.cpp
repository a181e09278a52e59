#include "goldbach/digits.hpp"

#include <string>

namespace gb {

DigitSystem DigitSystem::make(int a0, int k) {
    if (a0 < 0 || a0 > 9) throw ConfigError("excluded digit must be in 0..9");
    if (k < 1 || k > 18) throw ConfigError("digit length must be in 1..18");
    return {a0, k, pow10u(k)};
}

bool digits_avoid(u64 v, int positions, int a0) {
    for (int i = 0; i < positions; ++i, v /= 10)
        if (static_cast<int>(v % 10) == a0) return false;
    return true;
}

bool contains(const DigitSystem &sys, u64 n) {
    if (n >= sys.X) throw RangeError("contains: n outside [0, X)");
    return digits_avoid(n, sys.k, sys.a0);
}

u64 count_below(const DigitSystem &sys, u64 m) {
    if (m > sys.X) throw RangeError("count_below: m outside [0, X]");
    if (m == sys.X) {
        u64 c = 1;
        for (int i = 0; i < sys.k; ++i) c *= 9;
        return c;
    }
    // walk digits from the top; at each position count the smaller allowed
    // digits times 9^(remaining), then continue only if the digit is allowed
    u64 total = 0;
    u64 p = sys.X / 10;
    u64 pow9 = 1;
    for (int i = 1; i < sys.k; ++i) pow9 *= 9;
    for (int pos = sys.k - 1; pos >= 0; --pos) {
        int d = static_cast<int>((m / p) % 10);
        int smaller = d - (sys.a0 < d ? 1 : 0);
        total += static_cast<u64>(smaller) * pow9;
        if (d == sys.a0) return total;
        p /= 10;
        pow9 /= 9;
        if (pos == 0) break;
    }
    return total;
}

std::vector<u64> enumerate(const DigitSystem &sys, u64 lo, u64 hi) {
    if (hi > sys.X || lo > hi) throw RangeError("enumerate: bad range");
    std::vector<u64> out;
    for (u64 n = lo; n < hi; ++n)
        if (digits_avoid(n, sys.k, sys.a0)) out.push_back(n);
    return out;
}

Rational kappa(const DigitSystem &sys) {
    // 10(Phi(10)-1)/(9 Phi(10)) with Phi(10) = 4
    if (std::gcd(10, sys.a0) == 1) return make_rational(10 * 3, 9 * 4);
    return make_rational(10, 9);
}

std::pair<u64, u64> split_digits(const DigitSystem &sys, u64 n, int H) {
    if (n >= sys.X) throw RangeError("split_digits: n outside [0, X)");
    if (H < 1 || H > sys.k) throw RangeError("split_digits: H outside [1, k]");
    u64 low = pow10u(sys.k - H);
    return {n - n % low, n % low};
}

namespace {

std::string anchor_prefix(int a0) {
    if (a0 == 4) return "509";
    // both case prefixes contain a 9, so a0 = 9 needs its own choice
    if (a0 == 9) return "50";
    return "49";
}

AnchorWindow build_anchor(const DigitSystem &sys, int H) {
    std::string prefix = anchor_prefix(sys.a0);
    int free_digit = sys.a0 == 0 ? 1 : 0;
    u64 top = 0;
    for (int i = 0; i < H; ++i) {
        int d = i < static_cast<int>(prefix.size()) ? prefix[i] - '0' : free_digit;
        top = top * 10 + static_cast<u64>(d);
    }
    u64 len = pow10u(sys.k - H);
    AnchorWindow aw;
    aw.H = H;
    aw.n_star = top * len;
    aw.b_star_lo = aw.n_star;
    aw.b_star_hi = aw.n_star + len;
    return aw;
}

} // namespace

AnchorWindow make_anchor(const DigitSystem &sys, int H) {
    if (H < 3) throw ConfigError("make_anchor: H must be at least 3");
    if (H > sys.k) throw ConfigError("make_anchor: H exceeds k");
    return build_anchor(sys, H);
}

AnchorWindow make_anchor_truncated(const DigitSystem &sys, int H) {
    if (H < 1 || H > sys.k) throw ConfigError("anchor: H outside [1, k]");
    return build_anchor(sys, H);
}

u64 count_in_window(const DigitSystem &sys, const AnchorWindow &aw) {
    return count_below(sys, aw.b_star_hi) - count_below(sys, aw.b_star_lo);
}

} // namespace gb
