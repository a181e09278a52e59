#pragma once

#include "goldbach/common.hpp"
#include "goldbach/digits.hpp"

#include <utility>
#include <vector>

namespace gb {

/// Universe [lo, hi) restricted to multiples of d (and n = s mod q when
/// q > 0); n is sifted out when n/d has a prime factor <= z.
struct SiftSpec {
    u64 lo = 1;
    u64 hi = 1;
    u64 d = 1;
    u64 s = 0;
    u64 q = 0;
    double z = 2;
};

inline constexpr u64 kSieveBlock = u64{1} << 20;
inline constexpr u64 kSieveMaxRange = 1000000000ULL;

u64 sift_count(const SiftSpec &spec);
u64 sift_count_serial(const SiftSpec &spec);

/// Sum of e(n theta) over the sifted n (n itself, not n/d).
cplx sift_expsum(const SiftSpec &spec, double theta);
cplx sift_expsum_serial(const SiftSpec &spec, double theta);

/// Right side of the Buchstab split for a d = 1 universe:
/// S(C, u1) - sum_{u1 < p <= u2} S(C_p, p-), where C_p keeps n with p | n
/// and n/p free of primes below p. Returns {value at theta, count at 0}.
std::pair<cplx, i64> buchstab_split(const SiftSpec &spec, double u1, double u2, double theta);

double w_star(const DigitSystem &sys, const AnchorWindow &aw, u64 n);

cplx sd_star(const DigitSystem &sys, const AnchorWindow &aw, u64 d, double z, double theta);

enum class Parity { Upper, Lower };

struct WeightTable {
    double y = 2;
    int r = 0;
    Parity parity = Parity::Upper;
    u64 prime_bound = 0;
    /// Largest sifting level at which every admissible product of at most
    /// the truncation order of primes stays below y.
    u64 exact_level = 0;
    /// (t, lambda_t, largest prime factor of t), sorted by t.
    struct Entry {
        u64 t;
        int lambda;
        u64 top;
    };
    std::vector<Entry> entries;

    int order() const { return parity == Parity::Upper ? 2 * r : 2 * r + 1; }
    int weight(u64 t) const;
};

/// Bonferroni-truncated Moebius weights on squarefree t < y coprime to 10
/// built from primes <= prime_bound (0 means y).
WeightTable brun_weights(double y, int r, Parity parity, u64 prime_bound = 0);

/// Full Moebius weights on squarefree t < y, t | P(z), t coprime to 10.
WeightTable mobius_weights(u64 z, double y);

cplx weighted_sift_expsum(const SiftSpec &spec, const WeightTable &w, double theta);

} // namespace gb
