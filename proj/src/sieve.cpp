#include "goldbach/sieve.hpp"

#include <algorithm>
#include <limits>

namespace gb {

namespace {

struct BlockAcc {
    u64 count = 0;
    std::complex<long double> sum{0, 0};
};

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

struct Prepared {
    u64 c_lo, c_hi; // range of n/d
    u64 zf;         // primes <= zf are sifted
    std::vector<u64> primes;
};

Prepared prepare(const SiftSpec &sp) {
    if (sp.d == 0) throw RangeError("sift: divisor must be positive");
    if (sp.hi < sp.lo) throw RangeError("sift: hi < lo");
    if (sp.hi - sp.lo > kSieveMaxRange) throw RangeError("sift: range exceeds desk bound");
    if (sp.q > 0 && std::gcd(sp.s, sp.q) != 1) throw RangeError("sift: gcd(s, q) != 1");
    Prepared p;
    p.c_lo = std::max<u64>(1, (sp.lo + sp.d - 1) / sp.d);
    p.c_hi = std::max(p.c_lo, (sp.hi + sp.d - 1) / sp.d);
    if (sp.z < 2) p.zf = 1;
    else if (sp.z >= static_cast<double>(p.c_hi)) p.zf = p.c_hi;
    else p.zf = static_cast<u64>(std::floor(sp.z));
    if (p.c_hi > p.c_lo) p.primes = primes_up_to(std::min(p.zf, isqrt(p.c_hi - 1)));
    return p;
}

template <class Keep>
BlockAcc sift_block(const SiftSpec &sp, const Prepared &pr, u64 c0, u64 c1, bool want_sum,
                    long double theta, Keep keep, std::vector<unsigned char> &mark) {
    BlockAcc acc;
    mark.assign(c1 - c0, 0);
    for (u64 p : pr.primes) {
        u64 start = std::max(p, (c0 + p - 1) / p * p);
        for (u64 m = start; m < c1; m += p) mark[m - c0] = 1;
    }
    for (u64 c = c0; c < c1; ++c) {
        if (mark[c - c0]) continue;
        if (c != 1 && c <= pr.zf) continue;
        u64 n = c * sp.d;
        if (n < sp.lo || n >= sp.hi) continue;
        if (sp.q > 0 && n % sp.q != sp.s % sp.q) continue;
        if (!keep(n)) continue;
        ++acc.count;
        if (want_sum) {
            cplx e = expi(static_cast<long double>(n) * theta);
            acc.sum += std::complex<long double>(e.real(), e.imag());
        }
    }
    return acc;
}

template <class Keep>
BlockAcc sift_parallel(const SiftSpec &sp, bool want_sum, double theta, Keep keep) {
    Prepared pr = prepare(sp);
    if (pr.c_hi <= pr.c_lo) return {};
    const i64 nblocks = static_cast<i64>((pr.c_hi - pr.c_lo + kSieveBlock - 1) / kSieveBlock);
    std::vector<BlockAcc> parts(static_cast<std::size_t>(nblocks));
    long double th = static_cast<long double>(theta);
#pragma omp parallel
    {
        std::vector<unsigned char> mark;
#pragma omp for schedule(static)
        for (i64 b = 0; b < nblocks; ++b) {
            u64 c0 = pr.c_lo + static_cast<u64>(b) * kSieveBlock;
            u64 c1 = std::min(pr.c_hi, c0 + kSieveBlock);
            parts[static_cast<std::size_t>(b)] = sift_block(sp, pr, c0, c1, want_sum, th, keep, mark);
        }
    }
    BlockAcc total;
    for (const auto &p : parts) {
        total.count += p.count;
        total.sum += p.sum;
    }
    return total;
}

/// Whole-range least-prime-factor table, no segmentation.
BlockAcc sift_reference(const SiftSpec &sp, bool want_sum, double theta) {
    Prepared pr = prepare(sp);
    BlockAcc acc;
    if (pr.c_hi <= pr.c_lo) return acc;
    std::vector<u64> lpf(pr.c_hi, 0);
    for (u64 i = 2; i < pr.c_hi; ++i) {
        if (lpf[i]) continue;
        for (u64 j = i; j < pr.c_hi; j += i)
            if (!lpf[j]) lpf[j] = i;
    }
    for (u64 c = pr.c_lo; c < pr.c_hi; ++c) {
        if (c != 1 && static_cast<double>(lpf[c]) <= sp.z) continue;
        u64 n = c * sp.d;
        if (n < sp.lo || n >= sp.hi) continue;
        if (sp.q > 0 && n % sp.q != sp.s % sp.q) continue;
        ++acc.count;
        if (want_sum) {
            cplx e = expi(static_cast<long double>(n) * static_cast<long double>(theta));
            acc.sum += std::complex<long double>(e.real(), e.imag());
        }
    }
    return acc;
}

cplx to_cplx(std::complex<long double> z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

constexpr auto keep_all = [](u64) { return true; };

} // namespace

u64 sift_count(const SiftSpec &spec) { return sift_parallel(spec, false, 0.0, keep_all).count; }

u64 sift_count_serial(const SiftSpec &spec) { return sift_reference(spec, false, 0.0).count; }

cplx sift_expsum(const SiftSpec &spec, double theta) {
    return to_cplx(sift_parallel(spec, true, theta, keep_all).sum);
}

cplx sift_expsum_serial(const SiftSpec &spec, double theta) {
    return to_cplx(sift_reference(spec, true, theta).sum);
}

std::pair<cplx, i64> buchstab_split(const SiftSpec &spec, double u1, double u2, double theta) {
    if (spec.d != 1) throw RangeError("buchstab_split: universe must have d = 1");
    if (!(u1 < u2)) throw RangeError("buchstab_split: need u1 < u2");
    SiftSpec base = spec;
    base.z = u1;
    BlockAcc a = sift_parallel(base, true, theta, keep_all);
    std::complex<long double> value = a.sum;
    i64 count = static_cast<i64>(a.count);
    for (u64 p : primes_up_to(static_cast<u64>(std::floor(u2)))) {
        if (static_cast<double>(p) <= u1) continue;
        SiftSpec sp = spec;
        sp.d = p;
        sp.z = static_cast<double>(p) - 0.5; // n/p keeps only primes >= p
        BlockAcc b = sift_parallel(sp, true, theta, keep_all);
        value -= b.sum;
        count -= static_cast<i64>(b.count);
    }
    return {to_cplx(value), count};
}

double w_star(const DigitSystem &sys, const AnchorWindow &aw, u64 n) {
    if (n < aw.b_star_lo || n >= aw.b_star_hi) throw RangeError("w_star: n outside the window");
    double ratio = kappa(sys).value() * static_cast<double>(count_in_window(sys, aw)) /
                   static_cast<double>(aw.length());
    return (contains(sys, n) ? 1.0 : 0.0) - ratio;
}

cplx sd_star(const DigitSystem &sys, const AnchorWindow &aw, u64 d, double z, double theta) {
    if (d == 0) throw RangeError("sd_star: d must be positive");
    SiftSpec sp{aw.b_star_lo, aw.b_star_hi, d, 0, 0, z};
    auto in_a = [&sys](u64 n) { return digits_avoid(n, sys.k, sys.a0); };
    BlockAcc a = sift_parallel(sp, true, theta, in_a);
    BlockAcc b = sift_parallel(sp, true, theta, keep_all);
    long double ratio = static_cast<long double>(kappa(sys).value()) *
                        static_cast<long double>(count_in_window(sys, aw)) /
                        static_cast<long double>(aw.length());
    return to_cplx(a.sum - ratio * b.sum);
}

int WeightTable::weight(u64 t) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), t,
                               [](const Entry &e, u64 v) { return e.t < v; });
    return it != entries.end() && it->t == t ? it->lambda : 0;
}

namespace {

constexpr std::size_t kMaxEntries = 50000000;

void grow(const std::vector<u64> &pr, std::size_t start, u64 t, int nu, int sign, u64 top,
          long double y, int m, std::vector<WeightTable::Entry> &out) {
    out.push_back({t, sign, top});
    if (out.size() > kMaxEntries) throw ConfigError("weight table too large");
    if (nu == m) return;
    for (std::size_t i = start; i < pr.size(); ++i) {
        long double next = static_cast<long double>(t) * static_cast<long double>(pr[i]);
        if (next >= y) break;
        grow(pr, i + 1, t * pr[i], nu + 1, -sign, pr[i], y, m, out);
    }
}

u64 exact_level_for(const std::vector<u64> &pr, int m, long double y, u64 bound) {
    if (m == 0) return bound;
    u64 level = 0;
    for (std::size_t i = 0; i < pr.size(); ++i) {
        long double prod = 1;
        for (std::size_t j = 0; j < static_cast<std::size_t>(m) && j <= i; ++j)
            prod *= static_cast<long double>(pr[i - j]);
        if (prod >= y) break;
        level = pr[i];
    }
    return level;
}

/// Sign property over n <= 10^4 at the table's exact level.
void validate(const WeightTable &w, const std::vector<u64> &pr) {
    const u64 N = 10000;
    std::vector<i64> sum(N + 1, 0);
    for (const auto &e : w.entries) {
        if (e.t > N || (e.t > 1 && e.top > w.exact_level)) continue;
        for (u64 n = e.t; n <= N; n += e.t) sum[n] += e.lambda;
    }
    std::vector<int> hit(N + 1, 0);
    for (u64 p : pr) {
        if (p > w.exact_level) break;
        for (u64 n = p; n <= N; n += p) hit[n] = 1;
    }
    for (u64 n = 1; n <= N; ++n) {
        i64 ind = hit[n] ? 0 : 1;
        bool ok = w.parity == Parity::Upper ? sum[n] >= ind : sum[n] <= ind;
        if (!ok)
            throw std::logic_error("weight table sign property fails at n = " + std::to_string(n));
    }
}

std::vector<u64> sieve_primes_coprime10(u64 bound) {
    std::vector<u64> pr;
    for (u64 p : primes_up_to(bound))
        if (p != 2 && p != 5) pr.push_back(p);
    return pr;
}

WeightTable build_table(double y, int r, Parity parity, u64 bound, int order) {
    WeightTable w;
    w.y = y;
    w.r = r;
    w.parity = parity;
    w.prime_bound = bound;
    std::vector<u64> pr = sieve_primes_coprime10(bound);
    long double ly = static_cast<long double>(y);
    grow(pr, 0, 1, 0, 1, 1, ly, order, w.entries);
    std::sort(w.entries.begin(), w.entries.end(),
              [](const auto &a, const auto &b) { return a.t < b.t; });
    w.exact_level = exact_level_for(pr, order, ly, bound);
    validate(w, pr);
    return w;
}

} // namespace

WeightTable brun_weights(double y, int r, Parity parity, u64 prime_bound) {
    if (!(y >= 2)) throw ConfigError("brun_weights: y must be at least 2");
    if (r < 0) throw ConfigError("brun_weights: r must be nonnegative");
    u64 bound = prime_bound;
    if (bound == 0) {
        if (y > 1e9) throw ConfigError("brun_weights: y too large without a prime bound");
        bound = static_cast<u64>(std::ceil(y)) - 1;
    }
    int order = parity == Parity::Upper ? 2 * r : 2 * r + 1;
    return build_table(y, r, parity, bound, order);
}

WeightTable mobius_weights(u64 z, double y) {
    if (!(y >= 2)) throw ConfigError("mobius_weights: y must be at least 2");
    // order 64 exceeds the number of distinct primes of any 64-bit integer
    return build_table(y, 32, Parity::Upper, z, 64);
}

cplx weighted_sift_expsum(const SiftSpec &spec, const WeightTable &w, double theta) {
    if (spec.hi < spec.lo) throw RangeError("weighted sift: hi < lo");
    if (spec.hi - spec.lo > 100000000ULL) throw RangeError("weighted sift: range exceeds desk bound");
    if (spec.d == 0) throw RangeError("weighted sift: divisor must be positive");
    const u64 len = spec.hi - spec.lo;
    if (len == 0) return {0, 0};
    u64 zf = spec.z < 2 ? 1 : static_cast<u64>(std::min<double>(spec.z, 1.8e19));
    std::vector<i64> W(len, 0);
    for (const auto &e : w.entries) {
        if (e.top > zf) continue;
        if (e.t >= spec.hi) break;
        u64 start = (spec.lo + e.t - 1) / e.t * e.t;
        for (u64 n = start; n < spec.hi; n += e.t) W[n - spec.lo] += e.lambda;
    }
    const i64 nblocks = static_cast<i64>((len + kSieveBlock - 1) / kSieveBlock);
    std::vector<std::complex<long double>> parts(static_cast<std::size_t>(nblocks));
    long double th = static_cast<long double>(theta);
#pragma omp parallel for schedule(static)
    for (i64 b = 0; b < nblocks; ++b) {
        u64 a0 = spec.lo + static_cast<u64>(b) * kSieveBlock;
        u64 a1 = std::min(spec.hi, a0 + kSieveBlock);
        std::complex<long double> acc{0, 0};
        for (u64 n = a0; n < a1; ++n) {
            i64 wn = W[n - spec.lo];
            if (wn == 0 || n % spec.d != 0) continue;
            if (spec.q > 0 && n % spec.q != spec.s % spec.q) continue;
            cplx e = expi(static_cast<long double>(n) * th);
            acc += static_cast<long double>(wn) * std::complex<long double>(e.real(), e.imag());
        }
        parts[static_cast<std::size_t>(b)] = acc;
    }
    std::complex<long double> total{0, 0};
    for (const auto &p : parts) total += p;
    return to_cplx(total);
}

} // namespace gb
