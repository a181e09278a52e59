#include "goldbach/pshapiro.hpp"

#include <mpfr.h>

#include <algorithm>
#include <exception>
#include <optional>

namespace gb {

double gamma_star() {
    return 8.0 / 9.0 + (2.0 / 3.0) * std::log(10.0 / 9.0) / std::log(10.0);
}

PSConfig make_ps_config(double gamma0, double delta0, int precision_bits, bool strict) {
    if (!(gamma0 <= 1.0)) throw ConfigError("gamma0 must be at most 1");
    if (strict && !(gamma0 > gamma_star()))
        throw ConfigError("gamma0 must exceed gamma* in strict mode");
    if (!strict && !(gamma0 > 0.9)) throw ConfigError("gamma0 must exceed 0.9");
    if (precision_bits < 64) throw ConfigError("precision_bits must be at least 64");
    double dmax = (1.0 - 9.0 * (1.0 - gamma0)) / 12.0;
    if (delta0 <= 0) delta0 = dmax / 2;
    if (!(delta0 < dmax)) throw ConfigError("delta0 violates 9(1-gamma0)+12 delta0 < 1");
    PSConfig cfg;
    cfg.gamma0 = gamma0;
    cfg.c0 = 1.0 / gamma0;
    cfg.delta0 = delta0;
    cfg.precision_bits = precision_bits;
    cfg.strict = strict;
    return cfg;
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool mr_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

} // namespace

bool is_prime(u64 n) {
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    if (n < 2) return false;
    for (u64 p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 53 * 53) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // {2,3,5,7} is exact below 3215031751; the 12-prime set below 3.3e24
    static constexpr u64 b4[] = {2, 3, 5, 7};
    static constexpr u64 b12[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 3215031751ULL) {
        for (u64 a : b4)
            if (mr_witness(n, a, d, s)) return false;
        return true;
    }
    for (u64 a : b12)
        if (mr_witness(n, a, d, s)) return false;
    return true;
}

int mobius(u64 n) {
    if (n == 0) throw RangeError("mobius(0)");
    int mu = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

u64 euler_phi(u64 n) {
    if (n == 0) throw RangeError("euler_phi(0)");
    u64 r = n;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

namespace {

struct FloorResult {
    u64 floor;
    bool exact_integer;
};

/// floor(n^e) with e = gamma (reciprocal = false) or 1/gamma, from an
/// enclosure [lo, hi] computed with directed rounding.
std::optional<FloorResult> mpfr_floor_pow(u64 n, double gamma, bool reciprocal, int bits) {
    mpfr_t g, elo, ehi, base, lo, hi;
    mpfr_inits2(bits, g, elo, ehi, base, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(g, gamma, MPFR_RNDN); // exact: bits >= 53
    if (reciprocal) {
        mpfr_ui_div(elo, 1, g, MPFR_RNDD);
        mpfr_ui_div(ehi, 1, g, MPFR_RNDU);
    } else {
        mpfr_set(elo, g, MPFR_RNDN);
        mpfr_set(ehi, g, MPFR_RNDN);
    }
    mpfr_set_uj(base, n, MPFR_RNDN); // exact: bits >= 64
    // n >= 1 so n^e is nondecreasing in e
    mpfr_pow(lo, base, elo, MPFR_RNDD);
    mpfr_pow(hi, base, ehi, MPFR_RNDU);
    mpfr_floor(lo, lo);
    mpfr_t fhi;
    mpfr_init2(fhi, bits);
    mpfr_floor(fhi, hi);
    std::optional<FloorResult> out;
    if (mpfr_equal_p(lo, fhi)) {
        FloorResult r{mpfr_get_uj(lo, MPFR_RNDN), false};
        // an exactly representable integer power shows up as hi == floor(hi)
        // together with a zero-width enclosure
        mpfr_t lo2;
        mpfr_init2(lo2, bits);
        mpfr_pow(lo2, base, elo, MPFR_RNDD);
        if (mpfr_equal_p(lo2, hi) && mpfr_integer_p(hi)) r.exact_integer = true;
        mpfr_clear(lo2);
        out = r;
    }
    mpfr_clear(fhi);
    mpfr_clears(g, elo, ehi, base, lo, hi, static_cast<mpfr_ptr>(nullptr));
    return out;
}

FloorResult certified_floor_pow(u64 n, double gamma, bool reciprocal, int bits) {
    if (n <= 1) return {n, true};
    if (gamma == 1.0) return {n, true};
    // fast path: long double pow, accepted only when well clear of an integer
    long double e = reciprocal ? 1.0L / static_cast<long double>(gamma)
                               : static_cast<long double>(gamma);
    long double v = std::pow(static_cast<long double>(n), e);
    long double fl = std::floor(v);
    long double frac = v - fl;
    long double margin = v * (std::log(static_cast<long double>(n)) + 8.0L) * 1e-18L;
    if (frac > margin && 1.0L - frac > margin) return {static_cast<u64>(fl), false};
    for (int b = bits; b <= 4 * bits; b *= 2)
        if (auto r = mpfr_floor_pow(n, gamma, reciprocal, b)) return *r;
    throw PrecisionError("undecidable at precision " + std::to_string(4 * bits) +
                         " bits for n = " + std::to_string(n));
}

} // namespace

u64 ps_floor(const PSConfig &cfg, u64 n) {
    return certified_floor_pow(n, cfg.gamma0, true, cfg.precision_bits).floor;
}

bool is_ps_prime(const PSConfig &cfg, u64 p) {
    if (p < 2) throw RangeError("is_ps_prime: p must be at least 2");
    if (!is_prime(p)) return false;
    if (cfg.gamma0 == 1.0) return true;
    // an integer n with p <= n^{c0} < p+1 exists iff ceil(p^g) < (p+1)^g
    FloorResult a = certified_floor_pow(p, cfg.gamma0, false, cfg.precision_bits);
    FloorResult b = certified_floor_pow(p + 1, cfg.gamma0, false, cfg.precision_bits);
    u64 m = a.exact_integer ? a.floor : a.floor + 1;
    if (b.exact_integer) return m < b.floor;
    return m <= b.floor;
}

namespace {

std::pair<u64, u64> n_range(const PSConfig &cfg, u64 lo, u64 hi) {
    double nlo = std::floor(std::pow(static_cast<double>(lo), cfg.gamma0)) - 2;
    double nhi = std::ceil(std::pow(static_cast<double>(hi) + 1.0, cfg.gamma0)) + 2;
    return {static_cast<u64>(std::max(1.0, nlo)), static_cast<u64>(nhi)};
}

void collect(const PSConfig &cfg, u64 lo, u64 hi, u64 n0, u64 n1, std::vector<u64> &out) {
    for (u64 n = n0; n < n1; ++n) {
        u64 f = ps_floor(cfg, n);
        if (f < lo) continue;
        if (f > hi) break;
        if (!out.empty() && out.back() == f) continue;
        if (is_prime(f)) out.push_back(f);
    }
}

void dedupe(std::vector<u64> &v) { v.erase(std::unique(v.begin(), v.end()), v.end()); }

} // namespace

std::vector<u64> enumerate_ps_serial(const PSConfig &cfg, u64 lo, u64 hi) {
    std::vector<u64> out;
    if (lo > hi) return out;
    if (lo < 2) throw RangeError("enumerate_ps: lo must be at least 2");
    auto [n0, n1] = n_range(cfg, lo, hi);
    collect(cfg, lo, hi, n0, n1 + 1, out);
    return out;
}

std::vector<u64> enumerate_ps(const PSConfig &cfg, u64 lo, u64 hi) {
    std::vector<u64> out;
    if (lo > hi) return out;
    if (lo < 2) throw RangeError("enumerate_ps: lo must be at least 2");
    auto [n0, n1] = n_range(cfg, lo, hi);
    ++n1;
    const u64 chunk = 1 << 16;
    const i64 nchunks = static_cast<i64>((n1 - n0 + chunk - 1) / chunk);
    std::vector<std::vector<u64>> parts(static_cast<std::size_t>(nchunks));
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (i64 c = 0; c < nchunks; ++c) {
        u64 a = n0 + static_cast<u64>(c) * chunk;
        u64 b = std::min(n1, a + chunk);
        try {
            collect(cfg, lo, hi, a, b, parts[static_cast<std::size_t>(c)]);
        } catch (...) {
#pragma omp critical
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    for (auto &p : parts) out.insert(out.end(), p.begin(), p.end());
    dedupe(out);
    return out;
}

double ps_weight(const PSConfig &cfg, u64 p) {
    if (p < 2) throw RangeError("ps_weight: p must be at least 2");
    double x = static_cast<double>(p);
    return std::pow(x, 1.0 - cfg.gamma0) * std::log(x) / cfg.gamma0;
}

InstanceConstants InstanceConstants::from_map(const std::map<std::string, std::string> &kv) {
    InstanceConstants C;
    for (const auto &[key, val] : kv) {
        int v = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception &) {
            throw ConfigError("constant " + key + " is not an integer: " + val);
        }
        if (v <= 0) throw ConfigError("constant " + key + " must be positive");
        if (key == "C1") C.C1 = v;
        else if (key == "C2") C.C2 = v;
        else if (key == "C3") C.C3 = v;
        else if (key == "C4") C.C4 = v;
        else if (key == "C5") C.C5 = v;
        else throw ConfigError("unknown constant: " + key);
    }
    return C;
}

GoldbachInstance make_instance(i64 N0, int a0, InstanceConstants C) {
    if (N0 % 2 == 0) throw ConfigError("N0 must be odd");
    if (N0 < 20) throw ConfigError("N0 must be at least 20");
    GoldbachInstance inst;
    inst.N0 = N0;
    inst.C = C;
    int k = 0;
    u64 X = 1;
    while (2 * (X * 10) <= static_cast<u64>(N0)) { X *= 10; ++k; }
    if (k < 1 || k > 17) throw ConfigError("N0 outside the supported range");
    inst.k = k;
    inst.X = X;
    inst.sys = DigitSystem::make(a0, k);
    inst.logX = std::log(static_cast<double>(X));
    inst.Q0 = std::pow(inst.logX, 3.0);
    inst.L0 = std::pow(inst.logX, static_cast<double>(C.C1));
    inst.L1 = std::pow(static_cast<double>(X), 0.2);
    int H = static_cast<int>(std::ceil(C.C1 * std::log10(inst.logX) - 1e-12));
    // 10^H must reach ceil((log X)^C1); guard against log10 rounding
    while (static_cast<double>(pow10u(std::min(H, 18))) < std::ceil(inst.L0)) ++H;
    H = std::max(H, 3);
    H = std::min(H, k);
    inst.anchor = k >= 3 ? make_anchor(inst.sys, H) : make_anchor_truncated(inst.sys, k);
    i64 c = N0 - static_cast<i64>(inst.anchor.n_star);
    i64 x = static_cast<i64>(X);
    auto floor_div = [](i64 a, i64 b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    inst.int_lo = floor_div(4 * c - x, 8);
    inst.int_hi = floor_div(4 * c + x, 8);
    return inst;
}

PSTable ps_table(const PSConfig &cfg, const GoldbachInstance &inst) {
    PSTable t;
    u64 lo = static_cast<u64>(std::max<i64>(2, inst.int_lo));
    u64 hi = static_cast<u64>(inst.int_hi);
    t.primes = enumerate_ps(cfg, lo, hi);
    t.weights.reserve(t.primes.size());
    for (u64 p : t.primes) t.weights.push_back(ps_weight(cfg, p));
    return t;
}

cplx ps_expsum(const PSTable &t, double theta) {
    long double th = static_cast<long double>(theta) - std::floor(static_cast<long double>(theta));
    std::vector<cplx> terms(t.primes.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = t.weights[i] * expi(static_cast<long double>(t.primes[i]) * th);
    return pairwise_sum(terms);
}

cplx ps_expsum_rational(const PSTable &t, i64 a, i64 den) {
    std::vector<cplx> terms(t.primes.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        i64 ph = static_cast<i64>(static_cast<__int128>(t.primes[i]) * a % den);
        terms[i] = t.weights[i] * expi_rational(ph, den);
    }
    return pairwise_sum(terms);
}

cplx ps_expsum(const PSConfig &cfg, const GoldbachInstance &inst, double theta) {
    return ps_expsum(ps_table(cfg, inst), theta);
}

double ps_major_residual(const PSConfig &cfg, const GoldbachInstance &inst, i64 c, i64 q,
                         double xi) {
    if (q < 1) throw RangeError("ps_major_residual: q must be positive");
    if (std::gcd(c < 0 ? -c : c, q) != 1) throw RangeError("ps_major_residual: gcd(c, q) != 1");
    PSTable t = ps_table(cfg, inst);
    std::vector<cplx> terms(t.primes.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        i64 r = static_cast<i64>(static_cast<__int128>(t.primes[i]) * c % q);
        if (r < 0) r += q;
        long double ph = static_cast<long double>(r) / q +
                         static_cast<long double>(t.primes[i]) * static_cast<long double>(xi);
        terms[i] = t.weights[i] * expi(ph);
    }
    cplx S = pairwise_sum(terms);
    int mu = mobius(static_cast<u64>(q));
    cplx main{0, 0};
    if (mu != 0) {
        std::vector<cplx> m(static_cast<std::size_t>(inst.int_size()));
        for (i64 j = 0; j < inst.int_size(); ++j)
            m[static_cast<std::size_t>(j)] =
                expi(static_cast<long double>(inst.int_lo + j) * static_cast<long double>(xi));
        main = pairwise_sum(m) * (static_cast<double>(mu) / static_cast<double>(euler_phi(static_cast<u64>(q))));
    }
    return std::abs(S - main);
}

} // namespace gb
