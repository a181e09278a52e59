#include "goldbach/expsum.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>

namespace gb {

namespace {

int log10_exact(u64 Y) {
    int m = 0;
    u64 y = Y;
    while (y > 1 && y % 10 == 0) { y /= 10; ++m; }
    if (y != 1 || m < 1) throw RangeError("Y must be 10^m with m >= 1");
    return m;
}

/// |sum_{d != a0, 0<=d<=9} e(d x)| / 9 for x in [0, 1).
double digit_factor(int a0, long double x) {
    // near 1, sin(pi x) would lose its relative accuracy; x - 1 is exact
    if (x > 0.5L) x -= 1;
    if (x == 0) return 1.0;
    const long double pi = std::numbers::pi_v<long double>;
    // sum_{d<10} e(dx) = e(9x/2) sin(10 pi x) / sin(pi x)
    long double ratio = std::sin(10 * pi * x) / std::sin(pi * x);
    long double re = ratio * std::cos(9 * pi * x) - std::cos(2 * pi * a0 * x);
    long double im = ratio * std::sin(9 * pi * x) - std::sin(2 * pi * a0 * x);
    return static_cast<double>(std::sqrt(re * re + im * im) / 9);
}

} // namespace

double fy_eval(int a0, u64 Y, double theta) {
    int m = log10_exact(Y);
    long double th = static_cast<long double>(theta);
    th -= std::floor(th);
    double f = 1.0;
    long double p = 1;
    for (int j = 0; j < m; ++j, p *= 10) {
        long double x = th * p;
        x -= std::floor(x);
        f *= digit_factor(a0, x);
    }
    return f;
}

double fy_eval_grid(int a0, u64 Y, u64 b) {
    int m = log10_exact(Y);
    double f = 1.0;
    u64 r = b % Y;
    for (int j = 0; j < m; ++j) {
        f *= digit_factor(a0, static_cast<long double>(r) / static_cast<long double>(Y));
        r = static_cast<u64>(static_cast<unsigned __int128>(r) * 10 % Y);
    }
    return f;
}

double fy_eval_direct(int a0, u64 Y, double theta) {
    int m = log10_exact(Y);
    std::complex<long double> s{0, 0};
    long double th = static_cast<long double>(theta);
    u64 count = 0;
    for (u64 n = 0; n < Y; ++n) {
        u64 v = n;
        bool ok = true;
        for (int j = 0; j < m; ++j, v /= 10)
            if (static_cast<int>(v % 10) == a0) { ok = false; break; }
        if (!ok) continue;
        ++count;
        cplx e = expi(static_cast<long double>(n) * th);
        s += std::complex<long double>(e.real(), e.imag());
    }
    return static_cast<double>(std::abs(s) / static_cast<long double>(count));
}

namespace {

int dyadic_bin(double F, int bin_count) {
    if (!(F > 0)) return bin_count - 1;
    int e = 0;
    double mant = std::frexp(F, &e); // F = mant 2^e, mant in [0.5, 1)
    int j = mant == 0.5 ? 1 - e : -e;
    return std::clamp(j, 0, bin_count - 1);
}

} // namespace

std::vector<u64> fy_level_sets_serial(int a0, u64 Y, int bin_count) {
    if (bin_count < 1) throw RangeError("bin_count must be positive");
    if (Y > 10000000ULL) throw RangeError("fy_level_sets: Y exceeds 10^7");
    std::vector<u64> counts(static_cast<std::size_t>(bin_count), 0);
    for (u64 b = 0; b < Y; ++b) ++counts[static_cast<std::size_t>(dyadic_bin(fy_eval_grid(a0, Y, b), bin_count))];
    return counts;
}

std::vector<u64> fy_level_sets(int a0, u64 Y, int bin_count) {
    if (bin_count < 1) throw RangeError("bin_count must be positive");
    if (Y > 10000000ULL) throw RangeError("fy_level_sets: Y exceeds 10^7");
    log10_exact(Y);
    std::vector<u64> counts(static_cast<std::size_t>(bin_count), 0);
#pragma omp parallel
    {
        std::vector<u64> local(static_cast<std::size_t>(bin_count), 0);
#pragma omp for schedule(static)
        for (i64 b = 0; b < static_cast<i64>(Y); ++b)
            ++local[static_cast<std::size_t>(dyadic_bin(fy_eval_grid(a0, Y, static_cast<u64>(b)), bin_count))];
#pragma omp critical
        for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += local[j];
    }
    return counts;
}

double fy_l1(int a0, u64 Y, int oversample) {
    if (oversample < 4) throw RangeError("fy_l1: oversample must be at least 4");
    int m = log10_exact(Y);
    const i64 M = static_cast<i64>(Y) * oversample;
    const i64 block = 1 << 16;
    const i64 nblocks = (M + block - 1) / block;
    std::vector<double> parts(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
    for (i64 b = 0; b < nblocks; ++b) {
        long double acc = 0;
        for (i64 i = b * block; i < std::min(M, (b + 1) * block); ++i) {
            double f = 1.0;
            i64 r = i;
            for (int j = 0; j < m; ++j) {
                f *= digit_factor(a0, static_cast<long double>(r) / static_cast<long double>(M));
                r = static_cast<i64>(static_cast<__int128>(r) * 10 % M);
            }
            acc += f;
        }
        parts[static_cast<std::size_t>(b)] = static_cast<double>(acc);
    }
    // periodic trapezoid rule is the plain mean of the samples
    return pairwise_sum(parts) / static_cast<double>(M);
}

LargeSieveResult large_sieve_check(const std::vector<double> &points, const std::vector<cplx> &coeffs,
                                   i64 M, i64 N) {
    if (N < 1 || static_cast<i64>(coeffs.size()) != N)
        throw RangeError("large_sieve_check: need exactly N coefficients");
    if (points.empty()) throw RangeError("large_sieve_check: no points");
    std::vector<double> red(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) red[i] = points[i] - std::floor(points[i]);
    std::sort(red.begin(), red.end());
    double delta = 0.5;
    for (std::size_t i = 0; i + 1 < red.size(); ++i) delta = std::min(delta, red[i + 1] - red[i]);
    if (red.size() > 1) delta = std::min(delta, 1.0 - red.back() + red.front());
    if (!(delta > 0)) throw RangeError("large_sieve_check: duplicate points mod 1");
    long double norm = 0;
    for (const auto &a : coeffs) norm += std::norm(a);
    LargeSieveResult res;
    res.delta = delta;
    long double lhs = 0;
    for (double alpha : points) {
        std::complex<long double> s{0, 0};
        long double al = static_cast<long double>(alpha);
        for (i64 i = 0; i < N; ++i) {
            cplx e = expi(al * static_cast<long double>(M + 1 + i));
            s += std::complex<long double>(coeffs[static_cast<std::size_t>(i)].real(),
                                           coeffs[static_cast<std::size_t>(i)].imag()) *
                 std::complex<long double>(e.real(), e.imag());
        }
        lhs += std::norm(s);
    }
    res.lhs = static_cast<double>(lhs);
    res.rhs = static_cast<double>((1.0L / delta + static_cast<long double>(N) - 1) * norm);
    return res;
}

namespace {

void add_prime_powers(u64 N, long double th, const std::vector<u64> &base,
                      std::complex<long double> &acc) {
    // p^k with k >= 2; these p are all <= sqrt(N)
    for (u64 p : base) {
        long double lp = std::log(static_cast<long double>(p));
        for (unsigned __int128 q = static_cast<unsigned __int128>(p) * p; q <= N; q *= p) {
            cplx e = expi(static_cast<long double>(static_cast<u64>(q)) * th);
            acc += lp * std::complex<long double>(e.real(), e.imag());
        }
    }
}

} // namespace

cplx prime_expsum(u64 N, double theta) {
    if (N > 100000000ULL) throw RangeError("prime_expsum: N exceeds 10^8");
    if (N < 2) return {0, 0};
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(N)));
    while (r * r > N) --r;
    while ((r + 1) * (r + 1) <= N) ++r;
    std::vector<u64> base = primes_up_to(r);
    long double th = static_cast<long double>(theta);
    const u64 block = u64{1} << 20;
    const i64 nblocks = static_cast<i64>((N + 1 + block - 1) / block);
    std::vector<std::complex<long double>> parts(static_cast<std::size_t>(nblocks));
#pragma omp parallel
    {
        std::vector<unsigned char> comp;
#pragma omp for schedule(static)
        for (i64 b = 0; b < nblocks; ++b) {
            u64 a0 = static_cast<u64>(b) * block;
            u64 a1 = std::min(N + 1, a0 + block);
            comp.assign(a1 - a0, 0);
            for (u64 p : base) {
                u64 start = std::max(p * p, (a0 + p - 1) / p * p);
                for (u64 m = start; m < a1; m += p) comp[m - a0] = 1;
            }
            std::complex<long double> acc{0, 0};
            for (u64 n = std::max<u64>(a0, 2); n < a1; ++n) {
                if (comp[n - a0]) continue;
                cplx e = expi(static_cast<long double>(n) * th);
                acc += std::log(static_cast<long double>(n)) * std::complex<long double>(e.real(), e.imag());
            }
            parts[static_cast<std::size_t>(b)] = acc;
        }
    }
    std::complex<long double> total{0, 0};
    for (const auto &p : parts) total += p;
    add_prime_powers(N, th, base, total);
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

cplx prime_expsum_serial(u64 N, double theta) {
    if (N > 100000000ULL) throw RangeError("prime_expsum: N exceeds 10^8");
    std::complex<long double> acc{0, 0};
    long double th = static_cast<long double>(theta);
    std::vector<u64> primes = primes_up_to(N);
    for (u64 p : primes) {
        long double lp = std::log(static_cast<long double>(p));
        for (unsigned __int128 q = p; q <= N; q *= p) {
            cplx e = expi(static_cast<long double>(static_cast<u64>(q)) * th);
            acc += lp * std::complex<long double>(e.real(), e.imag());
        }
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double vinogradov_bound(u64 N, u64 q) {
    if (q < 1) throw RangeError("vinogradov_bound: q must be positive");
    double n = static_cast<double>(N), qq = static_cast<double>(q);
    return std::pow(std::log(n), 3.5) * (n / std::sqrt(qq) + std::pow(n, 0.8) + std::sqrt(n * qq));
}

namespace {

using boost::multiprecision::cpp_int;

/// theta = num/den exactly, 0 <= num < den.
Approx cf_approx(const cpp_int &num0, const cpp_int &den0, i64 N) {
    if (N < 1) throw RangeError("dirichlet_approx: N must be positive");
    cpp_int num = num0, den = den0;
    cpp_int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    const cpp_int bigN = N;
    while (true) {
        cpp_int a = num / den;
        cpp_int h = a * h1 + h2, k = a * k1 + k2;
        if (k > bigN) break;
        cpp_int diff = k * num0 - h * den0;
        if (diff < 0) diff = -diff;
        if (diff * bigN <= den0) return {static_cast<i64>(h), static_cast<i64>(k)};
        h2 = h1; h1 = h; k2 = k1; k1 = k;
        cpp_int rem = num - a * den;
        if (rem == 0) break;
        num = den;
        den = rem;
    }
    throw std::logic_error("dirichlet_approx: no convergent satisfied the bound");
}

void exact_fraction(double theta, cpp_int &num, cpp_int &den) {
    if (!(theta >= 0 && theta < 1)) throw RangeError("theta must lie in [0, 1)");
    num = 0;
    den = 1;
    if (theta == 0) return;
    int e = 0;
    double mant = std::frexp(theta, &e);
    num = static_cast<i64>(std::ldexp(mant, 53));
    den = cpp_int(1) << (53 - e);
}

} // namespace

Approx dirichlet_approx(double theta, i64 N) {
    theta -= std::floor(theta);
    if (theta >= 1) theta = 0;
    cpp_int num, den;
    exact_fraction(theta, num, den);
    return cf_approx(num, den, N);
}

Approx dirichlet_approx(i64 num, i64 den, i64 N) {
    if (den <= 0) throw RangeError("dirichlet_approx: denominator must be positive");
    i64 r = num % den;
    if (r < 0) r += den;
    return cf_approx(cpp_int(r), cpp_int(den), N);
}

bool dirichlet_holds(double theta, i64 N, Approx a) {
    if (a.q < 1 || a.q > N) return false;
    if (std::gcd(a.c < 0 ? -a.c : a.c, a.q) != 1) return false;
    cpp_int num, den;
    exact_fraction(theta, num, den);
    cpp_int diff = cpp_int(a.q) * num - cpp_int(a.c) * den;
    if (diff < 0) diff = -diff;
    return diff * N <= den;
}

} // namespace gb
