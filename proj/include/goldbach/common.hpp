#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gb {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using cplx = std::complex<double>;

struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when directed-rounding evaluation cannot separate a value from an
/// integer even after precision escalation.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Rational {
    i64 num = 0;
    i64 den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational &a, const Rational &b) {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
};

inline Rational make_rational(i64 num, i64 den) {
    if (den == 0) throw ConfigError("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    return {num, den};
}

/// e(x) = exp(2 pi i x) after reducing x to [0, 1) in long double.
inline cplx expi(long double x) {
    x -= std::floor(x);
    double t = static_cast<double>(2.0L * std::numbers::pi_v<long double> * x);
    return {std::cos(t), std::sin(t)};
}

/// e(num/den) with the phase reduced exactly in integers.
inline cplx expi_rational(i64 num, i64 den) {
    i64 r = num % den;
    if (r < 0) r += den;
    return expi(static_cast<long double>(r) / static_cast<long double>(den));
}

inline u64 pow10u(int k) {
    if (k < 0 || k > 19) throw RangeError("10^k out of 64-bit range");
    u64 x = 1;
    for (int i = 0; i < k; ++i) x *= 10;
    return x;
}

/// Pairwise summation over a contiguous range; fixed association order.
template <class T>
T pairwise_sum(const T *v, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

template <class T>
T pairwise_sum(const std::vector<T> &v) { return pairwise_sum(v.data(), v.size()); }

/// Primes up to n by a plain sieve of Eratosthenes.
std::vector<u64> primes_up_to(u64 n);

/// Number of worker threads used by parallel kernels (OpenMP max threads).
int worker_threads();
void set_worker_threads(int n);

} // namespace gb
