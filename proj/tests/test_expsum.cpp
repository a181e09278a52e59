#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goldbach/expsum.hpp"

#include <random>

using namespace gb;

namespace {

// direct sum over the 9^m strings, built without the digit factorization
double fy_oracle(int a0, int m, long double theta) {
    std::vector<long double> ns{0};
    long double scale = 1;
    for (int j = 0; j < m; ++j, scale *= 10) {
        std::vector<long double> next;
        for (long double n : ns)
            for (int d = 0; d < 10; ++d)
                if (d != a0) next.push_back(n + d * scale);
        ns.swap(next);
    }
    std::complex<long double> s{0, 0};
    for (long double n : ns) {
        long double ph = n * theta;
        ph -= std::floor(ph);
        s += std::polar(1.0L, 2 * std::numbers::pi_v<long double> * ph);
    }
    return static_cast<double>(std::abs(s) / static_cast<long double>(ns.size()));
}

double von_mangoldt(u64 n) {
    if (n < 2) return 0;
    u64 p = 2;
    while (p * p <= n && n % p) ++p;
    if (p * p > n) p = n;
    u64 m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

} // namespace

TEST_CASE("F_Y examples") {
    for (int a0 = 0; a0 <= 9; ++a0) {
        CHECK(fy_eval(a0, 1000, 0.0) == 1.0);
        CHECK(fy_eval_grid(a0, 1000, 0) == 1.0);
    }
    CHECK(fy_eval(7, 10, 0.5) == doctest::Approx(1.0 / 9).epsilon(1e-14));
    CHECK_THROWS_AS(fy_eval(7, 20, 0.1), RangeError);
}

TEST_CASE("F_Y product form equals direct summation") {
    for (int a0 : {0, 3, 7, 9}) {
        for (u64 b = 0; b < 100; ++b) {
            double t = static_cast<double>(b) / 100;
            REQUIRE(std::abs(fy_eval_grid(a0, 100, b) - fy_oracle(a0, 2, t)) < 1e-12);
            REQUIRE(std::abs(fy_eval(a0, 100, t) - fy_oracle(a0, 2, t)) < 1e-12);
        }
        std::mt19937_64 rng(static_cast<u64>(a0) + 1);
        std::uniform_real_distribution<double> U(0, 1);
        for (int i = 0; i < 200; ++i) {
            double t = U(rng);
            REQUIRE(std::abs(fy_eval(a0, 1000, t) - fy_oracle(a0, 3, t)) < 1e-12);
            REQUIRE(std::abs(fy_eval_direct(a0, 1000, t) - fy_oracle(a0, 3, t)) < 1e-12);
            REQUIRE(fy_eval(a0, 1000000, t) <= 1.0 + 1e-15);
            REQUIRE(std::abs(fy_eval(a0, 10000, t) - fy_eval(a0, 10000, 1 - t)) < 1e-12);
        }
    }
}

TEST_CASE("F_Y decays at fixed small denominators") {
    for (u64 q : {3, 7}) {
        double prev = 2;
        for (int m = 2; m <= 6; ++m) {
            u64 Y = pow10u(m);
            double mx = 0;
            for (u64 c = 1; c < q; ++c) mx = std::max(mx, fy_eval(7, Y, static_cast<double>(c) / q));
            REQUIRE(mx < prev);
            prev = mx;
        }
    }
}

TEST_CASE("level sets partition the grid") {
    for (u64 Y : {10000ULL, 100000ULL}) {
        auto h = fy_level_sets(7, Y, 40);
        auto hs = fy_level_sets_serial(7, Y, 40);
        CHECK(h == hs);
        u64 total = 0;
        for (u64 c : h) total += c;
        CHECK(total == Y);
        CHECK(h[0] >= 1);
        // bin 0 is (1/2, 1]; recount directly
        u64 top = 0;
        for (u64 b = 0; b < Y; ++b)
            if (fy_eval_grid(7, Y, b) > 0.5) ++top;
        CHECK(h[0] == top);
    }
}

TEST_CASE("level-set counts against B^{235/154} Y^{59/433}") {
    double worst = 0;
    for (u64 Y : {10000ULL, 100000ULL, 1000000ULL}) {
        auto h = fy_level_sets(7, Y, 30);
        for (int j = 0; j + 1 < 30; ++j) {
            double B = std::ldexp(1.0, j + 1);
            double r = static_cast<double>(h[static_cast<std::size_t>(j)]) * std::pow(B, -235.0 / 154) *
                       std::pow(static_cast<double>(Y), -59.0 / 433);
            worst = std::max(worst, r);
        }
    }
    MESSAGE("max normalized level-set count: " << worst);
    CHECK(worst < 1);
}

TEST_CASE("fy_l1") {
    // fine midpoint reference at Y = 10
    double ref = 0;
    const int M = 2000000;
    for (int i = 0; i < M; ++i) ref += fy_eval(7, 10, (i + 0.5) / M);
    ref /= M;
    CHECK(std::abs(fy_l1(7, 10, 200) - ref) < 1e-3);
    CHECK(fy_l1(7, 1000, 4) <= 1.0);
    CHECK_THROWS_AS(fy_l1(7, 100, 3), RangeError);
}

TEST_CASE("large sieve") {
    auto r = large_sieve_check({0.5}, std::vector<cplx>(5, cplx{1, 0}), 0, 5);
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(30.0));
    auto z = large_sieve_check({0.1, 0.4}, std::vector<cplx>(4, cplx{0, 0}), 3, 4);
    CHECK(z.lhs == 0);
    CHECK(z.rhs == 0);
    CHECK_THROWS_AS(large_sieve_check({0.25, 1.25}, std::vector<cplx>(3, 1.0), 0, 3), RangeError);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0, 1);
    std::normal_distribution<double> G;
    for (int i = 0; i < 300; ++i) {
        int R = 1 + static_cast<int>(rng() % 40);
        i64 N = 1 + static_cast<i64>(rng() % 60);
        i64 M = static_cast<i64>(rng() % 1000);
        std::vector<double> pts(static_cast<std::size_t>(R));
        for (auto &p : pts) p = U(rng);
        std::vector<cplx> a(static_cast<std::size_t>(N));
        for (auto &c : a) c = {G(rng), G(rng)};
        auto res = large_sieve_check(pts, a, M, N);
        // lhs recomputed directly
        double lhs = 0;
        for (double p : pts) {
            cplx s{0, 0};
            for (i64 n = 0; n < N; ++n)
                s += a[static_cast<std::size_t>(n)] * std::polar(1.0, 2 * std::numbers::pi * std::fmod(p * static_cast<double>(M + 1 + n), 1.0));
            lhs += std::norm(s);
        }
        REQUIRE(res.lhs == doctest::Approx(lhs).epsilon(1e-9));
        REQUIRE(res.lhs <= res.rhs);
    }
}

TEST_CASE("prime_expsum") {
    const u64 N = 100000;
    double psi = 0, alt = 0;
    for (u64 n = 2; n <= N; ++n) {
        double l = von_mangoldt(n);
        psi += l;
        alt += (n % 2 ? -l : l);
    }
    CHECK(prime_expsum(N, 0).real() == doctest::Approx(psi).epsilon(1e-12));
    CHECK(prime_expsum(N, 0.5).real() == doctest::Approx(alt).epsilon(1e-10));
    double two_powers = 0;
    for (u64 p = 2; p <= N; p *= 2) two_powers += std::log(2.0);
    CHECK(alt == doctest::Approx(-psi + 2 * two_powers).epsilon(1e-12));
    cplx a = prime_expsum(N, 0.3125), b = prime_expsum(N, 1 - 0.3125);
    CHECK(std::abs(a - std::conj(b)) < 1e-8);
    for (u64 n : {10ULL, 99991ULL, 3000000ULL}) {
        cplx p = prime_expsum(n, 0.123), s = prime_expsum_serial(n, 0.123);
        CHECK(std::abs(p - s) < 1e-9 * std::max(1.0, std::abs(s)));
    }
    CHECK_THROWS_AS(prime_expsum(200000000ULL, 0.1), RangeError);
}

TEST_CASE("Vinogradov bound") {
    double L = std::log(1e6);
    double expect = std::pow(L, 3.5) * (1e6 / std::pow(10, 1.5) + std::pow(10, 4.8) + std::pow(10, 4.5));
    CHECK(vinogradov_bound(1000000, 1000) == doctest::Approx(expect).epsilon(1e-12));
    double prev = 0;
    for (u64 N = 10; N < 10000000; N *= 3) {
        REQUIRE(vinogradov_bound(N, 17) > prev);
        prev = vinogradov_bound(N, 17);
    }
    std::mt19937_64 rng(8);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        u64 q = 1 + rng() % 1000;
        u64 c;
        do c = rng() % q; while (std::gcd(c, q) != 1);
        double r = std::abs(prime_expsum(1000000, static_cast<double>(c) / static_cast<double>(q))) /
                   vinogradov_bound(1000000, q);
        worst = std::max(worst, r);
    }
    MESSAGE("max |sum| / bound over Farey points: " << worst);
    CHECK(worst <= 1);
}

TEST_CASE("Dirichlet approximation") {
    // exhaustive oracle over q <= 10 for the rational 3/10
    Approx a = dirichlet_approx(3, 10, 10);
    CHECK(a.c == 1);
    CHECK(a.q == 3);
    CHECK(std::abs(3.0 / 10 - 1.0 / 3) <= 1.0 / 30 + 1e-15);
    Approx s = dirichlet_approx(1, 7, 100);
    CHECK(s.c == 1);
    CHECK(s.q == 7);
    // the double nearest 0.3 sits just below 3/10, so 1/3 misses by a hair
    Approx d = dirichlet_approx(0.3, 10);
    CHECK(dirichlet_holds(0.3, 10, d));
    CHECK_FALSE(dirichlet_holds(0.3, 10, {1, 3}));

    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 10000; ++i) {
        double t = U(rng);
        i64 N = 1 + static_cast<i64>(rng() % 1000000000ULL);
        Approx r = dirichlet_approx(t, N);
        REQUIRE(r.q >= 1);
        REQUIRE(r.q <= N);
        REQUIRE(std::gcd(r.c, r.q) == 1);
        REQUIRE(dirichlet_holds(t, N, r));
    }
    // smallest admissible q, checked by brute force
    for (int i = 0; i < 300; ++i) {
        double t = U(rng);
        i64 N = 1 + static_cast<i64>(rng() % 200);
        Approx r = dirichlet_approx(t, N);
        for (i64 q = 1; q < r.q; ++q)
            for (i64 c = 0; c <= q; ++c)
                REQUIRE_FALSE(std::abs(t - static_cast<double>(c) / q) * static_cast<double>(q * N) < 1 - 1e-9);
    }
}
