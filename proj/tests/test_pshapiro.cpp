#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goldbach/pshapiro.hpp"

#include <mpfr.h>

#include <random>
#include <set>

using namespace gb;

namespace {

// floor(n^(1/g)) at 512 bits, round-to-nearest; far more than enough
// separation for the n used here
u64 floor_pow_oracle(u64 n, double g) {
    mpfr_t c, b, r;
    mpfr_inits2(512, c, b, r, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(c, g, MPFR_RNDN);
    mpfr_ui_div(c, 1, c, MPFR_RNDN);
    mpfr_set_uj(b, n, MPFR_RNDN);
    mpfr_pow(r, b, c, MPFR_RNDN);
    mpfr_floor(r, r);
    u64 out = mpfr_get_uj(r, MPFR_RNDN);
    mpfr_clears(c, b, r, static_cast<mpfr_ptr>(nullptr));
    return out;
}

double weight_oracle(u64 p, double g) {
    mpfr_t x, e, l, r;
    mpfr_inits2(256, x, e, l, r, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_uj(x, p, MPFR_RNDN);
    mpfr_set_d(e, g, MPFR_RNDN);
    mpfr_ui_sub(e, 1, e, MPFR_RNDN);
    mpfr_pow(r, x, e, MPFR_RNDN);
    mpfr_log(l, x, MPFR_RNDN);
    mpfr_mul(r, r, l, MPFR_RNDN);
    mpfr_set_d(e, g, MPFR_RNDN);
    mpfr_div(r, r, e, MPFR_RNDN);
    double out = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clears(x, e, l, r, static_cast<mpfr_ptr>(nullptr));
    return out;
}

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("gamma_star") {
    double g = gamma_star();
    CHECK(g == doctest::Approx(0.9193).epsilon(1e-4));
    CHECK(static_cast<int>(g * 1000) == 919);
    CHECK(1.0 / g == doctest::Approx(1.0877).epsilon(1e-4));
    CHECK(g < 1.0);
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(make_ps_config(1.0));
    CHECK_THROWS_AS(make_ps_config(0.915), ConfigError);
    CHECK_NOTHROW(make_ps_config(0.915, 0, 64, false));
    CHECK_THROWS_AS(make_ps_config(0.9, 0, 64, false), ConfigError);
    CHECK_THROWS_AS(make_ps_config(1.01), ConfigError);
    CHECK_THROWS_AS(make_ps_config(0.95, 0.1), ConfigError);
    CHECK_THROWS_AS(make_ps_config(0.95, 0, 32), ConfigError);
    auto cfg = make_ps_config(0.95);
    CHECK(9 * (1 - cfg.gamma0) + 12 * cfg.delta0 < 1);
    CHECK(cfg.c0 == doctest::Approx(1 / 0.95));
}

TEST_CASE("Miller-Rabin against trial division and known values") {
    for (u64 n = 0; n < 200000; ++n) REQUIRE(is_prime(n) == trial_prime(n));
    CHECK(is_prime(3215031751ULL) == false); // strong pseudoprime to 2,3,5,7
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(18446744073709551557ULL - 2));
    CHECK(is_prime(1000000007ULL));
    CHECK_FALSE(is_prime(1000000007ULL * 3));
}

TEST_CASE("mobius and phi") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(30) == -1);
    CHECK(mobius(6) == 1);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(36) == 12);
    CHECK(euler_phi(97) == 96);
}

TEST_CASE("certified floors match a 512-bit oracle") {
    for (double g : {0.95, 1 / 1.02, 1 / 1.05, 1 / 1.08}) {
        auto cfg = make_ps_config(g);
        for (u64 n = 1; n < 20000; ++n) REQUIRE(ps_floor(cfg, n) == floor_pow_oracle(n, g));
        std::mt19937_64 rng(11);
        for (int i = 0; i < 2000; ++i) {
            u64 n = 1 + rng() % 100000000ULL;
            REQUIRE(ps_floor(cfg, n) == floor_pow_oracle(n, g));
        }
    }
}

TEST_CASE("is_ps_prime examples") {
    auto one = make_ps_config(1.0);
    for (u64 p = 2; p < 2000; ++p) REQUIRE(is_ps_prime(one, p) == trial_prime(p));
    auto c105 = make_ps_config(1 / 1.05);
    CHECK(floor_pow_oracle(5, 1 / 1.05) == 5);
    CHECK(is_ps_prime(c105, 5));
    CHECK_THROWS_AS(is_ps_prime(c105, 1), RangeError);
}

TEST_CASE("is_ps_prime matches the image of n -> floor(n^c0)") {
    for (double c0 : {1.02, 1.05, 1.08}) {
        double g = 1 / c0;
        auto cfg = make_ps_config(g);
        std::set<u64> image;
        for (u64 n = 1;; ++n) {
            u64 f = floor_pow_oracle(n, g);
            if (f > 10000) break;
            image.insert(f);
        }
        u64 first_rejected = 0;
        for (u64 p = 2; p <= 10000; ++p) {
            bool expect = trial_prime(p) && image.count(p);
            REQUIRE(is_ps_prime(cfg, p) == expect);
            if (!first_rejected && trial_prime(p) && !expect) first_rejected = p;
        }
        if (c0 == 1.08) {
            CHECK(first_rejected > 0);
            MESSAGE("smallest prime rejected at c0 = 1.08: " << first_rejected);
        }
    }
}

TEST_CASE("enumerate_ps") {
    auto one = make_ps_config(1.0);
    CHECK(enumerate_ps(one, 2, 20) == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(enumerate_ps(one, 5, 4).empty());
    auto cfg = make_ps_config(1 / 1.05);
    auto ps = enumerate_ps(cfg, 2, 10000);
    std::vector<u64> filt;
    for (u64 p = 2; p <= 10000; ++p)
        if (is_ps_prime(cfg, p)) filt.push_back(p);
    CHECK(ps == filt);
    CHECK(enumerate_ps(cfg, 2, 300000) == enumerate_ps_serial(cfg, 2, 300000));
    // subranges see the same primes
    auto sub = enumerate_ps(cfg, 5000, 7000);
    std::vector<u64> expect;
    for (u64 p : ps)
        if (p >= 5000 && p <= 7000) expect.push_back(p);
    CHECK(sub == expect);
}

TEST_CASE("ps_weight") {
    auto one = make_ps_config(1.0);
    CHECK(ps_weight(one, 97) == doctest::Approx(std::log(97.0)).epsilon(1e-15));
    auto cfg = make_ps_config(0.95);
    CHECK(ps_weight(cfg, 97) == doctest::Approx(weight_oracle(97, 0.95)).epsilon(1e-14));
    double prev = 0;
    for (u64 p = 2; p < 5000; ++p) {
        double w = ps_weight(cfg, p);
        REQUIRE(w > prev);
        prev = w;
    }
}

TEST_CASE("instance invariants") {
    for (i64 N0 : {21LL, 199LL, 201LL, 1999LL, 100003LL, 200001LL, 1999999LL, 123456789LL}) {
        auto inst = make_instance(N0, 7);
        CHECK(2 * static_cast<i64>(inst.X) <= N0);
        CHECK(N0 < 20 * static_cast<i64>(inst.X));
        double mid = (N0 - static_cast<double>(inst.anchor.n_star)) / 2;
        CHECK(std::abs(inst.int_lo - (mid - inst.X / 8.0)) < 1);
        CHECK(std::abs(inst.int_hi - (mid + inst.X / 8.0)) < 1);
        CHECK(inst.Q0 == doctest::Approx(std::pow(inst.logX, 3)));
        CHECK(inst.L0 == doctest::Approx(std::pow(inst.logX, 3)));
        CHECK(inst.L1 == doctest::Approx(std::pow(inst.X, 0.2)));
        if (inst.anchor.H < inst.k)
            CHECK(std::pow(10.0, inst.anchor.H) >= std::ceil(inst.L0));
    }
    CHECK_THROWS_AS(make_instance(100000, 7), ConfigError);
    CHECK_THROWS_AS(make_instance(19, 7), ConfigError);
    InstanceConstants C = InstanceConstants::from_map({{"C1", "2"}, {"C5", "9"}});
    CHECK(C.C1 == 2);
    CHECK(C.C5 == 9);
    CHECK(C.C2 == 6);
    CHECK_THROWS_AS(InstanceConstants::from_map({{"C9", "2"}}), ConfigError);
    CHECK_THROWS_AS(InstanceConstants::from_map({{"C1", "x"}}), ConfigError);
    CHECK_THROWS_AS(InstanceConstants::from_map({{"C1", "0"}}), ConfigError);
}

TEST_CASE("ps_expsum") {
    auto inst = make_instance(200001, 7);
    auto one = make_ps_config(1.0);
    auto t1 = ps_table(one, inst);
    double cheb = 0;
    for (i64 m = inst.int_lo; m <= inst.int_hi; ++m)
        if (trial_prime(static_cast<u64>(m))) cheb += std::log(static_cast<double>(m));
    cplx s0 = ps_expsum(t1, 0.0);
    CHECK(s0.imag() == 0);
    CHECK(s0.real() == doctest::Approx(cheb).epsilon(1e-12));

    auto cfg = make_ps_config(0.95);
    auto t = ps_table(cfg, inst);
    double total = ps_expsum(t, 0.0).real();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        double th = static_cast<double>(rng() >> 44) / (1 << 20); // dyadic, so th + 1 is exact
        cplx a = ps_expsum(t, th), b = ps_expsum(t, th + 1);
        REQUIRE(a == b);
        REQUIRE(std::abs(a) <= total * (1 + 1e-12));
        cplx r = ps_expsum_rational(t, static_cast<i64>(rng() % 1000), 1000);
        REQUIRE(std::abs(r) <= total * (1 + 1e-12));
    }
    cplx r = ps_expsum_rational(t, 123, 1000);
    cplx d = ps_expsum(t, 0.123);
    CHECK(std::abs(r - d) < 1e-8 * total);
}

TEST_CASE("ps_major_residual") {
    auto inst = make_instance(200001, 7);
    auto one = make_ps_config(1.0);
    double cheb = ps_expsum(one, inst, 0.0).real();
    double res = ps_major_residual(one, inst, 1, 1, 0.0);
    CHECK(res == doctest::Approx(std::abs(cheb - static_cast<double>(inst.int_size()))).epsilon(1e-10));
    auto cfg = make_ps_config(0.95);
    auto t = ps_table(cfg, inst);
    double xi = 1e-5;
    double r4 = ps_major_residual(cfg, inst, 1, 4, xi);
    CHECK(r4 == doctest::Approx(std::abs(ps_expsum(t, 0.25 + xi))).epsilon(1e-9));
    double r3 = ps_major_residual(one, inst, 1, 3, 0.0);
    MESSAGE("residual at (1,3,0): " << r3 << " against |Int| = " << inst.int_size());
    CHECK(r3 < 0.1 * static_cast<double>(inst.int_size()));
    CHECK_THROWS_AS(ps_major_residual(cfg, inst, 2, 4, 0.0), RangeError);
}

TEST_CASE("replacement residual stays bounded at N = 10^6") {
    const u64 N = 1000000;
    auto cfg = make_ps_config(0.95);
    auto ps = enumerate_ps(cfg, 2, N - 1);
    std::vector<u64> pr = primes_up_to(N - 1);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        double a = U(rng);
        std::vector<cplx> s1, s2;
        for (u64 p : ps) s1.push_back(ps_weight(cfg, p) * expi(static_cast<long double>(p) * a));
        for (u64 p : pr) s2.push_back(std::log(static_cast<double>(p)) * expi(static_cast<long double>(p) * a));
        double r = std::abs(pairwise_sum(s1) - pairwise_sum(s2)) / std::pow(static_cast<double>(N), 1 - cfg.delta0);
        worst = std::max(worst, r);
    }
    MESSAGE("max normalized replacement residual: " << worst);
    CHECK(worst < 10);
}
