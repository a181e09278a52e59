#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goldbach/buchstab.hpp"

using namespace gb;

namespace {

constexpr double kEGamma = 0.5614594835668851; // exp(-Euler gamma)

u64 prime_count(u64 x) { return primes_up_to(x).size(); }

} // namespace

TEST_CASE("closed-form branches") {
    auto t = build_omega_table();
    CHECK(omega_eval(t, 1.5) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(omega_eval(t, 0.7) == 0);
    CHECK(omega_eval(t, 2.5) == doctest::Approx((1 + std::log(1.5)) / 2.5).epsilon(1e-12));
    for (std::size_t i = 0; i <= t.per_unit(); ++i)
        REQUIRE(std::abs(t.values[i] - 1 / (1 + static_cast<double>(i) * t.h)) < 1e-12);
    double worst = 0;
    for (int i = 0; i <= 1000; ++i) {
        double u = 2 + i / 1000.0;
        worst = std::max(worst, std::abs(omega_eval(t, u) - (1 + std::log(u - 1)) / u));
    }
    CHECK(worst < 1e-8);
    CHECK(std::abs(omega_eval(t, 2 - 1e-12) - omega_eval(t, 2 + 1e-12)) < 1e-10);
}

TEST_CASE("plateau at exp(-gamma)") {
    auto t = build_omega_table();
    CHECK(std::abs(omega_eval(t, 10) - 0.5614594836) < 1e-4);
    for (double u = 8; u <= 12; u += 0.01) REQUIRE(std::abs(omega_eval(t, u) - kEGamma) < 1e-4);
    // the extended run is the oracle for the value at 10
    auto far = build_omega_table(30, 1.0 / 1024);
    CHECK(std::abs(omega_eval(far, 30) - kEGamma) < 1e-12);
    CHECK(std::abs(omega_eval(t, 10) - omega_eval(far, 10)) < 1e-9);
}

TEST_CASE("fourth-order convergence") {
    double h = 1.0 / 32;
    double a = omega_eval(build_omega_table(12, h), 12);
    double b = omega_eval(build_omega_table(12, h / 2), 12);
    double c = omega_eval(build_omega_table(12, h / 4), 12);
    double ratio = (a - b) / (b - c);
    MESSAGE("Richardson ratio: " << ratio);
    CHECK(ratio >= 8);
    CHECK(ratio <= 32);
    auto t1 = build_omega_table(12, 1.0 / 256), t2 = build_omega_table(12, 1.0 / 512);
    CHECK(std::abs(omega_eval(t1, 12) - omega_eval(t2, 12)) < 16 * std::pow(1.0 / 256, 4));
}

TEST_CASE("table validation") {
    CHECK_THROWS_AS(build_omega_table(1.5), ConfigError);
    CHECK_THROWS_AS(build_omega_table(12, 0.3), ConfigError);
    CHECK_THROWS_AS(build_omega_table(12, 0.5), ConfigError);
    CHECK_THROWS_AS(build_omega_table(12.1, 0.25), ConfigError);
    auto t = build_omega_table(6, 0.25);
    CHECK(t.values.size() == 21);
    CHECK_THROWS_AS(omega_eval(t, 6.5), RangeError);
}

TEST_CASE("rough numbers") {
    for (u64 x : {100000ULL, 1000000ULL, 10000000ULL}) {
        double z = std::sqrt(static_cast<double>(x));
        auto rc = rough_count_compare(x, z);
        CHECK(rc.exact == prime_count(x) - prime_count(static_cast<u64>(z)) + 1);
    }
    // z = sqrt(x): the ratio is pi(x) log x / x, which tends to 1 slowly from above
    double prev = 2;
    for (u64 x : {100000ULL, 1000000ULL, 10000000ULL, 100000000ULL}) {
        double r = rough_count_compare(x, std::sqrt(static_cast<double>(x))).ratio;
        MESSAGE("x = " << x << ", z = sqrt(x): ratio " << r);
        CHECK(r > 1);
        CHECK(r < prev);
        prev = r;
    }
    auto mid = rough_count_compare(1000000, 100);
    MESSAGE("x = 10^6, z = 100: ratio " << mid.ratio);
    CHECK(mid.ratio >= 0.95);
    CHECK(mid.ratio <= 1.05);
    auto third = rough_count_compare(1000000, 100.0000001);
    CHECK(std::abs(third.ratio - 1) < 0.05);
    CHECK_THROWS_AS(rough_count_compare(1000, 1.5), RangeError);
    CHECK_THROWS_AS(rough_count_compare(1000, 2000), RangeError);
    CHECK_THROWS_AS(rough_count_compare(200000000ULL, 100), RangeError);
}
