#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goldbach/digits.hpp"

#include <random>
#include <string>

using namespace gb;

namespace {

// digit string check through std::to_string, independent of the modular walk
bool contains_oracle(u64 n, int k, int a0) {
    if (k == 0) return true;
    std::string s = std::to_string(n);
    s.insert(0, static_cast<std::size_t>(k) - s.size(), '0');
    return s.find(static_cast<char>('0' + a0)) == std::string::npos;
}

} // namespace

TEST_CASE("membership examples") {
    auto s7 = DigitSystem::make(7, 3);
    CHECK(contains(s7, 123));
    CHECK_FALSE(contains(s7, 177));
    CHECK_FALSE(contains(DigitSystem::make(0, 3), 105));
    CHECK_THROWS_AS(contains(s7, 1000), RangeError);
    CHECK_THROWS_AS(DigitSystem::make(10, 3), ConfigError);
}

TEST_CASE("enumeration matches membership and has 9^k elements") {
    for (int k = 1; k <= 6; ++k)
        for (int a0 = 0; a0 <= 9; ++a0) {
            auto sys = DigitSystem::make(a0, k);
            auto all = enumerate(sys, 0, sys.X);
            u64 expect = 1;
            for (int i = 0; i < k; ++i) expect *= 9;
            REQUIRE(all.size() == expect);
            std::size_t j = 0;
            for (u64 n = 0; n < sys.X; ++n) {
                bool in = j < all.size() && all[j] == n;
                if (in) ++j;
                REQUIRE(in == contains_oracle(n, k, a0));
            }
        }
}

TEST_CASE("count_below agrees with a brute-force count") {
    auto s = DigitSystem::make(7, 3);
    CHECK(count_below(s, 1000) == 729);
    CHECK(count_below(s, 0) == 0);
    for (int a0 = 0; a0 <= 9; ++a0) {
        auto sys = DigitSystem::make(a0, 4);
        u64 running = 0;
        for (u64 m = 0; m <= sys.X; ++m) {
            REQUIRE(count_below(sys, m) == running);
            if (m < sys.X && contains_oracle(m, 4, a0)) ++running;
        }
    }
    CHECK_THROWS_AS(count_below(s, 1001), RangeError);
}

TEST_CASE("kappa") {
    CHECK(kappa(DigitSystem::make(5, 3)) == Rational{10, 9});
    CHECK(kappa(DigitSystem::make(7, 3)) == Rational{5, 6});
    CHECK(kappa(DigitSystem::make(2, 3)) == Rational{10, 9});
    CHECK(kappa(DigitSystem::make(0, 3)) == Rational{10, 9});
    CHECK(kappa(DigitSystem::make(1, 3)) == Rational{5, 6});
}

TEST_CASE("split_digits") {
    auto s = DigitSystem::make(7, 5);
    CHECK(split_digits(s, 12345, 2) == std::pair<u64, u64>{12000, 345});
    CHECK(split_digits(s, 12345, 5) == std::pair<u64, u64>{12345, 0});
    CHECK_THROWS_AS(split_digits(s, 12345, 0), RangeError);
    CHECK_THROWS_AS(split_digits(s, 12345, 6), RangeError);

    auto big = DigitSystem::make(3, 9);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        u64 n = rng() % big.X;
        int H = 1 + static_cast<int>(rng() % 9);
        auto [hi, lo] = split_digits(big, n, H);
        REQUIRE(hi + lo == n);
        u64 low = pow10u(9 - H);
        bool factor = contains_oracle(hi / low, H, 3) && contains_oracle(lo, 9 - H, 3);
        REQUIRE(contains(big, n) == factor);
    }
}

TEST_CASE("anchor examples") {
    CHECK(make_anchor(DigitSystem::make(5, 6), 3).n_star == 490000);
    CHECK(make_anchor(DigitSystem::make(4, 6), 3).n_star == 509000);
    auto aw = make_anchor(DigitSystem::make(7, 6), 3);
    CHECK(aw.n_star == 490000);
    CHECK(aw.length() == 1000);
    CHECK_THROWS_AS(make_anchor(DigitSystem::make(7, 6), 2), ConfigError);
    CHECK_THROWS_AS(make_anchor(DigitSystem::make(7, 3), 4), ConfigError);
}

TEST_CASE("anchor invariants hold exhaustively for k <= 7") {
    for (int k = 3; k <= 7; ++k)
        for (int a0 = 0; a0 <= 9; ++a0)
            for (int H = 3; H <= k; ++H) {
                auto sys = DigitSystem::make(a0, k);
                auto aw = make_anchor(sys, H);
                double off = std::abs(static_cast<double>(aw.n_star) - 5.0 * std::pow(10.0, k - 1));
                REQUIRE(off <= 1.5 * std::pow(10.0, k - 2));
                REQUIRE(aw.length() == pow10u(k - H));
                REQUIRE(contains_oracle(aw.n_star / aw.length(), H, a0));
                for (u64 m = 0; m < aw.length(); ++m)
                    REQUIRE(contains(sys, aw.n_star + m) == contains_oracle(m, k - H, a0));
            }
}

TEST_CASE("count_in_window matches enumeration") {
    auto sys = DigitSystem::make(7, 6);
    auto aw = make_anchor(sys, 3);
    CHECK(count_in_window(sys, aw) == enumerate(sys, aw.b_star_lo, aw.b_star_hi).size());
    CHECK(count_in_window(sys, aw) == 729);
}
