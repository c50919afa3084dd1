#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "arith.hpp"

using namespace dilate;

namespace {

// Brute-force divisor list by full trial division (independent oracle).
std::vector<std::uint64_t> divisors_brute(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

Rational sigma_minus1_brute(std::uint64_t n) {
    Rational total(0);
    for (std::uint64_t d : divisors_brute(n)) total += Rational(1, d);
    return total;
}

bool is_smooth(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
    for (std::uint64_t p : primes)
        while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace

TEST_CASE("sieve_divisor_function: pinned values") {
    const auto sm1 = sieve_divisor_function(16, SigmaKind::sigma(-1));
    CHECK(sm1.exact_at(1) == Rational(1));
    CHECK(sm1.exact_at(6) == Rational(2));  // 1 + 1/2 + 1/3 + 1/6
    CHECK(sm1.exact_at(16) == Rational(31, 16));

    const auto d = sieve_divisor_function(12, SigmaKind::divisor_count());
    CHECK(d.exact_at(12) == Rational(6));
    CHECK(d.exact_at(1) == Rational(1));

    // sigma_0 coincides with d
    const auto s0 = sieve_divisor_function(64, SigmaKind::sigma(0));
    for (std::uint64_t n = 1; n <= 64; ++n) CHECK(s0.exact_at(n) == sigma_exact(n, 0));
}

TEST_CASE("sieve_divisor_function: errors") {
    CHECK_THROWS_AS(sieve_divisor_function(0, SigmaKind::divisor_count()), Error);
}

TEST_CASE("multiplicativity of d and sigma_s on coprime pairs") {
    const auto d = sieve_divisor_function(40000, SigmaKind::divisor_count());
    const auto s1 = sieve_divisor_function(40000, SigmaKind::sigma(1));
    const auto sm1 = sieve_divisor_function(40000, SigmaKind::sigma(-1));
    for (std::uint64_t m = 1; m <= 200; ++m) {
        for (std::uint64_t n = m; n <= 200; ++n) {
            if (gcd_reduce(m, n).d != 1) continue;
            CHECK(d.exact_at(m * n) == d.exact_at(m) * d.exact_at(n));
            CHECK(s1.exact_at(m * n) == s1.exact_at(m) * s1.exact_at(n));
            CHECK(sm1.exact_at(m * n) == sm1.exact_at(m) * sm1.exact_at(n));
        }
    }
}

TEST_CASE("sigma_{-1}(n) = sigma_1(n)/n exactly up to 10^4") {
    const std::uint64_t N = 10000;
    const auto s1 = sieve_divisor_function(N, SigmaKind::sigma(1));
    const auto sm1 = sieve_divisor_function(N, SigmaKind::sigma(-1));
    for (std::uint64_t n = 1; n <= N; ++n)
        CHECK(sm1.exact_at(n) == s1.exact_at(n) / Rational(n));
}

TEST_CASE("divisors: pinned and brute-force equivalence") {
    CHECK(divisors(1) == std::vector<std::uint64_t>{1});
    CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(17) == std::vector<std::uint64_t>{1, 17});
    CHECK_THROWS_AS(divisors(0), Error);
    for (std::uint64_t n = 1; n <= 10000; ++n) CHECK(divisors(n) == divisors_brute(n));
}

TEST_CASE("gcd_reduce") {
    auto r = gcd_reduce(4, 6);
    CHECK(r.d == 2);
    CHECK(r.m_prime == 2);
    CHECK(r.n_prime == 3);
    r = gcd_reduce(7, 7);
    CHECK(r.d == 7);
    CHECK(r.m_prime == 1);
    CHECK(r.n_prime == 1);
    r = gcd_reduce(5, 9);
    CHECK(r.d == 1);
    CHECK(r.m_prime == 5);
    CHECK(r.n_prime == 9);
    CHECK_THROWS_AS(gcd_reduce(0, 3), Error);
}

TEST_CASE("enumerate_smooth_block: pinned examples") {
    CHECK(enumerate_smooth_block(1, 3).members == std::vector<std::uint64_t>{8});
    CHECK(enumerate_smooth_block(2, 3).members == std::vector<std::uint64_t>{8, 9, 12});
    CHECK(enumerate_smooth_block(3, 0).members == std::vector<std::uint64_t>{1});
}

TEST_CASE("enumerate_smooth_block: brute-force cross-check, exponent vectors") {
    for (int s = 1; s <= 4; ++s) {
        const auto primes = first_primes(s);
        for (int T = 0; T <= 14; ++T) {
            const SmoothSet set = enumerate_smooth_block(s, T);
            std::vector<std::uint64_t> expected;
            for (std::uint64_t n = 1ull << T; n < (1ull << (T + 1)); ++n)
                if (is_smooth(n, primes)) expected.push_back(n);
            REQUIRE(set.members == expected);
            for (std::size_t i = 0; i < set.members.size(); ++i) {
                std::uint64_t v = 1;
                for (int p = 0; p < s; ++p)
                    for (std::uint32_t e = 0; e < set.exponent_vectors[i][p]; ++e) v *= primes[p];
                CHECK(v == set.members[i]);
            }
        }
    }
}

TEST_CASE("enumerate_smooth_block: member cap") {
    CHECK_THROWS_AS(enumerate_smooth_block(4, 14, 10), Error);
}

TEST_CASE("find_doubling_T") {
    const auto trivial = find_doubling_T(1, 1, 10);
    REQUIRE(trivial.has_value());
    CHECK(trivial->T == 0);
    CHECK(trivial->card_T == 1);
    CHECK(trivial->card_T_plus_d == 1);

    const auto r2 = find_doubling_T(2, 1, 30);
    REQUIRE(r2.has_value());
    CHECK(enumerate_smooth_block(2, r2->T).count() == r2->card_T);
    CHECK(enumerate_smooth_block(2, r2->T + 1).count() == r2->card_T_plus_d);
    CHECK(r2->card_T_plus_d <= 2 * r2->card_T);

    const auto r3 = find_doubling_T(3, 2, 40);
    REQUIRE(r3.has_value());
    CHECK(enumerate_smooth_block(3, r3->T).count() == r3->card_T);
    CHECK(enumerate_smooth_block(3, r3->T + 2).count() == r3->card_T_plus_d);
    CHECK(r3->card_T_plus_d <= 2 * r3->card_T);
    // least such T: every smaller T fails the inequality
    for (int T = 0; T < r3->T; ++T)
        CHECK(enumerate_smooth_block(3, T + 2).count() > 2 * enumerate_smooth_block(3, T).count());

    // 2^d > P_s leaves no room for a doubling block
    CHECK_THROWS_AS(find_doubling_T(1, 2, 10), Error);
}

TEST_CASE("mean_sigma_minus1: identity equals direct summation exactly") {
    CHECK(mean_sigma_minus1_exact(1) == Rational(1));
    // J = 6 by hand: (1 + 3/2 + 4/3 + 7/4 + 6/5 + 2)/6
    Rational by_hand = (Rational(1) + Rational(3, 2) + Rational(4, 3) + Rational(7, 4) +
                        Rational(6, 5) + Rational(2)) /
                       Rational(6);
    CHECK(mean_sigma_minus1_exact(6) == by_hand);

    Rational direct(0);
    for (std::uint64_t J = 1; J <= 2000; ++J) {
        direct += sigma_minus1_brute(J);
        CHECK(mean_sigma_minus1_exact(J) == direct / Rational(J));
    }
}

TEST_CASE("mean_sigma_minus1: double identity matches exact at moderate J") {
    for (std::uint64_t J : {1ull, 10ull, 137ull, 4096ull})
        CHECK(mean_sigma_minus1(J) == doctest::Approx(to_double(mean_sigma_minus1_exact(J))).epsilon(1e-12));
}

TEST_CASE("gronwall_ratio_scan") {
    CHECK_THROWS_AS(gronwall_ratio_scan(15), Error);
    const auto single = gronwall_ratio_scan(16);
    REQUIRE(single.size() == 1);
    CHECK(single[0].k == 16);
    CHECK(single[0].sigma_minus1 == doctest::Approx(31.0 / 16.0));

    const auto to720 = gronwall_ratio_scan(720);
    for (std::size_t i = 1; i < to720.size(); ++i) CHECK(to720[i].ratio > to720[i - 1].ratio);
    // the final record-setter carries the largest sigma_{-1} seen so far
    // (log log is increasing, so a richer earlier k would have beaten it)
    const auto sm1 = sieve_divisor_function(720, SigmaKind::sigma(-1));
    for (std::uint64_t k = 16; k <= to720.back().k; ++k)
        CHECK(sm1.at(k) <= to720.back().sigma_minus1 + 1e-12);

    const auto big = gronwall_ratio_scan(100000);
    CHECK(big.back().ratio < 3.0);
}
