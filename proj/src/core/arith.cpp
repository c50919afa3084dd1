#include "arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dilate {

bool SigmaKind::is_integer_exponent() const {
    return exponent == std::floor(exponent) && std::abs(exponent) <= 64;
}

const Rational& DivisorFunctionTable::exact_at(std::uint64_t n) const {
    if (n == 0 || n > exact_upto)
        throw_usage("exact value requested outside the exactness boundary");
    return exact_values[n];
}

DivisorFunctionTable sieve_divisor_function(std::uint64_t n_max, SigmaKind kind,
                                            std::uint64_t exact_limit) {
    if (n_max == 0) throw_usage("sieve range must be >= 1");
    DivisorFunctionTable table;
    table.n_max = n_max;
    table.kind = kind;
    table.values.assign(n_max + 1, 0.0);

    if (kind.is_integer_exponent()) {
        const long long s = static_cast<long long>(kind.exponent);
        const std::uint64_t exact_n = std::min(n_max, exact_limit);
        table.exact_upto = exact_n;
        // Sieve sigma_{|s|} in integers, then divide by n^{|s|} for s < 0.
        const long long p = s < 0 ? -s : s;
        std::vector<BigInt> acc(exact_n + 1, BigInt(0));
        for (std::uint64_t d = 1; d <= exact_n; ++d) {
            BigInt dp = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(p));
            for (std::uint64_t m = d; m <= exact_n; m += d) acc[m] += dp;
        }
        table.exact_values.assign(exact_n + 1, Rational(0));
        for (std::uint64_t n = 1; n <= exact_n; ++n) {
            if (s >= 0)
                table.exact_values[n] = Rational(acc[n]);
            else
                table.exact_values[n] =
                    Rational(acc[n], boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(p)));
            table.values[n] = to_double(table.exact_values[n]);
        }
        if (n_max > exact_n) {
            // Double-precision sieve for the remainder of the range.
            for (std::uint64_t d = 1; d <= n_max; ++d) {
                const double w = std::pow(static_cast<double>(d), kind.exponent);
                const std::uint64_t start = d * (exact_n / d + 1);
                for (std::uint64_t m = start; m <= n_max; m += d) table.values[m] += w;
            }
        }
    } else {
        table.exact_upto = 0;
        for (std::uint64_t d = 1; d <= n_max; ++d) {
            const double w = std::pow(static_cast<double>(d), kind.exponent);
            if (!std::isfinite(w)) throw_usage("divisor weight overflow in sieve");
            for (std::uint64_t m = d; m <= n_max; m += d) table.values[m] += w;
        }
    }
    return table;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) throw_usage("divisors(0) is undefined");
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Rational sigma_exact(std::uint64_t n, long long s) {
    Rational total(0);
    for (std::uint64_t d : divisors(n)) {
        const unsigned p = static_cast<unsigned>(s < 0 ? -s : s);
        BigInt dp = boost::multiprecision::pow(BigInt(d), p);
        total += s >= 0 ? Rational(dp) : Rational(1, dp);
    }
    return total;
}

GcdReduction gcd_reduce(std::uint64_t m, std::uint64_t n) {
    if (m == 0 || n == 0) throw_usage("gcd_reduce arguments must be >= 1");
    std::uint64_t a = m, b = n;
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return GcdReduction{a, m / a, n / a};
}

std::vector<std::uint64_t> first_primes(int s) {
    if (s < 1) throw_usage("prime count must be >= 1");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t c = 2; static_cast<int>(primes.size()) < s; ++c) {
        bool prime = true;
        for (std::uint64_t p : primes) {
            if (p * p > c) break;
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(c);
    }
    return primes;
}

namespace {

void smooth_dfs(const std::vector<std::uint64_t>& primes, std::size_t idx, std::uint64_t value,
                std::vector<std::uint32_t>& expo, std::uint64_t lo, std::uint64_t hi,
                std::size_t cap, SmoothSet& out) {
    if (idx == primes.size()) {
        if (value >= lo) {
            if (out.members.size() >= cap)
                throw_capacity("smooth-set member cap of " + std::to_string(cap) + " exceeded");
            out.members.push_back(value);
            out.exponent_vectors.push_back(expo);
        }
        return;
    }
    // Exponents of primes[idx]; largest prime sits last in the vector so the
    // recursion walks its exponent last.
    std::uint64_t v = value;
    std::uint32_t e = 0;
    while (true) {
        expo[idx] = e;
        smooth_dfs(primes, idx + 1, v, expo, lo, hi, cap, out);
        if (v > hi / primes[idx]) break;  // next multiply would leave the block
        v *= primes[idx];
        ++e;
    }
    expo[idx] = 0;
}

}  // namespace

SmoothSet enumerate_smooth_block(int s, int T, std::size_t member_cap) {
    if (s < 1) throw_usage("smooth block needs s >= 1");
    if (T < 0 || T > 62) throw_usage("dyadic exponent T out of range [0, 62]");
    SmoothSet set;
    set.s = s;
    set.T = T;
    set.primes = first_primes(s);
    const std::uint64_t lo = 1ull << T;
    const std::uint64_t hi = 1ull << (T + 1);  // exclusive
    std::vector<std::uint32_t> expo(static_cast<std::size_t>(s), 0);
    smooth_dfs(set.primes, 0, 1, expo, lo, hi - 1, member_cap, set);

    // Sort members ascending, keeping exponent vectors aligned.
    std::vector<std::size_t> order(set.members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return set.members[a] < set.members[b]; });
    SmoothSet sorted = set;
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.members[i] = set.members[order[i]];
        sorted.exponent_vectors[i] = set.exponent_vectors[order[i]];
    }
    return sorted;
}

std::optional<DoublingResult> find_doubling_T(int s, int d, int T_max, std::size_t member_cap) {
    if (d < 0) throw_usage("gap d must be >= 0");
    const auto primes = first_primes(s);
    if (d >= 63 || (1ull << d) > primes.back())
        throw_usage("doubling search requires 2^d <= P_s");
    for (int T = 0; T <= T_max; ++T) {
        const SmoothSet a = enumerate_smooth_block(s, T, member_cap);
        const SmoothSet b = enumerate_smooth_block(s, T + d, member_cap);
        if (b.count() <= 2 * a.count())
            return DoublingResult{T, a.count(), b.count()};
    }
    return std::nullopt;
}

double mean_sigma_minus1(std::uint64_t J) {
    if (J == 0) throw_usage("J must be >= 1");
    double total = 0.0;
    for (std::uint64_t e = J; e >= 1; --e)  // ascending terms; sum small-to-large
        total += static_cast<double>(J / e) / static_cast<double>(e);
    return total / static_cast<double>(J);
}

Rational mean_sigma_minus1_exact(std::uint64_t J) {
    if (J == 0) throw_usage("J must be >= 1");
    Rational total(0);
    for (std::uint64_t e = 1; e <= J; ++e) total += Rational(J / e, e);
    return total / Rational(J);
}

std::vector<GronwallRecord> gronwall_ratio_scan(std::uint64_t K) {
    if (K < 16) throw_usage("Gronwall scan needs K >= 16 (log log k > 0)");
    // sigma_{-1}(k) = sigma_1(k)/k; sieve sigma_1 in uint64 (safe far past 10^9).
    std::vector<std::uint64_t> s1(K + 1, 0);
    for (std::uint64_t d = 1; d <= K; ++d)
        for (std::uint64_t m = d; m <= K; m += d) s1[m] += d;
    std::vector<GronwallRecord> records;
    double best = -1.0;
    for (std::uint64_t k = 16; k <= K; ++k) {
        const double sm1 = static_cast<double>(s1[k]) / static_cast<double>(k);
        const double ratio = sm1 / std::log(std::log(static_cast<double>(k)));
        if (ratio > best) {
            best = ratio;
            records.push_back(GronwallRecord{k, sm1, ratio});
        }
    }
    return records;
}

}  // namespace dilate
