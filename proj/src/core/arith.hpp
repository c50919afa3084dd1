#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace dilate {

// ---------------------------------------------------------------------------
// Divisor-power-sum tables
// ---------------------------------------------------------------------------

// Which divisor sum the table holds: sigma_s(n) = sum_{d|n} d^s.
// d(n) is sigma_0(n).
struct SigmaKind {
    double exponent = 0.0;

    static SigmaKind divisor_count() { return SigmaKind{0.0}; }
    static SigmaKind sigma(double s) { return SigmaKind{s}; }
    bool is_integer_exponent() const;
};

struct DivisorFunctionTable {
    std::uint64_t n_max = 0;
    SigmaKind kind;
    // Exact rational values are kept for integer exponents up to exact_upto;
    // `values` is always populated (doubles).
    std::uint64_t exact_upto = 0;
    std::vector<Rational> exact_values;  // index 0 unused when present
    std::vector<double> values;          // index 0 unused

    double at(std::uint64_t n) const { return values[n]; }
    const Rational& exact_at(std::uint64_t n) const;
};

// Divisor-sieve computation: O(N log N) additions, no per-n factorization.
// For integer s, values are exact rationals up to min(N, exact_limit);
// negative integer exponents use sigma_{-s}(n) = sigma_s(n) / n^s.
DivisorFunctionTable sieve_divisor_function(std::uint64_t n_max, SigmaKind kind,
                                            std::uint64_t exact_limit = 100000);

// All divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Exact sigma_s(n) for integer s by divisor enumeration (test oracle scale).
Rational sigma_exact(std::uint64_t n, long long s);

struct GcdReduction {
    std::uint64_t d, m_prime, n_prime;
};
GcdReduction gcd_reduce(std::uint64_t m, std::uint64_t n);

// ---------------------------------------------------------------------------
// Smooth-number blocks
// ---------------------------------------------------------------------------

struct SmoothSet {
    int s = 0;                          // number of generating primes
    std::vector<std::uint64_t> primes;  // first s primes
    int T = 0;                          // dyadic exponent: members in [2^T, 2^{T+1})
    std::vector<std::uint64_t> members;
    std::vector<std::vector<std::uint32_t>> exponent_vectors;  // aligned with members

    std::size_t count() const { return members.size(); }
};

std::vector<std::uint64_t> first_primes(int s);

// Depth-first enumeration of exponent vectors; output sorted ascending.
SmoothSet enumerate_smooth_block(int s, int T, std::size_t member_cap = (1u << 20));

struct DoublingResult {
    int T;
    std::size_t card_T;
    std::size_t card_T_plus_d;
};

// Least T <= T_max with #A_{T+d} <= 2 #A_T. Requires 2^d <= P_s.
std::optional<DoublingResult> find_doubling_T(int s, int d, int T_max,
                                              std::size_t member_cap = (1u << 20));

// ---------------------------------------------------------------------------
// sigma_{-1} diagnostics
// ---------------------------------------------------------------------------

// (1/J) sum_{j<=J} sigma_{-1}(j) via sum_{e<=J} (1/e) floor(J/e).
double mean_sigma_minus1(std::uint64_t J);

// Exact-rational variant of the same identity (oracle / acceptance scale).
Rational mean_sigma_minus1_exact(std::uint64_t J);

struct GronwallRecord {
    std::uint64_t k;
    double sigma_minus1;
    double ratio;  // sigma_{-1}(k) / log log k
};

// Running maxima of sigma_{-1}(k)/log log k over k in [16, K].
std::vector<GronwallRecord> gronwall_ratio_scan(std::uint64_t K);

}  // namespace dilate
