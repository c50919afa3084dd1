#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "coeff_model.hpp"

namespace dilate {

// ---------------------------------------------------------------------------
// The Theorem-2 functionals
//   g(r) = sum_k |a_{rk}|^2
//   G(r) = sum_{j <= 2r} g(j)
//   h(n) = sum_{d|n} (d g(d) + G(d))
// ---------------------------------------------------------------------------

struct WeylTable {
    std::uint64_t n_max = 0;
    std::vector<double> g;       // index 1 .. 2 n_max
    std::vector<double> g_err;   // certified truncation error per g entry
    std::vector<double> G;       // index 1 .. n_max
    std::vector<double> h;       // index 1 .. n_max
    std::vector<double> h_hat;   // monotone envelope max_{k<=n} h(k)

    double g_at(std::uint64_t r) const;
    double G_at(std::uint64_t r) const;
    double h_at(std::uint64_t n) const;
    double h_hat_at(std::uint64_t n) const;
};

// h assembled by a divisor sieve over precomputed g, G (cost N log N).
WeylTable build_weyl_table(const CoeffModel& model, std::uint64_t n_max, double tol = 1e-12);

// Oracle-style assembly: per-n divisor enumeration (same g, G inputs).
double assemble_h_by_divisors(const WeylTable& table, std::uint64_t n);

// ---------------------------------------------------------------------------
// Convergence-criterion sums (boundedness diagnostics, never verdicts)
// ---------------------------------------------------------------------------

enum class KoksmaWeight { sigma_minus1, sigma_minus1_pow, loglog, constant };

struct Checkpoint {
    std::uint64_t K;
    double partial_sum;
};

struct CriterionSum {
    double total = 0.0;
    std::vector<Checkpoint> checkpoints;  // at dyadic K
};

// sum_{k<=K} |a_k|^2 w(k). For sigma_minus1_pow, w(k) = sigma_{-1}(k)^{1-eps}.
// log log k is clamped to 0 for k < 16 (non-positive there).
CriterionSum koksma_sum(const CoeffModel& model, KoksmaWeight weight, std::uint64_t K,
                        double eps = 0.0);

// sum_{2<=k<=K} c_k^2 h(k) (log k)^power (k = 1 excluded: log 1 = 0).
CriterionSum theorem2_condition_sum(const WeylTable& table, const SeriesCoefficients& coeffs,
                                    std::uint64_t K, double power);

// ---------------------------------------------------------------------------
// Corollary-3 objects: psi(r) = sum_{k>=r} k^{-1} phi^2(k), h(n) = sum_{d|n} psi(d)
// ---------------------------------------------------------------------------

struct PsiTable {
    std::uint64_t n_max = 0;
    std::vector<double> psi;  // index 1 .. n_max
    std::vector<double> h;    // index 1 .. n_max
    double slope = 0.0;       // least-squares exponent of psi over the top decade
    double residual = 0.0;    // rms residual of the fit
    bool exponent_flagged = false;  // slope < -1 violates the regular-variation hypothesis
};

PsiTable compute_psi_h(const CoeffModel& cor3_model, std::uint64_t n_max, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Necessity machinery: sigma-tilde and the explicit-constant chain
// ---------------------------------------------------------------------------

// sigma~(k) = sum_{d|k} eps(d)/d for a caller-supplied non-increasing eps.
double sigma_tilde(std::uint64_t k, const std::function<double(std::uint64_t)>& eps);

// eps_d = (log d)^{-delta} for d >= 2, eps_1 = 1.
double log_power_eps(std::uint64_t d, double delta);

struct NecessityCheck {
    double sigma_tilde_value;
    double sigma_minus1;
    double bound;  // 1 + sigma_{-1}(k)^delta + sigma_{-1}(k)^{1-delta^2}
    bool pass;
};
NecessityCheck necessity_bound_check(std::uint64_t k, double delta);
// Same check with sigma_{-1}(k) supplied (for sieved scans).
NecessityCheck necessity_bound_check_with(std::uint64_t k, double delta, double sigma_minus1,
                                          double sigma_tilde_value);

// ---------------------------------------------------------------------------
// Corollary 1 condition checks
// ---------------------------------------------------------------------------

enum class Cor1Kind { regular_variation, monotone_power, uniform_dg };

struct Cor1Report {
    Cor1Kind kind;
    bool pass = false;
    // (c): minimal C with d g(d) <= C over the range, and the maximizing d.
    double C = 0.0;
    std::uint64_t witness_d = 0;
    // (b): first violating k (0 if none).
    std::uint64_t violation_k = 0;
    // (a): slope / residual of log|a_k| vs log k over the top decade.
    double slope = 0.0;
    double residual = 0.0;
};

Cor1Report corollary1_condition_check(const CoeffModel& model, Cor1Kind kind,
                                      std::uint64_t range, double gamma = 0.0,
                                      double residual_threshold = 0.05);

// Least-squares slope of log y vs log x over the top decade of [1, n] samples.
// Shared diagnostic for the regular-variation checks.
struct SlopeFit {
    double slope = 0.0;
    double residual = 0.0;
};
SlopeFit log_log_slope(const std::function<double(std::uint64_t)>& y, std::uint64_t n_max);

}  // namespace dilate
