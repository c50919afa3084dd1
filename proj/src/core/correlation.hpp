#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arith.hpp"
#include "spectrum.hpp"
#include "weyl.hpp"

namespace dilate {

// ---------------------------------------------------------------------------
// Exact dilation correlations lambda_{m,n} = |int_0^1 f(mx) f(nx) dx|
// ---------------------------------------------------------------------------

struct CorrelationReport {
    std::uint64_t m = 0, n = 0;
    std::uint64_t d = 0, m_prime = 0, n_prime = 0;
    double exact_value = 0.0;  // signed integral
    double lambda = 0.0;       // |exact_value|
    double bound = 0.0;        // g(m') + g(n')
    double trunc_err = 0.0;    // certified truncation allowance
    std::optional<double> quadrature;       // oracle value, when requested
    std::optional<double> quadrature_diff;  // |exact - quadrature|
};

// Parseval after GCD reduction: exact_value = 2 Re sum_{i>=1} a_{m'i} conj(a_{n'i}).
CorrelationReport exact_correlation(const CoeffModel& model, std::uint64_t m, std::uint64_t n,
                                    double tol = 1e-12);

// Block row-sum rho(i) = sum_{j in (2^k, 2^{k+1}]} lambda_{i,j}; requires i in
// the block. Also reports the divisor-fold comparison value h(i).
struct RhoReport {
    double rho = 0.0;
    double h_comparison = 0.0;
    double trunc_err = 0.0;
};
RhoReport rho_block_row_sum(const CoeffModel& model, std::uint64_t i, int block_level,
                            double tol = 1e-12);

// ---------------------------------------------------------------------------
// The central Lemma on dyadic blocks
// ---------------------------------------------------------------------------

struct BlockQuadraticForm {
    int r = 0;                         // block (2^r, 2^{r+1}]
    std::vector<double> coefficients;  // c_{2^r+1} .. c_{2^{r+1}}
    double exact_integral = 0.0;       // int_0^1 (sum c_l f(lx))^2 dx, by Parseval
    double bound_rhs = 0.0;            // sum c_l^2 h(l)
    double ratio = 0.0;                // achieved slack (0 when rhs = 0)
    bool holds = false;                // exact_integral <= bound_rhs (1 + tol)
    std::vector<double> rho_values;    // per-index block row sums, when requested
};

// LHS assembled in the frequency domain (dilated-spectrum scatter + Parseval);
// the quadrature oracle stays independent in series_evaluator. `coefficients`
// is indexed by l - 2^r - 1 over the block.
BlockQuadraticForm verify_lemma_block(const CoeffModel& model,
                                      const std::vector<double>& coefficients, int r,
                                      const WeylTable& table, double tol = 1e-10,
                                      bool with_rho = false,
                                      std::uint64_t freq_cap = kDefaultFreqCap);

// ---------------------------------------------------------------------------
// Rademacher-Menshov chaining bound
// ---------------------------------------------------------------------------

struct RademacherMenshovReport {
    std::vector<double> level_terms;  // r^2 sum_{j in block r} c_j^2 h(j), r = 1..R
    std::vector<double> running_sum;
    double chained_sup_bound = 0.0;   // Cauchy-Schwarz chained L2 bound
};

RademacherMenshovReport rademacher_menshov_bound(const WeylTable& table,
                                                 const SeriesCoefficients& coeffs, int R);

// ---------------------------------------------------------------------------
// Necessity reduction: both sides of the two-sums comparison with c_k = 1/k,
// eps_k = (log k)^{-delta}
// ---------------------------------------------------------------------------

struct NecessityReduction {
    std::vector<Checkpoint> lhs;    // sum_{k<=K} k^{-2} h(k) (log k)^{-delta}
    std::vector<Checkpoint> rhs;    // sum_{j<=K} |a_j|^2 sigma~(j)
    std::vector<double> ratio;      // lhs/rhs at the same checkpoints
};

NecessityReduction necessity_reduction(const CoeffModel& model, const WeylTable& table,
                                       std::uint64_t K, double delta);

}  // namespace dilate
