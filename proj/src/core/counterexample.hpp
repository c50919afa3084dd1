#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "spectrum.hpp"

namespace dilate {

// ---------------------------------------------------------------------------
// Weight families w(n)
// ---------------------------------------------------------------------------

class WeightFamily {
public:
    enum class Kind { sigma_minus1_pow, loglog, constant, custom };

    // w(n) = sigma_{-1}(n)^{1-eps}; eps = 0 gives sigma_{-1} itself.
    static WeightFamily sigma_minus1_pow(double eps);
    static WeightFamily loglog();  // w(n) = log log n, clamped to 0 for n < 16
    static WeightFamily constant(double value = 1.0);
    static WeightFamily custom(std::function<double(std::uint64_t)> eval, std::string name);

    double operator()(std::uint64_t n) const;
    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double eps() const { return eps_; }

private:
    Kind kind_ = Kind::constant;
    double eps_ = 0.0;
    double value_ = 1.0;
    std::function<double(std::uint64_t)> eval_;
    std::string name_;
};

struct Checkpointed {
    std::uint64_t at;
    double value;
};

struct WeightPropertyReport {
    bool submultiplicative = true;
    std::uint64_t violation_m = 0, violation_n = 0;  // first failing coprime pair
    std::vector<Checkpointed> cesaro;                // (J, (1/J) sum w(j))
    std::vector<Checkpointed> loglog_ratio;          // (n, w(n)/log log n), n >= 16
};

// Exhaustive sub-multiplicativity over coprime pairs with n*m <= N, plus the
// Cesaro-mean and w/loglog traces behind Theorem 1's hypotheses.
WeightPropertyReport check_weight_properties(const WeightFamily& w, std::uint64_t N,
                                             std::uint64_t pair_budget = 2'000'000);

// ---------------------------------------------------------------------------
// Theorem-1 proof objects
// ---------------------------------------------------------------------------

// f_T = #(A_T)^{-1/2} sum_{n in A_T} e_n; unit L2 norm (one-sided convention).
Spectrum build_fT(const SmoothSet& smooth);

struct OrbitSet {
    Spectrum base;
    std::vector<std::uint64_t> indices;       // averaging indices n
    std::vector<Spectrum> orbit;              // S_n f per index
    std::vector<std::vector<double>> dist;    // pairwise one-sided L2 distances
};

OrbitSet orbit_distances(const Spectrum& f, const std::vector<std::uint64_t>& indices,
                         std::uint64_t freq_cap = kDefaultFreqCap);

// Minimal number of open epsilon-balls centered at orbit points covering the
// orbit. Exact set-cover search for <= `exact_limit` points, greedy beyond
// (flagged).
struct EntropyCount {
    std::size_t count = 0;
    bool exact = true;
};
EntropyCount entropy_number(const std::vector<std::vector<double>>& dist, double eps,
                            std::size_t exact_limit = 20);

// ---------------------------------------------------------------------------
// Gaussian randomization F_{J,f} and its weighted-norm expectation
// ---------------------------------------------------------------------------

struct GaussianNormReport {
    std::uint64_t J = 0;
    double exact_expectation = 0.0;  // (1/(J #A_T)) sum_{j<=J} sum_{m in A_T} w(mj)
    std::uint64_t mc_samples = 0;
    std::uint64_t mc_seed = 0;
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    bool mc_within_4se = true;
};

GaussianNormReport gaussian_norm_expectation(const SmoothSet& smooth, std::uint64_t J,
                                             const WeightFamily& w, std::uint64_t mc_samples = 0,
                                             std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// The Theorem-1 experiment bundle (diagnostic; the contradiction is asymptotic)
// ---------------------------------------------------------------------------

struct Theorem1Report {
    int s = 0, d = 0;
    DoublingResult doubling;
    std::size_t orbit_size = 0;
    std::map<double, EntropyCount> entropy;  // per requested epsilon
    double sqrt_log_T = 0.0;
    double max_weight_on_AT = 0.0;
    double max_weight_over_loglog = 0.0;  // max over A_T of w(m)/log log m
    double cesaro_mean_w = 0.0;           // (1/J) sum_{j<=J} w(j) at the report J
    GaussianNormReport gaussian;
};

Theorem1Report theorem1_experiment(int s, int d, int T_max, const std::vector<double>& eps_list,
                                   const WeightFamily& w, std::uint64_t J,
                                   std::uint64_t mc_samples = 0, std::uint64_t seed = 0,
                                   std::uint64_t freq_cap = kDefaultFreqCap);

}  // namespace dilate
