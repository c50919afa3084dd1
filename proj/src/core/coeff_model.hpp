#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"

namespace dilate {

// ---------------------------------------------------------------------------
// Fourier coefficient sequences (a_k), k >= 1.
//
// Real-function convention throughout: only k >= 1 is stored, the implied
// negative-frequency coefficients are conjugates. a_0 = 0 always.
// ---------------------------------------------------------------------------

class CoeffModel {
public:
    enum class Kind { finite, power_law, cor3_pow, cor3_log };

    static CoeffModel finite(std::map<std::uint64_t, std::complex<double>> amps);

    // a_k = k^{-s} for k <= cutoff (cutoff = 0 means infinite support; then
    // s > 1/2 is required for square-summability).
    static CoeffModel power_law(double s, std::uint64_t cutoff);

    // Corollary-3 shape |a_k| = k^{-1/2} phi(k) with
    //   phi^2(k) = k^{-2 gamma}            (cor3_pow, gamma > 0)
    //   phi^2(k) = (log(k+1))^{-2 gamma}   (cor3_log, gamma > 1/2)
    static CoeffModel cor3(double gamma, bool log_form);

    Kind kind() const { return kind_; }
    std::complex<double> amp(std::uint64_t k) const;
    double amp_sq(std::uint64_t k) const;

    bool finite_support() const;
    // Largest k with a_k != 0 for finite-support models.
    std::uint64_t support_bound() const;

    // Certified upper bound on sum_{k > K} |a_{rk}|^2 (0 for finite models).
    double tail_bound_sq(std::uint64_t r, std::uint64_t K) const;

    // phi^2(k) for cor3 models.
    double phi_sq(std::uint64_t k) const;

    const std::map<std::uint64_t, std::complex<double>>& finite_amps() const { return amps_; }

    std::string describe() const;

private:
    CoeffModel() = default;
    Kind kind_ = Kind::finite;
    std::map<std::uint64_t, std::complex<double>> amps_;  // finite kind
    double s_ = 0.0;                                      // power_law exponent
    std::uint64_t cutoff_ = 0;                            // power_law cutoff (0 = none)
    double gamma_ = 0.0;                                  // cor3 parameter
};

// g(r) = sum_{k>=1} |a_{rk}|^2, with a certified absolute error bound.
struct CertifiedValue {
    double value = 0.0;
    double error = 0.0;
};
CertifiedValue compute_g(const CoeffModel& model, std::uint64_t r, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Series coefficients (c_k)
// ---------------------------------------------------------------------------

class SeriesCoefficients {
public:
    enum class Kind { explicit_list, reciprocal, power_rule };

    static SeriesCoefficients reciprocal();  // c_k = 1/k
    static SeriesCoefficients list(std::vector<double> values);  // c_1.. c_N
    static SeriesCoefficients power_rule(double p);              // c_k = k^{-p}

    double at(std::uint64_t k) const;
    Kind kind() const { return kind_; }
    // Support bound for explicit lists; 0 = unbounded.
    std::uint64_t support_bound() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::reciprocal;
    std::vector<double> values_;
    double p_ = 1.0;
};

}  // namespace dilate
