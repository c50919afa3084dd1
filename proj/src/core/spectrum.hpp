#pragma once

#include <complex>
#include <cstdint>
#include <map>

#include "coeff_model.hpp"
#include "error.hpp"

namespace dilate {

// Sparse trigonometric-polynomial spectrum: frequency nu >= 1 -> complex
// amplitude a_nu, with implied a_{-nu} = conj(a_nu). No zero frequency
// (mean-zero).
class Spectrum {
public:
    using Map = std::map<std::uint64_t, std::complex<double>>;

    Spectrum() = default;

    void add(std::uint64_t freq, std::complex<double> amp);
    const Map& amps() const { return amps_; }
    std::uint64_t max_frequency() const { return amps_.empty() ? 0 : amps_.rbegin()->first; }
    bool empty() const { return amps_.empty(); }
    std::size_t size() const { return amps_.size(); }
    std::complex<double> at(std::uint64_t freq) const;

    // L2 norms: one-sided sum of |a_nu|^2 (complex exponential sums, the
    // Theorem-1 objects) and the real-function convention 2 * sum.
    double norm_sq_onesided() const;
    double norm_sq_real() const { return 2.0 * norm_sq_onesided(); }

    // Dilation operator T_j: frequency nu -> j nu.
    Spectrum dilate(std::uint64_t j, std::uint64_t freq_cap) const;

    Spectrum scaled(std::complex<double> u) const;
    static Spectrum sum(const Spectrum& a, const Spectrum& b);
    static Spectrum difference(const Spectrum& a, const Spectrum& b);

    // One-sided L2 distance between two spectra, by Parseval.
    static double distance(const Spectrum& a, const Spectrum& b);

    static Spectrum from_model(const CoeffModel& model, std::uint64_t truncate_at = 0);

private:
    Map amps_;
};

// Averaging operator S_n f = (1/n) sum_{j<=n} f(jx): Dirichlet-dilation
// scatter, coefficient at nu is (1/n) sum_{j<=n, j|nu} a_{nu/j}.
Spectrum average_operator(const Spectrum& spec, std::uint64_t n, std::uint64_t freq_cap);

// Frequency-domain form of sum_{k<=N} c_k f(kx): B_nu = sum_{k|nu, k<=N} c_k a_{nu/k}.
Spectrum assemble_partial_sum_spectrum(const Spectrum& f, const SeriesCoefficients& coeffs,
                                       std::uint64_t N, std::uint64_t freq_cap);

inline constexpr std::uint64_t kDefaultFreqCap = 1ull << 24;

}  // namespace dilate
