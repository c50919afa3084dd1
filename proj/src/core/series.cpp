#include "series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dilate {

namespace {

bool is_pow2(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::uint64_t next_pow2(std::uint64_t n) {
    std::uint64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 FFT, sign = +1 for the synthesis direction
// exp(+2 pi i k t / G) (no normalization).
void fft(std::vector<std::complex<double>>& data, int sign) {
    const std::size_t n = data.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

void check_grid(const Spectrum& spec, std::uint64_t grid_size) {
    const std::uint64_t min_admissible = next_pow2(2 * spec.max_frequency() + 1);
    if (!is_pow2(grid_size) || grid_size < 2 * spec.max_frequency() + 1)
        throw_usage("grid size must be a power of two >= 2*max_frequency+1; minimal admissible "
                    "grid is " +
                    std::to_string(min_admissible));
}

}  // namespace

std::vector<std::complex<double>> evaluate_complex_on_grid(const Spectrum& spec,
                                                           std::uint64_t grid_size) {
    check_grid(spec, grid_size);
    std::vector<std::complex<double>> bins(grid_size, {0.0, 0.0});
    for (const auto& [nu, a] : spec.amps()) bins[nu % grid_size] += a;
    fft(bins, +1);
    return bins;
}

std::vector<double> evaluate_on_grid(const Spectrum& spec, std::uint64_t grid_size) {
    check_grid(spec, grid_size);
    std::vector<std::complex<double>> bins(grid_size, {0.0, 0.0});
    for (const auto& [nu, a] : spec.amps()) {
        bins[nu % grid_size] += a;
        bins[grid_size - (nu % grid_size)] += std::conj(a);
    }
    fft(bins, +1);
    std::vector<double> out(grid_size);
    for (std::uint64_t t = 0; t < grid_size; ++t) out[t] = bins[t].real();
    return out;
}

double evaluate_direct(const Spectrum& spec, std::uint64_t t, std::uint64_t grid_size) {
    double total = 0.0;
    const double x = static_cast<double>(t) / static_cast<double>(grid_size);
    for (const auto& [nu, a] : spec.amps()) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(nu) * x;
        total += 2.0 * (a.real() * std::cos(phase) - a.imag() * std::sin(phase));
    }
    return total;
}

double quadrature_norm_sq(const Spectrum& spec, std::uint64_t nodes) {
    if (nodes < 2 * spec.max_frequency() + 1)
        throw_usage("quadrature needs at least 2*max_frequency+1 nodes");
    const std::vector<double> v = evaluate_on_grid(spec, next_pow2(nodes));
    double total = 0.0;
    for (double x : v) total += x * x;
    return total / static_cast<double>(v.size());
}

double quadrature_pair_integral_sampled(const std::vector<double>& f_samples, std::uint64_t m,
                                        std::uint64_t n) {
    // f(m t/G) = f evaluated at grid index (m t) mod G, by periodicity.
    const std::uint64_t G = f_samples.size();
    double total = 0.0;
    for (std::uint64_t t = 0; t < G; ++t)
        total += f_samples[(m * t) % G] * f_samples[(n * t) % G];
    return total / static_cast<double>(G);
}

double quadrature_pair_integral(const Spectrum& f, std::uint64_t m, std::uint64_t n,
                                std::uint64_t nodes) {
    // Integrand max frequency is (m+n) * max_frequency(f).
    const std::uint64_t need = (m + n) * f.max_frequency() + 1;
    if (nodes < need)
        throw_usage("quadrature node shortfall: need at least " + std::to_string(need));
    const std::uint64_t G = next_pow2(std::max(nodes, 2 * f.max_frequency() + 1));
    const std::vector<double> samples = evaluate_on_grid(f, G);
    return quadrature_pair_integral_sampled(samples, m, n);
}

TrajectoryReport khinchin_trajectory(const Spectrum& f, TrajectoryMode mode,
                                     const SeriesCoefficients& coeffs,
                                     const std::vector<std::uint64_t>& checkpoints,
                                     std::uint64_t grid_size, const WeylTable* table, double eps,
                                     std::uint64_t freq_cap) {
    TrajectoryReport report;
    report.grid_size = grid_size;
    report.eps = eps;
    for (std::uint64_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw_usage("checkpoints must be strictly increasing");
    for (std::uint64_t N : checkpoints) {
        Spectrum partial;
        if (mode == TrajectoryMode::average) {
            partial = average_operator(f, N, freq_cap);
        } else {
            partial = assemble_partial_sum_spectrum(f, coeffs, N, freq_cap);
        }
        TrajectoryPoint pt;
        pt.N = N;
        if (partial.empty()) {
            pt.grid_sup = 0.0;
            pt.argmax_t = 0;
            pt.normalized = 0.0;
            report.points.push_back(pt);
            continue;
        }
        const std::vector<double> vals = evaluate_on_grid(partial, grid_size);
        double sup = -1.0;
        std::uint64_t arg = 0;
        for (std::uint64_t t = 0; t < vals.size(); ++t) {
            const double v = std::abs(vals[t]);
            if (v > sup) {
                sup = v;
                arg = t;
            }
        }
        pt.grid_sup = sup;
        pt.argmax_t = arg;
        pt.normalized = 0.0;
        if (table != nullptr && N >= 2) {
            const double scale = std::sqrt(static_cast<double>(N)) *
                                 std::pow(std::log(static_cast<double>(N)), 1.5 + eps) *
                                 std::sqrt(table->h_hat_at(N));
            // The average mode tracks the sum divided by N; rescale so the
            // statistic matches the partial-sum normalization either way.
            const double sum_sup =
                mode == TrajectoryMode::average ? sup * static_cast<double>(N) : sup;
            if (scale > 0.0) pt.normalized = sum_sup / scale;
        }
        report.points.push_back(pt);
    }
    return report;
}

}  // namespace dilate
