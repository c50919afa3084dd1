#pragma once

#include <cstdint>
#include <vector>

#include "spectrum.hpp"
#include "weyl.hpp"

namespace dilate {

// ---------------------------------------------------------------------------
// Grid evaluation (fast transform contract)
// ---------------------------------------------------------------------------

// Real values of the trigonometric polynomial at x = t/G, t = 0..G-1.
// G must be a power of two with G >= 2 * max_frequency + 1; violating either
// raises a domain error naming the minimal admissible grid.
std::vector<double> evaluate_on_grid(const Spectrum& spec, std::uint64_t grid_size);

// Complex values of sum_nu a_nu e(nu x) on the same grid (one-sided sum, used
// for the Theorem-1 orbit objects).
std::vector<std::complex<double>> evaluate_complex_on_grid(const Spectrum& spec,
                                                           std::uint64_t grid_size);

// Direct (slow) evaluation at a single grid point, the test oracle.
double evaluate_direct(const Spectrum& spec, std::uint64_t t, std::uint64_t grid_size);

// ---------------------------------------------------------------------------
// Quadrature oracle: uniform trapezoid on the circle = mean of samples,
// exact for trigonometric polynomials once nodes exceed the top frequency.
// ---------------------------------------------------------------------------

// integral of the square of the (real) polynomial.
double quadrature_norm_sq(const Spectrum& spec, std::uint64_t nodes);

// integral_0^1 f(mx) f(nx) dx, with f given by `spec` (real convention).
double quadrature_pair_integral(const Spectrum& f, std::uint64_t m, std::uint64_t n,
                                std::uint64_t nodes);

// Same pairing but reusing precomputed samples of f on the `nodes` grid.
double quadrature_pair_integral_sampled(const std::vector<double>& f_samples, std::uint64_t m,
                                        std::uint64_t n);

// ---------------------------------------------------------------------------
// Khinchin trajectories
// ---------------------------------------------------------------------------

enum class TrajectoryMode { average, weighted_sum };

struct TrajectoryPoint {
    std::uint64_t N;
    double grid_sup;
    std::uint64_t argmax_t;
    double normalized;  // grid_sup / (sqrt(N) (log N)^{3/2+eps} h_hat(N)^{1/2})
};

struct TrajectoryReport {
    std::uint64_t grid_size = 0;
    double eps = 0.1;
    std::vector<TrajectoryPoint> points;
};

// Sup statistics of partial sums / averages over a uniform grid at each
// checkpoint. Grid suprema are lower bounds on the true sup; no convergence
// claim is attached. Pass a WeylTable covering the checkpoints for the
// normalized column (nullptr leaves it at 0).
TrajectoryReport khinchin_trajectory(const Spectrum& f, TrajectoryMode mode,
                                     const SeriesCoefficients& coeffs,
                                     const std::vector<std::uint64_t>& checkpoints,
                                     std::uint64_t grid_size, const WeylTable* table,
                                     double eps = 0.1,
                                     std::uint64_t freq_cap = kDefaultFreqCap);

}  // namespace dilate
