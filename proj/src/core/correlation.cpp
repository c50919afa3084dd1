#include "correlation.hpp"

#include <cmath>

namespace dilate {

CorrelationReport exact_correlation(const CoeffModel& model, std::uint64_t m, std::uint64_t n,
                                    double tol) {
    if (m == 0 || n == 0) throw_usage("correlation needs m, n >= 1");
    CorrelationReport rep;
    rep.m = m;
    rep.n = n;
    const GcdReduction red = gcd_reduce(m, n);
    rep.d = red.d;
    rep.m_prime = red.m_prime;
    rep.n_prime = red.n_prime;

    double sum = 0.0;
    double trunc = 0.0;
    if (model.finite_support()) {
        const std::uint64_t top = model.support_bound();
        const std::uint64_t big = std::max(rep.m_prime, rep.n_prime);
        for (std::uint64_t i = 1; i * big <= top; ++i) {
            const std::complex<double> prod =
                model.amp(rep.m_prime * i) * std::conj(model.amp(rep.n_prime * i));
            sum += prod.real();
        }
    } else {
        // Truncate the i-sum once the Cauchy-Schwarz tail certificate drops
        // below tol/2.
        std::uint64_t i = 0;
        while (true) {
            const double tail = std::sqrt(model.tail_bound_sq(rep.m_prime, i) *
                                          model.tail_bound_sq(rep.n_prime, i));
            if (2.0 * tail <= tol / 2.0 || !std::isfinite(tail)) {
                trunc = 2.0 * tail;
                break;
            }
            ++i;
            const std::complex<double> prod =
                model.amp(rep.m_prime * i) * std::conj(model.amp(rep.n_prime * i));
            sum += prod.real();
            if (i > (1u << 24)) throw_numeric("correlation truncation failed to certify");
        }
    }
    rep.exact_value = 2.0 * sum;
    rep.lambda = std::abs(rep.exact_value);
    const CertifiedValue gm = compute_g(model, rep.m_prime, tol / 2.0);
    const CertifiedValue gn = compute_g(model, rep.n_prime, tol / 2.0);
    rep.bound = gm.value + gn.value;
    rep.trunc_err = trunc + gm.error + gn.error;
    return rep;
}

RhoReport rho_block_row_sum(const CoeffModel& model, std::uint64_t i, int block_level,
                            double tol) {
    const std::uint64_t lo = 1ull << block_level;
    const std::uint64_t hi = 1ull << (block_level + 1);
    if (i <= lo || i > hi) throw_usage("rho(i) requires 2^k < i <= 2^{k+1}");
    RhoReport rep;
    for (std::uint64_t j = lo + 1; j <= hi; ++j) {
        const CorrelationReport c = exact_correlation(model, i, j, tol);
        rep.rho += c.lambda;
        rep.trunc_err += c.trunc_err;
    }
    // Divisor-fold comparison value h(i) = sum_{d|i} (d g(d) + G(d)).
    double h = 0.0;
    for (std::uint64_t d : divisors(i)) {
        const double gd = compute_g(model, d, tol).value;
        double Gd = 0.0;
        for (std::uint64_t j = 1; j <= 2 * d; ++j) Gd += compute_g(model, j, tol).value;
        h += static_cast<double>(d) * gd + Gd;
    }
    rep.h_comparison = h;
    return rep;
}

BlockQuadraticForm verify_lemma_block(const CoeffModel& model,
                                      const std::vector<double>& coefficients, int r,
                                      const WeylTable& table, double tol, bool with_rho,
                                      std::uint64_t freq_cap) {
    const std::uint64_t lo = 1ull << r;
    const std::uint64_t hi = 1ull << (r + 1);
    if (coefficients.size() != hi - lo)
        throw_usage("coefficient vector must cover the block (2^r, 2^{r+1}] exactly");
    if (table.n_max < hi) throw_usage("WeylTable does not cover the block");
    BlockQuadraticForm form;
    form.r = r;
    form.coefficients = coefficients;

    // Assemble the spectrum of sum_l c_l f(lx) by index dilation.
    const Spectrum base = Spectrum::from_model(model);
    Spectrum total;
    for (std::uint64_t l = lo + 1; l <= hi; ++l) {
        const double c = coefficients[l - lo - 1];
        if (c == 0.0) continue;
        total = Spectrum::sum(total, base.dilate(l, freq_cap).scaled(c));
    }
    form.exact_integral = total.norm_sq_real();

    for (std::uint64_t l = lo + 1; l <= hi; ++l) {
        const double c = coefficients[l - lo - 1];
        form.bound_rhs += c * c * table.h_at(l);
    }
    form.holds = form.exact_integral <= form.bound_rhs * (1.0 + tol) + tol;
    form.ratio = form.bound_rhs > 0.0 ? form.exact_integral / form.bound_rhs : 0.0;

    if (with_rho) {
        for (std::uint64_t i = lo + 1; i <= hi; ++i)
            form.rho_values.push_back(rho_block_row_sum(model, i, r).rho);
    }
    return form;
}

RademacherMenshovReport rademacher_menshov_bound(const WeylTable& table,
                                                 const SeriesCoefficients& coeffs, int R) {
    if (R < 1) throw_usage("Rademacher-Menshov bound needs R >= 1");
    if (table.n_max < (1ull << (R + 1)))
        throw_usage("WeylTable must cover 2^{R+1}");
    RademacherMenshovReport rep;
    double running = 0.0;
    for (int r = 1; r <= R; ++r) {
        const std::uint64_t lo = 1ull << r;
        const std::uint64_t hi = 1ull << (r + 1);
        double block = 0.0;
        for (std::uint64_t j = lo + 1; j <= hi; ++j) {
            const double c = coeffs.at(j);
            block += c * c * table.h_at(j);
        }
        const double term = static_cast<double>(r) * static_cast<double>(r) * block;
        running += term;
        rep.level_terms.push_back(term);
        rep.running_sum.push_back(running);
    }
    // Chaining: |sum over blocks|^2 <= (sum 1/k^2)(sum k^2 |block_k|^2); in L2
    // the block squares are bounded by the level terms.
    double inv_sq = 0.0;
    for (int r = 1; r <= R; ++r) inv_sq += 1.0 / (static_cast<double>(r) * static_cast<double>(r));
    rep.chained_sup_bound = std::sqrt(inv_sq * running);
    return rep;
}

NecessityReduction necessity_reduction(const CoeffModel& model, const WeylTable& table,
                                       std::uint64_t K, double delta) {
    if (K < 2 || K > table.n_max) throw_usage("necessity reduction needs 2 <= K <= table range");
    NecessityReduction rep;
    double lhs = 0.0;
    for (std::uint64_t k = 2; k <= K; ++k) {
        const double eps_k =
            delta == 0.0 ? 1.0 : std::pow(std::log(static_cast<double>(k)), -delta);
        lhs += table.h_at(k) * eps_k / (static_cast<double>(k) * static_cast<double>(k));
        if ((k & (k - 1)) == 0) rep.lhs.push_back({k, lhs});
    }
    double rhs = 0.0;
    for (std::uint64_t j = 1; j <= K; ++j) {
        const double st = sigma_tilde(j, [&](std::uint64_t d) {
            return delta == 0.0 ? 1.0 : log_power_eps(d, delta);
        });
        rhs += model.amp_sq(j) * st;
        // checkpoints from K = 2 to align with the lhs trace
        if (j >= 2 && (j & (j - 1)) == 0) rep.rhs.push_back({j, rhs});
    }
    for (std::size_t i = 0; i < rep.lhs.size() && i < rep.rhs.size(); ++i)
        rep.ratio.push_back(rep.rhs[i].partial_sum > 0.0
                                ? rep.lhs[i].partial_sum / rep.rhs[i].partial_sum
                                : 0.0);
    return rep;
}

}  // namespace dilate
