#include "weyl.hpp"

#include <cmath>

namespace dilate {

double WeylTable::g_at(std::uint64_t r) const {
    if (r == 0 || r >= g.size()) throw_usage("g(r) outside table coverage");
    return g[r];
}
double WeylTable::G_at(std::uint64_t r) const {
    if (r == 0 || r >= G.size()) throw_usage("G(r) outside table coverage");
    return G[r];
}
double WeylTable::h_at(std::uint64_t n) const {
    if (n == 0 || n >= h.size()) throw_usage("h(n) outside table coverage");
    return h[n];
}
double WeylTable::h_hat_at(std::uint64_t n) const {
    if (n == 0 || n >= h_hat.size()) throw_usage("h_hat(n) outside table coverage");
    return h_hat[n];
}

WeylTable build_weyl_table(const CoeffModel& model, std::uint64_t n_max, double tol) {
    if (n_max == 0) throw_usage("WeylTable range must be >= 1");
    WeylTable t;
    t.n_max = n_max;
    // G(r) reads g up to 2r, so g covers [1, 2N].
    t.g.assign(2 * n_max + 1, 0.0);
    t.g_err.assign(2 * n_max + 1, 0.0);
    if (model.kind() == CoeffModel::Kind::finite) {
        // One pass over the support instead of 2N divisor scans.
        for (const auto& [k, a] : model.finite_amps()) {
            const double sq = std::norm(a);
            for (std::uint64_t r : divisors(k))
                if (r <= 2 * n_max) t.g[r] += sq;
        }
    } else {
        for (std::uint64_t r = 1; r <= 2 * n_max; ++r) {
            const CertifiedValue v = compute_g(model, r, tol);
            t.g[r] = v.value;
            t.g_err[r] = v.error;
        }
    }
    t.G.assign(n_max + 1, 0.0);
    double acc = 0.0;
    std::uint64_t j = 0;
    for (std::uint64_t r = 1; r <= n_max; ++r) {
        while (j < 2 * r) acc += t.g[++j];
        t.G[r] = acc;
    }
    // Divisor-sieve assembly of h: each d scatters d g(d) + G(d) to its multiples.
    t.h.assign(n_max + 1, 0.0);
    for (std::uint64_t d = 1; d <= n_max; ++d) {
        const double val = static_cast<double>(d) * t.g[d] + t.G[d];
        for (std::uint64_t n = d; n <= n_max; n += d) t.h[n] += val;
    }
    t.h_hat.assign(n_max + 1, 0.0);
    double best = 0.0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        best = std::max(best, t.h[n]);
        t.h_hat[n] = best;
    }
    return t;
}

double assemble_h_by_divisors(const WeylTable& table, std::uint64_t n) {
    if (n == 0 || n > table.n_max) throw_usage("h(n) outside table coverage");
    double total = 0.0;
    for (std::uint64_t d : divisors(n))
        total += static_cast<double>(d) * table.g[d] + table.G[d];
    return total;
}

namespace {

void push_checkpoints(CriterionSum& out, std::uint64_t k, double running) {
    if ((k & (k - 1)) == 0) out.checkpoints.push_back({k, running});
}

}  // namespace

CriterionSum koksma_sum(const CoeffModel& model, KoksmaWeight weight, std::uint64_t K,
                        double eps) {
    if (K == 0) throw_usage("Koksma sum needs K >= 1");
    CriterionSum out;
    // sigma_{-1} weights via a sigma_1 sieve over [1, K].
    std::vector<std::uint64_t> s1;
    if (weight == KoksmaWeight::sigma_minus1 || weight == KoksmaWeight::sigma_minus1_pow) {
        s1.assign(K + 1, 0);
        for (std::uint64_t d = 1; d <= K; ++d)
            for (std::uint64_t m = d; m <= K; m += d) s1[m] += d;
    }
    for (std::uint64_t k = 1; k <= K; ++k) {
        double w = 1.0;
        switch (weight) {
            case KoksmaWeight::sigma_minus1:
                w = static_cast<double>(s1[k]) / static_cast<double>(k);
                break;
            case KoksmaWeight::sigma_minus1_pow:
                w = std::pow(static_cast<double>(s1[k]) / static_cast<double>(k), 1.0 - eps);
                break;
            case KoksmaWeight::loglog:
                w = k < 16 ? 0.0 : std::log(std::log(static_cast<double>(k)));
                break;
            case KoksmaWeight::constant:
                w = 1.0;
                break;
        }
        out.total += model.amp_sq(k) * w;
        push_checkpoints(out, k, out.total);
    }
    return out;
}

CriterionSum theorem2_condition_sum(const WeylTable& table, const SeriesCoefficients& coeffs,
                                    std::uint64_t K, double power) {
    if (K > table.n_max) throw_usage("theorem2 sum exceeds WeylTable coverage");
    CriterionSum out;
    for (std::uint64_t k = 2; k <= K; ++k) {
        const double c = coeffs.at(k);
        out.total += c * c * table.h[k] * std::pow(std::log(static_cast<double>(k)), power);
        push_checkpoints(out, k, out.total);
    }
    return out;
}

PsiTable compute_psi_h(const CoeffModel& model, std::uint64_t n_max, double tol) {
    PsiTable t;
    t.n_max = n_max;
    t.psi.assign(n_max + 1, 0.0);
    // psi(r) = sum_{k >= r} k^{-1} phi^2(k); k^{-1} phi^2(k) = |a_k|^2, so the
    // model's tail bound at r = 1 certifies the truncation.
    std::uint64_t top = n_max;
    if (model.finite_support()) {
        top = std::max<std::uint64_t>(n_max, model.support_bound());
    } else {
        while (model.tail_bound_sq(1, top) > tol) {
            top *= 2;
            if (top > (1ull << 34)) throw_model("psi tail fails to certify tolerance");
        }
    }
    double tail = model.tail_bound_sq(1, top);
    double acc = tail;  // treat the certified remainder as part of psi
    std::vector<double> suffix(n_max + 1, 0.0);
    for (std::uint64_t k = top; k >= 1; --k) {
        acc += model.amp_sq(k);
        if (k <= n_max) suffix[k] = acc;
    }
    for (std::uint64_t r = 1; r <= n_max; ++r) t.psi[r] = suffix[r];
    t.h.assign(n_max + 1, 0.0);
    for (std::uint64_t d = 1; d <= n_max; ++d)
        for (std::uint64_t n = d; n <= n_max; n += d) t.h[n] += t.psi[d];
    const SlopeFit fit = log_log_slope([&](std::uint64_t r) { return t.psi[r]; }, n_max);
    t.slope = fit.slope;
    t.residual = fit.residual;
    t.exponent_flagged = t.slope < -1.0;
    return t;
}

double sigma_tilde(std::uint64_t k, const std::function<double(std::uint64_t)>& eps) {
    if (k == 0) throw_usage("sigma~ needs k >= 1");
    double total = 0.0;
    for (std::uint64_t d : divisors(k)) total += eps(d) / static_cast<double>(d);
    return total;
}

double log_power_eps(std::uint64_t d, double delta) {
    return d < 2 ? 1.0 : std::pow(std::log(static_cast<double>(d)), -delta);
}

NecessityCheck necessity_bound_check_with(std::uint64_t k, double delta, double sigma_minus1,
                                          double sigma_tilde_value) {
    if (k < 2) throw_usage("necessity check needs k >= 2");
    if (delta <= 0.0 || delta >= 1.0) throw_usage("necessity check needs 0 < delta < 1");
    NecessityCheck out;
    out.sigma_tilde_value = sigma_tilde_value;
    out.sigma_minus1 = sigma_minus1;
    out.bound = 1.0 + std::pow(sigma_minus1, delta) + std::pow(sigma_minus1, 1.0 - delta * delta);
    out.pass = out.sigma_tilde_value <= out.bound;
    return out;
}

NecessityCheck necessity_bound_check(std::uint64_t k, double delta) {
    if (k < 2) throw_usage("necessity check needs k >= 2");
    const double sm1 = to_double(sigma_exact(k, -1));
    const double st = sigma_tilde(k, [&](std::uint64_t d) { return log_power_eps(d, delta); });
    return necessity_bound_check_with(k, delta, sm1, st);
}

SlopeFit log_log_slope(const std::function<double(std::uint64_t)>& y, std::uint64_t n_max) {
    // Fit over the top decade [n_max/10, n_max] (at least two points).
    std::uint64_t lo = n_max / 10;
    if (lo < 2) lo = 2;
    if (lo >= n_max) lo = n_max > 1 ? n_max - 1 : 1;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::uint64_t count = 0;
    for (std::uint64_t n = lo; n <= n_max; ++n) {
        const double v = y(n);
        if (v <= 0.0) continue;
        const double lx = std::log(static_cast<double>(n));
        const double ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    SlopeFit fit;
    if (count < 2) return fit;
    const double n = static_cast<double>(count);
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (std::uint64_t m = lo; m <= n_max; ++m) {
        const double v = y(m);
        if (v <= 0.0) continue;
        const double pred = intercept + fit.slope * std::log(static_cast<double>(m));
        const double err = std::log(v) - pred;
        rss += err * err;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

Cor1Report corollary1_condition_check(const CoeffModel& model, Cor1Kind kind,
                                      std::uint64_t range, double gamma,
                                      double residual_threshold) {
    if (range == 0) throw_usage("corollary-1 check needs a positive range");
    Cor1Report out;
    out.kind = kind;
    switch (kind) {
        case Cor1Kind::uniform_dg: {
            double best = 0.0;
            std::uint64_t best_d = 1;
            for (std::uint64_t d = 1; d <= range; ++d) {
                const double v = static_cast<double>(d) * compute_g(model, d).value;
                if (v > best) {
                    best = v;
                    best_d = d;
                }
            }
            out.C = best;
            out.witness_d = best_d;
            out.pass = true;  // the minimal C always exists on a finite range
            break;
        }
        case Cor1Kind::monotone_power: {
            out.pass = true;
            for (std::uint64_t k = 2; k <= range; ++k) {
                const double cur =
                    std::pow(static_cast<double>(k), -gamma) * std::abs(model.amp(k));
                const double prev =
                    std::pow(static_cast<double>(k - 1), -gamma) * std::abs(model.amp(k - 1));
                if (cur > prev * (1.0 + 1e-15)) {
                    out.pass = false;
                    out.violation_k = k;
                    break;
                }
            }
            break;
        }
        case Cor1Kind::regular_variation: {
            const SlopeFit fit =
                log_log_slope([&](std::uint64_t k) { return std::abs(model.amp(k)); }, range);
            out.slope = fit.slope;
            out.residual = fit.residual;
            out.pass = fit.residual < residual_threshold;
            break;
        }
    }
    return out;
}

}  // namespace dilate
