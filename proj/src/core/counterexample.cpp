#include "counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dilate {

namespace {

double sigma_minus1_of(std::uint64_t n) {
    std::uint64_t s1 = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            s1 += d;
            if (d != n / d) s1 += n / d;
        }
    }
    return static_cast<double>(s1) / static_cast<double>(n);
}

}  // namespace

WeightFamily WeightFamily::sigma_minus1_pow(double eps) {
    if (eps < 0.0 || eps >= 1.0) throw_usage("sigma weight needs 0 <= eps < 1");
    WeightFamily w;
    w.kind_ = Kind::sigma_minus1_pow;
    w.eps_ = eps;
    w.name_ = eps == 0.0 ? "sigma_minus1" : "sigma_minus1_pow(1-" + std::to_string(eps) + ")";
    return w;
}

WeightFamily WeightFamily::loglog() {
    WeightFamily w;
    w.kind_ = Kind::loglog;
    w.name_ = "loglog";
    return w;
}

WeightFamily WeightFamily::constant(double value) {
    WeightFamily w;
    w.kind_ = Kind::constant;
    w.value_ = value;
    w.name_ = "constant";
    return w;
}

WeightFamily WeightFamily::custom(std::function<double(std::uint64_t)> eval, std::string name) {
    WeightFamily w;
    w.kind_ = Kind::custom;
    w.eval_ = std::move(eval);
    w.name_ = std::move(name);
    return w;
}

double WeightFamily::operator()(std::uint64_t n) const {
    if (n == 0) throw_usage("weights are defined for n >= 1");
    switch (kind_) {
        case Kind::sigma_minus1_pow:
            return std::pow(sigma_minus1_of(n), 1.0 - eps_);
        case Kind::loglog:
            return n < 16 ? 0.0 : std::log(std::log(static_cast<double>(n)));
        case Kind::constant:
            return value_;
        case Kind::custom:
            return eval_(n);
    }
    return 0.0;
}

WeightPropertyReport check_weight_properties(const WeightFamily& w, std::uint64_t N,
                                             std::uint64_t pair_budget) {
    WeightPropertyReport rep;
    std::uint64_t tested = 0;
    for (std::uint64_t n = 2; n <= N && tested < pair_budget; ++n) {
        for (std::uint64_t m = 2; m * n <= N && tested < pair_budget; ++m) {
            if (gcd_reduce(m, n).d != 1) continue;
            ++tested;
            if (w(m * n) > w(m) * w(n) * (1.0 + 1e-12)) {
                rep.submultiplicative = false;
                rep.violation_m = m;
                rep.violation_n = n;
                break;
            }
        }
        if (!rep.submultiplicative) break;
    }
    double acc = 0.0;
    for (std::uint64_t j = 1; j <= N; ++j) {
        acc += w(j);
        if ((j & (j - 1)) == 0)
            rep.cesaro.push_back({j, acc / static_cast<double>(j)});
    }
    for (std::uint64_t n = 16; n <= N; n = n * 2)
        rep.loglog_ratio.push_back({n, w(n) / std::log(std::log(static_cast<double>(n)))});
    return rep;
}

Spectrum build_fT(const SmoothSet& smooth) {
    if (smooth.members.empty()) throw_usage("f_T needs a nonempty smooth set");
    Spectrum f;
    const double amp = 1.0 / std::sqrt(static_cast<double>(smooth.members.size()));
    for (std::uint64_t n : smooth.members) f.add(n, amp);
    return f;
}

OrbitSet orbit_distances(const Spectrum& f, const std::vector<std::uint64_t>& indices,
                         std::uint64_t freq_cap) {
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = i + 1; j < indices.size(); ++j)
            if (indices[i] == indices[j]) throw_usage("orbit indices must be distinct");
    OrbitSet set;
    set.base = f;
    set.indices = indices;
    for (std::uint64_t n : indices) set.orbit.push_back(average_operator(f, n, freq_cap));
    const std::size_t P = set.orbit.size();
    set.dist.assign(P, std::vector<double>(P, 0.0));
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = i + 1; j < P; ++j)
            set.dist[i][j] = set.dist[j][i] = Spectrum::distance(set.orbit[i], set.orbit[j]);
    return set;
}

EntropyCount entropy_number(const std::vector<std::vector<double>>& dist, double eps,
                            std::size_t exact_limit) {
    if (eps <= 0.0) throw_usage("entropy radius must be positive");
    const std::size_t P = dist.size();
    EntropyCount out;
    if (P == 0) {
        out.count = 0;
        return out;
    }
    // Ball around center c covers the points with strict distance < eps.
    std::vector<std::uint64_t> cover(P, 0);
    for (std::size_t c = 0; c < P; ++c)
        for (std::size_t p = 0; p < P; ++p)
            if (dist[c][p] < eps) cover[c] |= (1ull << p);

    if (P <= exact_limit && P <= 24) {
        // Exact minimal set cover by subset DP over point masks.
        const std::uint64_t full = P == 64 ? ~0ull : (1ull << P) - 1;
        std::vector<std::uint32_t> best(full + 1, UINT32_MAX);
        best[0] = 0;
        for (std::uint64_t mask = 0; mask <= full; ++mask) {
            if (best[mask] == UINT32_MAX) continue;
            if (mask == full) break;
            for (std::size_t c = 0; c < P; ++c) {
                const std::uint64_t next = mask | cover[c];
                if (best[next] > best[mask] + 1) best[next] = best[mask] + 1;
            }
        }
        out.count = best[full];
        out.exact = true;
        return out;
    }
    // Greedy upper bound.
    std::uint64_t covered = 0;
    const std::uint64_t full = (P >= 64) ? ~0ull : (1ull << P) - 1;
    std::size_t count = 0;
    while (covered != full) {
        std::size_t best_c = 0;
        int best_gain = -1;
        for (std::size_t c = 0; c < P; ++c) {
            const int gain = __builtin_popcountll(cover[c] & ~covered);
            if (gain > best_gain) {
                best_gain = gain;
                best_c = c;
            }
        }
        covered |= cover[best_c];
        ++count;
    }
    out.count = count;
    out.exact = false;
    return out;
}

GaussianNormReport gaussian_norm_expectation(const SmoothSet& smooth, std::uint64_t J,
                                             const WeightFamily& w, std::uint64_t mc_samples,
                                             std::uint64_t seed) {
    if (J == 0) throw_usage("Gaussian randomization needs J >= 1");
    if (smooth.members.empty()) throw_usage("empty smooth set");
    GaussianNormReport rep;
    rep.J = J;
    const std::size_t A = smooth.members.size();
    double total = 0.0;
    for (std::uint64_t j = 1; j <= J; ++j)
        for (std::uint64_t m : smooth.members) total += w(m * j);
    rep.exact_expectation = total / (static_cast<double>(J) * static_cast<double>(A));

    if (mc_samples > 0) {
        rep.mc_samples = mc_samples;
        rep.mc_seed = seed;
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        // Frequency-domain assembly: b_nu = (J #A)^{-1/2} sum_{j|nu, nu/j in A_T} g_j.
        // Collect the (nu, j) incidence once.
        std::map<std::uint64_t, std::vector<std::uint64_t>> incidence;
        for (std::uint64_t j = 1; j <= J; ++j)
            for (std::uint64_t m : smooth.members) incidence[m * j].push_back(j);
        std::vector<double> weights;
        weights.reserve(incidence.size());
        for (const auto& [nu, js] : incidence) weights.push_back(w(nu));
        double mean = 0.0, m2 = 0.0;
        std::vector<double> g(J + 1);
        for (std::uint64_t draw = 1; draw <= mc_samples; ++draw) {
            for (std::uint64_t j = 1; j <= J; ++j) g[j] = gauss(rng);
            double norm = 0.0;
            std::size_t idx = 0;
            for (const auto& [nu, js] : incidence) {
                double b = 0.0;
                for (std::uint64_t j : js) b += g[j];
                norm += weights[idx++] * b * b;
            }
            norm /= static_cast<double>(J) * static_cast<double>(A);
            const double delta = norm - mean;
            mean += delta / static_cast<double>(draw);
            m2 += delta * (norm - mean);
        }
        rep.mc_mean = mean;
        const double var = mc_samples > 1 ? m2 / static_cast<double>(mc_samples - 1) : 0.0;
        rep.mc_stderr = std::sqrt(var / static_cast<double>(mc_samples));
        rep.mc_within_4se =
            std::abs(rep.mc_mean - rep.exact_expectation) <= 4.0 * rep.mc_stderr;
    }
    return rep;
}

Theorem1Report theorem1_experiment(int s, int d, int T_max, const std::vector<double>& eps_list,
                                   const WeightFamily& w, std::uint64_t J,
                                   std::uint64_t mc_samples, std::uint64_t seed,
                                   std::uint64_t freq_cap) {
    const auto doubling = find_doubling_T(s, d, T_max);
    if (!doubling) throw_usage("no doubling T found up to T_max");
    Theorem1Report rep;
    rep.s = s;
    rep.d = d;
    rep.doubling = *doubling;
    const SmoothSet smooth = enumerate_smooth_block(s, doubling->T);
    const Spectrum f = build_fT(smooth);

    // Orbit over {4^i : i <= floor(d/2)} per the proof; i = 0 included so a
    // one-element orbit appears in the degenerate d < 2 case.
    std::vector<std::uint64_t> indices;
    for (int i = 0; i <= d / 2; ++i) indices.push_back(1ull << (2 * i));
    const OrbitSet orbit = orbit_distances(f, indices, freq_cap);
    rep.orbit_size = orbit.orbit.size();
    for (double eps : eps_list) rep.entropy[eps] = entropy_number(orbit.dist, eps);
    if (rep.entropy.find(0.125) == rep.entropy.end())
        rep.entropy[0.125] = entropy_number(orbit.dist, 0.125);

    rep.sqrt_log_T = doubling->T > 1 ? std::sqrt(std::log(static_cast<double>(doubling->T))) : 0.0;
    double max_w = 0.0, max_ratio = 0.0;
    for (std::uint64_t m : smooth.members) {
        max_w = std::max(max_w, w(m));
        if (m >= 16)
            max_ratio = std::max(max_ratio, w(m) / std::log(std::log(static_cast<double>(m))));
    }
    rep.max_weight_on_AT = max_w;
    rep.max_weight_over_loglog = max_ratio;
    double cesaro = 0.0;
    for (std::uint64_t j = 1; j <= J; ++j) cesaro += w(j);
    rep.cesaro_mean_w = cesaro / static_cast<double>(J);
    rep.gaussian = gaussian_norm_expectation(smooth, J, w, mc_samples, seed);
    return rep;
}

}  // namespace dilate
