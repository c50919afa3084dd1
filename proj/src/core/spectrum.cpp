#include "spectrum.hpp"

#include <cmath>

namespace dilate {

void Spectrum::add(std::uint64_t freq, std::complex<double> amp) {
    if (freq == 0) throw_model("spectrum entries must have frequency >= 1 (mean-zero)");
    auto [it, inserted] = amps_.emplace(freq, amp);
    if (!inserted) it->second += amp;
    if (it->second == std::complex<double>(0.0, 0.0)) amps_.erase(it);
}

std::complex<double> Spectrum::at(std::uint64_t freq) const {
    auto it = amps_.find(freq);
    return it == amps_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

double Spectrum::norm_sq_onesided() const {
    double total = 0.0;
    for (const auto& [nu, a] : amps_) total += std::norm(a);
    return total;
}

Spectrum Spectrum::dilate(std::uint64_t j, std::uint64_t freq_cap) const {
    if (j == 0) throw_usage("dilation index must be >= 1");
    Spectrum out;
    for (const auto& [nu, a] : amps_) {
        if (nu > freq_cap / j)
            throw_capacity("dilated frequency " + std::to_string(nu) + "*" + std::to_string(j) +
                           " exceeds cap " + std::to_string(freq_cap));
        out.add(nu * j, a);
    }
    return out;
}

Spectrum Spectrum::scaled(std::complex<double> u) const {
    Spectrum out;
    if (u == std::complex<double>(0.0, 0.0)) return out;
    for (const auto& [nu, a] : amps_) out.add(nu, u * a);
    return out;
}

Spectrum Spectrum::sum(const Spectrum& a, const Spectrum& b) {
    Spectrum out = a;
    for (const auto& [nu, amp] : b.amps_) out.add(nu, amp);
    return out;
}

Spectrum Spectrum::difference(const Spectrum& a, const Spectrum& b) {
    Spectrum out = a;
    for (const auto& [nu, amp] : b.amps_) out.add(nu, -amp);
    return out;
}

double Spectrum::distance(const Spectrum& a, const Spectrum& b) {
    return std::sqrt(difference(a, b).norm_sq_onesided());
}

Spectrum Spectrum::from_model(const CoeffModel& model, std::uint64_t truncate_at) {
    Spectrum out;
    if (model.kind() == CoeffModel::Kind::finite) {
        for (const auto& [k, a] : model.finite_amps())
            if (truncate_at == 0 || k <= truncate_at) out.add(k, a);
        return out;
    }
    std::uint64_t top = truncate_at;
    if (top == 0) {
        if (!model.finite_support())
            throw_model("infinite rule model requires an explicit truncation frequency");
        top = model.support_bound();
    }
    for (std::uint64_t k = 1; k <= top; ++k) {
        const std::complex<double> a = model.amp(k);
        if (a != std::complex<double>(0.0, 0.0)) out.add(k, a);
    }
    return out;
}

Spectrum average_operator(const Spectrum& spec, std::uint64_t n, std::uint64_t freq_cap) {
    if (n == 0) throw_usage("averaging index must be >= 1");
    Spectrum out;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::uint64_t j = 1; j <= n; ++j) {
        for (const auto& [nu, a] : spec.amps()) {
            if (nu > freq_cap / j)
                throw_capacity("average-operator frequency exceeds cap " +
                               std::to_string(freq_cap));
            out.add(nu * j, a * inv_n);
        }
    }
    return out;
}

Spectrum assemble_partial_sum_spectrum(const Spectrum& f, const SeriesCoefficients& coeffs,
                                       std::uint64_t N, std::uint64_t freq_cap) {
    if (N == 0) throw_usage("partial sum needs N >= 1");
    Spectrum out;
    for (std::uint64_t k = 1; k <= N; ++k) {
        const double c = coeffs.at(k);
        if (c == 0.0) continue;
        for (const auto& [nu, a] : f.amps()) {
            if (nu > freq_cap / k)
                throw_capacity("partial-sum frequency exceeds cap " + std::to_string(freq_cap));
            out.add(nu * k, a * c);
        }
    }
    return out;
}

}  // namespace dilate
