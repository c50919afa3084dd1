#include "coeff_model.hpp"

#include <cmath>
#include <sstream>

namespace dilate {

CoeffModel CoeffModel::finite(std::map<std::uint64_t, std::complex<double>> amps) {
    CoeffModel m;
    m.kind_ = Kind::finite;
    for (auto it = amps.begin(); it != amps.end();) {
        if (it->first == 0) throw_model("finite spectrum may not carry a_0 (mean-zero)");
        if (it->second == std::complex<double>(0.0, 0.0))
            it = amps.erase(it);
        else
            ++it;
    }
    m.amps_ = std::move(amps);
    return m;
}

CoeffModel CoeffModel::power_law(double s, std::uint64_t cutoff) {
    CoeffModel m;
    m.kind_ = Kind::power_law;
    m.s_ = s;
    m.cutoff_ = cutoff;
    if (cutoff == 0 && s <= 0.5)
        throw_model("infinite power-law model needs s > 1/2 for square-summability");
    return m;
}

CoeffModel CoeffModel::cor3(double gamma, bool log_form) {
    CoeffModel m;
    m.kind_ = log_form ? Kind::cor3_log : Kind::cor3_pow;
    m.gamma_ = gamma;
    if (!log_form && gamma <= 0.0) throw_model("cor3 pow form needs gamma > 0");
    if (log_form && gamma <= 0.5) throw_model("cor3 log form needs gamma > 1/2");
    return m;
}

std::complex<double> CoeffModel::amp(std::uint64_t k) const {
    if (k == 0) return {0.0, 0.0};
    switch (kind_) {
        case Kind::finite: {
            auto it = amps_.find(k);
            return it == amps_.end() ? std::complex<double>(0.0, 0.0) : it->second;
        }
        case Kind::power_law:
            if (cutoff_ != 0 && k > cutoff_) return {0.0, 0.0};
            return {std::pow(static_cast<double>(k), -s_), 0.0};
        case Kind::cor3_pow:
        case Kind::cor3_log:
            return {std::sqrt(amp_sq(k)), 0.0};
    }
    return {0.0, 0.0};
}

double CoeffModel::phi_sq(std::uint64_t k) const {
    const double x = static_cast<double>(k);
    if (kind_ == Kind::cor3_pow) return std::pow(x, -2.0 * gamma_);
    if (kind_ == Kind::cor3_log) return std::pow(std::log(x + 1.0), -2.0 * gamma_);
    throw_model("phi is defined only for cor3 models");
}

double CoeffModel::amp_sq(std::uint64_t k) const {
    if (k == 0) return 0.0;
    switch (kind_) {
        case Kind::finite: {
            auto it = amps_.find(k);
            return it == amps_.end() ? 0.0 : std::norm(it->second);
        }
        case Kind::power_law:
            if (cutoff_ != 0 && k > cutoff_) return 0.0;
            return std::pow(static_cast<double>(k), -2.0 * s_);
        case Kind::cor3_pow:
        case Kind::cor3_log:
            return phi_sq(k) / static_cast<double>(k);
    }
    return 0.0;
}

bool CoeffModel::finite_support() const {
    return kind_ == Kind::finite || (kind_ == Kind::power_law && cutoff_ != 0);
}

std::uint64_t CoeffModel::support_bound() const {
    if (kind_ == Kind::finite) return amps_.empty() ? 0 : amps_.rbegin()->first;
    if (kind_ == Kind::power_law && cutoff_ != 0) return cutoff_;
    throw_model("support bound requested for an infinite-support model");
}

double CoeffModel::tail_bound_sq(std::uint64_t r, std::uint64_t K) const {
    // Bound on sum_{k > K} |a_{rk}|^2.
    if (finite_support()) return 0.0;
    const double rd = static_cast<double>(r);
    const double Kd = static_cast<double>(K < 1 ? 1 : K);
    if (kind_ == Kind::power_law) {
        // sum_{k>K} (rk)^{-2s} <= r^{-2s} * K^{1-2s} / (2s - 1)
        return std::pow(rd, -2.0 * s_) * std::pow(Kd, 1.0 - 2.0 * s_) / (2.0 * s_ - 1.0);
    }
    if (kind_ == Kind::cor3_pow) {
        // |a_{rk}|^2 = (rk)^{-1-2g}; integral tail bound.
        const double e = 1.0 + 2.0 * gamma_;
        return std::pow(rd, -e) * std::pow(Kd, 1.0 - e) / (e - 1.0);
    }
    // cor3_log: sum_{k>K} (rk)^{-1} log(rk+1)^{-2g}
    //        <= (1/r) * log(rK)^{1-2g} / (2g - 1)   (integral comparison)
    const double L = std::log(rd * Kd + 1.0);
    return std::pow(L, 1.0 - 2.0 * gamma_) / ((2.0 * gamma_ - 1.0) * rd);
}

std::string CoeffModel::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::finite:
            os << "finite{" << amps_.size() << " freqs";
            if (!amps_.empty()) os << ", max " << amps_.rbegin()->first;
            os << "}";
            break;
        case Kind::power_law:
            os << "powerlaw{s=" << s_ << ", cutoff=" << cutoff_ << "}";
            break;
        case Kind::cor3_pow:
            os << "cor3{gamma=" << gamma_ << ", form=pow}";
            break;
        case Kind::cor3_log:
            os << "cor3{gamma=" << gamma_ << ", form=log}";
            break;
    }
    return os.str();
}

CertifiedValue compute_g(const CoeffModel& model, std::uint64_t r, double tol) {
    if (r == 0) throw_usage("g(r) needs r >= 1");
    CertifiedValue out;
    if (model.finite_support()) {
        if (model.kind() == CoeffModel::Kind::finite) {
            for (const auto& [k, a] : model.finite_amps())
                if (k % r == 0) out.value += std::norm(a);
        } else {
            const std::uint64_t top = model.support_bound();
            for (std::uint64_t k = 1; r * k <= top; ++k) out.value += model.amp_sq(r * k);
        }
        out.error = 0.0;
        return out;
    }
    // Rule model: sum until the certified tail drops below tol.
    std::uint64_t k = 0;
    double tail = model.tail_bound_sq(r, 0);
    if (!std::isfinite(tail)) throw_model("rule model lacks a convergent tail bound");
    while (tail > tol) {
        ++k;
        out.value += model.amp_sq(r * k);
        tail = model.tail_bound_sq(r, k);
        if (k > (1u << 26))
            throw_numeric("g(r) truncation failed to certify tolerance " + std::to_string(tol));
    }
    out.error = tail;
    return out;
}

SeriesCoefficients SeriesCoefficients::reciprocal() {
    SeriesCoefficients c;
    c.kind_ = Kind::reciprocal;
    return c;
}

SeriesCoefficients SeriesCoefficients::list(std::vector<double> values) {
    SeriesCoefficients c;
    c.kind_ = Kind::explicit_list;
    c.values_ = std::move(values);
    return c;
}

SeriesCoefficients SeriesCoefficients::power_rule(double p) {
    SeriesCoefficients c;
    c.kind_ = Kind::power_rule;
    c.p_ = p;
    return c;
}

double SeriesCoefficients::at(std::uint64_t k) const {
    if (k == 0) throw_usage("c_k needs k >= 1");
    switch (kind_) {
        case Kind::explicit_list:
            return k <= values_.size() ? values_[k - 1] : 0.0;
        case Kind::reciprocal:
            return 1.0 / static_cast<double>(k);
        case Kind::power_rule:
            return std::pow(static_cast<double>(k), -p_);
    }
    return 0.0;
}

std::uint64_t SeriesCoefficients::support_bound() const {
    return kind_ == Kind::explicit_list ? values_.size() : 0;
}

std::string SeriesCoefficients::describe() const {
    switch (kind_) {
        case Kind::explicit_list:
            return "list{" + std::to_string(values_.size()) + "}";
        case Kind::reciprocal:
            return "reciprocal";
        case Kind::power_rule:
            return "rule{p=" + std::to_string(p_) + "}";
    }
    return "";
}

}  // namespace dilate
