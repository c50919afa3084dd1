#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "arith.hpp"
#include "coeff_model.hpp"
#include "correlation.hpp"
#include "counterexample.hpp"
#include "model_spec.hpp"
#include "series.hpp"
#include "spectrum.hpp"
#include "weyl.hpp"

namespace dilate {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Accepts plain integers or "2^k".
std::uint64_t parse_uint_expr(const json& j, const char* what) {
    if (j.is_number_unsigned() || j.is_number_integer()) return j.get<std::uint64_t>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.rfind("2^", 0) == 0) return 1ull << std::stoul(s.substr(2));
        return std::stoull(s);
    }
    throw_usage(std::string("expected integer for ") + what);
}

std::vector<std::uint64_t> parse_checkpoints(const json& j) {
    std::vector<std::uint64_t> out;
    if (j.is_array()) {
        for (const auto& e : j) out.push_back(parse_uint_expr(e, "checkpoint"));
        return out;
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto dots = s.find("..");
        if (dots != std::string::npos) {
            const std::uint64_t lo = parse_uint_expr(json(s.substr(0, dots)), "checkpoint");
            const std::uint64_t hi = parse_uint_expr(json(s.substr(dots + 2)), "checkpoint");
            for (std::uint64_t n = lo; n <= hi; n *= 2) out.push_back(n);
            return out;
        }
        out.push_back(parse_uint_expr(j, "checkpoint"));
        return out;
    }
    throw_usage("checkpoints must be a list or a '2^a..2^b' range");
}

CoeffModel model_from_params(const json& params) {
    if (params.contains("model")) return parse_model_text(params.at("model").get<std::string>());
    if (params.contains("model_file"))
        return *parse_spec_file(params.at("model_file").get<std::string>()).model;
    throw_usage("missing model (use 'model' inline text or 'model_file')");
}

SeriesCoefficients coeffs_from_params(const json& params) {
    if (params.contains("coeffs")) {
        const std::string text = params.at("coeffs").get<std::string>();
        return parse_coeffs_text(text);
    }
    if (params.contains("coeffs_file")) {
        const auto spec = parse_spec_file(params.at("coeffs_file").get<std::string>());
        if (spec.coeffs) return *spec.coeffs;
        throw_model("coeffs file does not define coeffs");
    }
    return SeriesCoefficients::reciprocal();
}

WeightFamily weights_from_params(const json& params) {
    const std::string kind =
        params.value("weights", params.value("weight", std::string("sigma_pow")));
    if (kind == "sigma" || kind == "sigma_minus1") return WeightFamily::sigma_minus1_pow(0.0);
    if (kind == "sigma_pow") return WeightFamily::sigma_minus1_pow(params.value("eps", 0.5));
    if (kind == "loglog") return WeightFamily::loglog();
    if (kind == "const" || kind == "constant")
        return WeightFamily::constant(params.value("value", 1.0));
    throw_usage("unknown weight kind: " + kind);
}

json meta_block() {
    json meta;
    meta["version"] = kVersion;
    meta["timestamp"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::system_clock::now().time_since_epoch())
                            .count();
    return meta;
}

json checkpoints_json(const std::vector<Checkpoint>& cps) {
    json arr = json::array();
    for (const auto& c : cps) arr.push_back({{"K", c.K}, {"sum", c.partial_sum}});
    return arr;
}

// ---------------------------------------------------------------------------

std::string run_arith(const json& params, const std::string& format, const json& config) {
    const std::string kind = params.value("kind", std::string("sigma"));
    const double s = params.value("s", -1.0);
    const std::uint64_t N = parse_uint_expr(params.at("range"), "range");
    const SigmaKind sigma = kind == "d" ? SigmaKind::divisor_count() : SigmaKind::sigma(s);
    const DivisorFunctionTable table = sieve_divisor_function(N, sigma);
    if (format == "csv") {
        std::string out = "n,value\n";
        for (std::uint64_t n = 1; n <= N; ++n)
            out += std::to_string(n) + "," + fmt17(table.at(n)) + "\n";
        return out;
    }
    json rows = json::array();
    for (std::uint64_t n = 1; n <= N; ++n) rows.push_back({{"n", n}, {"value", table.at(n)}});
    json report{{"command", "arith"}, {"config", config}, {"rows", rows}, {"meta", meta_block()}};
    return report.dump(2) + "\n";
}

std::string run_smooth(const json& params, const std::string& format, const json& config) {
    const int s = params.at("s").get<int>();
    const int T = params.at("T").get<int>();
    const SmoothSet set = enumerate_smooth_block(s, T);
    json summary{{"s", s}, {"T", T}, {"count", set.count()}};
    if (format == "json") {
        json report{{"command", "smooth"}, {"config", config}, {"s", s},        {"T", T},
                    {"count", set.count()}, {"members", set.members}, {"meta", meta_block()}};
        return report.dump(2) + "\n";
    }
    std::string out;
    for (std::uint64_t m : set.members) out += std::to_string(m) + "\n";
    out += summary.dump() + "\n";
    return out;
}

std::string run_weyl(const json& params, const std::string& format, const json& config) {
    const CoeffModel model = model_from_params(params);
    const std::uint64_t N = parse_uint_expr(params.at("N"), "N");
    const double tol = params.value("tol", 1e-12);
    const WeylTable table = build_weyl_table(model, N, tol);
    if (format == "csv") {
        std::string out = "n,g,G,h,trunc_err\n";
        for (std::uint64_t n = 1; n <= N; ++n)
            out += std::to_string(n) + "," + fmt17(table.g[n]) + "," + fmt17(table.G[n]) + "," +
                   fmt17(table.h[n]) + "," + fmt17(table.g_err[n]) + "\n";
        return out;
    }
    json rows = json::array();
    for (std::uint64_t n = 1; n <= N; ++n)
        rows.push_back({{"n", n},
                        {"g", table.g[n]},
                        {"G", table.G[n]},
                        {"h", table.h[n]},
                        {"h_hat", table.h_hat[n]},
                        {"trunc_err", table.g_err[n]}});
    json report{{"command", "weyl"}, {"config", config}, {"rows", rows}, {"meta", meta_block()}};
    return report.dump(2) + "\n";
}

std::string run_check(const json& params, const json& config) {
    const std::string criterion = params.at("criterion").get<std::string>();
    const CoeffModel model = model_from_params(params);
    json report{{"command", "check"}, {"criterion", criterion}, {"config", config}};
    if (criterion == "koksma") {
        const std::uint64_t K = parse_uint_expr(params.value("K", json("2^14")), "K");
        const std::string wk = params.value("weight", std::string("sigma"));
        KoksmaWeight weight = KoksmaWeight::sigma_minus1;
        if (wk == "sigma_pow") weight = KoksmaWeight::sigma_minus1_pow;
        else if (wk == "loglog") weight = KoksmaWeight::loglog;
        else if (wk == "const") weight = KoksmaWeight::constant;
        else if (wk != "sigma") throw_usage("unknown koksma weight: " + wk);
        const CriterionSum sum = koksma_sum(model, weight, K, params.value("eps", 0.5));
        report["total"] = sum.total;
        report["checkpoints"] = checkpoints_json(sum.checkpoints);
    } else if (criterion == "thm2") {
        const std::uint64_t K = parse_uint_expr(params.value("K", json("2^12")), "K");
        const double power = params.value("power", 2.0);
        const SeriesCoefficients coeffs = coeffs_from_params(params);
        const WeylTable table = build_weyl_table(model, K, params.value("tol", 1e-12));
        const CriterionSum sum = theorem2_condition_sum(table, coeffs, K, power);
        report["total"] = sum.total;
        report["power"] = power;
        report["checkpoints"] = checkpoints_json(sum.checkpoints);
    } else if (criterion == "cor1a" || criterion == "cor1b" || criterion == "cor1c") {
        const std::uint64_t range = parse_uint_expr(params.value("range", json(1024)), "range");
        const Cor1Kind kind = criterion == "cor1a"   ? Cor1Kind::regular_variation
                              : criterion == "cor1b" ? Cor1Kind::monotone_power
                                                     : Cor1Kind::uniform_dg;
        const Cor1Report r = corollary1_condition_check(model, kind, range,
                                                        params.value("gamma", 0.5));
        report["pass"] = r.pass;
        if (kind == Cor1Kind::uniform_dg) {
            report["C"] = r.C;
            report["witness_d"] = r.witness_d;
        } else if (kind == Cor1Kind::monotone_power) {
            report["violation_k"] = r.violation_k;
        } else {
            report["slope"] = r.slope;
            report["residual"] = r.residual;
        }
    } else if (criterion == "cor3") {
        const std::uint64_t N = parse_uint_expr(params.value("N", json(1000)), "N");
        const PsiTable t = compute_psi_h(model, N, params.value("tol", 1e-12));
        report["slope"] = t.slope;
        report["residual"] = t.residual;
        report["exponent_flagged"] = t.exponent_flagged;
        json h_checkpoints = json::array();
        for (std::uint64_t n = 1; n <= N; n *= 2)
            h_checkpoints.push_back({{"n", n}, {"psi", t.psi[n]}, {"h", t.h[n]}});
        report["checkpoints"] = h_checkpoints;
    } else {
        throw_usage("unknown criterion: " + criterion);
    }
    report["meta"] = meta_block();
    return report.dump(2) + "\n";
}

std::string run_corr(const json& params, const json& config) {
    const CoeffModel model = model_from_params(params);
    const std::uint64_t m = parse_uint_expr(params.at("m"), "m");
    const std::uint64_t n = parse_uint_expr(params.at("n"), "n");
    const double tol = params.value("tol", 1e-12);
    CorrelationReport rep = exact_correlation(model, m, n, tol);
    const bool want_quad = params.value("quadrature", model.finite_support());
    if (want_quad) {
        if (!model.finite_support())
            throw_usage("quadrature cross-check requires a finite-support model");
        const Spectrum f = Spectrum::from_model(model);
        const std::uint64_t nodes = (m + n) * f.max_frequency() + 1;
        rep.quadrature = quadrature_pair_integral(f, m, n, nodes);
        rep.quadrature_diff = std::abs(*rep.quadrature - rep.exact_value);
    }
    json report{{"command", "corr"},
                {"config", config},
                {"m", rep.m},
                {"n", rep.n},
                {"d", rep.d},
                {"m_prime", rep.m_prime},
                {"n_prime", rep.n_prime},
                {"exact_value", rep.exact_value},
                {"lambda", rep.lambda},
                {"bound", rep.bound},
                {"trunc_err", rep.trunc_err},
                {"bound_holds", rep.lambda <= rep.bound + rep.trunc_err + 1e-10}};
    if (rep.quadrature) {
        report["quadrature"] = *rep.quadrature;
        report["quadrature_diff"] = *rep.quadrature_diff;
    }
    report["meta"] = meta_block();
    return report.dump(2) + "\n";
}

std::string run_lemma(const json& params, const json& config, std::uint64_t freq_cap) {
    const CoeffModel model = model_from_params(params);
    const int r = params.at("r").get<int>();
    if (r < 1 || r > 20) throw_usage("block level r must be in [1, 20]");
    const std::uint64_t lo = 1ull << r;
    std::vector<double> coeffs(lo, 0.0);
    const std::string spec = params.value("coeffs", std::string("random:0"));
    if (spec.rfind("random:", 0) == 0) {
        const std::uint64_t seed = std::stoull(spec.substr(7));
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (double& c : coeffs) c = uni(rng);
    } else {
        const SeriesCoefficients sc = parse_coeffs_text(spec);
        for (std::uint64_t l = lo + 1; l <= 2 * lo; ++l) coeffs[l - lo - 1] = sc.at(l);
    }
    const WeylTable table = build_weyl_table(model, 2 * lo, params.value("tol", 1e-12));
    const BlockQuadraticForm form = verify_lemma_block(model, coeffs, r, table,
                                                       params.value("tol", 1e-10),
                                                       params.value("rho", false), freq_cap);
    json report{{"command", "lemma"},
                {"config", config},
                {"r", r},
                {"coefficients", form.coefficients},
                {"exact_integral", form.exact_integral},
                {"bound_rhs", form.bound_rhs},
                {"ratio", form.ratio},
                {"verdict", form.holds ? "holds" : "VIOLATED"}};
    if (!form.rho_values.empty()) report["rho"] = form.rho_values;
    report["meta"] = meta_block();
    return report.dump(2) + "\n";
}

std::string run_counterexample(const json& params, const json& config,
                               const std::optional<std::uint64_t>& seed,
                               std::uint64_t freq_cap) {
    const int s = params.at("s").get<int>();
    const int d = params.at("d").get<int>();
    const int T_max = params.value("Tmax", 30);
    const std::uint64_t mc = params.value("mc", 0ull);
    if (mc > 0 && !seed)
        throw_usage("Monte-Carlo runs require an explicit --seed for reproducibility");
    const WeightFamily w = weights_from_params(params);
    std::vector<double> eps_list{0.5, 0.25, 0.125};
    if (params.contains("eps_list")) eps_list = params.at("eps_list").get<std::vector<double>>();
    const std::uint64_t J = params.value("J", 16ull);
    const Theorem1Report rep =
        theorem1_experiment(s, d, T_max, eps_list, w, J, mc, seed.value_or(0), freq_cap);
    json entropy;
    for (const auto& [eps, count] : rep.entropy)
        entropy[fmt17(eps)] = {{"N", count.count}, {"exact", count.exact}};
    json report{{"command", "counterexample"},
                {"config", config},
                {"T", rep.doubling.T},
                {"cardinalities", {{"A_T", rep.doubling.card_T}, {"A_T_plus_d", rep.doubling.card_T_plus_d}}},
                {"orbit_size", rep.orbit_size},
                {"entropy", entropy},
                {"sqrt_log_T", rep.sqrt_log_T},
                {"max_weight_on_AT", rep.max_weight_on_AT},
                {"max_weight_over_loglog", rep.max_weight_over_loglog},
                {"cesaro_mean_w", rep.cesaro_mean_w},
                {"exact_norm_expectation", rep.gaussian.exact_expectation}};
    if (mc > 0) {
        report["mc_mean"] = rep.gaussian.mc_mean;
        report["mc_stderr"] = rep.gaussian.mc_stderr;
        report["mc_samples"] = rep.gaussian.mc_samples;
        report["mc_seed"] = rep.gaussian.mc_seed;
        report["mc_within_4se"] = rep.gaussian.mc_within_4se;
    }
    const WeightPropertyReport props = check_weight_properties(w, 4096);
    json cesaro = json::array();
    for (const auto& c : props.cesaro) cesaro.push_back({{"J", c.at}, {"mean", c.value}});
    report["weight_diagnostics"] = {{"submultiplicative", props.submultiplicative},
                                    {"cesaro", cesaro}};
    report["meta"] = meta_block();
    return report.dump(2) + "\n";
}

std::string run_trajectory(const json& params, const std::string& format, const json& config,
                           std::uint64_t freq_cap) {
    const CoeffModel model = model_from_params(params);
    const SeriesCoefficients coeffs = coeffs_from_params(params);
    const std::string mode_s = params.value("mode", std::string("avg"));
    const TrajectoryMode mode =
        mode_s == "avg" ? TrajectoryMode::average : TrajectoryMode::weighted_sum;
    const std::vector<std::uint64_t> checkpoints =
        parse_checkpoints(params.value("checkpoints", json("2^4..2^10")));
    const std::uint64_t grid = parse_uint_expr(params.value("grid", json("2^14")), "grid");
    const double eps = params.value("eps", 0.1);
    if (checkpoints.empty()) throw_usage("no checkpoints given");
    const Spectrum f = Spectrum::from_model(model);
    const WeylTable table = build_weyl_table(model, checkpoints.back());
    const TrajectoryReport rep =
        khinchin_trajectory(f, mode, coeffs, checkpoints, grid, &table, eps, freq_cap);
    if (format == "csv") {
        std::string out = "N,grid_sup,argmax_t,normalized\n";
        for (const auto& p : rep.points)
            out += std::to_string(p.N) + "," + fmt17(p.grid_sup) + "," +
                   std::to_string(p.argmax_t) + "," + fmt17(p.normalized) + "\n";
        return out;
    }
    json points = json::array();
    for (const auto& p : rep.points)
        points.push_back({{"N", p.N},
                          {"grid_sup", p.grid_sup},
                          {"argmax_t", p.argmax_t},
                          {"normalized", p.normalized}});
    json report{{"command", "trajectory"},
                {"config", config},
                {"grid", rep.grid_size},
                {"eps", rep.eps},
                {"points", points},
                {"meta", meta_block()}};
    return report.dump(2) + "\n";
}

}  // namespace

RunResult run_request_json(const std::string& request) {
    RunResult result;
    try {
        json req;
        try {
            req = json::parse(request);
        } catch (const json::exception& e) {
            throw_usage(std::string("bad request JSON: ") + e.what());
        }
        const std::string command = req.value("command", std::string());
        const json params = req.value("params", json::object());
        std::string format = req.value("format", std::string());
        std::optional<std::uint64_t> seed;
        if (req.contains("seed")) seed = req.at("seed").get<std::uint64_t>();
        const std::uint64_t freq_cap = req.value("freq_cap", kDefaultFreqCap);

        // Resolved config echoed into JSON reports for provenance.
        json config = req;
        config["freq_cap"] = freq_cap;
        config["version"] = kVersion;

        if (command == "arith") {
            if (format.empty()) format = "csv";
            result.payload = run_arith(params, format, config);
        } else if (command == "smooth") {
            if (format.empty()) format = "csv";
            result.payload = run_smooth(params, format, config);
        } else if (command == "weyl") {
            if (format.empty()) format = "csv";
            result.payload = run_weyl(params, format, config);
        } else if (command == "check") {
            result.payload = run_check(params, config);
        } else if (command == "corr") {
            result.payload = run_corr(params, config);
        } else if (command == "lemma") {
            result.payload = run_lemma(params, config, freq_cap);
        } else if (command == "counterexample") {
            result.payload = run_counterexample(params, config, seed, freq_cap);
        } else if (command == "trajectory") {
            if (format.empty()) format = "csv";
            result.payload = run_trajectory(params, format, config, freq_cap);
        } else {
            throw_usage("unknown command: " + (command.empty() ? "<none>" : command));
        }
    } catch (const Error& e) {
        result.status = e.status();
        result.error = std::string("E") + std::to_string(static_cast<int>(e.status())) + ": " +
                       e.what();
    } catch (const nlohmann::json::exception& e) {
        result.status = Status::usage;
        result.error = std::string("E2: bad parameter: ") + e.what();
    } catch (const std::exception& e) {
        result.status = Status::usage;
        result.error = std::string("E2: ") + e.what();
    }
    return result;
}

}  // namespace dilate
