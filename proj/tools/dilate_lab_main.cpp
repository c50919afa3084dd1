// dilate-lab: CLI front end over the dilate_lab C API.
//
// Every subcommand is translated into a JSON request and executed by
// dl_run_json; the payload is written to --out (or stdout). Exit codes:
// 0 success, 2 usage, 3 model error, 4 capacity, 5 numeric-certification
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dilate_lab.h"

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::uint64_t freq_cap = 0;
};

int execute(const std::string& command, const json& params, const GlobalOpts& g) {
    json request{{"command", command}, {"params", params}};
    if (!g.format.empty()) request["format"] = g.format;
    if (g.seed) request["seed"] = *g.seed;
    if (g.freq_cap != 0) request["freq_cap"] = g.freq_cap;
    request["threads"] = g.threads;

    dl_report* report = nullptr;
    const int status = dl_run_json(request.dump().c_str(), &report);
    if (status != DL_OK) {
        std::cerr << dl_report_error(report) << "\n";
        dl_report_free(report);
        return status;
    }
    const std::string payload = dl_report_payload(report);
    dl_report_free(report);
    if (g.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) {
            std::cerr << "E2: cannot open output file " << g.out << "\n";
            return DL_ERR_USAGE;
        }
        f << payload;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dilate-lab: dilated-series and Khinchin-average laboratory"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--format", g.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed for stochastic subcommands");
    app.add_option("--threads", g.threads, "worker budget");
    app.add_option("--freq-cap", g.freq_cap, "spectrum frequency cap");

    // arith
    auto* arith = app.add_subcommand("arith", "divisor-sum tables (CSV: n,value)");
    std::string kind = "sigma";
    double s_exp = -1.0;
    std::string range;
    arith->add_option("--kind", kind, "d|sigma")->check(CLI::IsMember({"d", "sigma"}));
    arith->add_option("--s", s_exp, "exponent for sigma_s");
    arith->add_option("--range", range, "table range N")->required();

    // smooth
    auto* smooth = app.add_subcommand("smooth", "smooth-number dyadic block A_T");
    int sm_s = 1, sm_T = 0;
    smooth->add_option("--s", sm_s, "number of generating primes")->required();
    smooth->add_option("--T", sm_T, "dyadic exponent")->required();

    // weyl
    auto* weyl = app.add_subcommand("weyl", "g/G/h table (CSV: n,g,G,h,trunc_err)");
    std::string weyl_model, weyl_N;
    double weyl_tol = 1e-12;
    weyl->add_option("--model", weyl_model, "model spec file")->required();
    weyl->add_option("--N", weyl_N, "range bound")->required();
    weyl->add_option("--tol", weyl_tol, "truncation tolerance");

    // check
    auto* check = app.add_subcommand("check", "convergence-criterion diagnostics (JSON)");
    std::string criterion, check_model, check_coeffs, check_K, check_range, check_weight;
    double check_eps = 0.5, check_power = 2.0, check_gamma = 0.5;
    std::string check_N;
    check->add_option("--criterion", criterion, "koksma|thm2|cor1a|cor1b|cor1c|cor3")
        ->required()
        ->check(CLI::IsMember({"koksma", "thm2", "cor1a", "cor1b", "cor1c", "cor3"}));
    check->add_option("--model", check_model, "model spec file")->required();
    check->add_option("--coeffs", check_coeffs, "coeffs descriptor (thm2)");
    check->add_option("--K", check_K, "truncation (accepts 2^k)");
    check->add_option("--range", check_range, "range for cor1 checks");
    check->add_option("--N", check_N, "range for cor3");
    check->add_option("--weight", check_weight, "koksma weight: sigma|sigma_pow|loglog|const");
    check->add_option("--eps", check_eps, "epsilon for sigma_pow weight");
    check->add_option("--power", check_power, "log power for thm2");
    check->add_option("--gamma", check_gamma, "gamma for cor1b");

    // corr
    auto* corr = app.add_subcommand("corr", "exact dilation correlation (JSON)");
    std::string corr_model;
    std::uint64_t corr_m = 1, corr_n = 1;
    bool corr_no_quad = false;
    corr->add_option("--model", corr_model, "model spec file")->required();
    corr->add_option("--m", corr_m)->required();
    corr->add_option("--n", corr_n)->required();
    corr->add_flag("--no-quadrature", corr_no_quad, "skip the quadrature cross-check");

    // lemma
    auto* lemma = app.add_subcommand("lemma", "dyadic-block Lemma verifier (JSON)");
    std::string lemma_model, lemma_coeffs = "random:0";
    int lemma_r = 4;
    bool lemma_rho = false;
    lemma->add_option("--model", lemma_model, "model spec file")->required();
    lemma->add_option("--r", lemma_r, "dyadic level")->required();
    lemma->add_option("--coeffs", lemma_coeffs, "list{...} | rule{...} | random:<seed>");
    lemma->add_flag("--rho", lemma_rho, "include per-index block row sums");

    // counterexample
    auto* cx = app.add_subcommand("counterexample", "Theorem-1 experiment bundle (JSON)");
    int cx_s = 2, cx_d = 1, cx_Tmax = 30;
    std::string cx_weights = "sigma_pow";
    double cx_eps = 0.5;
    std::uint64_t cx_mc = 0, cx_J = 16;
    cx->add_option("--s", cx_s, "prime count")->required();
    cx->add_option("--d", cx_d, "doubling gap")->required();
    cx->add_option("--Tmax", cx_Tmax, "doubling search bound");
    cx->add_option("--weights", cx_weights, "sigma|sigma_pow|loglog|const");
    cx->add_option("--eps", cx_eps, "epsilon for sigma_pow weights");
    cx->add_option("--mc", cx_mc, "Monte-Carlo draws (requires --seed)");
    cx->add_option("--J", cx_J, "randomization length");

    // trajectory
    auto* traj = app.add_subcommand("trajectory", "partial-sum / average sup trace (CSV)");
    std::string traj_model, traj_coeffs, traj_mode = "avg", traj_checkpoints = "2^4..2^10",
                traj_grid = "2^14";
    double traj_eps = 0.1;
    traj->add_option("--model", traj_model, "model spec file")->required();
    traj->add_option("--coeffs", traj_coeffs, "coeffs descriptor (sum mode)");
    traj->add_option("--mode", traj_mode, "avg|sum")->check(CLI::IsMember({"avg", "sum"}));
    traj->add_option("--checkpoints", traj_checkpoints, "e.g. 2^4..2^14");
    traj->add_option("--grid", traj_grid, "grid size (power of two)");
    traj->add_option("--eps", traj_eps, "epsilon in the normalization");

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) g.seed = seed_value;

    try {
        if (arith->parsed()) {
            json params{{"kind", kind}, {"s", s_exp}, {"range", range}};
            return execute("arith", params, g);
        }
        if (smooth->parsed()) {
            return execute("smooth", json{{"s", sm_s}, {"T", sm_T}}, g);
        }
        if (weyl->parsed()) {
            json params{{"model_file", weyl_model}, {"N", weyl_N}, {"tol", weyl_tol}};
            return execute("weyl", params, g);
        }
        if (check->parsed()) {
            json params{{"criterion", criterion}, {"model_file", check_model}};
            if (!check_coeffs.empty()) params["coeffs"] = check_coeffs;
            if (!check_K.empty()) params["K"] = check_K;
            if (!check_range.empty()) params["range"] = check_range;
            if (!check_N.empty()) params["N"] = check_N;
            if (!check_weight.empty()) params["weight"] = check_weight;
            params["eps"] = check_eps;
            params["power"] = check_power;
            params["gamma"] = check_gamma;
            return execute("check", params, g);
        }
        if (corr->parsed()) {
            json params{{"model_file", corr_model}, {"m", corr_m}, {"n", corr_n}};
            if (corr_no_quad) params["quadrature"] = false;
            return execute("corr", params, g);
        }
        if (lemma->parsed()) {
            json params{{"model_file", lemma_model},
                        {"r", lemma_r},
                        {"coeffs", lemma_coeffs},
                        {"rho", lemma_rho}};
            return execute("lemma", params, g);
        }
        if (cx->parsed()) {
            json params{{"s", cx_s},     {"d", cx_d},     {"Tmax", cx_Tmax},
                        {"weights", cx_weights}, {"eps", cx_eps}, {"mc", cx_mc},
                        {"J", cx_J}};
            return execute("counterexample", params, g);
        }
        if (traj->parsed()) {
            json params{{"model_file", traj_model},
                        {"mode", traj_mode},
                        {"checkpoints", traj_checkpoints},
                        {"grid", traj_grid},
                        {"eps", traj_eps}};
            if (!traj_coeffs.empty()) params["coeffs"] = traj_coeffs;
            return execute("trajectory", params, g);
        }
    } catch (const std::exception& e) {
        std::cerr << "E2: " << e.what() << "\n";
        return DL_ERR_USAGE;
    }
    return DL_ERR_USAGE;
}
