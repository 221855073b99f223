// Command-line front end: rate/sizing queries, protocol runs, feasibility
// checks, and the reproducible sweep experiments. Exit codes: 0 ok,
// 2 invalid input, 3 infeasible/undefined, 4 size cap exceeded.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "catalysis/catalyst.hpp"
#include "catalysis/errors.hpp"
#include "catalysis/io.hpp"
#include "catalysis/majorization.hpp"
#include "catalysis/qstates.hpp"
#include "catalysis/second_order.hpp"
#include "catalysis/spectra.hpp"
#include "catalysis/sweep.hpp"

namespace {

using namespace catalysis;

Theory make_theory(const std::string& name, const std::string& gamma_file,
                   std::size_t dim) {
    if (name == "entanglement") return Theory::entanglement();
    if (name == "unitary-noisy") return Theory::unitary_noisy(dim);
    if (name == "athermality") {
        if (!gamma_file.empty())
            return Theory::athermality(read_gibbs_file(gamma_file));
        return Theory::athermality(GibbsSpec::uniform(dim));
    }
    throw input_error("unknown theory \"" + name + "\"");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
    } else {
        write_text_file(out_path, text);
    }
}

std::string rates_report(const Theory& theory, const ProbVec& p, const ProbVec& q,
                         double eps, double base_scale) {
    const SecondOrderRates r = rates(theory, p, q, eps);
    std::string out = "{";
    out += "\"theory\":\"" + theory.name() + "\"";
    out += ",\"eps\":" + fmt_g17(eps);
    out += ",\"R\":" + fmt_g17(r.R);
    out += ",\"R_prime\":" + fmt_g17(r.Rprime);
    out += ",\"nu\":" + fmt_g17(r.nu);
    out += ",\"f_value\":" + fmt_g17(r.f_value);
    out += ",\"approximation\":\"two-term\"";
    if (r.no_catalysis) out += ",\"no_catalysis\":true";

    if (r.R > 1.0 && !r.nu_infinite) {
        const std::uint64_t n = n_epsilon(r);
        const CatalystPlan plan = catalyst_dimension(n, p.dim());
        out += ",\"n_epsilon\":" + std::to_string(n);
        out += ",\"log_dC\":" + fmt_g17(plan.log_dC / base_scale);
        if (plan.dC_exact) out += ",\"d_C_exact\":" + std::to_string(*plan.dC_exact);
    } else {
        out += ",\"n_epsilon\":null";
        out += r.nu_infinite
                   ? ",\"diagnostic\":\"resonance parameter infinite: flat target\""
                   : ",\"diagnostic\":\"asymptotic rate does not exceed 1: no finite "
                     "copy count certifies the conversion\"";
    }

    // sufficiency verdicts across a ladder of catalyst sizes
    out += ",\"sufficiency\":[";
    bool first = true;
    for (std::uint64_t n : {2, 3, 4, 6, 8, 12, 16, 24, 32}) {
        const CatalystPlan plan = catalyst_dimension(n, p.dim());
        const SufficiencyResult s = sufficiency_check(theory, p, q, eps, plan.log_dC);
        if (!first) out += ",";
        first = false;
        out += "{\"n\":" + std::to_string(n);
        out += ",\"log_dC\":" + fmt_g17(plan.log_dC / base_scale);
        out += std::string(",\"verdict\":\"") +
               (s.sufficient ? "sufficient" : "not_implied") + "\"}";
    }
    out += "]}";
    return out;
}

int dispatch(CLI::App& app, int argc, char** argv) {
    // ---- rates ----
    auto* rates_cmd = app.add_subcommand("rates", "second-order rates and catalyst sizing");
    std::string r_p, r_q, r_gamma, r_out, r_theory = "unitary-noisy", r_base = "e";
    double r_eps = 0.03;
    rates_cmd->add_option("--p", r_p, "initial state JSON file")->required();
    rates_cmd->add_option("--q", r_q, "target state JSON file")->required();
    rates_cmd->add_option("--theory", r_theory, "entanglement|athermality|unitary-noisy");
    rates_cmd->add_option("--gamma", r_gamma, "reference state JSON (athermality)");
    rates_cmd->add_option("--eps", r_eps, "transformation error budget");
    rates_cmd->add_option("--base", r_base, "entropy display base: 2|e");
    rates_cmd->add_option("--out", r_out, "write the JSON report here");

    // ---- protocol run ----
    auto* proto = app.add_subcommand("protocol", "catalytic protocol simulation");
    auto* proto_run = proto->add_subcommand("run", "simulate one protocol instance");
    std::string pr_p, pr_q, pr_gamma, pr_out, pr_theory = "unitary-noisy";
    unsigned pr_n = 1;
    proto_run->add_option("--p", pr_p, "initial state JSON file")->required();
    proto_run->add_option("--q", pr_q, "target state JSON file")->required();
    proto_run->add_option("--n", pr_n, "number of copies")->required();
    proto_run->add_option("--theory", pr_theory, "entanglement|athermality|unitary-noisy");
    proto_run->add_option("--gamma", pr_gamma, "reference state JSON (athermality)");
    proto_run->add_option("--out", pr_out, "write the JSON report here");

    // ---- error-vs-size ----
    auto* evs = app.add_subcommand("error-vs-size", "error against catalyst size");
    std::string e_cfg, e_p, e_q, e_out, e_svg, e_theory;
    std::optional<double> e_eps;
    std::optional<unsigned> e_nmax, e_workers;
    evs->add_option("--config", e_cfg, "key = value configuration file");
    evs->add_option("--p", e_p, "initial state JSON file (overrides config)");
    evs->add_option("--q", e_q, "target state JSON file (overrides config)");
    evs->add_option("--theory", e_theory, "athermality|unitary-noisy");
    evs->add_option("--eps", e_eps, "error budget");
    evs->add_option("--n-max", e_nmax, "largest copy count");
    evs->add_option("--workers", e_workers, "worker threads (default 1)");
    evs->add_option("--out", e_out, "CSV output path");
    evs->add_option("--svg", e_svg, "optional SVG chart path");

    // ---- resonance ----
    auto* reso = app.add_subcommand("resonance", "resonance sweep on an entropy contour");
    std::string s_cfg, s_out, s_svg, s_base;
    std::optional<double> s_eps, s_hini, s_hfin;
    std::optional<unsigned> s_nmax, s_samples, s_workers;
    std::optional<std::uint64_t> s_seed;
    reso->add_option("--config", s_cfg, "key = value configuration file");
    reso->add_option("--eps", s_eps, "error budget");
    reso->add_option("--n-max", s_nmax, "largest copy count");
    reso->add_option("--seed", s_seed, "sampler seed");
    reso->add_option("--samples", s_samples, "number of sampled states");
    reso->add_option("--h-ini", s_hini, "initial-state entropy (display base units)");
    reso->add_option("--h-fin", s_hfin, "target entropy (display base units)");
    reso->add_option("--base", s_base, "entropy base: 2|e");
    reso->add_option("--workers", s_workers, "worker threads (default 1)");
    reso->add_option("--out", s_out, "CSV output path");
    reso->add_option("--svg", s_svg, "optional SVG chart path");

    // ---- check ----
    auto* check = app.add_subcommand("check", "feasibility checks");
    auto* locc = check->add_subcommand("locc-mixed", "mixed-state LOCC sufficiency");
    std::string l_rho, l_sigma, l_out;
    std::optional<double> l_esigma;
    locc->add_option("--rho", l_rho, "source density matrix JSON")->required();
    locc->add_option("--sigma", l_sigma, "target density matrix JSON (two-qubit)");
    locc->add_option("--e-sigma", l_esigma, "target entanglement, if sigma is not two-qubit");
    locc->add_option("--out", l_out, "write the JSON verdict here");

    auto* multi = check->add_subcommand("multicopy", "multi-copy dominance check");
    std::string m_p, m_q, m_out;
    std::size_t m_grid = 257;
    multi->add_option("--p", m_p, "initial state JSON file")->required();
    multi->add_option("--q", m_q, "target state JSON file")->required();
    multi->add_option("--grid", m_grid, "alpha grid size");
    multi->add_option("--out", m_out, "write the JSON verdict here");

    app.require_subcommand(1);
    app.parse(argc, argv);

    if (*rates_cmd) {
        const ProbVec p = read_prob_vec_file(r_p);
        const ProbVec q = read_prob_vec_file(r_q);
        const Theory th = make_theory(r_theory, r_gamma, p.dim());
        const double scale = r_base == "2" ? std::log(2.0) : 1.0;
        emit(rates_report(th, p, q, r_eps, scale), r_out);
        return 0;
    }
    if (*proto_run) {
        const ProbVec p = read_prob_vec_file(pr_p);
        const ProbVec q = read_prob_vec_file(pr_q);
        const Theory th = make_theory(pr_theory, pr_gamma, p.dim());
        emit(report_to_json(run_protocol(p, q, pr_n, th)), pr_out);
        return 0;
    }
    if (*evs) {
        SweepConfig cfg = e_cfg.empty() ? SweepConfig{} : parse_config_file(e_cfg);
        if (!e_p.empty()) cfg.p = read_prob_vec_file(e_p).probs();
        if (!e_q.empty()) cfg.q = read_prob_vec_file(e_q).probs();
        if (!e_theory.empty()) cfg.theory = e_theory;
        if (e_eps) cfg.eps = *e_eps;
        if (e_nmax) cfg.n_max = *e_nmax;
        if (e_workers) cfg.workers = *e_workers;
        if (!e_out.empty()) cfg.out = e_out;
        if (!e_svg.empty()) cfg.svg = e_svg;
        const ErrorVsSizeResult res = error_vs_size_sweep(cfg);
        if (cfg.out.empty()) std::cout << res.csv;
        return 0;
    }
    if (*reso) {
        SweepConfig cfg = s_cfg.empty() ? SweepConfig{} : parse_config_file(s_cfg);
        cfg.theory = "entanglement";
        if (s_eps) cfg.eps = *s_eps;
        if (s_nmax) cfg.n_max = *s_nmax;
        if (s_seed) cfg.seed = *s_seed;
        if (s_samples) cfg.samples = *s_samples;
        if (s_hini) cfg.h_ini = *s_hini;
        if (s_hfin) cfg.h_fin = *s_hfin;
        if (!s_base.empty()) cfg.base = s_base;
        if (s_workers) cfg.workers = *s_workers;
        if (!s_out.empty()) cfg.out = s_out;
        if (!s_svg.empty()) cfg.svg = s_svg;
        const ResonanceResult res = resonance_sweep(cfg);
        if (cfg.out.empty()) std::cout << res.csv;
        return 0;
    }
    if (*locc) {
        const DensityMatrix rho = read_density_matrix_file(l_rho);
        LoccMixedResult res = l_esigma
                                   ? locc_mixed_check(rho, *l_esigma)
                                   : locc_mixed_check(rho, read_density_matrix_file(l_sigma));
        std::string verdict = res.verdict == LoccMixedVerdict::Sufficient ? "sufficient"
                              : res.verdict == LoccMixedVerdict::Boundary ? "boundary"
                                                                           : "not_implied";
        std::string out = "{\"verdict\":\"" + verdict + "\"";
        out += ",\"hashing_bound\":" + fmt_g17(res.hashing);
        out += ",\"target_entanglement\":" + fmt_g17(res.target_entanglement);
        out += ",\"S_A\":" + fmt_g17(res.s_a);
        out += ",\"S_B\":" + fmt_g17(res.s_b);
        out += ",\"S_rho\":" + fmt_g17(res.s_rho) + "}";
        emit(out, l_out);
        return 0;
    }
    if (*multi) {
        const ProbVec p = read_prob_vec_file(m_p);
        const ProbVec q = read_prob_vec_file(m_q);
        const MulticopyVerdict v = multicopy_feasibility_check(p, q, m_grid);
        std::string status = v.status == MulticopyStatus::Satisfied    ? "satisfied"
                             : v.status == MulticopyStatus::Violated   ? "violated"
                                                                       : "inconclusive";
        std::string out = "{\"verdict\":\"" + status + "\"";
        out += ",\"certificate\":\"grid-heuristic\"";
        if (v.status == MulticopyStatus::Violated)
            out += ",\"witness_alpha\":" + fmt_g17(v.witness_alpha);
        out += ",\"min_margin\":" + fmt_g17(v.min_margin) + "}";
        emit(out, m_out);
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-size catalysis toolkit"};
    try {
        try {
            return dispatch(app, argc, argv);
        } catch (const CLI::ParseError& e) {
            const int rc = app.exit(e);
            return rc == 0 ? 0 : 2;
        }
    } catch (const catalysis::input_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const catalysis::infeasible_error& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    } catch (const catalysis::size_cap_error& e) {
        std::fprintf(stderr, "size cap: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
