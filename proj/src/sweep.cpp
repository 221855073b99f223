#include "catalysis/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "catalysis/catalyst.hpp"
#include "catalysis/io.hpp"
#include "catalysis/majorization.hpp"
#include "catalysis/spectra.hpp"

namespace catalysis {

double SweepConfig::log_base() const {
    if (base == "e") return 1.0;
    if (base == "2") return std::log(2.0);
    throw input_error("entropy base must be \"2\" or \"e\"");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_state_value(const std::string& value) {
    const std::string v = trim(value);
    if (!v.empty() && v.front() == '[') {
        // inline JSON array of probabilities
        return parse_prob_vec_json("{\"probs\":" + v + "}").probs();
    }
    return read_prob_vec_file(v).probs();
}

std::string resolve_out_path(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("CATALYSIS_OUT_DIR");
    if (dir && *dir && path.front() != '/') return std::string(dir) + "/" + path;
    return path;
}

// Run `count` jobs over `workers` threads; results land in caller-owned slots
// keyed by job index, so output order never depends on scheduling.
void run_indexed(unsigned workers, std::size_t count,
                 const std::function<void(std::size_t)>& job) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned k = std::min<unsigned>(workers, static_cast<unsigned>(count));
    pool.reserve(k);
    for (unsigned w = 0; w < k; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                job(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

SweepConfig parse_config_text(const std::string& text) {
    SweepConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw input_error("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "theory") cfg.theory = value;
        else if (key == "eps") cfg.eps = std::stod(value);
        else if (key == "n_min") cfg.n_min = static_cast<unsigned>(std::stoul(value));
        else if (key == "n_max") cfg.n_max = static_cast<unsigned>(std::stoul(value));
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "base") cfg.base = value;
        else if (key == "out") cfg.out = value;
        else if (key == "svg") cfg.svg = value;
        else if (key == "workers") cfg.workers = static_cast<unsigned>(std::stoul(value));
        else if (key == "p") cfg.p = parse_state_value(value);
        else if (key == "q") cfg.q = parse_state_value(value);
        else if (key == "gamma") cfg.gamma_weights = parse_state_value(value);
        else if (key == "h_ini") cfg.h_ini = std::stod(value);
        else if (key == "h_fin") cfg.h_fin = std::stod(value);
        else if (key == "samples") cfg.samples = static_cast<unsigned>(std::stoul(value));
        else if (key == "d_s") cfg.d_s = std::stoul(value);
        else if (key == "size_cap") cfg.size_cap = std::stoul(value);
        else throw input_error("config line " + std::to_string(lineno) +
                               ": unknown key \"" + key + "\"");
    }
    return cfg;
}

SweepConfig parse_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

double SweepRng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

std::vector<double> sample_entropy_contour(SweepRng& rng, double h_nats, std::size_t d) {
    if (d < 2) throw input_error("contour sampling needs dimension >= 2");
    const double h_max = std::log(static_cast<double>(d));
    if (!(h_nats > 0.0) || h_nats >= h_max)
        throw infeasible_error("target entropy outside (0, log d)");

    for (int attempt = 0; attempt < 100; ++attempt) {
        // Dirichlet(1,...,1) point via normalized exponentials
        std::vector<double> x(d);
        double s = 0.0;
        for (double& e : x) {
            const double u = rng.uniform();
            e = -std::log(1.0 - u);
            s += e;
        }
        if (s <= 0.0) continue;
        for (double& e : x) e /= s;

        const double hx = detail::shannon_entropy_span(x);
        if (std::abs(hx - h_nats) <= 1e-10) return x;
        // bisect along the segment toward the uniform point (raises entropy)
        // or toward the dominant vertex (lowers it)
        std::vector<double> far(d, 0.0);
        if (hx < h_nats) {
            std::fill(far.begin(), far.end(), 1.0 / static_cast<double>(d));
        } else {
            const std::size_t j = static_cast<std::size_t>(
                std::max_element(x.begin(), x.end()) - x.begin());
            far[j] = 1.0;
        }
        const bool below = hx < h_nats;
        double lo = 0.0, hi = 1.0;
        std::vector<double> y(d);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            for (std::size_t i = 0; i < d; ++i)
                y[i] = (1.0 - mid) * x[i] + mid * far[i];
            if ((detail::shannon_entropy_span(y) < h_nats) == below)
                lo = mid;
            else
                hi = mid;
        }
        const double mid = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < d; ++i) y[i] = (1.0 - mid) * x[i] + mid * far[i];
        if (std::abs(detail::shannon_entropy_span(y) - h_nats) <= 1e-10) return y;
        // pathological segment; reject and resample
    }
    throw infeasible_error("contour sampling failed to converge");
}

std::vector<double> canonical_target_state(double h_nats, std::size_t d) {
    if (d < 2) throw input_error("target construction needs dimension >= 2");
    const double h_max = std::log(static_cast<double>(d));
    if (!(h_nats > 0.0) || h_nats >= h_max)
        throw infeasible_error("target entropy outside (0, log d)");
    // family (1-t, t/(d-1), ..., t/(d-1)): entropy rises monotonically from 0
    // to log d as t goes 0 -> (d-1)/d
    const double t_hi = static_cast<double>(d - 1) / static_cast<double>(d);
    double lo = 0.0, hi = t_hi;
    std::vector<double> y(d);
    auto fill = [&](double t) {
        y[0] = 1.0 - t;
        for (std::size_t i = 1; i < d; ++i) y[i] = t / static_cast<double>(d - 1);
    };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        fill(mid);
        if (detail::shannon_entropy_span(y) < h_nats)
            lo = mid;
        else
            hi = mid;
    }
    fill(0.5 * (lo + hi));
    return y;
}

namespace {

Theory theory_from_config(const SweepConfig& cfg, std::size_t dim) {
    if (cfg.theory == "entanglement") return Theory::entanglement();
    if (cfg.theory == "unitary-noisy") return Theory::unitary_noisy(dim);
    if (cfg.theory == "athermality") {
        if (cfg.gamma_weights)
            return Theory::athermality(GibbsSpec::from_weights(*cfg.gamma_weights));
        return Theory::athermality(GibbsSpec::uniform(dim));
    }
    throw input_error("unknown theory \"" + cfg.theory + "\"");
}

constexpr const char* kErrorVsSizeFormat = "# format: catalysis.error_vs_size.v1\n";
constexpr const char* kResonanceFormat = "# format: catalysis.resonance.v1\n";

} // namespace

ErrorVsSizeResult error_vs_size_sweep(const SweepConfig& cfg) {
    if (!cfg.p || !cfg.q)
        throw input_error("error-vs-size sweep needs both p and q states");
    if (cfg.theory == "entanglement")
        throw input_error("error-vs-size runs the athermality/unitary-noisy protocol");
    const ProbVec p = ProbVec::from_values(*cfg.p);
    const ProbVec q = ProbVec::from_values(*cfg.q);
    const Theory theory = theory_from_config(cfg, p.dim());
    if (cfg.n_min < 1 || cfg.n_min > cfg.n_max)
        throw input_error("need 1 <= n_min <= n_max");

    const std::size_t rows_n = cfg.n_max - cfg.n_min + 1;
    ErrorVsSizeResult res;
    res.rows.resize(rows_n);
    run_indexed(cfg.workers, rows_n, [&](std::size_t k) {
        const unsigned n = cfg.n_min + static_cast<unsigned>(k);
        ErrorVsSizeRow row{};
        row.n = n;
        const CatalystPlan plan = catalyst_dimension(n, p.dim());
        row.d_C_exact = plan.dC_exact;
        try {
            const CatalysisReport rep = run_protocol(p, q, n, theory, cfg.size_cap);
            row.chi_err = rep.chi_err;
            row.system_err = rep.system_err;
            row.joint_err = rep.joint_err;
            row.predicted_eps = predicted_epsilon(theory, p, q, plan.log_dC);
            row.skipped = false;
        } catch (const size_cap_error&) {
            row.skipped = true;
        }
        res.rows[k] = row;
    });

    std::string csv = kErrorVsSizeFormat;
    csv += "n,d_C_exact,chi_err,system_err,joint_err,predicted_eps,status\n";
    for (const auto& r : res.rows) {
        csv += std::to_string(r.n) + ",";
        csv += r.d_C_exact ? std::to_string(*r.d_C_exact) : std::string();
        if (r.skipped) {
            csv += ",,,,,skipped\n";
            continue;
        }
        csv += "," + fmt_g17(r.chi_err) + "," + fmt_g17(r.system_err) + "," +
               fmt_g17(r.joint_err) + ",";
        csv += std::isnan(r.predicted_eps) ? std::string() : fmt_g17(r.predicted_eps);
        csv += ",ok\n";
    }
    res.csv = std::move(csv);

    if (!cfg.out.empty()) write_text_file(resolve_out_path(cfg.out), res.csv);
    if (!cfg.svg.empty()) {
        std::vector<double> xs;
        std::vector<std::vector<double>> ys(2);
        for (const auto& r : res.rows) {
            if (r.skipped) continue;
            xs.push_back(r.n);
            ys[0].push_back(r.system_err);
            ys[1].push_back(r.predicted_eps);
        }
        write_text_file(resolve_out_path(cfg.svg),
                        render_line_svg(xs, ys, {"system_err", "predicted_eps"},
                                        "transformation error vs copies"));
    }
    return res;
}

ResonanceResult resonance_sweep(const SweepConfig& cfg) {
    if (cfg.theory != "entanglement")
        throw input_error("the resonance sweep runs the entanglement theory");
    const double scale = cfg.log_base();       // display units -> nats
    const double h_ini = cfg.h_ini * scale;
    const double h_fin = cfg.h_fin * scale;
    const std::size_t d = cfg.d_s;
    const double h_max = std::log(static_cast<double>(d));
    if (h_ini >= h_max || h_fin >= h_max || h_ini <= 0.0 || h_fin <= 0.0)
        throw infeasible_error("entropy contour outside (0, log d)");

    ResonanceResult res;
    res.target = cfg.q ? *cfg.q : canonical_target_state(h_fin, d);
    const ProbVec q = ProbVec::from_values(res.target);
    const Theory theory = Theory::entanglement();
    const double hq = shannon_entropy(q);
    const double vq = entropy_variance(q);
    if (cfg.q && std::abs(hq - h_fin) > 1e-6)
        throw input_error("explicit target does not sit on the h_fin contour");

    // sampling is sequential so the stream depends only on (seed, samples)
    SweepRng rng(cfg.seed);
    std::vector<ProbVec> states;
    states.reserve(cfg.samples);
    for (unsigned k = 0; k < cfg.samples; ++k)
        states.push_back(ProbVec::from_values(sample_entropy_contour(rng, h_ini, d)));

    res.rows.resize(cfg.samples);
    run_indexed(cfg.workers, cfg.samples, [&](std::size_t k) {
        const ProbVec& p = states[k];
        ResonanceRow row{};
        row.sample = static_cast<unsigned>(k);
        row.p = p.probs();
        const double hp = shannon_entropy(p);
        const double vp = entropy_variance(p);
        row.nu = (vp / hp) / (vq / hq);
        row.nu_gap = std::abs(row.nu - 1.0);
        row.single_shot_exact = majorizes(q, p);   // LOCC: target majorizes source
        row.single_shot_within_eps =
            run_protocol(p, q, 1, theory, cfg.size_cap).system_err <= cfg.eps;
        // diagnostic: the rate-based copy estimate alongside the simulated one
        try {
            const SecondOrderRates r = rates(theory, p, q, cfg.eps);
            if (r.R > 1.0 && !r.nu_infinite) row.n_two_term = n_epsilon(r);
        } catch (const infeasible_error&) {
        }
        const auto n = min_n_search(p, q, cfg.eps, cfg.n_max, theory, cfg.size_cap);
        row.n_min = n;
        if (n) {
            const CatalystPlan plan = catalyst_dimension(*n, d);
            row.log_dC = plan.log_dC;
            row.dC_exact = plan.dC_exact;
        } else {
            row.log_dC = std::numeric_limits<double>::quiet_NaN();
        }
        res.rows[k] = std::move(row);
    });

    std::string csv = kResonanceFormat;
    csv += "sample";
    for (std::size_t i = 0; i < d; ++i) csv += ",p" + std::to_string(i);
    csv += ",nu,nu_gap,n_min,log_dC,dC_exact,n_two_term,single_shot_exact,"
           "single_shot_within_eps\n";
    for (const auto& r : res.rows) {
        csv += std::to_string(r.sample);
        for (double x : r.p) csv += "," + fmt_g17(x);
        csv += "," + fmt_g17(r.nu) + "," + fmt_g17(r.nu_gap) + ",";
        csv += r.n_min ? std::to_string(*r.n_min) : std::string();
        csv += ",";
        csv += r.n_min ? fmt_g17(r.log_dC) : std::string();
        csv += ",";
        csv += r.dC_exact ? std::to_string(*r.dC_exact) : std::string();
        csv += ",";
        csv += r.n_two_term ? std::to_string(*r.n_two_term) : std::string();
        csv += std::string(",") + (r.single_shot_exact ? "1" : "0");
        csv += std::string(",") + (r.single_shot_within_eps ? "1" : "0");
        csv += "\n";
    }
    res.csv = std::move(csv);

    if (!cfg.out.empty()) write_text_file(resolve_out_path(cfg.out), res.csv);
    if (!cfg.svg.empty()) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : res.rows)
            if (r.n_min) pts.emplace_back(r.nu_gap, static_cast<double>(*r.n_min));
        std::sort(pts.begin(), pts.end());
        std::vector<double> xs;
        std::vector<std::vector<double>> ys(1);
        for (const auto& [x, y] : pts) {
            xs.push_back(x);
            ys[0].push_back(y);
        }
        write_text_file(resolve_out_path(cfg.svg),
                        render_line_svg(xs, ys, {"n_min"}, "catalyst copies vs |nu - 1|"));
    }
    return res;
}

std::string render_line_svg(const std::vector<double>& xs,
                            const std::vector<std::vector<double>>& ys,
                            const std::vector<std::string>& labels,
                            const std::string& title) {
    constexpr int W = 640, Hpx = 400, M = 50;
    static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool any = false;
    for (std::size_t s = 0; s < ys.size(); ++s) {
        for (std::size_t i = 0; i < xs.size() && i < ys[s].size(); ++i) {
            if (std::isnan(ys[s][i])) continue;
            if (!any) {
                xmin = xmax = xs[i];
                ymin = ymax = ys[s][i];
                any = true;
            }
            xmin = std::min(xmin, xs[i]);
            xmax = std::max(xmax, xs[i]);
            ymin = std::min(ymin, ys[s][i]);
            ymax = std::max(ymax, ys[s][i]);
        }
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    auto px = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto py = [&](double y) { return Hpx - M - (y - ymin) / (ymax - ymin) * (Hpx - 2 * M); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << Hpx << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    svg << "<line x1=\"" << M << "\" y1=\"" << Hpx - M << "\" x2=\"" << W - M
        << "\" y2=\"" << Hpx - M << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\""
        << Hpx - M << "\" stroke=\"black\"/>\n";
    for (std::size_t s = 0; s < ys.size(); ++s) {
        svg << "<polyline fill=\"none\" stroke=\"" << kColors[s % 4]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size() && i < ys[s].size(); ++i) {
            if (std::isnan(ys[s][i])) continue;
            svg << px(xs[i]) << "," << py(ys[s][i]) << " ";
        }
        svg << "\"/>\n";
        if (s < labels.size())
            svg << "<text x=\"" << W - M + 4 << "\" y=\"" << M + 16 * (s + 1)
                << "\" font-size=\"11\" fill=\"" << kColors[s % 4] << "\">" << labels[s]
                << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace catalysis
