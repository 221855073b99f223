#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "catalysis/prob_vec.hpp"
#include "catalysis/second_order.hpp"

namespace catalysis {

/// Experiment configuration, read from a plain key = value file (lines
/// starting with '#' are comments) and optionally overridden by CLI flags.
/// Keys: theory, eps, n_min, n_max, seed, base, out, svg, workers, p, q,
/// gamma, h_ini, h_fin, samples, d_s. State-valued keys accept either an
/// inline JSON array of probabilities or a path to a state file.
/// CATALYSIS_OUT_DIR, when set, prefixes relative output paths.
struct SweepConfig {
    std::string theory = "unitary-noisy";
    double eps = 0.03;
    unsigned n_min = 1;
    unsigned n_max = 6;
    std::uint64_t seed = 1;
    std::string base = "e";           // "e" or "2": display/contour units
    std::string out;                  // CSV path; empty = stdout
    std::string svg;                  // optional chart path
    unsigned workers = 1;
    std::optional<std::vector<double>> p;
    std::optional<std::vector<double>> q;
    std::optional<std::vector<double>> gamma_weights;
    double h_ini = 0.9;
    double h_fin = 0.8;
    unsigned samples = 50;
    std::size_t d_s = 3;
    std::size_t size_cap = kDefaultSizeCap;

    double log_base() const;          // ln 2 or 1; converts display units to nats
};

SweepConfig parse_config_file(const std::string& path);
SweepConfig parse_config_text(const std::string& text);

struct ErrorVsSizeRow {
    unsigned n;
    std::optional<std::uint64_t> d_C_exact;
    double chi_err, system_err, joint_err, predicted_eps;
    bool skipped;
};

struct ErrorVsSizeResult {
    std::vector<ErrorVsSizeRow> rows;
    std::string csv;
};

/// One protocol run per n in [n_min, n_max] for a fixed state pair, with the
/// dominant-term error prediction alongside. Rows above the size cap are kept
/// but marked skipped. Deterministic; rows are assembled in input order even
/// when computed by several workers.
ErrorVsSizeResult error_vs_size_sweep(const SweepConfig& cfg);

struct ResonanceRow {
    unsigned sample;
    std::vector<double> p;
    double nu;
    double nu_gap;                       // |nu - 1|
    std::optional<unsigned> n_min;
    double log_dC;                       // for n_min when found
    std::optional<std::uint64_t> dC_exact;
    std::optional<std::uint64_t> n_two_term;   // diagnostic: the rate-based estimate
    bool single_shot_exact;              // majorization holds at n = 1
    bool single_shot_within_eps;         // n = 1 error within eps
};

struct ResonanceResult {
    std::vector<ResonanceRow> rows;
    std::vector<double> target;
    std::string csv;
};

/// Seeded sweep over states sampled on the H = h_ini entropy contour
/// (entanglement theory), against the canonical target on the h_fin contour:
/// the (1-t, t/(d-1), ..., t/(d-1)) state, unless an explicit q is supplied.
/// Entropies are interpreted in the configured base. Bit-reproducible for a
/// fixed (config, seed).
ResonanceResult resonance_sweep(const SweepConfig& cfg);

/// Deterministic RNG used by all sweeps: mt19937_64 with the 53-bit mapping,
/// identical across platforms for a fixed seed.
class SweepRng {
public:
    explicit SweepRng(std::uint64_t seed) : gen_(seed) {}
    double uniform();   // [0, 1)
private:
    std::mt19937_64 gen_;
};

/// Rejection sampling on the simplex followed by bisection along a segment
/// toward the uniform point or a vertex; lands within 1e-10 of the target
/// entropy (in nats).
std::vector<double> sample_entropy_contour(SweepRng& rng, double h_nats, std::size_t d);

/// The (1-t, t/(d-1), ..., t/(d-1)) state with the requested entropy (nats).
std::vector<double> canonical_target_state(double h_nats, std::size_t d);

/// Minimal polyline chart, one series per column of `ys`.
std::string render_line_svg(const std::vector<double>& xs,
                            const std::vector<std::vector<double>>& ys,
                            const std::vector<std::string>& labels,
                            const std::string& title);

} // namespace catalysis
