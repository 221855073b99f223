#pragma once

#include <span>

#include "catalysis/prob_vec.hpp"

namespace catalysis {

// All entropic quantities are computed in natural log; converting to another
// display base is a presentation concern (see sweep options).

double shannon_entropy(const ProbVec& p);
double entropy_variance(const ProbVec& p);
double relative_entropy(const ProbVec& p, const GibbsSpec& gamma);
double relative_entropy_variance(const ProbVec& p, const GibbsSpec& gamma);

/// Renyi entropy H_a = log(sum p_i^a) / (1 - a). Accepts +/-infinity.
/// a = 1 is the Shannon limit, a = 0 the log support size, a = +inf the
/// min-entropy. Negative a (including -inf) requires full support.
double renyi_entropy(const ProbVec& p, double alpha);

/// Mean-log entropy normalized so the uniform distribution scores zero:
/// (1/d) sum log p_i + log d. Requires full support.
double burg_entropy(const ProbVec& p);

enum class MulticopyStatus { Satisfied, Violated, Inconclusive };

struct MulticopyVerdict {
    MulticopyStatus status;
    double witness_alpha;   // set when status == Violated
    double min_margin;      // smallest H_a(p) - H_a(q) seen over the grid
};

/// Grid-based check of the strict Renyi dominance H_a(p) > H_a(q) over
/// a in (0, inf], plus a support-size comparison at a = 0. A "satisfied"
/// verdict is a heuristic certificate (the condition quantifies over a
/// continuum); margins below 1e-12 yield Inconclusive.
MulticopyVerdict multicopy_feasibility_check(const ProbVec& p, const ProbVec& q,
                                             std::size_t alpha_grid_size = 257);

namespace detail {
double shannon_entropy_span(std::span<const double> p);
double entropy_variance_span(std::span<const double> p);
} // namespace detail

} // namespace catalysis
