#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "catalysis/prob_vec.hpp"

namespace catalysis {

/// Piecewise-linear curve from (0,0) to (1,1); x cumulates reference weight,
/// y cumulates probability, segments ordered by decreasing slope p_i/gamma_i.
struct LorenzCurve {
    std::vector<std::pair<double, double>> points;
    double value_at(double x) const;
};

LorenzCurve lorenz_curve(const ProbVec& p, const GibbsSpec& gamma);

/// Partial-sum dominance of sorted spectra. Vectors of unequal dimension are
/// zero-padded to the larger one.
bool majorizes(const ProbVec& p, const ProbVec& q, double tol = 1e-12);

/// d-majorization: the Lorenz curve of p relative to gamma lies on or above
/// that of q everywhere. Reduces to `majorizes` for uniform gamma.
bool thermo_majorizes(const ProbVec& p, const ProbVec& q, const GibbsSpec& gamma,
                      double tol = 1e-12);

struct ApproxMajorization {
    std::vector<double> chi;  // in q's original index order
    double err;               // trace distance to q
};

/// chi minimizing the trace distance to q subject to p majorizing chi
/// (reachability under doubly stochastic maps). err = max_k (Q_k - P_k)_+.
ApproxMajorization optimal_chi(const ProbVec& p, const ProbVec& q);

/// Mirrored problem: chi minimizing the trace distance to q subject to chi
/// majorizing p (the target side of pure-state LOCC conversion).
/// err = max_k (P_k - Q_k)_+, which equals optimal_chi(q, p).err.
ApproxMajorization optimal_chi_majorizing(const ProbVec& p, const ProbVec& q);

/// Exact reference: minimizes (1/2)||Dp - q||_1 over doubly stochastic D via
/// a simplex LP on the convex hull of the permutations of p. dim <= 6.
double lp_oracle(const ProbVec& p, const ProbVec& q);

struct TTransformStep {
    std::size_t i;
    std::size_t j;
    double t;   // a_i' = (1-t) a_i + t a_j, a_j' = t a_i + (1-t) a_j; t=1 swaps
};

struct TTransformSeq {
    std::vector<TTransformStep> steps;
};

/// Constructive witness that p majorizes q: a sequence of two-level doubly
/// stochastic mixings mapping p onto q entrywise. At most d-1 steps whenever
/// a one-fix-per-step schedule exists (found by pruned search); rare index
/// arrangements fall back to a sorted-frame construction plus relabeling
/// swaps, bounded by 2(d-1) steps in total.
TTransformSeq ttransform_sequence(const ProbVec& p, const ProbVec& q);

ProbVec apply_ttransforms(const TTransformSeq& seq, const ProbVec& p);

namespace detail {
bool majorizes_span(std::span<const double> p, std::span<const double> q,
                    double tol = 1e-12);
// Core solvers on raw spectra; chi is returned aligned to q's index order.
ApproxMajorization optimal_chi_span(std::span<const double> p,
                                    std::span<const double> q, bool chi_majorizes_p);
} // namespace detail

} // namespace catalysis
