#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "catalysis/prob_vec.hpp"
#include "catalysis/second_order.hpp"

namespace catalysis {

/// Block-structured catalyst state over C = C1 C2. Block i (1-based) holds
/// p^(x)(i-1) tensored with the tail marginal of chi over copies i+1..n, each
/// block carrying C2-weight 1/n. Total dimension n * d_S^(n-1).
struct CatalystState {
    unsigned n;
    std::size_t d_s;
    std::vector<ProductProbVec> blocks;   // each over d_S^(n-1) indices

    std::uint64_t dimension() const;
    /// Flat layout over (C1, C2): index c * n + i, already weighted by 1/n.
    std::vector<double> flattened() const;
};

/// Joint distribution over S x C1 x C2 with factors [d_S] * n + [n];
/// row-major, C2 fastest.
struct JointState {
    unsigned n;
    std::size_t d_s;
    ProductProbVec joint;
};

struct CatalysisReport {
    unsigned n;
    std::uint64_t d_C;
    double chi_err;             // trace distance of chi to q^(x)n
    double system_err;          // trace distance of the final S marginal to q
    double joint_err;           // trace distance of the joint to q (x) omega
    double marginal_exactness;  // trace distance of the final C marginal to omega
    bool feasible;
    TheoryKind theory;
};

struct ChiResult {
    ProductProbVec chi;
    double err;
};

/// Optimal n-copy conversion output: the closest achievable spectrum to
/// q^(x)n, embedded into the product basis by descending q^(x)n order
/// (stable ties). Athermality/UnitaryNoisy constrain p^(x)n to majorize chi;
/// Entanglement constrains chi to majorize p^(x)n.
ChiResult build_chi(const ProbVec& p, const ProbVec& q, unsigned n,
                    TheoryKind kind = TheoryKind::UnitaryNoisy,
                    std::size_t size_cap = kDefaultSizeCap);

CatalystState build_catalyst(const ProbVec& p, const ProductProbVec& chi, unsigned n);

/// Post-protocol joint state: branch 1 carries chi itself; branch i >= 2
/// carries the conditional-swap image of p^(x)(i-1) tensored with the tail of
/// chi, so that tracing out S returns the catalyst block exactly and tracing
/// out C leaves the i-th single-copy marginal of chi.
JointState assemble_final_state(const ProbVec& p, const ProductProbVec& chi, unsigned n);

CatalysisReport verify_catalytic(const JointState& final_state,
                                 const CatalystState& omega, const ProbVec& q,
                                 double chi_err);

/// Full protocol run. Athermality requires the uniform reference (finite
/// temperature is feasibility-check territory, not simulation).
CatalysisReport run_protocol(const ProbVec& p, const ProbVec& q, unsigned n,
                             const Theory& theory,
                             std::size_t size_cap = kDefaultSizeCap);

/// Smallest n <= n_max whose protocol run meets the error target, scanning
/// upward with early exit.
std::optional<unsigned> min_n_search(const ProbVec& p, const ProbVec& q,
                                     double eps_target, unsigned n_max,
                                     const Theory& theory,
                                     std::size_t size_cap = kDefaultSizeCap);

} // namespace catalysis
