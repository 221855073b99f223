#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "catalysis/prob_vec.hpp"

namespace catalysis {

enum class TheoryKind { Entanglement, Athermality, UnitaryNoisy };

/// One of the three supported resource theories. UnitaryNoisy(d) is
/// Athermality with the uniform reference of dimension d.
class Theory {
public:
    static Theory entanglement();
    static Theory athermality(GibbsSpec gamma);
    static Theory unitary_noisy(std::size_t d_s);

    TheoryKind kind() const { return kind_; }
    const GibbsSpec& gamma() const;       // Athermality / UnitaryNoisy only
    std::size_t d_s() const { return d_s_; }
    std::string name() const;

private:
    Theory(TheoryKind k, std::optional<GibbsSpec> g, std::size_t d)
        : kind_(k), gamma_(std::move(g)), d_s_(d) {}
    TheoryKind kind_;
    std::optional<GibbsSpec> gamma_;
    std::size_t d_s_;
};

/// Inverse of the standard normal CDF; |Phi(result) - x| <= 1e-10 on (0,1).
double inv_normal_cdf(double x);
double normal_cdf(double x);

struct SesquiResult {
    double value;
    bool at_boundary;   // nu = 0 degenerates to the x -> 1 boundary limit
};

/// f_nu(eps) = inf over x in (eps,1) of sqrt(nu) PhiInv(x) - PhiInv(x - eps).
/// The objective diverges at both endpoints for nu > 0; the infimum is located
/// on a 64-point interior grid and refined by golden-section search.
SesquiResult sesqui_normal_ex(double nu, double eps);
double sesqui_normal(double nu, double eps);

struct SecondOrderRates {
    double R;
    double Rprime;
    double nu;        // +inf sentinel when the target spectrum is flat
    double f_value;   // sesqui_normal(nu, epsilon); +inf when nu is infinite
    double epsilon;
    bool no_catalysis;   // source quantifier vanishes while target's does not
    bool nu_infinite;
};

/// First- and second-order conversion rates for the given theory.
/// Entanglement uses Shannon entropy / entropy variance of the spectra;
/// Athermality uses relative entropy / relative entropy variance against
/// gamma; UnitaryNoisy is Athermality with the uniform reference.
SecondOrderRates rates(const Theory& theory, const ProbVec& p, const ProbVec& q,
                       double eps);

/// Two-term approximation of the smallest n whose finite-size rate exceeds 1:
/// ceil((R'/(R-1))^2), at least 1; R' <= 0 gives 1 outright. Requires R > 1.
std::uint64_t n_epsilon(const SecondOrderRates& r);

struct CatalystPlan {
    std::uint64_t n;
    double log_dC;                         // log n + (n-1) log d_S, in nats
    std::optional<std::uint64_t> dC_exact; // n * d_S^(n-1) when < 2^63
    std::size_t d_s;
};

CatalystPlan catalyst_dimension(std::uint64_t n, std::size_t d_s);

struct SufficiencyResult {
    bool sufficient;
    double gap;            // source quantifier minus target quantifier
    double bound;          // sqrt(V log d_S / log d_C) * f_nu(eps)
    double total_log_dC;   // UnitaryNoisy reports log[d_C1 * (1 + d_S)]
    std::string approximation;  // always "two-term": o(1/sqrt(log d_C)) dropped
    std::string note;
};

/// Dominant-term sufficient condition for a correlated-catalytic conversion
/// with a catalyst of the given size. A negative verdict does not rule the
/// transformation out (the condition is sufficient, not necessary).
SufficiencyResult sufficiency_check(const Theory& theory, const ProbVec& p,
                                    const ProbVec& q, double eps, double log_dC);

/// Error level at which the dominant-term condition becomes tight for the
/// given catalyst size: the root of f_nu(eps) = -gap sqrt(log d_C/(V log d_S)),
/// the branch along which the predicted error shrinks as the catalyst grows.
/// Returns NaN when no root exists in (0,1).
double predicted_epsilon(const Theory& theory, const ProbVec& p, const ProbVec& q,
                         double log_dC);

} // namespace catalysis
