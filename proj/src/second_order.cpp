#include "catalysis/second_order.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "catalysis/spectra.hpp"

namespace catalysis {

Theory Theory::entanglement() { return Theory(TheoryKind::Entanglement, {}, 0); }

Theory Theory::athermality(GibbsSpec gamma) {
    const std::size_t d = gamma.dim();
    return Theory(TheoryKind::Athermality, std::move(gamma), d);
}

Theory Theory::unitary_noisy(std::size_t d_s) {
    return Theory(TheoryKind::UnitaryNoisy, GibbsSpec::uniform(d_s), d_s);
}

const GibbsSpec& Theory::gamma() const {
    if (!gamma_) throw input_error("theory has no reference state");
    return *gamma_;
}

std::string Theory::name() const {
    switch (kind_) {
        case TheoryKind::Entanglement: return "entanglement";
        case TheoryKind::Athermality: return "athermality";
        case TheoryKind::UnitaryNoisy: return "unitary-noisy";
    }
    return "?";
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

namespace {

// Acklam's rational approximation, accurate to ~1e-9 before refinement.
double inv_normal_seed(double x) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double lo = 0.02425;
    if (x < lo) {
        const double t = std::sqrt(-2.0 * std::log(x));
        return (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
               ((((dd[0] * t + dd[1]) * t + dd[2]) * t + dd[3]) * t + 1.0);
    }
    if (x > 1.0 - lo) {
        const double t = std::sqrt(-2.0 * std::log(1.0 - x));
        return -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
               ((((dd[0] * t + dd[1]) * t + dd[2]) * t + dd[3]) * t + 1.0);
    }
    const double t = x - 0.5;
    const double r = t * t;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * t /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

} // namespace

double inv_normal_cdf(double x) {
    if (!(x > 0.0 && x < 1.0))
        throw input_error("inverse normal CDF requires an argument in (0,1)");
    // evaluate on the smaller tail for precision, exploit antisymmetry
    const bool flip = x > 0.5;
    const double xs = flip ? 1.0 - x : x;
    double z = inv_normal_seed(xs);
    for (int it = 0; it < 2; ++it) {
        const double f = normal_cdf(z) - xs;
        const double pdf = normal_pdf(z);
        if (pdf < 1e-300) break;
        // Halley step for f(z) = Phi(z) - xs, using Phi'' = -z Phi'
        const double u = f / pdf;
        z -= u / (1.0 - 0.5 * z * u);
    }
    return flip ? -z : z;
}

SesquiResult sesqui_normal_ex(double nu, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw input_error("sesqui-normal requires eps in (0,1)");
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw input_error("sesqui-normal requires finite nu >= 0");
    if (nu == 0.0) {
        // objective reduces to -PhiInv(x - eps), decreasing in x: the infimum
        // sits at the x -> 1 boundary
        return {-inv_normal_cdf(1.0 - eps), true};
    }
    const double root_nu = std::sqrt(nu);
    auto objective = [&](double x) {
        return root_nu * inv_normal_cdf(x) - inv_normal_cdf(x - eps);
    };

    // interior-only evaluation: the objective diverges at both endpoints
    constexpr int kGrid = 64;
    std::array<double, kGrid> xs{}, vals{};
    for (int k = 1; k <= kGrid; ++k) {
        xs[k - 1] = eps + static_cast<double>(k) * (1.0 - eps) / (kGrid + 1);
        vals[k - 1] = objective(xs[k - 1]);
    }

    constexpr double kGolden = 0.61803398874989484820;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const bool left_ok = i == 0 || vals[i] <= vals[i - 1];
        const bool right_ok = i == kGrid - 1 || vals[i] <= vals[i + 1];
        if (!(left_ok && right_ok)) continue;   // refine around local minima only
        double a = i > 0 ? xs[i - 1] : eps + 1e-13 * (1.0 - eps);
        double b = i < kGrid - 1 ? xs[i + 1] : 1.0 - 1e-13 * (1.0 - eps);
        double c1 = b - kGolden * (b - a);
        double c2 = a + kGolden * (b - a);
        double f1 = objective(c1), f2 = objective(c2);
        while (b - a > 1e-11) {
            if (f1 < f2) {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - kGolden * (b - a);
                f1 = objective(c1);
            } else {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + kGolden * (b - a);
                f2 = objective(c2);
            }
        }
        best = std::min({best, vals[i], objective(0.5 * (a + b))});
    }
    return {best, false};
}

double sesqui_normal(double nu, double eps) { return sesqui_normal_ex(nu, eps).value; }

namespace {

struct Quantifiers {
    double mean_p, var_p, mean_q, var_q;
};

Quantifiers theory_quantifiers(const Theory& theory, const ProbVec& p, const ProbVec& q) {
    switch (theory.kind()) {
        case TheoryKind::Entanglement:
            return {shannon_entropy(p), entropy_variance(p), shannon_entropy(q),
                    entropy_variance(q)};
        case TheoryKind::Athermality:
        case TheoryKind::UnitaryNoisy: {
            const GibbsSpec& g = theory.gamma();
            return {relative_entropy(p, g), relative_entropy_variance(p, g),
                    relative_entropy(q, g), relative_entropy_variance(q, g)};
        }
    }
    throw input_error("unknown theory");
}

} // namespace

SecondOrderRates rates(const Theory& theory, const ProbVec& p, const ProbVec& q,
                       double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw input_error("eps must lie in (0,1)");
    const auto [mp, vp, mq, vq] = theory_quantifiers(theory, p, q);
    constexpr double kZero = 1e-14;
    if (mq <= kZero)
        throw infeasible_error("target resource quantifier vanishes: rate undefined");

    SecondOrderRates r{};
    r.epsilon = eps;
    if (mp <= kZero) {
        r.R = 0.0;
        r.no_catalysis = true;
        r.nu = 0.0;
        r.f_value = sesqui_normal(0.0, eps);
        r.Rprime = 0.0;
        return r;
    }
    r.R = mp / mq;
    const double ratio_p = vp / mp;
    const double ratio_q = vq / mq;
    if (ratio_q <= 0.0) {
        if (ratio_p <= 0.0) {
            r.nu = 1.0;   // both spectra flat; the 0/0 limit of a state with itself
        } else {
            r.nu = std::numeric_limits<double>::infinity();
            r.nu_infinite = true;
        }
    } else {
        r.nu = ratio_p / ratio_q;
    }
    if (r.nu_infinite) {
        r.f_value = std::numeric_limits<double>::infinity();
        r.Rprime = std::numeric_limits<double>::infinity();
    } else {
        r.f_value = sesqui_normal(r.nu, eps);
        r.Rprime = std::sqrt(vp) * r.f_value / mq;
    }
    return r;
}

std::uint64_t n_epsilon(const SecondOrderRates& r) {
    if (!(r.R > 1.0))
        throw infeasible_error("n_epsilon requires an asymptotic rate above 1");
    if (!std::isfinite(r.Rprime))
        throw infeasible_error("n_epsilon undefined for an infinite resonance parameter");
    if (r.Rprime <= 0.0) return 1;   // every n already satisfies the defining bound
    const double v = r.Rprime / (r.R - 1.0);
    const double n = std::ceil(v * v - 1e-12);
    if (n >= 9.2e18) throw infeasible_error("n_epsilon overflows a 64-bit integer");
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

CatalystPlan catalyst_dimension(std::uint64_t n, std::size_t d_s) {
    if (n == 0) throw input_error("catalyst sizing requires n >= 1");
    if (d_s < 2) throw input_error("catalyst sizing requires d_S >= 2");
    CatalystPlan plan{};
    plan.n = n;
    plan.d_s = d_s;
    plan.log_dC = std::log(static_cast<double>(n)) +
                  static_cast<double>(n - 1) * std::log(static_cast<double>(d_s));
    // exact dimension n * d_S^(n-1) when it fits in a signed 64-bit range
    constexpr std::uint64_t kCap = 1ULL << 63;
    std::uint64_t dc = n;
    bool exact = true;
    for (std::uint64_t k = 1; k < n; ++k) {
        if (dc > kCap / d_s) {
            exact = false;
            break;
        }
        dc *= d_s;
    }
    if (exact) plan.dC_exact = dc;
    return plan;
}

SufficiencyResult sufficiency_check(const Theory& theory, const ProbVec& p,
                                    const ProbVec& q, double eps, double log_dC) {
    if (!(log_dC > 0.0)) throw input_error("sufficiency check requires log d_C > 0");
    const auto [mp, vp, mq, vq] = theory_quantifiers(theory, p, q);
    SecondOrderRates r = rates(theory, p, q, eps);

    SufficiencyResult out{};
    out.approximation = "two-term";
    out.gap = mp - mq;
    out.total_log_dC = log_dC;
    if (theory.kind() == TheoryKind::UnitaryNoisy) {
        // the bound applies to the C1 part; the full catalyst is d_C1 (1 + d_S)
        out.total_log_dC = log_dC + std::log(1.0 + static_cast<double>(theory.d_s()));
    }
    if (r.nu_infinite) {
        out.sufficient = false;
        out.bound = std::numeric_limits<double>::infinity();
        out.note = "resonance parameter infinite (flat target spectrum); "
                   "the dominant-term bound degenerates";
        return out;
    }
    const double log_ds = std::log(static_cast<double>(p.dim()));
    out.bound = std::sqrt(vp * log_ds / log_dC) * r.f_value;
    out.sufficient = out.gap > 0.0 && out.gap > out.bound;
    if (!out.sufficient && out.gap <= 0.0)
        out.note = "resource quantifier does not decrease";
    return out;
}

double predicted_epsilon(const Theory& theory, const ProbVec& p, const ProbVec& q,
                         double log_dC) {
    const auto [mp, vp, mq, vq] = theory_quantifiers(theory, p, q);
    const double gap = mp - mq;
    if (!(gap > 0.0) || !(vp > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double ratio_p = vp / mp, ratio_q = vq / mq;
    if (!(ratio_q > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double nu = ratio_p / ratio_q;
    const double log_ds = std::log(static_cast<double>(p.dim()));
    // f_nu(eps) = -gap sqrt(log d_C / (V log d_S)): the branch on which the
    // predicted error falls as the catalyst grows; f is nondecreasing in eps
    const double target = log_dC > 0.0
                              ? -gap * std::sqrt(log_dC / (vp * log_ds))
                              : 0.0;
    double lo = 1e-9, hi = 1.0 - 1e-9;
    if (sesqui_normal(nu, lo) > target) return std::numeric_limits<double>::quiet_NaN();
    if (sesqui_normal(nu, hi) < target) return std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sesqui_normal(nu, mid) > target)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace catalysis
