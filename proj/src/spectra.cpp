#include "catalysis/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace catalysis {

namespace detail {

double shannon_entropy_span(std::span<const double> p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log(x);
    return h;
}

double entropy_variance_span(std::span<const double> p) {
    const double h = shannon_entropy_span(p);
    double v = 0.0;
    for (double x : p) {
        if (x > 0.0) {
            const double t = std::log(x) + h;
            v += x * t * t;
        }
    }
    return std::max(v, 0.0);
}

} // namespace detail

double shannon_entropy(const ProbVec& p) {
    return detail::shannon_entropy_span(p.probs());
}

double entropy_variance(const ProbVec& p) {
    return detail::entropy_variance_span(p.probs());
}

double relative_entropy(const ProbVec& p, const GibbsSpec& gamma) {
    if (p.dim() != gamma.dim())
        throw input_error("relative entropy: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i)
        if (p[i] > 0.0) d += p[i] * (std::log(p[i]) - std::log(gamma[i]));
    return std::max(d, 0.0);
}

double relative_entropy_variance(const ProbVec& p, const GibbsSpec& gamma) {
    if (p.dim() != gamma.dim())
        throw input_error("relative entropy variance: dimension mismatch");
    const double d = relative_entropy(p, gamma);
    double v = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (p[i] > 0.0) {
            const double t = std::log(p[i]) - std::log(gamma[i]);
            v += p[i] * t * t;
        }
    }
    return std::max(v - d * d, 0.0);
}

double renyi_entropy(const ProbVec& p, double alpha) {
    const auto& v = p.probs();
    if (std::isnan(alpha)) throw input_error("Renyi order must not be NaN");

    if (alpha < 0.0 || alpha == -std::numeric_limits<double>::infinity()) {
        for (double x : v)
            if (x <= 0.0)
                throw input_error("negative Renyi orders require full support");
    }
    if (alpha == std::numeric_limits<double>::infinity())
        return -std::log(*std::max_element(v.begin(), v.end()));
    if (alpha == -std::numeric_limits<double>::infinity())
        return -std::log(*std::min_element(v.begin(), v.end()));
    if (alpha == 0.0) {
        std::size_t support = 0;
        for (double x : v)
            if (x > 0.0) ++support;
        return std::log(static_cast<double>(support));
    }
    if (std::abs(alpha - 1.0) < 1e-12) return shannon_entropy(p);

    // factor out the dominant entry so the power sum never over/underflows
    double m = 0.0;
    if (alpha > 0.0) {
        for (double x : v) m = std::max(m, x);
    } else {
        m = std::numeric_limits<double>::infinity();
        for (double x : v)
            if (x > 0.0) m = std::min(m, x);
    }
    double s = 0.0;
    for (double x : v)
        if (x > 0.0) s += std::pow(x / m, alpha);
    return (alpha * std::log(m) + std::log(s)) / (1.0 - alpha);
}

double burg_entropy(const ProbVec& p) {
    double s = 0.0;
    for (double x : p.probs()) {
        if (x <= 0.0) throw input_error("Burg entropy requires full support");
        s += std::log(x);
    }
    const double d = static_cast<double>(p.dim());
    return s / d + std::log(d);
}

MulticopyVerdict multicopy_feasibility_check(const ProbVec& p, const ProbVec& q,
                                             std::size_t alpha_grid_size) {
    if (alpha_grid_size < 2) throw input_error("alpha grid needs at least 2 points");
    constexpr double kStrictTol = 1e-12;
    const double inf = std::numeric_limits<double>::infinity();

    double min_margin = inf;
    auto check = [&](double alpha, double hp, double hq) -> std::optional<MulticopyVerdict> {
        const double margin = hp - hq;
        min_margin = std::min(min_margin, margin);
        if (!std::isfinite(margin))
            return MulticopyVerdict{MulticopyStatus::Inconclusive, alpha, min_margin};
        if (margin <= 0.0)
            return MulticopyVerdict{MulticopyStatus::Violated, alpha, min_margin};
        return std::nullopt;
    };

    // a = 0 endpoint compares support sizes; ties there say nothing about the
    // a -> 0+ behaviour, so only a strict deficit counts as a violation.
    {
        const double h0p = renyi_entropy(p, 0.0);
        const double h0q = renyi_entropy(q, 0.0);
        if (h0p < h0q - kStrictTol)
            return {MulticopyStatus::Violated, 0.0, h0p - h0q};
    }

    std::vector<double> alphas;
    alphas.reserve(alpha_grid_size + 3);
    const double lo = 1e-6, hi = 1e6;
    for (std::size_t k = 0; k < alpha_grid_size; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(alpha_grid_size - 1);
        alphas.push_back(lo * std::pow(hi / lo, t));
    }
    alphas.push_back(1.0);
    alphas.push_back(2.0);
    std::sort(alphas.begin(), alphas.end());

    for (double a : alphas) {
        if (auto v = check(a, renyi_entropy(p, a), renyi_entropy(q, a))) return *v;
    }
    if (auto v = check(inf, renyi_entropy(p, inf), renyi_entropy(q, inf))) return *v;

    if (min_margin < kStrictTol)
        return {MulticopyStatus::Inconclusive, 0.0, min_margin};
    return {MulticopyStatus::Satisfied, 0.0, min_margin};
}

} // namespace catalysis
