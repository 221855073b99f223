#include "catalysis/catalyst.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "catalysis/majorization.hpp"

namespace catalysis {

namespace {

std::uint64_t pow_u64(std::size_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned k = 0; k < exp; ++k) r *= base;
    return r;
}

std::vector<std::size_t> range_vec(std::size_t from, std::size_t to) {
    std::vector<std::size_t> v(to - from);
    std::iota(v.begin(), v.end(), from);
    return v;
}

} // namespace

std::uint64_t CatalystState::dimension() const {
    return static_cast<std::uint64_t>(n) * pow_u64(d_s, n - 1);
}

std::vector<double> CatalystState::flattened() const {
    const std::size_t c_dim = blocks.front().size();
    std::vector<double> out(c_dim * n, 0.0);
    const double w = 1.0 / static_cast<double>(n);
    for (unsigned i = 0; i < n; ++i)
        for (std::size_t c = 0; c < c_dim; ++c) out[c * n + i] = w * blocks[i][c];
    return out;
}

ChiResult build_chi(const ProbVec& p, const ProbVec& q, unsigned n, TheoryKind kind,
                    std::size_t size_cap) {
    if (p.dim() != q.dim())
        throw input_error("protocol states must share the system dimension");
    const ProductProbVec pn = tensor_power(p, n, size_cap);
    const ProductProbVec qn = tensor_power(q, n, size_cap);
    const bool chi_above = kind == TheoryKind::Entanglement;
    ApproxMajorization sol =
        detail::optimal_chi_span(pn.probs(), qn.probs(), chi_above);
    const bool ok = chi_above ? detail::majorizes_span(sol.chi, pn.probs(), 1e-10)
                              : detail::majorizes_span(pn.probs(), sol.chi, 1e-10);
    if (!ok)
        throw infeasible_error("internal: optimal chi violates its majorization side");
    ProductProbVec chi = ProductProbVec::from_parts(
        std::vector<std::size_t>(n, p.dim()), std::move(sol.chi));
    return {std::move(chi), sol.err};
}

CatalystState build_catalyst(const ProbVec& p, const ProductProbVec& chi, unsigned n) {
    if (chi.num_factors() != n)
        throw input_error("catalyst construction: chi must live on n copies");
    const std::size_t d = p.dim();
    for (std::size_t f = 0; f < n; ++f)
        if (chi.factor(f) != d) throw input_error("catalyst construction: shape mismatch");

    CatalystState omega;
    omega.n = n;
    omega.d_s = d;
    omega.blocks.reserve(n);
    const std::size_t c_dim = static_cast<std::size_t>(pow_u64(d, n - 1));
    for (unsigned i = 1; i <= n; ++i) {
        // block i = p^(x)(i-1)  (x)  marginal of chi over copies i+1..n
        const ProductProbVec tail = marginal(chi, range_vec(i, n));
        std::vector<double> blk(c_dim, 0.0);
        const std::size_t head = static_cast<std::size_t>(pow_u64(d, i - 1));
        const std::size_t tail_sz = tail.size();
        std::vector<double> head_probs(head, 1.0);
        if (i > 1) {
            const ProductProbVec ph = tensor_power(p, i - 1);
            head_probs = ph.probs();
        }
        for (std::size_t a = 0; a < head; ++a)
            for (std::size_t b = 0; b < tail_sz; ++b)
                blk[a * tail_sz + b] = head_probs[a] * tail[b];
        omega.blocks.push_back(ProductProbVec::from_parts(
            std::vector<std::size_t>(n > 1 ? n - 1 : 1, n > 1 ? d : 1), std::move(blk)));
    }
    return omega;
}

JointState assemble_final_state(const ProbVec& p, const ProductProbVec& chi, unsigned n) {
    const std::size_t d = p.dim();
    if (chi.num_factors() != n)
        throw input_error("final-state assembly: chi must live on n copies");
    const std::size_t sc_dim = chi.size();          // d^n over (S, C1)
    std::vector<double> joint(sc_dim * n, 0.0);
    const double w = 1.0 / static_cast<double>(n);

    std::vector<std::size_t> digits(n);
    for (unsigned i = 1; i <= n; ++i) {
        // branch i: copies i..n of chi, its first factor carried by S, the
        // system's former content parked at C1 slot i-1 alongside p copies
        const ProductProbVec mu = marginal(chi, range_vec(i - 1, n));
        const std::size_t mu_factors = n - i + 1;
        for (std::size_t flat = 0; flat < sc_dim; ++flat) {
            std::size_t rem = flat;
            for (std::size_t f = n; f-- > 0;) {
                digits[f] = rem % d;
                rem /= d;
            }
            // digits[0] = S index; digits[1..n-1] = C1 slots
            double v = 1.0;
            for (unsigned m = 1; m < i; ++m) v *= p[digits[m]];
            std::size_t mu_idx = digits[0];
            for (std::size_t f = 1; f < mu_factors; ++f)
                mu_idx = mu_idx * d + digits[i - 1 + f];
            v *= mu[mu_idx];
            joint[flat * n + (i - 1)] += w * v;
        }
    }

    std::vector<std::size_t> factors(n, d);
    factors.push_back(n);
    JointState out{n, d, ProductProbVec::from_parts(std::move(factors), std::move(joint))};
    return out;
}

CatalysisReport verify_catalytic(const JointState& final_state,
                                 const CatalystState& omega, const ProbVec& q,
                                 double chi_err) {
    const unsigned n = final_state.n;
    const std::size_t d = final_state.d_s;
    const std::size_t c_dim = omega.blocks.front().size();
    const auto& joint = final_state.joint.probs();

    CatalysisReport rep{};
    rep.n = n;
    rep.d_C = omega.dimension();
    rep.chi_err = chi_err;

    // catalyst marginal (C1 x C2) against omega
    const std::vector<double> omega_flat = omega.flattened();
    std::vector<double> marg_c(c_dim * n, 0.0);
    for (std::size_t s = 0; s < d; ++s)
        for (std::size_t c = 0; c < c_dim; ++c)
            for (unsigned i = 0; i < n; ++i)
                marg_c[c * n + i] += joint[(s * c_dim + c) * n + i];
    rep.marginal_exactness = detail::l1_half_distance(marg_c, omega_flat);

    // system marginal against q
    std::vector<double> marg_s(d, 0.0);
    for (std::size_t s = 0; s < d; ++s) {
        double acc = 0.0;
        for (std::size_t rest = 0; rest < c_dim * n; ++rest)
            acc += joint[s * c_dim * n + rest];
        marg_s[s] = acc;
    }
    rep.system_err = detail::l1_half_distance(marg_s, q.probs());

    // joint distance to q (x) omega
    double l1 = 0.0;
    for (std::size_t s = 0; s < d; ++s)
        for (std::size_t c = 0; c < c_dim; ++c)
            for (unsigned i = 0; i < n; ++i)
                l1 += std::abs(joint[(s * c_dim + c) * n + i] -
                               q[s] * omega_flat[c * n + i]);
    rep.joint_err = 0.5 * l1;

    rep.feasible = rep.marginal_exactness <= 1e-12 &&
                   rep.system_err <= chi_err + 1e-12 &&
                   rep.joint_err <= 2.0 * chi_err + 1e-12;
    return rep;
}

CatalysisReport run_protocol(const ProbVec& p, const ProbVec& q, unsigned n,
                             const Theory& theory, std::size_t size_cap) {
    if (n == 0) throw input_error("protocol requires n >= 1");
    if (theory.kind() == TheoryKind::Athermality && !theory.gamma().is_uniform())
        throw infeasible_error(
            "finite-temperature protocol simulation is not supported; "
            "use thermo-majorization feasibility checks instead");
    ChiResult chi = build_chi(p, q, n, theory.kind(), size_cap);
    CatalystState omega = build_catalyst(p, chi.chi, n);
    JointState final_state = assemble_final_state(p, chi.chi, n);
    CatalysisReport rep = verify_catalytic(final_state, omega, q, chi.err);
    rep.theory = theory.kind();
    return rep;
}

std::optional<unsigned> min_n_search(const ProbVec& p, const ProbVec& q,
                                     double eps_target, unsigned n_max,
                                     const Theory& theory, std::size_t size_cap) {
    for (unsigned n = 1; n <= n_max; ++n) {
        const CatalysisReport rep = run_protocol(p, q, n, theory, size_cap);
        if (rep.system_err <= eps_target) return n;
    }
    return std::nullopt;
}

} // namespace catalysis
