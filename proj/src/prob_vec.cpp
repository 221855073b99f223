#include "catalysis/prob_vec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace catalysis {

namespace {

double sum_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

void renormalize(std::vector<double>& v) {
    const double s = sum_of(v);
    for (double& x : v) x /= s;
}

} // namespace

ProbVec ProbVec::from_values(std::vector<double> values) {
    if (values.empty()) throw input_error("probability vector must be nonempty");
    for (double x : values) {
        if (!std::isfinite(x)) throw input_error("probability entries must be finite");
        if (x < kNegEntryTol)
            throw input_error("negative probability entry " + std::to_string(x));
    }
    for (double& x : values)
        if (x < 0.0) x = 0.0;
    const double s = sum_of(values);
    if (std::abs(s - 1.0) > kInputSumTol)
        throw input_error("probabilities sum to " + std::to_string(s) +
                          ", outside the 1e-9 normalization window");
    renormalize(values);
    return ProbVec(std::move(values));
}

ProbVec ProbVec::uniform(std::size_t d) {
    if (d == 0) throw input_error("dimension must be positive");
    return ProbVec(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

std::vector<double> ProbVec::sorted_desc() const {
    std::vector<double> v = probs_;
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

GibbsSpec GibbsSpec::from_weights(std::vector<double> weights) {
    if (weights.empty()) throw input_error("Gibbs weights must be nonempty");
    for (double w : weights) {
        if (!std::isfinite(w) || w <= 0.0)
            throw input_error("Gibbs weights must be strictly positive");
    }
    const double s = sum_of(weights);
    if (std::abs(s - 1.0) > kInputSumTol)
        throw input_error("Gibbs weights sum to " + std::to_string(s) +
                          ", outside the 1e-9 normalization window");
    renormalize(weights);
    return GibbsSpec(std::move(weights));
}

GibbsSpec GibbsSpec::from_energies(const std::vector<double>& energies, double beta) {
    if (energies.empty()) throw input_error("energy list must be nonempty");
    if (!(beta >= 0.0)) throw input_error("inverse temperature must be >= 0");
    // Shift by the minimum energy so the largest weight is exp(0).
    const double e_min = *std::min_element(energies.begin(), energies.end());
    std::vector<double> w(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i)
        w[i] = std::exp(-beta * (energies[i] - e_min));
    renormalize(w);
    return GibbsSpec(std::move(w));
}

GibbsSpec GibbsSpec::uniform(std::size_t d) {
    if (d == 0) throw input_error("dimension must be positive");
    return GibbsSpec(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

bool GibbsSpec::is_uniform(double tol) const {
    const double u = 1.0 / static_cast<double>(dim());
    for (double w : weights_)
        if (std::abs(w - u) > tol) return false;
    return true;
}

ProductProbVec ProductProbVec::from_parts(std::vector<std::size_t> factors,
                                          std::vector<double> probs) {
    std::size_t expected = 1;
    for (std::size_t f : factors) {
        if (f == 0) throw input_error("factor dimensions must be positive");
        expected *= f;
    }
    if (probs.size() != expected)
        throw input_error("product distribution length does not match its factors");
    double s = 0.0;
    for (double x : probs) {
        if (!std::isfinite(x) || x < kNegEntryTol)
            throw input_error("invalid product distribution entry");
        s += x;
    }
    if (std::abs(s - 1.0) > kInputSumTol)
        throw input_error("product distribution is not normalized");
    return ProductProbVec(std::move(factors), std::move(probs));
}

ProductProbVec tensor_power(const ProbVec& p, unsigned n, std::size_t size_cap) {
    if (n == 0) throw input_error("tensor power requires n >= 1");
    const std::size_t d = p.dim();
    std::size_t total = 1;
    for (unsigned k = 0; k < n; ++k) {
        if (total > size_cap / d)
            throw size_cap_error("tensor power of size d^n exceeds the cap of " +
                                 std::to_string(size_cap) + " entries");
        total *= d;
    }
    std::vector<double> out(total);
    out[0] = 1.0;
    std::size_t cur = 1;
    for (unsigned k = 0; k < n; ++k) {
        // grow in place from the back: out[0..cur) holds the k-fold product
        for (std::size_t i = cur; i-- > 0;) {
            const double base = out[i];
            for (std::size_t j = d; j-- > 0;) out[i * d + j] = base * p[j];
        }
        cur *= d;
    }
    return ProductProbVec::from_parts(std::vector<std::size_t>(n, d), std::move(out));
}

ProductProbVec marginal(const ProductProbVec& x, const std::vector<std::size_t>& keep) {
    const std::size_t m = x.num_factors();
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= m) throw input_error("marginal: factor index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw input_error("marginal: keep indices must be strictly increasing");
    }
    if (keep.size() == m) return x;   // identity

    std::vector<std::size_t> kept_dims(keep.size());
    std::size_t out_size = 1;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        kept_dims[i] = x.factor(keep[i]);
        out_size *= kept_dims[i];
    }
    if (keep.empty()) {
        kept_dims = {1};
        out_size = 1;
    }

    // stride of each source factor in the row-major layout
    std::vector<std::size_t> stride(m, 1);
    for (std::size_t i = m; i-- > 1;) stride[i - 1] = stride[i] * x.factor(i);

    std::vector<double> out(out_size, 0.0);
    const auto& probs = x.probs();
    std::vector<std::size_t> digit(m, 0);
    for (std::size_t flat = 0; flat < probs.size(); ++flat) {
        std::size_t rem = flat;
        std::size_t out_idx = 0;
        std::size_t ki = 0;
        for (std::size_t f = 0; f < m; ++f) {
            const std::size_t dgt = rem / stride[f];
            rem %= stride[f];
            if (ki < keep.size() && keep[ki] == f) {
                out_idx = out_idx * kept_dims[ki] + dgt;
                ++ki;
            }
        }
        out[out_idx] += probs[flat];
    }
    return ProductProbVec::from_parts(std::move(kept_dims), std::move(out));
}

namespace detail {
double l1_half_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}
} // namespace detail

double trace_distance(const ProbVec& p, const ProbVec& q) {
    if (p.dim() != q.dim()) throw input_error("trace distance: dimension mismatch");
    return detail::l1_half_distance(p.probs(), q.probs());
}

double trace_distance(const ProductProbVec& p, const ProductProbVec& q) {
    if (p.factors() != q.factors())
        throw input_error("trace distance: product index sets differ");
    return detail::l1_half_distance(p.probs(), q.probs());
}

} // namespace catalysis
