#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "catalysis/errors.hpp"

namespace catalysis {

inline constexpr double kNormTol = 1e-12;          // guaranteed after construction
inline constexpr double kInputSumTol = 1e-9;       // accepted before renormalizing
inline constexpr double kNegEntryTol = -1e-12;     // entries below this are rejected
inline constexpr std::size_t kDefaultSizeCap = 2'000'000;

/// Finite probability distribution. Entries keep their original order;
/// a descending view is computed on demand.
class ProbVec {
public:
    static ProbVec from_values(std::vector<double> values);

    std::size_t dim() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }
    std::vector<double> sorted_desc() const;

    static ProbVec uniform(std::size_t d);

private:
    explicit ProbVec(std::vector<double> p) : probs_(std::move(p)) {}
    std::vector<double> probs_;
};

/// Reference thermal distribution with strictly positive weights.
class GibbsSpec {
public:
    static GibbsSpec from_weights(std::vector<double> weights);
    static GibbsSpec from_energies(const std::vector<double>& energies, double beta);
    static GibbsSpec uniform(std::size_t d);

    std::size_t dim() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }
    bool is_uniform(double tol = 1e-12) const;

private:
    explicit GibbsSpec(std::vector<double> w) : weights_(std::move(w)) {}
    std::vector<double> weights_;
};

/// Distribution over a product index set, stored row-major: the flat index of
/// the tuple (i_1, ..., i_m) is  i_1 * d_2*...*d_m + ... + i_m.
class ProductProbVec {
public:
    static ProductProbVec from_parts(std::vector<std::size_t> factors,
                                     std::vector<double> probs);

    std::size_t size() const { return probs_.size(); }
    std::size_t num_factors() const { return factors_.size(); }
    std::size_t factor(std::size_t i) const { return factors_[i]; }
    const std::vector<std::size_t>& factors() const { return factors_; }
    const std::vector<double>& probs() const { return probs_; }
    double operator[](std::size_t i) const { return probs_[i]; }

private:
    ProductProbVec(std::vector<std::size_t> f, std::vector<double> p)
        : factors_(std::move(f)), probs_(std::move(p)) {}
    std::vector<std::size_t> factors_;
    std::vector<double> probs_;
};

/// n-fold product distribution p^(x)n over d^n indices.
ProductProbVec tensor_power(const ProbVec& p, unsigned n,
                            std::size_t size_cap = kDefaultSizeCap);

/// Sums out all factors not listed in `keep` (indices are 0-based and must be
/// strictly increasing). Keeping every factor is the identity.
ProductProbVec marginal(const ProductProbVec& x, const std::vector<std::size_t>& keep);

double trace_distance(const ProbVec& p, const ProbVec& q);
double trace_distance(const ProductProbVec& p, const ProductProbVec& q);

namespace detail {
double l1_half_distance(std::span<const double> a, std::span<const double> b);
} // namespace detail

} // namespace catalysis
