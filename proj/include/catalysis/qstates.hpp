#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "catalysis/errors.hpp"

namespace catalysis {

inline constexpr std::size_t kMaxQStateDim = 16;

/// Dense density matrix (row-major). Validated at construction: Hermitian
/// within 1e-10, eigenvalues >= -1e-10, unit trace within 1e-10, dim <= 16.
class DensityMatrix {
public:
    static DensityMatrix from_matrix(
        std::vector<std::complex<double>> entries, std::size_t dim,
        std::optional<std::pair<std::size_t, std::size_t>> bipartition = {});

    std::size_t dim() const { return dim_; }
    const std::vector<std::complex<double>>& entries() const { return a_; }
    std::complex<double> at(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    const std::optional<std::pair<std::size_t, std::size_t>>& bipartition() const {
        return parts_;
    }

private:
    DensityMatrix(std::vector<std::complex<double>> a, std::size_t d,
                  std::optional<std::pair<std::size_t, std::size_t>> p)
        : a_(std::move(a)), dim_(d), parts_(std::move(p)) {}
    std::vector<std::complex<double>> a_;
    std::size_t dim_;
    std::optional<std::pair<std::size_t, std::size_t>> parts_;
};

/// Eigenvalues (ascending) and eigenvectors (column k = vectors[j*dim + k])
/// of a Hermitian matrix by cyclic Jacobi sweeps; off-diagonal Frobenius norm
/// is driven below 1e-12.
struct EigResult {
    std::vector<double> values;
    std::vector<std::complex<double>> vectors;
};
EigResult hermitian_eigensystem(const std::vector<std::complex<double>>& m,
                                std::size_t dim);

double von_neumann_entropy(const DensityMatrix& rho);

enum class Subsystem { A, B };
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// max{S(rho_A), S(rho_B)} - S(rho); can be negative.
double hashing_bound(const DensityMatrix& rho);

/// Two-qubit entanglement of formation through the concurrence closed form,
/// in nats (a Bell pair scores log 2).
double eof_two_qubit(const DensityMatrix& sigma);

enum class LoccMixedVerdict { Sufficient, Boundary, NotImplied };

struct LoccMixedResult {
    LoccMixedVerdict verdict;
    double hashing;              // distillable-entanglement lower bound
    double target_entanglement;  // E(sigma)
    double s_a, s_b, s_rho;
};

/// Sufficient condition for a correlated-catalytic LOCC conversion of rho
/// into sigma: hashing_bound(rho) >= E(sigma). Equality within 1e-9 is
/// reported as Boundary (the asymptotic argument needs a strict rate gap).
LoccMixedResult locc_mixed_check(const DensityMatrix& rho, const DensityMatrix& sigma);
LoccMixedResult locc_mixed_check(const DensityMatrix& rho, double e_sigma);

} // namespace catalysis
