#include "catalysis/qstates.hpp"

#include <algorithm>
#include <cmath>

namespace catalysis {

namespace {

using cd = std::complex<double>;

double off_diagonal_norm(const std::vector<cd>& m, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i != j) s += std::norm(m[i * d + j]);
    return std::sqrt(s);
}

std::vector<cd> matmul(const std::vector<cd>& a, const std::vector<cd>& b,
                       std::size_t d) {
    std::vector<cd> out(d * d, cd{0.0, 0.0});
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const cd aik = a[i * d + k];
            if (aik == cd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < d; ++j) out[i * d + j] += aik * b[k * d + j];
        }
    return out;
}

} // namespace

EigResult hermitian_eigensystem(const std::vector<cd>& m, std::size_t dim) {
    if (dim == 0 || m.size() != dim * dim)
        throw input_error("eigensystem: bad matrix shape");
    if (dim > kMaxQStateDim)
        throw input_error("eigensystem supports dimension <= 16");

    std::vector<cd> a = m;
    std::vector<cd> v(dim * dim, cd{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) v[i * dim + i] = 1.0;

    // cyclic Jacobi with complex rotations; quadratic convergence at this size
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(a, dim) < 1e-12) break;
        for (std::size_t pp = 0; pp < dim; ++pp) {
            for (std::size_t qq = pp + 1; qq < dim; ++qq) {
                const cd apq = a[pp * dim + qq];
                const double mag = std::abs(apq);
                if (mag < 1e-18) continue;
                const double app = a[pp * dim + pp].real();
                const double aqq = a[qq * dim + qq].real();
                const cd phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cd s = t * c * phase;

                // right-multiply columns pp, qq of both a and v by the rotation
                for (std::size_t r = 0; r < dim; ++r) {
                    const cd arp = a[r * dim + pp], arq = a[r * dim + qq];
                    a[r * dim + pp] = c * arp - std::conj(s) * arq;
                    a[r * dim + qq] = s * arp + c * arq;
                    const cd vrp = v[r * dim + pp], vrq = v[r * dim + qq];
                    v[r * dim + pp] = c * vrp - std::conj(s) * vrq;
                    v[r * dim + qq] = s * vrp + c * vrq;
                }
                // left-multiply rows pp, qq by the conjugate transpose
                for (std::size_t cix = 0; cix < dim; ++cix) {
                    const cd apc = a[pp * dim + cix], aqc = a[qq * dim + cix];
                    a[pp * dim + cix] = c * apc - s * aqc;
                    a[qq * dim + cix] = std::conj(s) * apc + c * aqc;
                }
            }
        }
    }
    if (off_diagonal_norm(a, dim) >= 1e-10)
        throw input_error("eigensystem: Jacobi sweeps failed to converge");

    EigResult out;
    out.values.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) out.values[i] = a[i * dim + i].real();
    out.vectors = std::move(v);
    // ascending eigenvalue order, permuting the eigenvector columns alongside
    std::vector<std::size_t> idx(dim);
    for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
        return out.values[x] < out.values[y];
    });
    std::vector<double> vals(dim);
    std::vector<cd> vecs(dim * dim);
    for (std::size_t k = 0; k < dim; ++k) {
        vals[k] = out.values[idx[k]];
        for (std::size_t r = 0; r < dim; ++r) vecs[r * dim + k] = out.vectors[r * dim + idx[k]];
    }
    out.values = std::move(vals);
    out.vectors = std::move(vecs);
    return out;
}

DensityMatrix DensityMatrix::from_matrix(
    std::vector<cd> entries, std::size_t dim,
    std::optional<std::pair<std::size_t, std::size_t>> bipartition) {
    if (dim == 0 || entries.size() != dim * dim)
        throw input_error("density matrix: bad shape");
    if (dim > kMaxQStateDim)
        throw input_error("density matrix dimension is capped at 16");
    if (bipartition) {
        if (bipartition->first * bipartition->second != dim)
            throw input_error("density matrix: bipartition does not factor the dimension");
    }
    double herm = 0.0;
    cd tr{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
        tr += entries[i * dim + i];
        for (std::size_t j = 0; j < dim; ++j)
            herm = std::max(herm,
                            std::abs(entries[i * dim + j] -
                                     std::conj(entries[j * dim + i])));
    }
    if (herm > 1e-10) throw input_error("density matrix is not Hermitian");
    if (std::abs(tr - cd{1.0, 0.0}) > 1e-10)
        throw input_error("density matrix trace differs from 1");
    const EigResult eig = hermitian_eigensystem(entries, dim);
    if (eig.values.front() < -1e-10)
        throw input_error("density matrix has a negative eigenvalue");
    return DensityMatrix(std::move(entries), dim, std::move(bipartition));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const EigResult eig = hermitian_eigensystem(rho.entries(), rho.dim());
    double h = 0.0;
    for (double lam : eig.values) {
        if (lam > 0.0) h -= lam * std::log(lam);
    }
    return std::max(h, 0.0);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    if (!rho.bipartition())
        throw input_error("partial trace requires a declared bipartition");
    const auto [da, db] = *rho.bipartition();
    const std::size_t dk = keep == Subsystem::A ? da : db;
    const std::size_t dt = keep == Subsystem::A ? db : da;
    std::vector<cd> out(dk * dk, cd{0.0, 0.0});
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
            cd s{0.0, 0.0};
            for (std::size_t t = 0; t < dt; ++t) {
                const std::size_t r = keep == Subsystem::A ? i * db + t : t * db + i;
                const std::size_t c = keep == Subsystem::A ? j * db + t : t * db + j;
                s += rho.at(r, c);
            }
            out[i * dk + j] = s;
        }
    return DensityMatrix::from_matrix(std::move(out), dk);
}

double hashing_bound(const DensityMatrix& rho) {
    const double sa = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    const double sb = von_neumann_entropy(partial_trace(rho, Subsystem::B));
    return std::max(sa, sb) - von_neumann_entropy(rho);
}

namespace {

double binary_entropy_nats(double x) {
    double h = 0.0;
    if (x > 0.0) h -= x * std::log(x);
    if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x);
    return h;
}

} // namespace

double eof_two_qubit(const DensityMatrix& sigma) {
    if (sigma.dim() != 4 ||
        (sigma.bipartition() && *sigma.bipartition() != std::pair<std::size_t, std::size_t>{2, 2}))
        throw input_error("entanglement of formation: two-qubit states only");
    const std::size_t d = 4;

    // spin-flipped state (sy (x) sy) conj(rho) (sy (x) sy)
    static const double yy[4][4] = {{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
    std::vector<cd> flip(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            cd s{0.0, 0.0};
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l)
                    s += yy[i][k] * std::conj(sigma.at(k, l)) * yy[l][j];
            flip[i * d + j] = s;
        }

    // sqrt(rho) via the eigensystem, then the Hermitian product sqrt(rho) flip sqrt(rho)
    const EigResult eig = hermitian_eigensystem(sigma.entries(), d);
    std::vector<cd> sqrt_rho(d * d, cd{0.0, 0.0});
    for (std::size_t k = 0; k < d; ++k) {
        const double lam = std::max(eig.values[k], 0.0);
        const double root = std::sqrt(lam);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                sqrt_rho[i * d + j] +=
                    root * eig.vectors[i * d + k] * std::conj(eig.vectors[j * d + k]);
    }
    std::vector<cd> mid = matmul(matmul(sqrt_rho, flip, d), sqrt_rho, d);
    // symmetrize away rounding before the final eigensolve
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const cd avg = 0.5 * (mid[i * d + j] + std::conj(mid[j * d + i]));
            mid[i * d + j] = avg;
            mid[j * d + i] = std::conj(avg);
        }
    const EigResult meig = hermitian_eigensystem(mid, d);
    double lam[4];
    for (std::size_t k = 0; k < 4; ++k)
        lam[k] = std::sqrt(std::max(meig.values[3 - k], 0.0));   // descending
    const double concurrence = std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
    const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - concurrence * concurrence)));
    return binary_entropy_nats(x);
}

namespace {

LoccMixedResult locc_mixed_impl(const DensityMatrix& rho, double e_sigma) {
    if (!rho.bipartition())
        throw input_error("mixed-state check: rho needs a declared bipartition");
    LoccMixedResult out{};
    out.s_a = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    out.s_b = von_neumann_entropy(partial_trace(rho, Subsystem::B));
    out.s_rho = von_neumann_entropy(rho);
    out.hashing = std::max(out.s_a, out.s_b) - out.s_rho;
    out.target_entanglement = e_sigma;
    constexpr double kBoundaryTol = 1e-9;
    if (std::abs(out.hashing - e_sigma) <= kBoundaryTol)
        out.verdict = LoccMixedVerdict::Boundary;
    else if (out.hashing > e_sigma)
        out.verdict = LoccMixedVerdict::Sufficient;
    else
        out.verdict = LoccMixedVerdict::NotImplied;
    return out;
}

} // namespace

LoccMixedResult locc_mixed_check(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return locc_mixed_impl(rho, eof_two_qubit(sigma));
}

LoccMixedResult locc_mixed_check(const DensityMatrix& rho, double e_sigma) {
    if (e_sigma < 0.0) throw input_error("target entanglement must be nonnegative");
    return locc_mixed_impl(rho, e_sigma);
}

} // namespace catalysis
