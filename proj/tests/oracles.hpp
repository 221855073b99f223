// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracles {

// Long-double compensated summation route for entropic quantities.
inline double entropy_ld(const std::vector<double>& p) {
    long double h = 0.0L;
    for (double x : p)
        if (x > 0.0) h -= static_cast<long double>(x) * std::log(static_cast<long double>(x));
    return static_cast<double>(h);
}

inline double entropy_variance_ld(const std::vector<double>& p) {
    const long double h = -[&] {
        long double s = 0.0L;
        for (double x : p)
            if (x > 0.0) s += static_cast<long double>(x) * std::log(static_cast<long double>(x));
        return s;
    }();
    long double v = 0.0L;
    for (double x : p) {
        if (x > 0.0) {
            const long double t = std::log(static_cast<long double>(x)) + h;
            v += static_cast<long double>(x) * t * t;
        }
    }
    return static_cast<double>(v);
}

inline double relative_entropy_ld(const std::vector<double>& p,
                                  const std::vector<double>& g) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0)
            s += static_cast<long double>(p[i]) *
                 (std::log(static_cast<long double>(p[i])) -
                  std::log(static_cast<long double>(g[i])));
    return static_cast<double>(s);
}

// Deterministic random state generation for tests.
inline std::vector<double> random_simplex(std::mt19937_64& gen, std::size_t d) {
    std::vector<double> v(d);
    double s = 0.0;
    for (double& x : v) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        x = -std::log(1.0 - u);
        s += x;
    }
    for (double& x : v) x /= s;
    return v;
}

// Random q majorized by p: convex mixture of random permutations of p.
inline std::vector<double> random_majorized(std::mt19937_64& gen,
                                            const std::vector<double>& p,
                                            std::size_t mixtures = 3) {
    const std::size_t d = p.size();
    std::vector<double> w = random_simplex(gen, mixtures);
    std::vector<double> q(d, 0.0);
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    for (std::size_t m = 0; m < mixtures; ++m) {
        for (std::size_t i = d; i > 1; --i) std::swap(idx[i - 1], idx[gen() % i]);
        for (std::size_t i = 0; i < d; ++i) q[i] += w[m] * p[idx[i]];
    }
    return q;
}

// Nested-loop marginal over a row-major d^n product, keeping `keep` factors.
inline std::vector<double> loop_marginal(const std::vector<double>& x, std::size_t d,
                                         std::size_t n, const std::vector<std::size_t>& keep) {
    std::size_t out_size = 1;
    for (std::size_t k = 0; k < keep.size(); ++k) out_size *= d;
    std::vector<double> out(std::max<std::size_t>(out_size, 1), 0.0);
    std::vector<std::size_t> digits(n);
    for (std::size_t flat = 0; flat < x.size(); ++flat) {
        std::size_t rem = flat;
        for (std::size_t f = n; f-- > 0;) {
            digits[f] = rem % d;
            rem /= d;
        }
        std::size_t o = 0;
        for (std::size_t k : keep) o = o * d + digits[k];
        out[o] += x[flat];
    }
    return out;
}

// Literal index-permuting assembly of the post-protocol joint state: for each
// branch i it walks every (s, c, former-s) tuple and places probability mass
// by explicit swaps, with no shared code with the library assembly.
inline std::vector<double> loop_assemble(const std::vector<double>& p,
                                         const std::vector<double>& chi, std::size_t d,
                                         std::size_t n) {
    std::size_t sc = 1;
    for (std::size_t k = 0; k < n; ++k) sc *= d;
    std::vector<double> joint(sc * n, 0.0);
    std::vector<std::size_t> digits(n);
    for (std::size_t i = 1; i <= n; ++i) {
        // branch weight 1/n: state rho^(i-1) (x) chi^{keep i..n} arranged with
        // S <-> slot i swapped (slot numbering over the n-tuple, 1-based)
        for (std::size_t flat = 0; flat < sc; ++flat) {
            std::size_t rem = flat;
            for (std::size_t f = n; f-- > 0;) {
                digits[f] = rem % d;
                rem /= d;
            }
            // pre-swap tuple: positions 0..i-2 hold rho copies, positions
            // i-1..n-1 hold chi copies i..n (marginalized over 1..i-1)
            double v = 1.0;
            for (std::size_t f = 0; f + 1 < i; ++f) v *= p[digits[f]];
            // chi tail value: marginal over the first i-1 copies, evaluated at
            // digits[i-1..n-1]
            double tail = 0.0;
            std::size_t head = 1;
            for (std::size_t k = 0; k + 1 < i; ++k) head *= d;
            std::size_t tail_idx = 0;
            for (std::size_t f = i - 1; f < n; ++f) tail_idx = tail_idx * d + digits[f];
            std::size_t tail_sz = 1;
            for (std::size_t f = i - 1; f < n; ++f) tail_sz *= d;
            for (std::size_t h = 0; h < head; ++h) tail += chi[h * tail_sz + tail_idx];
            v *= tail;
            // swap positions 0 (S) and i-1, then emit at branch i
            std::vector<std::size_t> tup(digits);
            std::swap(tup[0], tup[i - 1]);
            std::size_t out_flat = 0;
            for (std::size_t f = 0; f < n; ++f) out_flat = out_flat * d + tup[f];
            joint[out_flat * n + (i - 1)] += v / static_cast<double>(n);
        }
    }
    return joint;
}

// Random pure two-qubit ket and its density matrix.
inline std::vector<std::complex<double>> random_ket(std::mt19937_64& gen, std::size_t d) {
    std::vector<std::complex<double>> v(d);
    double norm = 0.0;
    auto u = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (auto& a : v) {
        // Box-Muller pairs for real and imaginary parts
        const double r1 = std::sqrt(-2.0 * std::log(1.0 - u()));
        const double t1 = 2.0 * 3.14159265358979323846 * u();
        a = {r1 * std::cos(t1), r1 * std::sin(t1)};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : v) a /= norm;
    return v;
}

inline std::vector<std::complex<double>> ket_to_rho(
    const std::vector<std::complex<double>>& psi) {
    const std::size_t d = psi.size();
    std::vector<std::complex<double>> rho(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) rho[i * d + j] = psi[i] * std::conj(psi[j]);
    return rho;
}

// Reduced spectrum of a pure bipartite ket by direct amplitude contraction.
inline std::vector<std::complex<double>> reduced_a_from_ket(
    const std::vector<std::complex<double>>& psi, std::size_t da, std::size_t db) {
    std::vector<std::complex<double>> rho_a(da * da, {0.0, 0.0});
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t b = 0; b < db; ++b)
                rho_a[i * da + j] += psi[i * db + b] * std::conj(psi[j * db + b]);
    return rho_a;
}

} // namespace oracles
