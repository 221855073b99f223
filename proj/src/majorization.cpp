#include "catalysis/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace catalysis {

namespace {

std::vector<double> sorted_desc(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

// Indices of v in descending value order, ties by original position.
std::vector<std::size_t> desc_order(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return idx;
}

// max_k (sum_k q_desc - sum_k p_desc)_+ : the optimal flattening error.
double deficiency(std::span<const double> p_desc, std::span<const double> q_desc) {
    double cp = 0.0, cq = 0.0, worst = 0.0;
    const std::size_t d = std::max(p_desc.size(), q_desc.size());
    for (std::size_t k = 0; k < d; ++k) {
        cp += k < p_desc.size() ? p_desc[k] : 0.0;
        cq += k < q_desc.size() ? q_desc[k] : 0.0;
        worst = std::max(worst, cq - cp);
    }
    return std::max(worst, 0.0);
}

// Flattest state at trace distance delta from sorted q: cap the head so that
// exactly delta is removed, raise the tail floor so exactly delta is added.
std::vector<double> flattest_sorted(const std::vector<double>& q_desc, double delta) {
    std::vector<double> out = q_desc;
    if (delta <= 1e-15) return out;
    const std::size_t d = q_desc.size();

    // cap T: sum (q_i - T)_+ = delta, found by scanning the sorted breakpoints
    double T = q_desc[0];
    {
        double removed = 0.0;
        for (std::size_t k = 1; k <= d; ++k) {
            const double next = k < d ? q_desc[k] : 0.0;
            const double step = static_cast<double>(k) * (q_desc[k - 1] - next);
            if (removed + step >= delta) {
                T = q_desc[k - 1] - (delta - removed) / static_cast<double>(k);
                removed = delta;
                break;
            }
            removed += step;
            T = next;
        }
    }
    // floor B: sum (B - min(q_i, T))_+ = delta
    double B = 0.0;
    {
        double added = 0.0;
        for (std::size_t k = 1; k <= d; ++k) {
            const double cur = std::min(q_desc[d - k], T);
            const double next = k < d ? std::min(q_desc[d - k - 1], T) : T;
            const double step = static_cast<double>(k) * (next - cur);
            if (added + step >= delta) {
                B = cur + (delta - added) / static_cast<double>(k);
                break;
            }
            added += step;
            B = next;
        }
    }
    for (double& x : out) x = std::clamp(x, B, T);
    return out;
}

// Closest state (from above) to sorted q that majorizes any spectrum within
// budget: add delta to the top entry, drain delta off the smallest entries.
std::vector<double> steepest_sorted(const std::vector<double>& q_desc, double delta) {
    std::vector<double> out = q_desc;
    if (delta <= 1e-15) return out;
    out[0] += delta;
    double need = delta;
    for (std::size_t i = out.size(); need > 1e-18 && i-- > 1;) {
        const double take = std::min(out[i], need);
        out[i] -= take;
        need -= take;
    }
    return out;
}

} // namespace

double LorenzCurve::value_at(double x) const {
    if (points.empty()) return 0.0;
    if (x <= points.front().first) return points.front().second;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (x <= points[i].first) {
            const auto& [x0, y0] = points[i - 1];
            const auto& [x1, y1] = points[i];
            if (x1 - x0 < 1e-300) return std::max(y0, y1);
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    }
    return points.back().second;
}

LorenzCurve lorenz_curve(const ProbVec& p, const GibbsSpec& gamma) {
    if (p.dim() != gamma.dim())
        throw input_error("Lorenz curve: dimension mismatch");
    std::vector<std::size_t> idx(p.dim());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return p[a] / gamma[a] > p[b] / gamma[b];
    });
    LorenzCurve c;
    c.points.reserve(p.dim() + 1);
    c.points.emplace_back(0.0, 0.0);
    double x = 0.0, y = 0.0;
    for (std::size_t i : idx) {
        x += gamma[i];
        y += p[i];
        c.points.emplace_back(x, y);
    }
    c.points.back() = {1.0, 1.0};   // absorb accumulated rounding
    return c;
}

namespace detail {

bool majorizes_span(std::span<const double> p, std::span<const double> q, double tol) {
    const auto ps = sorted_desc(p);
    const auto qs = sorted_desc(q);
    double cp = 0.0, cq = 0.0;
    const std::size_t d = std::max(ps.size(), qs.size());
    for (std::size_t k = 0; k < d; ++k) {
        cp += k < ps.size() ? ps[k] : 0.0;
        cq += k < qs.size() ? qs[k] : 0.0;
        if (cp < cq - tol) return false;
    }
    return true;
}

ApproxMajorization optimal_chi_span(std::span<const double> p,
                                    std::span<const double> q, bool chi_majorizes_p) {
    const auto ps = sorted_desc(p);
    const auto qs = sorted_desc(q);
    if (ps.size() != qs.size())
        throw input_error("optimal chi: spectra must have equal length");
    const double err = chi_majorizes_p ? deficiency(qs, ps) : deficiency(ps, qs);
    const std::vector<double> chi_sorted =
        chi_majorizes_p ? steepest_sorted(qs, err) : flattest_sorted(qs, err);
    // place the k-th largest chi entry where q's k-th largest entry sits
    const auto order = desc_order(q);
    std::vector<double> chi(q.size());
    for (std::size_t k = 0; k < order.size(); ++k) chi[order[k]] = chi_sorted[k];
    return {std::move(chi), err};
}

} // namespace detail

bool majorizes(const ProbVec& p, const ProbVec& q, double tol) {
    return detail::majorizes_span(p.probs(), q.probs(), tol);
}

bool thermo_majorizes(const ProbVec& p, const ProbVec& q, const GibbsSpec& gamma,
                      double tol) {
    if (p.dim() != q.dim() || p.dim() != gamma.dim())
        throw input_error("thermo-majorization: dimension mismatch");
    const LorenzCurve cp = lorenz_curve(p, gamma);
    const LorenzCurve cq = lorenz_curve(q, gamma);
    // piecewise-linear curves: dominance at the union of breakpoints suffices
    for (const auto& [x, y] : cq.points)
        if (cp.value_at(x) < y - tol) return false;
    for (const auto& [x, y] : cp.points)
        if (y < cq.value_at(x) - tol) return false;
    return true;
}

namespace {

std::pair<std::vector<double>, std::vector<double>> pad_to_common(const ProbVec& p,
                                                                  const ProbVec& q) {
    std::vector<double> a = p.probs(), b = q.probs();
    const std::size_t d = std::max(a.size(), b.size());
    a.resize(d, 0.0);
    b.resize(d, 0.0);
    return {std::move(a), std::move(b)};
}

} // namespace

ApproxMajorization optimal_chi(const ProbVec& p, const ProbVec& q) {
    auto [a, b] = pad_to_common(p, q);
    return detail::optimal_chi_span(a, b, /*chi_majorizes_p=*/false);
}

ApproxMajorization optimal_chi_majorizing(const ProbVec& p, const ProbVec& q) {
    auto [a, b] = pad_to_common(p, q);
    return detail::optimal_chi_span(a, b, /*chi_majorizes_p=*/true);
}

// ---------------------------------------------------------------------------
// lp_oracle: min (1/2)||x - q||_1 over x in conv{permutations of p}, solved as
//   min (1/2) sum(u + v)  s.t.  sum_s lambda_s (P_s p) - u + v = q, sum lambda = 1
// with a dense tableau simplex under Bland's rule.
// ---------------------------------------------------------------------------

namespace {

class Simplex {
public:
    // minimize c.z subject to A z = b, z >= 0; A is m x n, b >= 0 assumed
    // feasible with the provided starting basis.
    Simplex(std::vector<std::vector<double>> a, std::vector<double> b,
            std::vector<double> c, std::vector<std::size_t> basis)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), basis_(std::move(basis)),
          m_(a_.size()), n_(a_.empty() ? 0 : a_.front().size()) {}

    double solve() {
        constexpr double kEps = 1e-11;
        // reduce the tableau to the starting basis
        to_canonical_form();
        for (std::size_t iter = 0; iter < 100000; ++iter) {
            // Bland: entering = smallest index with negative reduced cost
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (reduced_cost_[j] < -kEps) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_) {
                double obj = 0.0;
                for (std::size_t r = 0; r < m_; ++r) obj += c_[basis_[r]] * b_[r];
                return obj;
            }
            // ratio test; ties resolved by smallest basis index (Bland)
            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                if (a_[r][enter] > kEps) {
                    const double ratio = b_[r] / a_[r][enter];
                    if (ratio < best - kEps ||
                        (ratio < best + kEps && (leave == m_ || basis_[r] < basis_[leave]))) {
                        best = ratio;
                        leave = r;
                    }
                }
            }
            if (leave == m_) throw infeasible_error("lp oracle: unbounded program");
            pivot(leave, enter);
        }
        throw infeasible_error("lp oracle: iteration cap reached");
    }

private:
    void to_canonical_form() {
        for (std::size_t r = 0; r < m_; ++r) pivot_row_only(r, basis_[r]);
        reduced_cost_ = c_;
        for (std::size_t r = 0; r < m_; ++r) {
            const double cb = c_[basis_[r]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) reduced_cost_[j] -= cb * a_[r][j];
        }
    }

    void pivot_row_only(std::size_t row, std::size_t col) {
        const double piv = a_[row][col];
        for (std::size_t j = 0; j < n_; ++j) a_[row][j] /= piv;
        b_[row] /= piv;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == row) continue;
            const double f = a_[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) a_[r][j] -= f * a_[row][j];
            b_[r] -= f * b_[row];
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        pivot_row_only(row, col);
        const double f = reduced_cost_[col];
        if (f != 0.0)
            for (std::size_t j = 0; j < n_; ++j) reduced_cost_[j] -= f * a_[row][j];
        basis_[row] = col;
        if (b_[row] < 0.0) b_[row] = 0.0;   // clamp pivot round-off
    }

    std::vector<std::vector<double>> a_;
    std::vector<double> b_, c_;
    std::vector<std::size_t> basis_;
    std::size_t m_, n_;
    std::vector<double> reduced_cost_;
};

} // namespace

double lp_oracle(const ProbVec& p, const ProbVec& q) {
    if (p.dim() != q.dim()) throw input_error("lp oracle: dimension mismatch");
    const std::size_t d = p.dim();
    if (d > 6) throw size_cap_error("lp oracle supports dimension <= 6");

    // vertex columns: all distinct permutations of p, lexicographic order
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::vector<double>> cols;
    {
        std::vector<std::size_t> sorted_perm = perm;
        std::sort(sorted_perm.begin(), sorted_perm.end());
        do {
            std::vector<double> col(d);
            for (std::size_t i = 0; i < d; ++i) col[i] = p[sorted_perm[i]];
            cols.push_back(std::move(col));
        } while (std::next_permutation(sorted_perm.begin(), sorted_perm.end()));
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    }
    const std::size_t nperm = cols.size();
    const std::size_t nvar = nperm + 2 * d;     // lambda, u, v
    const std::size_t m = d + 1;

    std::vector<std::vector<double>> a(m, std::vector<double>(nvar, 0.0));
    std::vector<double> b(m, 0.0), c(nvar, 0.0);
    for (std::size_t s = 0; s < nperm; ++s) {
        for (std::size_t i = 0; i < d; ++i) a[i][s] = cols[s][i];
        a[d][s] = 1.0;
    }
    for (std::size_t i = 0; i < d; ++i) {
        a[i][nperm + i] = -1.0;       // u_i
        a[i][nperm + d + i] = 1.0;    // v_i
        c[nperm + i] = 0.5;
        c[nperm + d + i] = 0.5;
        b[i] = q[i];
    }
    b[d] = 1.0;

    // starting basis: the identity permutation column plus u_i or v_i per row
    std::size_t id_col = 0;
    {
        std::vector<double> ident(d);
        for (std::size_t i = 0; i < d; ++i) ident[i] = p[i];
        for (std::size_t s = 0; s < nperm; ++s)
            if (cols[s] == ident) {
                id_col = s;
                break;
            }
    }
    // starting basis: lambda_id = 1 plus, per row, u_i or v_i matching the
    // sign of p_i - q_i; canonicalization derives the basic values from (A, b)
    std::vector<std::size_t> basis(m);
    basis[d] = id_col;
    for (std::size_t i = 0; i < d; ++i)
        basis[i] = p[i] - q[i] >= 0.0 ? nperm + i : nperm + d + i;

    Simplex lp(std::move(a), std::move(b), std::move(c), std::move(basis));
    return lp.solve();
}

// ---------------------------------------------------------------------------
// T-transform construction.
// Primary: depth-first search fixing one position per step, pruned by the
// exact completability criterion (remaining values must majorize remaining
// targets). Fallback for the rare arrangements with no one-fix-per-step
// schedule: the classical sorted-frame construction plus relabeling swaps.
// ---------------------------------------------------------------------------

namespace {

constexpr double kTTol = 1e-12;

bool multiset_majorizes(std::vector<double> a, std::vector<double> b, double tol = 1e-9) {
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    double ca = 0.0, cb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ca += a[k];
        cb += b[k];
        if (ca < cb - tol) return false;
    }
    return true;
}

struct TSearch {
    const std::vector<double>& target;
    std::vector<double> a;
    std::vector<TTransformStep> steps;
    std::size_t nodes = 0;

    bool solve(std::vector<std::size_t> active) {
        if (++nodes > 200000) return false;   // give up; caller falls back
        if (active.size() <= 1) {
            return active.empty() || std::abs(a[active[0]] - target[active[0]]) < 1e-9;
        }
        // retire positions already on target (no step needed)
        for (std::size_t idx = 0; idx < active.size(); ++idx) {
            const std::size_t k = active[idx];
            if (std::abs(a[k] - target[k]) <= kTTol) {
                std::vector<std::size_t> rest = active;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
                return solve(std::move(rest));
            }
        }
        // serve the largest remaining target first, branching over donors
        std::vector<std::size_t> order = active;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return target[x] > target[y];
        });
        for (std::size_t k : order) {
            const double qk = target[k];
            std::vector<std::size_t> donors;
            for (std::size_t j : active) {
                if (j == k) continue;
                const double lo = std::min(a[j], a[k]) - kTTol;
                const double hi = std::max(a[j], a[k]) + kTTol;
                if (qk >= lo && qk <= hi) donors.push_back(j);
            }
            std::stable_sort(donors.begin(), donors.end(),
                             [&](std::size_t x, std::size_t y) { return a[x] > a[y]; });
            for (std::size_t j : donors) {
                const double new_j = a[j] + a[k] - qk;
                std::vector<double> rest_vals;
                std::vector<double> rest_tgts;
                for (std::size_t x : active) {
                    if (x == k) continue;
                    rest_vals.push_back(x == j ? new_j : a[x]);
                    rest_tgts.push_back(target[x]);
                }
                if (!multiset_majorizes(rest_vals, rest_tgts)) continue;

                const double old_j = a[j], old_k = a[k];
                const double denom = a[j] - a[k];
                double t = std::abs(denom) < kTTol ? 0.0 : (qk - a[k]) / denom;
                t = std::clamp(t, 0.0, 1.0);
                a[j] = new_j;
                a[k] = qk;
                steps.push_back({j, k, t});
                std::vector<std::size_t> rest;
                for (std::size_t x : active)
                    if (x != k) rest.push_back(x);
                if (solve(std::move(rest))) return true;
                a[j] = old_j;
                a[k] = old_k;
                steps.pop_back();
            }
        }
        return false;
    }
};

// Classical construction on descending-sorted vectors; at most d-1 steps.
std::vector<TTransformStep> hlp_sorted(std::vector<double> x,
                                       const std::vector<double>& y) {
    std::vector<TTransformStep> steps;
    const std::size_t d = x.size();
    for (std::size_t guard = 0; guard < d; ++guard) {
        std::size_t j = d;
        for (std::size_t k = d; k-- > 0;)
            if (x[k] > y[k] + kTTol) {
                j = k;
                break;
            }
        if (j == d) break;
        std::size_t k = d;
        for (std::size_t m = j + 1; m < d; ++m)
            if (x[m] < y[m] - kTTol) {
                k = m;
                break;
            }
        if (k == d) break;
        const double delta = std::min(x[j] - y[j], y[k] - x[k]);
        const double t = delta / (x[j] - x[k]);
        const double nj = x[j] - delta, nk = x[k] + delta;
        x[j] = nj;
        x[k] = nk;
        steps.push_back({j, k, std::clamp(t, 0.0, 1.0)});
    }
    return steps;
}

} // namespace

TTransformSeq ttransform_sequence(const ProbVec& p, const ProbVec& q) {
    if (p.dim() != q.dim())
        throw input_error("ttransform sequence: dimension mismatch");
    if (!majorizes(p, q))
        throw infeasible_error("ttransform sequence: p does not majorize q");

    const std::size_t d = p.dim();
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), std::size_t{0});

    TSearch search{q.probs(), p.probs(), {}};
    if (search.solve(all)) return {std::move(search.steps)};

    // Fallback: sorted-frame construction, then transpositions aligning to q.
    const auto p_order = desc_order(p.probs());
    std::vector<double> x = p.sorted_desc();
    std::vector<double> y = q.sorted_desc();
    std::vector<TTransformStep> steps;
    for (const auto& s : hlp_sorted(std::move(x), y))
        steps.push_back({p_order[s.i], p_order[s.j], s.t});

    // current arrangement holds q's k-th largest value at position p_order[k];
    // route each value to q's own descending slots with swap steps (t = 1)
    const auto q_order = desc_order(q.probs());
    std::vector<std::size_t> pos_of(d);   // where q's k-th largest currently sits
    for (std::size_t k = 0; k < d; ++k) pos_of[k] = p_order[k];
    std::vector<std::size_t> rank_at(d);  // inverse map: position -> rank held
    for (std::size_t k = 0; k < d; ++k) rank_at[pos_of[k]] = k;
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t want = q_order[k];
        const std::size_t cur = pos_of[k];
        if (cur == want) continue;
        steps.push_back({cur, want, 1.0});
        const std::size_t other = rank_at[want];
        std::swap(pos_of[k], pos_of[other]);
        std::swap(rank_at[cur], rank_at[want]);
    }
    return {std::move(steps)};
}

ProbVec apply_ttransforms(const TTransformSeq& seq, const ProbVec& p) {
    std::vector<double> a = p.probs();
    for (const auto& s : seq.steps) {
        if (s.i >= a.size() || s.j >= a.size())
            throw input_error("ttransform step index out of range");
        if (s.t < -1e-12 || s.t > 1.0 + 1e-12)
            throw input_error("ttransform mixing weight outside [0,1]");
        const double t = std::clamp(s.t, 0.0, 1.0);
        const double ni = (1.0 - t) * a[s.i] + t * a[s.j];
        const double nj = t * a[s.i] + (1.0 - t) * a[s.j];
        a[s.i] = ni;
        a[s.j] = nj;
    }
    return ProbVec::from_values(std::move(a));
}

} // namespace catalysis
