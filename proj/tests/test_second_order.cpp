#include "doctest.h"

#include <cmath>
#include <random>

#include "catalysis/second_order.hpp"
#include "catalysis/spectra.hpp"
#include "oracles.hpp"

using namespace catalysis;

namespace {
ProbVec pv(std::vector<double> v) { return ProbVec::from_values(std::move(v)); }
ProbVec fig2_ini() { return pv({0.84, 0.10, 0.06}); }
ProbVec fig2_fin() { return pv({0.79, 0.19, 0.02}); }
} // namespace

TEST_CASE("inverse normal CDF") {
    CHECK(inv_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(inv_normal_cdf(0.975) == doctest::Approx(1.9599639845400542355).epsilon(1e-10));
    CHECK(inv_normal_cdf(0.75) == doctest::Approx(0.6744897501960817432).epsilon(1e-10));
    CHECK(inv_normal_cdf(0.25) == doctest::Approx(-0.6744897501960817432).epsilon(1e-10));
    CHECK_THROWS_AS(inv_normal_cdf(0.0), input_error);
    CHECK_THROWS_AS(inv_normal_cdf(1.0), input_error);

    for (int k = 1; k < 10000; ++k) {
        const double x = k / 10000.0;
        CHECK(std::abs(normal_cdf(inv_normal_cdf(x)) - x) <= 1e-10);
    }
}

TEST_CASE("sesqui-normal closed form and structure") {
    // at resonance the infimum sits at the symmetric point
    const double eps_grid[] = {0.05, 0.1, 0.3, 0.5, 0.9};
    const double closed[] = {0.12541355588642756813, 0.25132269371014806842,
                             0.77064093281513524762, 1.3489795003921634864,
                             3.2897072539029454297};
    for (int k = 0; k < 5; ++k)
        CHECK(sesqui_normal(1.0, eps_grid[k]) == doctest::Approx(closed[k]).epsilon(1e-6));

    // eps -> 0 limit collapses to zero at resonance
    CHECK(std::abs(sesqui_normal(1.0, 1e-6)) < 1e-2);

    // nu = 0 degenerates to the boundary value
    const SesquiResult r0 = sesqui_normal_ex(0.0, 0.3);
    CHECK(r0.at_boundary);
    CHECK(r0.value == doctest::Approx(-inv_normal_cdf(0.7)).epsilon(1e-10));
    CHECK_FALSE(sesqui_normal_ex(1.0, 0.3).at_boundary);

    // nondecreasing in eps for fixed nu: pointwise the objective grows with
    // eps and the feasible window shrinks
    for (double nu : {0.25, 0.7334, 1.0, 1.2786, 4.0}) {
        double prev = -1e300;
        for (double eps : {0.01, 0.03, 0.1, 0.2, 0.35, 0.5, 0.7, 0.9}) {
            const double f = sesqui_normal(nu, eps);
            CHECK(f >= prev - 1e-9);
            prev = f;
        }
    }
}

TEST_CASE("rates across the three theories") {
    const Theory noisy = Theory::unitary_noisy(3);

    // state converted to itself: unit rate, resonance parameter one
    {
        const SecondOrderRates r = rates(noisy, fig2_ini(), fig2_ini(), 0.1);
        CHECK(r.R == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.nu == doctest::Approx(1.0).epsilon(1e-12));
    }
    // the worked athermality pair
    {
        const SecondOrderRates r = rates(noisy, fig2_ini(), fig2_fin(), 0.03);
        CHECK(r.R == doctest::Approx(1.0664851919623928149).epsilon(1e-12));
        CHECK(r.nu == doctest::Approx(1.2785545304360949209).epsilon(1e-10));
        CHECK(r.Rprime == doctest::Approx(std::sqrt(0.73304978207047) * r.f_value /
                                          0.51861225578178789735)
                              .epsilon(1e-9));
    }
    // flat target spectrum: infinite resonance sentinel
    {
        const SecondOrderRates r =
            rates(Theory::entanglement(), pv({0.6, 0.25, 0.15}), pv({0.5, 0.5, 0.0}), 0.1);
        CHECK(r.nu_infinite);
        CHECK(std::isinf(r.nu));
    }
    // vanishing target quantifier is an undefined rate
    CHECK_THROWS_AS(rates(noisy, fig2_ini(), ProbVec::uniform(3), 0.1),
                    infeasible_error);
    // vanishing source quantifier with a resourceful target: no catalysis
    {
        const SecondOrderRates r = rates(noisy, ProbVec::uniform(3), fig2_fin(), 0.1);
        CHECK(r.no_catalysis);
        CHECK(r.R == 0.0);
    }

    // unitary-noisy is athermality with the uniform reference, bit for bit
    std::mt19937_64 gen(31);
    const Theory ath = Theory::athermality(GibbsSpec::uniform(4));
    const Theory un = Theory::unitary_noisy(4);
    for (int t = 0; t < 200; ++t) {
        const ProbVec p = pv(oracles::random_simplex(gen, 4));
        const ProbVec q = pv(oracles::random_simplex(gen, 4));
        double dq = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            if (q[i] > 0) dq += q[i] * std::log(4.0 * q[i]);
        if (dq <= 1e-14) continue;
        const SecondOrderRates a = rates(ath, p, q, 0.07);
        const SecondOrderRates b = rates(un, p, q, 0.07);
        CHECK(a.R == b.R);
        CHECK(a.Rprime == b.Rprime);
        CHECK(a.nu == b.nu);
        CHECK(a.f_value == b.f_value);
    }
}

TEST_CASE("two-term copy count") {
    SecondOrderRates r{};
    r.epsilon = 0.1;

    r.R = 2.0;
    r.Rprime = 0.0;
    CHECK(n_epsilon(r) == 1);

    r.Rprime = 3.0;
    CHECK(n_epsilon(r) == 9);

    r.Rprime = -0.5;   // favorable fluctuations: a single copy crosses the bar
    CHECK(n_epsilon(r) == 1);

    r.R = 0.9;
    CHECK_THROWS_AS(n_epsilon(r), infeasible_error);

    // nonincreasing in the rate gap at fixed second-order coefficient
    std::uint64_t prev = UINT64_MAX;
    for (double R : {1.05, 1.1, 1.3, 1.8, 2.5}) {
        SecondOrderRates s{};
        s.R = R;
        s.Rprime = 2.0;
        s.epsilon = 0.1;
        const std::uint64_t n = n_epsilon(s);
        CHECK(n <= prev);
        prev = n;
    }

    // scaling both variances by alpha scales the copy count by alpha,
    // up to the integer ceiling
    for (double alpha : {2.0, 3.0, 5.0}) {
        SecondOrderRates base{};
        base.R = 1.2;
        base.Rprime = 1.7;
        base.epsilon = 0.1;
        SecondOrderRates scaled = base;
        scaled.Rprime = base.Rprime * std::sqrt(alpha);   // V -> alpha V
        const double want = alpha * std::pow(base.Rprime / 0.2, 2.0);
        const std::uint64_t got = n_epsilon(scaled);
        CHECK(std::abs(double(got) - want) <= alpha + 1.0);
        CHECK(got >= n_epsilon(base));
    }
}

TEST_CASE("catalyst dimension ledger") {
    const CatalystPlan p1 = catalyst_dimension(1, 3);
    CHECK(p1.log_dC == doctest::Approx(0.0));
    REQUIRE(p1.dC_exact.has_value());
    CHECK(*p1.dC_exact == 1);

    const CatalystPlan p2 = catalyst_dimension(2, 3);
    REQUIRE(p2.dC_exact.has_value());
    CHECK(*p2.dC_exact == 6);

    const CatalystPlan p5 = catalyst_dimension(5, 3);
    REQUIRE(p5.dC_exact.has_value());
    CHECK(*p5.dC_exact == 405);
    CHECK(p5.log_dC ==
          doctest::Approx(std::log(5.0) + 4.0 * std::log(3.0)).epsilon(1e-14));

    double prev = -1.0;
    for (std::uint64_t n = 1; n <= 40; ++n) {
        const double l = catalyst_dimension(n, 3).log_dC;
        CHECK(l > prev);
        prev = l;
    }
    CHECK_FALSE(catalyst_dimension(200, 3).dC_exact.has_value());
}

TEST_CASE("dominant-term sufficiency") {
    const Theory ent = Theory::entanglement();

    // no quantifier gap: never implied
    {
        const auto s = sufficiency_check(ent, pv({0.5, 0.3, 0.2}), pv({0.4, 0.35, 0.25}),
                                         0.1, 5.0);
        CHECK_FALSE(s.sufficient);
        CHECK(s.gap < 0.0);
    }
    // vanishing source fluctuations with a positive gap: any catalyst works
    {
        const auto s = sufficiency_check(ent, ProbVec::uniform(3),
                                         pv({0.5, 0.3, 0.2}), 0.1, 0.5);
        CHECK(s.sufficient);
        CHECK(s.bound == doctest::Approx(0.0));
    }
    // unitary-noisy reports the composite catalyst size d_C1 (1 + d_S)
    {
        const auto s = sufficiency_check(Theory::unitary_noisy(3), fig2_ini(),
                                         fig2_fin(), 0.03, 2.0);
        CHECK(s.total_log_dC == doctest::Approx(2.0 + std::log(4.0)).epsilon(1e-12));
        CHECK(s.approximation == "two-term");
    }
}

TEST_CASE("dominant-term error prediction") {
    const Theory noisy = Theory::unitary_noisy(3);
    // shrinks as the catalyst grows, along the worked athermality pair
    double prev = 1.0;
    for (std::uint64_t n = 2; n <= 6; ++n) {
        const double lc = catalyst_dimension(n, 3).log_dC;
        const double eps = predicted_epsilon(noisy, fig2_ini(), fig2_fin(), lc);
        CHECK(std::isfinite(eps));
        CHECK(eps > 0.0);
        CHECK(eps < prev);
        prev = eps;
    }
    // no gap, no prediction
    CHECK(std::isnan(predicted_epsilon(noisy, fig2_fin(), fig2_ini(), 3.0)));
}
