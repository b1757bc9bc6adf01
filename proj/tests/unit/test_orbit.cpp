#include <doctest.h>

#include "duffing/elliptic.hpp"
#include "duffing/errors.hpp"
#include "duffing/orbit.hpp"
#include "duffing/quadrature.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace duffing;

TEST_SUITE_BEGIN("orbit");

TEST_CASE("hamiltonian basics") {
    CHECK(hamiltonian(0.7, 0.0, 0.0) == 0.0);
    CHECK(hamiltonian(-1.0, 2.0, 0.0) == doctest::Approx(-2.0 + 4.0));
    CHECK(hamiltonian(0.0, 1.0, 2.0) == doctest::Approx(2.0 + 0.25));
}

TEST_CASE("period at the reference points") {
    const double p_star = 4.0 * complete_K(0.5);
    CHECK(period_of_amplitude(0.0, 1.0) ==
          doctest::Approx(7.4162987092054877).epsilon(1e-13));
    // pure-cubic scaling p = p*/A
    for (double A : {0.5, 2.0, 17.0, 135.97}) {
        CHECK(period_of_amplitude(0.0, A) ==
              doctest::Approx(p_star / A).epsilon(1e-13));
    }
    // T=0.6, n=1 of the paper: p(-1, A_1) = 1.2
    CHECK(period_of_amplitude(-1.0, 6.29721145) ==
          doctest::Approx(1.2).epsilon(1e-8));
}

TEST_CASE("period domain errors") {
    CHECK_THROWS_AS((void)period_of_amplitude(-1.0, 1.0), DomainError);   // H < 0
    CHECK_THROWS_AS((void)period_of_amplitude(-1.0, 1.4142), DomainError); // H ~ 0-
    CHECK_THROWS_AS((void)period_of_amplitude(0.0, -1.0), DomainError);
}

TEST_CASE("period matches the quadrature oracle for random (alpha, A)") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ua(-2.0, 2.0);
    std::uniform_real_distribution<double> uA(0.1, 30.0);
    int done = 0;
    while (done < 20) {
        const double alpha = ua(rng);
        const double A = uA(rng);
        if (!(alpha + A * A > 0.0) || !(hamiltonian(alpha, A, 0.0) > 0.0))
            continue;
        CAPTURE(alpha);
        CAPTURE(A);
        const double p = period_of_amplitude(alpha, A);
        CHECK(std::abs(p - oracles::period_quadrature(alpha, A)) < 1e-9 * p);
        ++done;
    }
}

TEST_CASE("period is strictly decreasing in A") {
    for (double alpha : {-1.0, 0.0, 1.0}) {
        double prev = 1e300;
        for (double A = 1.6; A < 40.0; A *= 1.17) {
            const double p = period_of_amplitude(alpha, A);
            CHECK(p < prev);
            prev = p;
        }
    }
}

TEST_CASE("solve_amplitude reproduces the paper's T=0.6 values") {
    const DuffingParams params{0.0, 1.0, 0.6};
    const PeriodicOrbit o1 = solve_amplitude(params, 1);
    CHECK(o1.amplitude == doctest::Approx(6.29721145148).epsilon(1e-10));
    const PeriodicOrbit o2 = solve_amplitude(params, 2);
    CHECK(o2.amplitude == doctest::Approx(12.30144591494).epsilon(1e-10));
}

TEST_CASE("solve_amplitude at the large-n paper points") {
    CHECK(solve_amplitude({0.0, 1.0, 0.3}, 11).amplitude ==
          doctest::Approx(135.97083402978303460).epsilon(1e-12));
    const double Tc1 = std::sqrt(1.5) * std::numbers::pi + 0.1;
    CHECK(solve_amplitude({0.0, 1.0, Tc1}, 33).amplitude ==
          doctest::Approx(31.021414799836585).epsilon(1e-12));
}

TEST_CASE("orbit invariants hold after solving") {
    const PeriodicOrbit o = solve_amplitude({0.0, 1.0, 0.9}, 28);
    CHECK(o.omega * o.omega ==
          doctest::Approx(o.alpha + o.amplitude * o.amplitude).epsilon(1e-14));
    CHECK(o.m == doctest::Approx(o.amplitude * o.amplitude /
                                 (2.0 * (o.alpha + o.amplitude * o.amplitude)))
                     .epsilon(1e-14));
    CHECK(o.period * o.omega ==
          doctest::Approx(4.0 * complete_K(o.m)).epsilon(1e-13));
    CHECK(o.energy > 0.0);
}

TEST_CASE("round trip period_of_amplitude(solve_amplitude(...))") {
    for (int n : {1, 2, 7, 12, 33}) {
        for (double T : {0.3, 0.9, 2.5}) {
            const DuffingParams params{0.0, 1.0, T};
            const PeriodicOrbit o = solve_amplitude(params, n);
            CAPTURE(n);
            CAPTURE(T);
            CHECK(period_of_amplitude(o.alpha, o.amplitude) ==
                  doctest::Approx(2.0 * T / n).epsilon(1e-10));
        }
    }
}

TEST_CASE("no-root error when n violates the alpha > 0 constraint") {
    // alpha = 1 (even n), T = 40: needs n > T/pi = 12.7
    CHECK_THROWS_AS((void)solve_amplitude({0.0, 1.0, 40.0}, 12), NoRootError);
    CHECK_NOTHROW((void)solve_amplitude({0.0, 1.0, 40.0}, 14));
}

TEST_CASE("scaling law at alpha = 0: doubling n halves period, doubles A") {
    const DuffingParams params{0.0, 0.0, 0.7}; // b = 0 so alpha = 0
    // b = 0 gives alpha = 0 exactly; compare n and 2n
    const PeriodicOrbit a = solve_amplitude(params, 3);
    const PeriodicOrbit b = solve_amplitude(params, 6);
    CHECK(b.amplitude == doctest::Approx(2.0 * a.amplitude).epsilon(1e-10));
    CHECK(b.period == doctest::Approx(0.5 * a.period).epsilon(1e-10));
}

TEST_CASE("orbit_state endpoints and energy") {
    const PeriodicOrbit o = solve_amplitude({0.0, 1.0, 0.6}, 1);
    const auto [x0, v0] = orbit_state(o, 0.0);
    CHECK(x0 == doctest::Approx(o.amplitude).epsilon(1e-14));
    CHECK(std::abs(v0) < 1e-12);
    const auto [xh, vh] = orbit_state(o, 0.5 * o.period);
    CHECK(xh == doctest::Approx(-o.amplitude).epsilon(1e-12));
    CHECK(std::abs(vh) < 1e-8 * o.amplitude);
    for (double t = 0.0; t < 3.0 * o.period; t += 0.1) {
        const auto [x, v] = orbit_state(o, t);
        CHECK(hamiltonian(o.alpha, x, v) ==
              doctest::Approx(o.energy).epsilon(1e-10));
    }
}

TEST_CASE("orbit_state satisfies the ODE to finite-difference accuracy") {
    for (int n : {1, 2, 11}) {
        const PeriodicOrbit o = solve_amplitude({0.0, 1.0, 0.3}, n);
        const double delta = 1.1e-5 / o.omega;
        const double A3 = std::pow(o.amplitude, 3.0);
        for (double t = 0.05; t < o.period; t += o.period / 17.0) {
            const auto [x, v] = orbit_state(o, t);
            const double vp = orbit_state(o, t + delta).second;
            const double vm = orbit_state(o, t - delta).second;
            const double xdd = (vp - vm) / (2.0 * delta);
            CAPTURE(n);
            CAPTURE(t);
            CHECK(std::abs(xdd + o.alpha * x + x * x * x) < 1e-8 * A3);
        }
    }
}

TEST_CASE("energy identity: integral of xdot^2 over half period = p*/6") {
    // quadrature along the closed-form orbit at alpha = 0, A = 1
    const double p_star = 4.0 * complete_K(0.5);
    const GaussLegendreRule gl(24);
    const double integral = gl.integrate(
        [](double t) {
            const auto [sn, dn] = sn_dn(t, 0.5);
            const double v = -sn * dn;
            return v * v;
        },
        0.0, 0.5 * p_star, 16);
    CHECK(integral == doctest::Approx(p_star / 6.0).epsilon(1e-9));
}

TEST_CASE("hamiltonian is conserved along an independently integrated orbit") {
    // RK4 oracle on the undelayed equation, fine fixed step
    const double alpha = -1.0;
    const double A = 3.7;
    const double H0 = hamiltonian(alpha, A, 0.0);
    auto [x, v] = oracles::duffing_rk4(alpha, A, 0.0, 25.0, 2'000'000);
    CHECK(hamiltonian(alpha, x, v) == doctest::Approx(H0).epsilon(1e-9));
}

TEST_SUITE_END();
