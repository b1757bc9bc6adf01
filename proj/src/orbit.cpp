#include "duffing/orbit.hpp"
#include "duffing/elliptic.hpp"
#include "duffing/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace duffing {

double hamiltonian(double alpha, double x, double xdot) {
    return 0.5 * xdot * xdot + 0.5 * alpha * x * x + 0.25 * x * x * x * x;
}

double period_of_amplitude(double alpha, double A) {
    const double w2 = alpha + A * A;
    if (!(A > 0.0))
        throw DomainError("period_of_amplitude: amplitude must be positive");
    if (!(w2 > 0.0))
        throw DomainError("period_of_amplitude: alpha + A^2 must be positive");
    if (!(hamiltonian(alpha, A, 0.0) > 0.0))
        throw DomainError("period_of_amplitude: energy H(alpha, A) must be "
                          "positive (A^2 > -2 alpha)");
    const double m = A * A / (2.0 * w2);
    return 4.0 * complete_K(m) / std::sqrt(w2);
}

double period_amplitude_derivative(double alpha, double A) {
    const double h = 1e-6 * A;
    return (period_of_amplitude(alpha, A + h) -
            period_of_amplitude(alpha, A - h)) / (2.0 * h);
}

PeriodicOrbit orbit_from_amplitude(double alpha, double A, int n) {
    const double p = period_of_amplitude(alpha, A); // validates domain
    const double w2 = alpha + A * A;
    return PeriodicOrbit{n,
                         alpha,
                         A,
                         std::sqrt(w2),
                         A * A / (2.0 * w2),
                         p,
                         hamiltonian(alpha, A, 0.0)};
}

PeriodicOrbit solve_amplitude(const DuffingParams& params, int n) {
    if (n < 1) throw DomainError("solve_amplitude: n must be >= 1");
    if (!(params.T > 0.0)) throw DomainError("solve_amplitude: T must be > 0");
    const double alpha = params.alpha(n);
    const double target = 2.0 * params.T / double(n);

    // For alpha > 0 the period is bounded above by 2 pi / sqrt(alpha),
    // approached as A -> 0; longer target periods have no root.
    if (alpha > 0.0 && target >= 2.0 * std::numbers::pi / std::sqrt(alpha)) {
        std::ostringstream msg;
        msg << "solve_amplitude: no admissible amplitude for n=" << n
            << ", T=" << params.T << "; requires n > T/pi * sqrt(alpha) = "
            << params.T / std::numbers::pi * std::sqrt(alpha);
        throw NoRootError(msg.str());
    }

    const double p_star = 4.0 * complete_K(0.5);
    const double A_min =
        alpha < 0.0 ? std::sqrt(-2.0 * alpha) * (1.0 + 1e-12) : 0.0;

    // Scaling guess from the pure-cubic limit p = p*/A, then bracket by
    // expansion; the period is strictly decreasing in A.
    double A_guess = std::max(double(n) * p_star / (2.0 * params.T),
                              A_min * (1.0 + 1e-6) + 1e-12);
    auto g = [&](double A) { return period_of_amplitude(alpha, A) - target; };

    double lo = A_guess, hi = A_guess;
    double g_lo = g(lo), g_hi = g_lo;
    for (int i = 0; i < 200 && g_lo < 0.0; ++i) { // period too small: go down
        hi = lo;
        g_hi = g_lo;
        lo = std::max(A_min + 0.25 * (lo - A_min), A_min * (1 + 1e-14));
        g_lo = g(lo);
    }
    for (int i = 0; i < 200 && g_hi > 0.0; ++i) { // period too large: go up
        lo = hi;
        g_lo = g_hi;
        hi *= 1.5;
        g_hi = g(hi);
    }
    if (!(g_lo >= 0.0 && g_hi <= 0.0)) {
        std::ostringstream msg;
        msg << "solve_amplitude: bracketing failed for n=" << n
            << " T=" << params.T << " (A in [" << lo << ", " << hi
            << "], g = [" << g_lo << ", " << g_hi << "])";
        throw ConvergenceError(msg.str());
    }

    // Safeguarded Newton with the bisection bracket [lo, hi].
    double A = 0.5 * (lo + hi);
    const double tol = 1e-12 * target;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const double gA = g(A);
        if (gA > 0.0) lo = A; else hi = A;
        if (std::abs(gA) < tol) {
            converged = true;
            break;
        }
        const double dp = period_amplitude_derivative(alpha, A);
        double A_next = A - gA / dp;
        if (!(A_next > lo && A_next < hi)) A_next = 0.5 * (lo + hi);
        if (A_next == A) {
            converged = std::abs(gA) < 16.0 * tol;
            break;
        }
        A = A_next;
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "solve_amplitude: root iteration did not reach |g| < " << tol
            << " for n=" << n << " T=" << params.T << " (bracket [" << lo
            << ", " << hi << "])";
        throw ConvergenceError(msg.str());
    }
    return orbit_from_amplitude(alpha, A, n);
}

std::pair<double, double> orbit_state(const PeriodicOrbit& orbit, double t) {
    const JacobiValues j = jacobi(orbit.omega * t, orbit.m);
    return {orbit.amplitude * j.cn,
            -orbit.amplitude * orbit.omega * j.sn * j.dn};
}

} // namespace duffing
