#pragma once
#include <utility>

namespace duffing {

/// Coefficients of the delayed Duffing oscillator
///   x'' + a x + b x(t - T) + x^3 = 0.
struct DuffingParams {
    double a = 0.0; ///< instantaneous linear stiffness
    double b = 0.0; ///< delayed-term coefficient
    double T = 1.0; ///< delay, > 0

    /// Effective stiffness a + (-1)^n b of the orbit family with index n.
    double alpha(int n) const { return a + ((n % 2 == 0) ? b : -b); }
};

/// One reference periodic solution x_n(t) = A cn(omega t, m) of
/// x'' + alpha x + x^3 = 0, with minimal period p = 2T/n and energy H > 0.
struct PeriodicOrbit {
    int n;            ///< half-period count in one delay
    double alpha;     ///< a + (-1)^n b
    double amplitude; ///< A > 0
    double omega;     ///< angular frequency, omega^2 = alpha + A^2
    double m;         ///< elliptic parameter, m = A^2 / (2(alpha + A^2))
    double period;    ///< minimal period p = 4K(m)/omega
    double energy;    ///< H = alpha A^2/2 + A^4/4 > 0
};

/// Conserved energy H(x, x') = x'^2/2 + alpha x^2/2 + x^4/4.
double hamiltonian(double alpha, double x, double xdot);

/// Minimal period of the amplitude-A orbit of x'' + alpha x + x^3 = 0.
/// Strictly decreasing in A (hard spring). Requires H > 0 and alpha + A^2 > 0.
double period_of_amplitude(double alpha, double A);

/// d(period)/dA by central differences, used in Wronskian cross-checks.
double period_amplitude_derivative(double alpha, double A);

/// Solve period_of_amplitude(alpha, A) = 2T/n for A and assemble the orbit.
/// Throws NoRootError when no admissible amplitude exists (for alpha > 0
/// the period is capped at 2 pi / sqrt(alpha)), ConvergenceError with bracket diagnostics if
/// the root iteration stalls.
PeriodicOrbit solve_amplitude(const DuffingParams& params, int n);

/// Orbit built directly from a known amplitude (no root solve).
PeriodicOrbit orbit_from_amplitude(double alpha, double A, int n);

/// State (x, x') of the orbit at time t.
std::pair<double, double> orbit_state(const PeriodicOrbit& orbit, double t);

} // namespace duffing
