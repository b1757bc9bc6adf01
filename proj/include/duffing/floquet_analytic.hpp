#pragma once
#include "duffing/orbit.hpp"

#include <complex>
#include <optional>

namespace duffing {

enum class Parity { even, odd };

/// (-1)^n as +-1.0 for a parity.
inline double parity_sign(Parity p) { return p == Parity::even ? 1.0 : -1.0; }
inline Parity parity_of(int n) {
    return n % 2 == 0 ? Parity::even : Parity::odd;
}

/// Limiting rescaled minimal period p* = 4K(1/2) = 7.4162987...
double p_star();

/// Limiting trace coefficient tau* = -(1/24) p*^2 (-1)^n b.
double tau_star(double b, Parity parity);

/// Scaled Floquet exponent eta* at epsilon = 0: the nontrivial root of
///   eta = (2T/p*) * 2 tau* * h((2T/p*) eta),  h(z) = (e^z - 1)/z.
/// Real below the branch point, a complex pair (Im >= 0 returned) beyond
/// it, purely imaginary at the stability boundary.
std::complex<double> eta_star(double b_signed, double T);
std::complex<double> eta_star(const DuffingParams& params, int n);

/// sigma*(T) = exp((2T/p*) eta*).
std::complex<double> sigma_star(const DuffingParams& params, int n);

enum class Verdict { stable, unstable, beyond_validity };

const char* to_string(Verdict v);

/// Stability classification of x_n per the (-1)^n b sign rule with the
/// validity condition (-1)^(n+1) b T^2 < (3/2) pi^2.
struct StabilityVerdict {
    Verdict verdict;
    Parity n_parity;
    double condition_value;    ///< (-1)^(n+1) b T^2
    double boundary;           ///< (3/2) pi^2
    double predicted_exponent; ///< leading-order exponent (1/3)(-1)^n b T
    bool asymptotic_regime;    ///< n >= 5; smaller n observed to agree but
                               ///< outside the proven large-n regime
};
StabilityVerdict classify(const DuffingParams& params, int n);

/// Delay at which the k-th (odd k) torus-onset condition
/// (2/3)(-1)^(n+1) b T^2 = k^2 pi^2 is met, plus the boundary frequency
/// omega = sqrt(4 tau*). Empty when the radicand is negative.
struct TorusBoundary {
    double T;
    double omega;
};
std::optional<TorusBoundary> torus_boundary(double b, Parity parity, int k);

/// Coefficients (a, b) of the delayed equation realizing noninvasive
/// feedback u = kappa (x - (-1)^n x(t-T)) on x'' + alpha x + x^3 = 0.
struct PyragasCoefficients {
    double a;
    double b;
};
PyragasCoefficients pyragas_map(double alpha_physical, double kappa, int n);

/// The same periodic solution solves the equation with delay
/// T~ = T (1 + 2k/n) and index n~ = n + 2k; parity is preserved.
struct DelayReplica {
    double T;
    int n;
};
DelayReplica replicate_delays(double T, int n, int k);

} // namespace duffing
