#include "duffing/floquet_analytic.hpp"
#include "duffing/elliptic.hpp"
#include "duffing/errors.hpp"

#include <cmath>
#include <numbers>

namespace duffing {

namespace {

using cplx = std::complex<double>;

/// h(z) = (e^z - 1)/z, entire; series below |z| = 1e-4 to avoid
/// cancellation, h(0) = 1.
cplx h_func(cplx z) {
    if (std::abs(z) < 1e-4)
        return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 +
                  z * (1.0 / 120.0 + z / 720.0))));
    return (std::exp(z) - 1.0) / z;
}

cplx h_prime(cplx z) {
    if (std::abs(z) < 1e-4)
        return 1.0 / 2.0 + z * (1.0 / 3.0 + z * (1.0 / 8.0 + z * (1.0 / 30.0 +
                  z * (1.0 / 144.0 + z / 840.0))));
    return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

double h_real(double z) { return h_func(cplx(z)).real(); }
double h_prime_real(double z) { return h_prime(cplx(z)).real(); }

/// Branch point of z = c2 h(z) on the positive-c2 side: the double root
/// z_bp solves z = 2(1 - e^{-z}); the two real roots merge there at
/// c2_bp = 2 z_bp e^{-z_bp}.
struct BranchPoint {
    double z;
    double c2;
};
BranchPoint branch_point() {
    static const BranchPoint bp = [] {
        double z = 1.6;
        for (int i = 0; i < 60; ++i) {
            const double f = z - 2.0 * (1.0 - std::exp(-z));
            const double fp = 1.0 - 2.0 * std::exp(-z);
            const double dz = f / fp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        return BranchPoint{z, 2.0 * z * std::exp(-z)};
    }();
    return bp;
}

cplx newton_z(cplx z, double c2) {
    for (int i = 0; i < 80; ++i) {
        const cplx g = z - c2 * h_func(z);
        const cplx gp = 1.0 - c2 * h_prime(z);
        const cplx dz = g / gp;
        z -= dz;
        if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) return z;
    }
    throw ConvergenceError("eta_star: complex Newton stalled");
}

/// Nontrivial root of z = c2 h(z).
cplx solve_z(double c2) {
    if (c2 == 0.0)
        throw ConvergenceError(
            "eta_star: b = 0 leaves only the trivial root eta = 0");
    if (c2 < 0.0) {
        // unique real negative root; g is strictly increasing
        double lo = std::min(c2 - 1.0, -std::sqrt(-c2) - 1.0);
        double hi = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (mid - c2 * h_real(mid) > 0.0 ? hi : lo) = mid;
        }
        return cplx(newton_z(cplx(0.5 * (lo + hi)), c2).real());
    }
    const BranchPoint bp = branch_point();
    if (c2 <= bp.c2 * (1.0 - 1e-9)) {
        // smaller of the two real positive roots, bracketed by the peak of
        // g(z) = z - c2 h(z) where h'(z) = 1/c2 (h' strictly increasing)
        double lo = 0.0, hi = 60.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (h_prime_real(mid) < 1.0 / c2 ? lo : hi) = mid;
        }
        const double z_peak = 0.5 * (lo + hi);
        lo = 0.0;
        hi = z_peak;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (mid - c2 * h_real(mid) < 0.0 ? lo : hi) = mid;
        }
        return cplx(newton_z(cplx(0.5 * (lo + hi)), c2).real());
    }
    // complex branch: continuation in c2 from the branch point, seeded off
    // the real axis; halve the continuation step on failure
    cplx z(bp.z, 1e-3);
    double c = bp.c2;
    double step = (c2 - bp.c2) / 48.0;
    int guard = 0;
    while (c < c2 && guard++ < 4000) {
        const double c_next = std::min(c + step, c2);
        try {
            cplx zn = newton_z(z, c_next);
            if (zn.imag() < 0.0) zn = std::conj(zn);
            if (zn.imag() < 1e-6) zn += cplx(0.0, 1e-5); // stay off the axis
            z = zn;
            c = c_next;
        } catch (const ConvergenceError&) {
            step *= 0.5;
            if (step < 1e-12)
                throw ConvergenceError("eta_star: continuation step underflow");
        }
    }
    z = newton_z(z, c2);
    if (z.imag() < 0.0) z = std::conj(z);
    if (std::abs(z) < 1e-8)
        throw ConvergenceError("eta_star: Newton collapsed to the trivial root");
    return z;
}

} // namespace

double p_star() {
    static const double v = 4.0 * complete_K(0.5);
    return v;
}

double tau_star(double b, Parity parity) {
    return -(1.0 / 24.0) * p_star() * p_star() * parity_sign(parity) * b;
}

std::complex<double> eta_star(double b_signed, double T) {
    if (!(T > 0.0)) throw DomainError("eta_star: T must be > 0");
    // z = (2T/p*) eta turns the root equation into z = c2 h(z) with
    // c2 = 2 tau* (2T/p*)^2 = -(1/3) (-1)^n b T^2.
    const double c2 = -b_signed * T * T / 3.0;
    const cplx z = solve_z(c2);
    cplx eta = z / (2.0 * T / p_star());
    if (std::abs(eta.imag()) < 1e-10 * std::max(1.0, std::abs(eta.real())))
        eta = cplx(eta.real());
    return eta;
}

std::complex<double> eta_star(const DuffingParams& params, int n) {
    return eta_star(parity_sign(parity_of(n)) * params.b, params.T);
}

std::complex<double> sigma_star(const DuffingParams& params, int n) {
    return std::exp(2.0 * params.T / p_star() * eta_star(params, n));
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    default: return "beyond-validity";
    }
}

StabilityVerdict classify(const DuffingParams& params, int n) {
    if (params.b == 0.0)
        throw DomainError("classify: b must be nonzero");
    if (n < 1) throw DomainError("classify: n must be >= 1");
    const Parity parity = parity_of(n);
    const double b_signed = parity_sign(parity) * params.b; // (-1)^n b
    const double condition = -b_signed * params.T * params.T;
    const double boundary = 1.5 * std::numbers::pi * std::numbers::pi;
    Verdict v;
    if (b_signed > 0.0)
        v = Verdict::unstable;
    else
        v = condition < boundary ? Verdict::stable : Verdict::beyond_validity;
    return {v,        parity, condition, boundary,
            b_signed * params.T / 3.0, n >= 5};
}

std::optional<TorusBoundary> torus_boundary(double b, Parity parity, int k) {
    if (b == 0.0) throw DomainError("torus_boundary: b must be nonzero");
    if (k < 1 || k % 2 == 0)
        throw DomainError("torus_boundary: k must be an odd positive integer");
    const double b_signed = parity_sign(parity) * b;
    const double radicand = 3.0 / (2.0 * -b_signed); // 3/(2 (-1)^(n+1) b)
    if (!(radicand > 0.0)) return std::nullopt;
    return TorusBoundary{double(k) * std::numbers::pi * std::sqrt(radicand),
                         std::sqrt(4.0 * tau_star(b, parity))};
}

PyragasCoefficients pyragas_map(double alpha_physical, double kappa, int n) {
    return {alpha_physical - kappa, parity_sign(parity_of(n)) * kappa};
}

DelayReplica replicate_delays(double T, int n, int k) {
    if (n < 1) throw DomainError("replicate_delays: n must be >= 1");
    if (n + 2 * k < 1)
        throw DomainError("replicate_delays: k must satisfy n + 2k >= 1");
    return {T * (double(n + 2 * k) / double(n)), n + 2 * k};
}

} // namespace duffing
