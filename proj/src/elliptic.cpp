#include "duffing/elliptic.hpp"
#include "duffing/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace duffing {

namespace {

void check_parameter(double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw DomainError("elliptic parameter m must lie in [0,1), got m=" +
                          std::to_string(m));
}

} // namespace

double complete_K(double m) {
    check_parameter(m);
    double a = 1.0;
    double g = std::sqrt(1.0 - m);
    // AGM converges quadratically; 8 iterations reach machine precision
    // for m <= 1 - 1e-12, a few more cover the tail.
    for (int i = 0; i < 32; ++i) {
        const double an = 0.5 * (a + g);
        const double gn = std::sqrt(a * g);
        a = an;
        g = gn;
        if (std::abs(a - g) <= 1e-17 * a) break;
    }
    return std::numbers::pi / (2.0 * a);
}

JacobiValues jacobi(double u, double m) {
    check_parameter(m);
    if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};

    // Reduce u into [0, 4K) to avoid precision decay at large arguments.
    const double K = complete_K(m);
    const double period = 4.0 * K;
    u = std::fmod(u, period);
    if (u < 0.0) u += period;

    if (u == 0.0) return {0.0, 1.0, 1.0};

    // Descending AGM with backward amplitude recursion (the classical
    // ascending-Landen scheme of Abramowitz & Stegun 16.4).
    constexpr int max_depth = 32;
    double a[max_depth], c[max_depth];
    double an = 1.0;
    double gn = std::sqrt(1.0 - m);
    double cn_ = std::sqrt(m);
    int depth = 0;
    a[0] = an;
    c[0] = cn_;
    while (depth + 1 < max_depth && std::abs(cn_) > 1e-17 * an) {
        const double a_next = 0.5 * (an + gn);
        cn_ = 0.5 * (an - gn);
        gn = std::sqrt(an * gn);
        an = a_next;
        ++depth;
        a[depth] = an;
        c[depth] = cn_;
    }

    double phi = std::ldexp(an * u, depth); // 2^depth * a_N * u
    for (int i = depth; i > 0; --i)
        phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));

    const double sn = std::sin(phi);
    const double cn_v = std::cos(phi);
    const double dn = std::sqrt(std::fma(-m * sn, sn, 1.0));
    return {sn, cn_v, dn};
}

double cn(double u, double m) { return jacobi(u, m).cn; }

SnDn sn_dn(double u, double m) {
    const JacobiValues v = jacobi(u, m);
    return {v.sn, v.dn};
}

} // namespace duffing
