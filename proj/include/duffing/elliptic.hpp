#pragma once

namespace duffing {

// Jacobi elliptic functions and the complete elliptic integral of the
// first kind, everywhere in the PARAMETER convention m = k^2:
//
//   K(m) = integral_0^{pi/2} (1 - m sin^2 v)^{-1/2} dv,
//
// so K(1/2) = 1.8540746773..., NOT K(k = 1/2).  All callers in this
// library pass the parameter m, never the modulus k.

/// Values of the three Jacobi elliptic functions at one argument.
struct JacobiValues {
    double sn;
    double cn;
    double dn;
};

/// Complete elliptic integral of the first kind, parameter convention.
/// Computed by the arithmetic-geometric mean. Requires 0 <= m < 1.
double complete_K(double m);

/// sn, cn, dn at argument u, parameter m in [0, 1).
/// u is reduced modulo the real period 4K(m) before evaluation.
JacobiValues jacobi(double u, double m);

/// Jacobi elliptic cosine cn(u, m).
double cn(double u, double m);

/// (sn(u, m), dn(u, m)) as a pair.
struct SnDn {
    double sn;
    double dn;
};
SnDn sn_dn(double u, double m);

} // namespace duffing
