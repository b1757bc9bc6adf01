#pragma once
#include "duffing/floquet_analytic.hpp"
#include "duffing/orbit.hpp"

#include <complex>

namespace duffing {

using cplx = std::complex<double>;

/// 2x2 fundamental solution matrix W(epsilon, sigma, t1, t0) of the
/// variational system y' = y1, y1' = -(c + 3 x^2(eps, t)) y along the
/// rescaled orbit x(eps, t) = cn((1+eps*alpha)^{1/2} t, 1/(2(1+eps*alpha))),
/// with the complex coefficient c = eps*(a + (-1)^n b sigma).
/// det W = 1 identically (traceless generator).
struct WronskiMatrix {
    cplx w00, w01, w10, w11;
    double epsilon;
    cplx sigma;
    double t1, t0;

    cplx trace() const { return w00 + w11; }
    cplx det() const { return w00 * w11 - w01 * w10; }
};

/// Spec form, a = 0 (so alpha = (-1)^n b and c = eps*alpha*sigma).
WronskiMatrix wronskian(double epsilon, cplx sigma, double alpha, double t1,
                        double t0);

/// General coefficients.
WronskiMatrix wronskian(double epsilon, cplx sigma, double a, double b,
                        Parity parity, double t1, double t0);

/// Trace coefficient tau(eps, sigma) =
///   -(tr W(eps, sigma, p(eps)/2, 0) + 2) / (2 eps (sigma - 1)),
/// for a = 0. Sets *ill_conditioned (when given) if |sigma - 1| < 1e-6.
cplx trace_tau(double epsilon, cplx sigma, Parity parity, double b,
               bool* ill_conditioned = nullptr);

/// Richardson extrapolation of trace_tau to eps -> 0 using
/// eps, eps/2, eps/4 (tau is analytic in eps).
cplx trace_tau_limit(double epsilon, cplx sigma, Parity parity, double b);

/// Self-consistent solution of the Floquet characteristic equation
///   mu^2 - tr W(eps, sigma, p/2, 0) mu + 1 = 0,  sigma = (-mu)^(-n).
struct CharacteristicSolution {
    cplx mu;       ///< nontrivial half-period Floquet multiplier
    cplx sigma;    ///< (-mu)^(-n)
    cplx eta;      ///< (mu + 1)/sqrt(eps)
    double n;      ///< half-period count (real-valued in the scaled variant)
    double epsilon;
    int trace_evaluations;
    bool root_ambiguity; ///< both quadratic roots within 1e-6 at the end
};

CharacteristicSolution solve_characteristic(const DuffingParams& params, int n);

/// Variant with epsilon prescribed directly; n = 2T/(sqrt(eps) p(eps)) is
/// then real-valued. Used for expansion checks at exact epsilon.
CharacteristicSolution solve_characteristic_scaled(double a, double b,
                                                   Parity parity, double T,
                                                   double epsilon);

} // namespace duffing
