#include "duffing/floquet_numeric.hpp"
#include "duffing/elliptic.hpp"
#include "duffing/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace duffing {

namespace {

/// Fixed-step RK4 for W' = A(t) W with A = [[0, 1], [-(c + 3x^2), 0]].
/// The orbit factor 3x^2(t) is precomputed on the half-step grid once, so
/// repeated runs with different c (the sigma iteration) are cheap.
class WronskianIntegrator {
public:
    WronskianIntegrator(double epsilon, double alpha, double t0, double t1)
        : epsilon_(epsilon), t0_(t0), t1_(t1) {
        const double w2 = 1.0 + epsilon * alpha;
        if (!(w2 > 0.5))
            throw DomainError("wronskian: 1 + eps*alpha must exceed 1/2 so the "
                              "rescaled orbit exists");
        const double m = 1.0 / (2.0 * w2);
        const double w = std::sqrt(w2);
        const double p = 4.0 * complete_K(m) / w;
        steps_ = std::max<std::size_t>(
            1, std::size_t(std::ceil(std::abs(t1 - t0) / (p / 20000.0))));
        h_ = (t1 - t0) / double(steps_);
        q_.resize(2 * steps_ + 1);
        for (std::size_t j = 0; j < q_.size(); ++j) {
            const double t = t0 + 0.5 * h_ * double(j);
            const double c = cn(w * t, m);
            q_[j] = 3.0 * c * c;
        }
    }

    WronskiMatrix run(cplx c) const {
        cplx w00 = 1.0, w01 = 0.0, w10 = 0.0, w11 = 1.0;
        for (std::size_t k = 0; k < steps_; ++k) {
            const cplx q0 = -(c + q_[2 * k]);
            const cplx qm = -(c + q_[2 * k + 1]);
            const cplx q1 = -(c + q_[2 * k + 2]);
            step(w00, w10, q0, qm, q1);
            step(w01, w11, q0, qm, q1);
        }
        return {w00, w01, w10, w11, epsilon_, 0.0, t1_, t0_};
    }

private:
    /// One RK4 step on a column (y, y1) with y'' = q(t) y; q sampled at
    /// the step start, midpoint, end.
    void step(cplx& y, cplx& y1, cplx q0, cplx qm, cplx q1) const {
        const double h = h_;
        const cplx k1y = y1, k1d = q0 * y;
        const cplx y2 = y + 0.5 * h * k1y, d2 = y1 + 0.5 * h * k1d;
        const cplx k2y = d2, k2d = qm * y2;
        const cplx y3 = y + 0.5 * h * k2y, d3 = y1 + 0.5 * h * k2d;
        const cplx k3y = d3, k3d = qm * y3;
        const cplx y4 = y + h * k3y, d4 = y1 + h * k3d;
        const cplx k4y = d4, k4d = q1 * y4;
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        y1 += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }

    double epsilon_, t0_, t1_, h_;
    std::size_t steps_;
    std::vector<double> q_; // 3 x^2 on the half-step grid
};

void check_det(const WronskiMatrix& W) {
    if (std::abs(W.det() - 1.0) > 1e-7) {
        std::ostringstream msg;
        msg << "wronskian: det drifted to " << std::abs(W.det())
            << " (integration accuracy failure)";
        throw IntegrationError(msg.str(), W.t1);
    }
}

double rescaled_half_period(double epsilon, double alpha) {
    return 0.5 * period_of_amplitude(epsilon * alpha, 1.0);
}

cplx principal_sigma(cplx mu, double n) {
    // (-mu)^(-n) via the principal logarithm; mu near -1 keeps -mu near +1,
    // away from the branch cut.
    return std::exp(-n * std::log(-mu));
}

CharacteristicSolution
solve_characteristic_impl(double a, double b, Parity parity, double T,
                          double epsilon, double n) {
    const double b_signed = parity_sign(parity) * b;
    const double alpha = a + b_signed;
    const double half_p = rescaled_half_period(epsilon, alpha);
    const WronskianIntegrator integ(epsilon, alpha, 0.0, half_p);

    int evals = 0;
    auto trace_of = [&](cplx sigma) {
        const cplx c = epsilon * (a + b_signed * sigma);
        WronskiMatrix W = integ.run(c);
        W.sigma = sigma;
        check_det(W);
        ++evals;
        return W.trace();
    };
    auto quad_roots = [](cplx tr, cplx& r1, cplx& r2) {
        const cplx disc = std::sqrt(tr * tr - 4.0);
        r1 = 0.5 * (tr + disc);
        r2 = 0.5 * (tr - disc);
    };

    const cplx eta0 = eta_star(b_signed, T);
    cplx mu = -1.0 + std::sqrt(epsilon) * eta0;
    cplx mu_prev = mu;
    bool ambiguous = false;
    bool converged = false;
    constexpr int max_evals = 100;

    // Spec iteration: sigma <- (-mu)^(-n), re-solve the quadratic, take the
    // root continuous with the previous iterate.
    for (int it = 0; it < 8 && evals < max_evals; ++it) {
        const cplx tr = trace_of(principal_sigma(mu, n));
        cplx r1, r2;
        quad_roots(tr, r1, r2);
        ambiguous = std::abs(r1 - r2) < 1e-6;
        const cplx mu_next = std::abs(r1 - mu) < std::abs(r2 - mu) ? r1 : r2;
        mu_prev = mu;
        mu = mu_next;
        if (std::abs(mu - mu_prev) < 1e-10) {
            converged = true;
            break;
        }
    }

    if (!converged) {
        // The plain iteration contracts slowly on the stable side for larger
        // T; finish with a complex secant on
        //   F(mu) = mu^2 - tr W(eps, (-mu)^(-n)) mu + 1.
        auto F = [&](cplx m_) {
            return m_ * m_ - trace_of(principal_sigma(m_, n)) * m_ + 1.0;
        };
        cplx x0 = mu_prev, x1 = mu;
        cplx f0 = F(x0), f1 = F(x1);
        while (evals < max_evals) {
            if (f1 == f0) break;
            const cplx x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            x0 = x1;
            f0 = f1;
            x1 = x2;
            if (std::abs(x1 - x0) < 1e-10) {
                converged = true;
                break;
            }
            f1 = F(x1);
        }
        mu = x1;
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "solve_characteristic: no convergence within " << max_evals
            << " trace evaluations (T=" << T << ", n=" << n
            << ", eps=" << epsilon << ")";
        throw ConvergenceError(msg.str());
    }

    // Final ambiguity check at the converged point.
    {
        const cplx tr = trace_of(principal_sigma(mu, n));
        cplx r1, r2;
        quad_roots(tr, r1, r2);
        ambiguous = std::abs(r1 - r2) < 1e-6;
        mu = std::abs(r1 - mu) < std::abs(r2 - mu) ? r1 : r2;
    }

    return {mu,
            principal_sigma(mu, n),
            (mu + 1.0) / std::sqrt(epsilon),
            n,
            epsilon,
            evals,
            ambiguous};
}

} // namespace

WronskiMatrix wronskian(double epsilon, cplx sigma, double alpha, double t1,
                        double t0) {
    return wronskian(epsilon, sigma, 0.0, alpha, Parity::even, t1, t0);
}

WronskiMatrix wronskian(double epsilon, cplx sigma, double a, double b,
                        Parity parity, double t1, double t0) {
    if (epsilon < 0.0) throw DomainError("wronskian: epsilon must be >= 0");
    const double b_signed = parity_sign(parity) * b;
    const double alpha = a + b_signed;
    const WronskianIntegrator integ(epsilon, alpha, t0, t1);
    WronskiMatrix W = integ.run(epsilon * (a + b_signed * sigma));
    W.sigma = sigma;
    check_det(W);
    return W;
}

cplx trace_tau(double epsilon, cplx sigma, Parity parity, double b,
               bool* ill_conditioned) {
    if (!(epsilon > 0.0)) throw DomainError("trace_tau: epsilon must be > 0");
    if (sigma == cplx(1.0)) throw DomainError("trace_tau: sigma must differ from 1");
    if (ill_conditioned) *ill_conditioned = std::abs(sigma - 1.0) < 1e-6;
    const double alpha = parity_sign(parity) * b; // a = 0
    const double half_p = rescaled_half_period(epsilon, alpha);
    const WronskiMatrix W = wronskian(epsilon, sigma, alpha, half_p, 0.0);
    return -(W.trace() + 2.0) / (2.0 * epsilon * (sigma - 1.0));
}

cplx trace_tau_limit(double epsilon, cplx sigma, Parity parity, double b) {
    const cplx t1 = trace_tau(epsilon, sigma, parity, b);
    const cplx t2 = trace_tau(0.5 * epsilon, sigma, parity, b);
    const cplx t3 = trace_tau(0.25 * epsilon, sigma, parity, b);
    return (8.0 * t3 - 6.0 * t2 + t1) / 3.0;
}

CharacteristicSolution solve_characteristic(const DuffingParams& params,
                                            int n) {
    const PeriodicOrbit orbit = solve_amplitude(params, n);
    const double epsilon = 1.0 / (orbit.amplitude * orbit.amplitude);
    return solve_characteristic_impl(params.a, params.b, parity_of(n),
                                     params.T, epsilon, double(n));
}

CharacteristicSolution solve_characteristic_scaled(double a, double b,
                                                   Parity parity, double T,
                                                   double epsilon) {
    if (!(epsilon > 0.0))
        throw DomainError("solve_characteristic_scaled: epsilon must be > 0");
    const double alpha = a + parity_sign(parity) * b;
    const double p = 2.0 * rescaled_half_period(epsilon, alpha);
    const double n = 2.0 * T / (std::sqrt(epsilon) * p);
    return solve_characteristic_impl(a, b, parity, T, epsilon, n);
}

} // namespace duffing
