#pragma once
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace duffing {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendreRule(std::size_t n) : nodes(n), weights(n) {
        // Newton on P_n from the Chebyshev-angle initial guess.
        for (std::size_t i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (double(i) + 0.75) /
                                (double(n) + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= n; ++k) {
                    const double p2 =
                        ((2.0 * double(k) - 1.0) * x * p1 -
                         (double(k) - 1.0) * p0) / double(k);
                    p0 = p1;
                    p1 = p2;
                }
                dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sum += weights[i] * f(mid + half * nodes[i]);
        return half * sum;
    }

    /// Composite rule over `panels` equal subintervals of [a, b].
    template <class F>
    double integrate(F&& f, double a, double b, std::size_t panels) const {
        double sum = 0.0;
        const double w = (b - a) / double(panels);
        for (std::size_t k = 0; k < panels; ++k)
            sum += integrate(f, a + double(k) * w, a + double(k + 1) * w);
        return sum;
    }
};

} // namespace duffing
