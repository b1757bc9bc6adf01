#pragma once
#include "duffing/orbit.hpp"

#include <cstddef>
#include <iosfwd>
#include <variant>
#include <vector>

namespace duffing {

/// (x, x') at one time.
struct State {
    double x;
    double xdot;
};

/// Initial data on [-T, 0] for the delayed Duffing equation.
///
/// The elliptic kind is the Jacobi history
///   (x0, x0') = (A cn(w t, m), -A w sn(w t, m) dn(w t, m)),
/// with w = sqrt(alpha + A^2), m = A^2/(2(alpha + A^2)).
class HistoryFunction {
public:
    static HistoryFunction elliptic(double amplitude, double alpha);
    static HistoryFunction orbit(const PeriodicOrbit& o, double phase = 0.0);
    /// Samples (t, x, x') with strictly increasing t covering [-T, 0];
    /// interpolated by cubic Hermite.
    struct Sample {
        double t, x, xdot;
    };
    static HistoryFunction tabulated(std::vector<Sample> samples);

    State operator()(double t) const;

private:
    struct Elliptic {
        double amplitude, alpha, omega, m;
    };
    struct OrbitRef {
        PeriodicOrbit orbit;
        double phase;
    };
    struct Tabulated {
        std::vector<Sample> samples;
    };
    std::variant<Elliptic, OrbitRef, Tabulated> kind_;
    HistoryFunction() = default;
};

struct IntegratorOptions {
    double max_step = 1e-4; ///< hard cap on the step size
    double tolerance = 1e-6; ///< relative local error target per step
    double abs_floor = 1e-12; ///< absolute term in the error scale
};

/// Dense-output solution of x'' + a x + b x(t-T) + x^3 = 0 on [0, t_end].
/// Continuously interpolable on [-T, t_end]; for t <= 0 it returns the
/// history function.
class Trajectory {
public:
    State evaluate(double t) const; ///< throws std::out_of_range outside range

    double t0() const { return 0.0; }
    double t_end() const { return t_end_; }
    double delay() const { return delay_; }
    std::size_t knot_count() const { return knots_.size(); }
    double knot_time(std::size_t i) const { return knots_[i].t; }
    State knot_state(std::size_t i) const {
        return {knots_[i].x, knots_[i].xd};
    }

private:
    struct Knot {
        double t, x, xd, xdd;
    };
    std::vector<Knot> knots_;
    HistoryFunction history_;
    double t_end_ = 0.0;
    double delay_ = 0.0;

    const Knot* segment(double t) const;

    friend Trajectory integrate(const DuffingParams&, const HistoryFunction&,
                                double, const IntegratorOptions&);
    Trajectory(HistoryFunction h, double delay)
        : history_(std::move(h)), delay_(delay) {}
};

/// Integrate the delayed Duffing equation by the method of steps with an
/// embedded Runge-Kutta 2(3) pair and cubic Hermite dense output.
/// Throws IntegrationError on blow-up (with the blow-up time) and on
/// step-size underflow.
Trajectory integrate(const DuffingParams& params,
                     const HistoryFunction& history, double t_end,
                     const IntegratorOptions& options = {});

/// CSV export: header row t,x,xdot,H sampled every sample_dt
/// (H evaluated with the given alpha), 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          double alpha, double sample_dt);

} // namespace duffing
