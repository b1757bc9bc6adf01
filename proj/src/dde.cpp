#include "duffing/dde.hpp"
#include "duffing/elliptic.hpp"
#include "duffing/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace duffing {

namespace {

double hermite(double t, double t0, double y0, double d0, double t1, double y1,
               double d1) {
    const double h = t1 - t0;
    const double th = (t - t0) / h;
    const double om = 1.0 - th;
    return (1.0 + 2.0 * th) * om * om * y0 + th * om * om * h * d0 +
           th * th * (3.0 - 2.0 * th) * y1 + th * th * (th - 1.0) * h * d1;
}

double hermite_deriv(double t, double t0, double y0, double d0, double t1,
                     double y1, double d1) {
    const double h = t1 - t0;
    const double th = (t - t0) / h;
    const double om = 1.0 - th;
    return 6.0 * th * om * (y1 - y0) / h + (1.0 - 4.0 * th + 3.0 * th * th) * d0 +
           th * (3.0 * th - 2.0) * d1;
}

} // namespace

HistoryFunction HistoryFunction::elliptic(double amplitude, double alpha) {
    const double w2 = alpha + amplitude * amplitude;
    if (!(amplitude > 0.0) || !(w2 > 0.0) ||
        !(hamiltonian(alpha, amplitude, 0.0) > 0.0))
        throw DomainError("elliptic history requires A > 0 and H(alpha,A) > 0");
    HistoryFunction h;
    h.kind_ = Elliptic{amplitude, alpha, std::sqrt(w2),
                       amplitude * amplitude / (2.0 * w2)};
    return h;
}

HistoryFunction HistoryFunction::orbit(const PeriodicOrbit& o, double phase) {
    HistoryFunction h;
    h.kind_ = OrbitRef{o, phase};
    return h;
}

HistoryFunction HistoryFunction::tabulated(std::vector<Sample> samples) {
    if (samples.size() < 2)
        throw DomainError("tabulated history needs at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].t > samples[i - 1].t))
            throw DomainError("tabulated history times must be increasing");
    HistoryFunction h;
    h.kind_ = Tabulated{std::move(samples)};
    return h;
}

State HistoryFunction::operator()(double t) const {
    if (const auto* e = std::get_if<Elliptic>(&kind_)) {
        const JacobiValues j = jacobi(e->omega * t, e->m);
        return {e->amplitude * j.cn,
                -e->amplitude * e->omega * j.sn * j.dn};
    }
    if (const auto* o = std::get_if<OrbitRef>(&kind_)) {
        auto [x, xd] = orbit_state(o->orbit, t + o->phase);
        return {x, xd};
    }
    const auto& tab = std::get<Tabulated>(kind_).samples;
    if (t <= tab.front().t) return {tab.front().x, tab.front().xdot};
    if (t >= tab.back().t) return {tab.back().x, tab.back().xdot};
    auto it = std::upper_bound(
        tab.begin(), tab.end(), t,
        [](double v, const Sample& s) { return v < s.t; });
    const Sample& s1 = *it;
    const Sample& s0 = *(it - 1);
    // xdot as the derivative of the x interpolant keeps the pair consistent
    return {hermite(t, s0.t, s0.x, s0.xdot, s1.t, s1.x, s1.xdot),
            hermite_deriv(t, s0.t, s0.x, s0.xdot, s1.t, s1.x, s1.xdot)};
}

const Trajectory::Knot* Trajectory::segment(double t) const {
    const std::size_t last = knots_.size() - 2;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const Knot& k) { return v < k.t; });
    std::size_t i = std::size_t(
        std::max<std::ptrdiff_t>(0, std::distance(knots_.begin(), it) - 1));
    if (i > last) i = last;
    return &knots_[i];
}

State Trajectory::evaluate(double t) const {
    if (t < -delay_ - 1e-12 || t > t_end_ + 1e-12)
        throw std::out_of_range("Trajectory::evaluate: t outside [t0-T, t_end]");
    if (t <= 0.0) return history_(t);
    const Knot* k0 = segment(t);
    const Knot* k1 = k0 + 1;
    if (t == k0->t) return {k0->x, k0->xd};
    if (t == k1->t) return {k1->x, k1->xd};
    return {hermite(t, k0->t, k0->x, k0->xd, k1->t, k1->x, k1->xd),
            hermite(t, k0->t, k0->xd, k0->xdd, k1->t, k1->xd, k1->xdd)};
}

namespace {

/// Delayed-value access for the integrator: history for t <= 0, otherwise
/// Hermite interpolation on the completed knots with a monotone cursor.
class DelayReader {
public:
    DelayReader(const std::vector<double>& ts, const std::vector<double>& xs,
                const std::vector<double>& xds, const HistoryFunction& hist)
        : ts_(ts), xs_(xs), xds_(xds), hist_(hist) {}

    double operator()(double t) {
        if (t <= 0.0) return hist_(t).x;
        const std::size_t last = ts_.size() - 2;
        while (cursor_ < last && ts_[cursor_ + 1] < t) ++cursor_;
        while (cursor_ > 0 && ts_[cursor_] > t) --cursor_;
        const std::size_t i = cursor_;
        if (t == ts_[i + 1]) return xs_[i + 1];
        return hermite(t, ts_[i], xs_[i], xds_[i], ts_[i + 1], xs_[i + 1],
                       xds_[i + 1]);
    }

private:
    const std::vector<double>& ts_;
    const std::vector<double>& xs_;
    const std::vector<double>& xds_;
    const HistoryFunction& hist_;
    std::size_t cursor_ = 0;
};

} // namespace

Trajectory integrate(const DuffingParams& params,
                     const HistoryFunction& history, double t_end,
                     const IntegratorOptions& options) {
    if (!(t_end > 0.0)) throw DomainError("integrate: t_end must be > 0");
    if (!(options.max_step > 0.0))
        throw DomainError("integrate: max_step must be > 0");
    if (!(params.T > 0.0)) throw DomainError("integrate: delay T must be > 0");

    const double a = params.a;
    const double b = params.b;
    const double T = params.T;
    const bool delayed = (b != 0.0);

    // Working knot storage in flat arrays (fast delayed lookups), moved
    // into the Trajectory at the end.
    std::vector<double> ts, xs, xds, xdds;
    const std::size_t reserve =
        std::size_t(t_end / options.max_step * 1.05) + 64;
    ts.reserve(reserve);
    xs.reserve(reserve);
    xds.reserve(reserve);
    xdds.reserve(reserve);

    DelayReader delayed_x(ts, xs, xds, history);
    auto rhs = [&](double t, double x, double xd, double& fx, double& fxd) {
        fx = xd;
        fxd = -a * x - x * x * x;
        if (delayed) fxd -= b * delayed_x(t - T);
    };

    const State s0 = history(0.0);
    double t = 0.0, x = s0.x, xd = s0.xdot;
    double k1x, k1d;
    rhs(t, x, xd, k1x, k1d);
    ts.push_back(t);
    xs.push_back(x);
    xds.push_back(xd);
    xdds.push_back(k1d);

    // The delayed argument of every stage must land in completed segments,
    // which holds as long as h <= T.
    double h = std::min(options.max_step, delayed ? T : options.max_step);

    while (t < t_end) {
        if (t + h > t_end) h = t_end - t;
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw IntegrationError("integrate: step size underflow", t);

        // Bogacki-Shampine 3(2), FSAL.
        double k2x, k2d, k3x, k3d, k4x, k4d;
        rhs(t + 0.5 * h, x + 0.5 * h * k1x, xd + 0.5 * h * k1d, k2x, k2d);
        rhs(t + 0.75 * h, x + 0.75 * h * k2x, xd + 0.75 * h * k2d, k3x, k3d);
        const double xn = x + h * (2.0 * k1x + 3.0 * k2x + 4.0 * k3x) / 9.0;
        const double dn = xd + h * (2.0 * k1d + 3.0 * k2d + 4.0 * k3d) / 9.0;
        rhs(t + h, xn, dn, k4x, k4d);

        const double ex =
            h * (-5.0 / 72.0 * k1x + k2x / 12.0 + k3x / 9.0 - k4x / 8.0);
        const double ed =
            h * (-5.0 / 72.0 * k1d + k2d / 12.0 + k3d / 9.0 - k4d / 8.0);
        const double sx = options.tolerance * std::max(std::abs(x), std::abs(xn)) +
                          options.abs_floor;
        const double sd = options.tolerance * std::max(std::abs(xd), std::abs(dn)) +
                          options.abs_floor;
        const double err =
            std::sqrt(0.5 * ((ex / sx) * (ex / sx) + (ed / sd) * (ed / sd)));

        if (err <= 1.0) {
            t += h;
            x = xn;
            xd = dn;
            k1x = k4x;
            k1d = k4d;
            if (!std::isfinite(x) || !std::isfinite(xd) || std::abs(x) > 1e12)
                throw IntegrationError("integrate: solution blow-up", t);
            ts.push_back(t);
            xs.push_back(x);
            xds.push_back(xd);
            xdds.push_back(k1d);
        }

        double fac = (err == 0.0) ? 5.0 : 0.9 * std::pow(err, -1.0 / 3.0);
        fac = std::clamp(fac, 0.2, 5.0);
        h = std::min(h * fac, options.max_step);
        if (delayed) h = std::min(h, T);
    }

    Trajectory traj(history, T);
    traj.t_end_ = t;
    traj.knots_.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        traj.knots_[i] = {ts[i], xs[i], xds[i], xdds[i]};
    return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          double alpha, double sample_dt) {
    if (!(sample_dt > 0.0))
        throw DomainError("write_trajectory_csv: sample_dt must be > 0");
    const auto flags = os.flags();
    const auto prec = os.precision();
    os.precision(17);
    os << "t,x,xdot,H\n";
    for (double t = traj.t0();; t += sample_dt) {
        if (t > traj.t_end()) t = traj.t_end();
        const State s = traj.evaluate(t);
        os << t << ',' << s.x << ',' << s.xdot << ','
           << hamiltonian(alpha, s.x, s.xdot) << '\n';
        if (t >= traj.t_end()) break;
    }
    os.flags(flags);
    os.precision(prec);
}

} // namespace duffing
