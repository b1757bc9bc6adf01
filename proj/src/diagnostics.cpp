#include "duffing/diagnostics.hpp"
#include "duffing/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace duffing {

std::vector<DeviationSample> track_hamiltonian(const Trajectory& traj,
                                               const PeriodicOrbit& orbit,
                                               double sample_dt) {
    if (!(sample_dt > 0.0))
        throw DomainError("track_hamiltonian: sample_dt must be > 0");
    std::vector<DeviationSample> out;
    out.reserve(std::size_t((traj.t_end() - traj.t0()) / sample_dt) + 2);
    for (double t = traj.t0(); t <= traj.t_end() + 1e-12; t += sample_dt) {
        const double tc = std::min(t, traj.t_end());
        const State s = traj.evaluate(tc);
        const double H = hamiltonian(orbit.alpha, s.x, s.xdot);
        out.push_back({tc, (H - orbit.energy) / orbit.energy});
    }
    return out;
}

namespace {

double rms_abs(const std::vector<DeviationSample>& s, std::size_t lo,
               std::size_t hi) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = lo; i < hi && i < s.size(); ++i, ++n)
        sum += s[i].value * s[i].value;
    return n ? std::sqrt(sum / double(n)) : 0.0;
}

} // namespace

SlopeFit fit_exponent(const std::vector<DeviationSample>& series) {
    if (series.size() < 20)
        throw NoExponentialRegimeError("fit_exponent: series too short");

    const std::size_t n_all = series.size();
    const std::size_t head = std::max<std::size_t>(1, n_all / 20);
    const bool growing =
        rms_abs(series, n_all - head, n_all) > rms_abs(series, 0, head);

    // A growing run departs its reference orbit and saturates at the level
    // of whatever it converges to; only the phase before departure is
    // modal. The saturation level can sit below the 0.5 nonlinear cut when
    // the neighboring attractor is close, so truncate at half the observed
    // saturation, capped at 0.5.
    std::size_t n_used = n_all;
    if (growing) {
        double saturation = 0.0;
        for (const auto& s : series)
            saturation = std::max(saturation, std::abs(s.value));
        const double departure = std::min(0.5, 0.5 * saturation);
        for (std::size_t i = 0; i < n_all; ++i) {
            if (std::abs(series[i].value) > departure) {
                n_used = i;
                break;
            }
        }
        if (n_used < 20)
            throw NoExponentialRegimeError(
                "fit_exponent: growth departs the linear regime too early");
    }
    const double floor =
        growing ? 0.0 : rms_abs(series, n_all - std::max<std::size_t>(1, n_all / 20), n_all);

    const std::size_t first = n_used / 10; // transient discard
    double st = 0, sy = 0, stt = 0, sty = 0;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(n_used - first);
    for (std::size_t i = first; i < n_used; ++i) {
        const double ad = std::abs(series[i].value);
        if (ad > 0.5) continue;
        if (ad <= 10.0 * floor) continue;
        const double y = std::log(ad);
        if (!std::isfinite(y)) continue;
        pts.emplace_back(series[i].t, y);
        st += series[i].t;
        sy += y;
        stt += series[i].t * series[i].t;
        sty += series[i].t * y;
    }
    const double np = double(pts.size());
    if (pts.size() < 10)
        throw NoExponentialRegimeError(
            "fit_exponent: fewer than 10 samples survive the window cuts");

    const double denom = np * stt - st * st;
    const double slope = (np * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / np;
    double ss = 0.0;
    for (const auto& [t, y] : pts) {
        const double r = y - (slope * t + intercept);
        ss += r * r;
    }
    const double residual = std::sqrt(ss / np);
    if (residual > 0.5)
        throw NoExponentialRegimeError(
            "fit_exponent: residual RMS " + std::to_string(residual) +
            " exceeds 0.5 log units (no exponential regime)");
    return {slope,    intercept,       pts.front().first, pts.back().first,
            residual, int(pts.size()), floor};
}

TorusReport detect_torus(const std::vector<DeviationSample>& series,
                         double T) {
    if (!(T > 0.0)) throw DomainError("detect_torus: T must be > 0");
    if (series.size() < 32)
        throw InsufficientLengthError("detect_torus: series too short");
    const double t_lo = series.front().t;
    const double t_hi = series.back().t;
    const double slow_period = 2.0 * T; // predicted scale near onset

    if (t_hi - t_lo < 6.0 * slow_period)
        throw InsufficientLengthError(
            "detect_torus: series spans fewer than 6 slow periods");

    // Envelope amplitude (half peak-to-peak) per window of one slow period.
    const std::size_t W =
        std::size_t((t_hi - t_lo) / slow_period); // whole windows
    auto window_amp = [&](std::size_t w) {
        const double a = t_lo + double(w) * slow_period;
        const double b = a + slow_period;
        double mn = 1e300, mx = -1e300;
        for (const auto& s : series) {
            if (s.t < a || s.t > b) continue;
            mn = std::min(mn, s.value);
            mx = std::max(mx, s.value);
        }
        return 0.5 * (mx - mn);
    };
    std::vector<double> amps(W);
    for (std::size_t w = 0; w < W; ++w) amps[w] = window_amp(w);

    // Transient end: earliest window from which all consecutive window
    // amplitudes agree within 10%.
    std::size_t k = W;
    for (std::size_t w = 0; w + 1 < W; ++w) {
        bool stable = true;
        for (std::size_t j = w; j + 1 < W; ++j) {
            if (std::abs(amps[j + 1] - amps[j]) >
                0.1 * std::max(amps[j], amps[j + 1])) {
                stable = false;
                break;
            }
        }
        if (stable) {
            k = w;
            break;
        }
    }
    const double transient_end =
        k == W ? t_hi : t_lo + double(k) * slow_period;

    // Tail statistics over the last four slow periods.
    const double tail_lo = std::max(transient_end, t_hi - 4.0 * slow_period);
    double mean = 0.0;
    std::size_t cnt = 0;
    for (const auto& s : series)
        if (s.t >= tail_lo) {
            mean += s.value;
            ++cnt;
        }
    mean /= double(std::max<std::size_t>(1, cnt));

    // Upward crossings of the tail mean give the oscillation period.
    std::vector<double> crossings;
    const DeviationSample* prev = nullptr;
    for (const auto& s : series) {
        if (s.t < tail_lo) continue;
        if (prev && prev->value - mean < 0.0 && s.value - mean >= 0.0) {
            const double frac = (mean - prev->value) / (s.value - prev->value);
            crossings.push_back(prev->t + frac * (s.t - prev->t));
        }
        prev = &s;
    }
    double period = 0.0;
    if (crossings.size() >= 2) {
        double sum = 0.0;
        for (std::size_t i = 1; i < crossings.size(); ++i)
            sum += crossings[i] - crossings[i - 1];
        period = sum / double(crossings.size() - 1);
    }

    // Last two windows of two slow periods each.
    auto amp_between = [&](double a, double b) {
        double mn = 1e300, mx = -1e300;
        for (const auto& s : series) {
            if (s.t < a || s.t > b) continue;
            mn = std::min(mn, s.value);
            mx = std::max(mx, s.value);
        }
        return 0.5 * (mx - mn);
    };
    const double amp2 = amp_between(t_hi - 2.0 * slow_period, t_hi);
    const double amp1 =
        amp_between(t_hi - 4.0 * slow_period, t_hi - 2.0 * slow_period);

    const bool oscillating = crossings.size() >= 3;
    const bool amp_stable =
        std::abs(amp1 - amp2) <= 0.1 * std::max(amp1, amp2);
    const bool above_noise = amp2 > 1e-4;
    const bool sustained = oscillating && amp_stable && above_noise;

    return {sustained, period, amp2, transient_end};
}

void write_series_csv(std::ostream& os,
                      const std::vector<DeviationSample>& series) {
    const auto prec = os.precision();
    os.precision(17);
    os << "t,deviation\n";
    for (const auto& s : series) os << s.t << ',' << s.value << '\n';
    os.precision(prec);
}

} // namespace duffing
