#pragma once
#include "duffing/dde.hpp"
#include "duffing/orbit.hpp"

#include <vector>

namespace duffing {

/// One sample of the relative energy deviation (H(t) - H_n)/H_n.
struct DeviationSample {
    double t;
    double value;
};

/// Sample (H(t) - H_n)/H_n every sample_dt along the trajectory, with H
/// evaluated at the orbit's alpha = a + (-1)^n b.
std::vector<DeviationSample> track_hamiltonian(const Trajectory& traj,
                                               const PeriodicOrbit& orbit,
                                               double sample_dt);

/// Least-squares line through log|deviation| over an automatically chosen
/// window. Window rule: drop the initial 10% (transient), drop samples with
/// |dev| > 0.5 (nonlinear regime) or |dev| below 10x the noise floor; a
/// growing series is first truncated at its departure (first |dev| > 0.5).
/// The noise floor is the RMS of the last 5% of a decaying series, 0 for a
/// growing one. The chosen window is reported for auditability.
struct SlopeFit {
    double slope;     ///< estimates the real Floquet exponent, 1/time
    double intercept;
    double t_lo, t_hi; ///< fitted window
    double residual_rms;
    int n_points;
    double noise_floor;
};
SlopeFit fit_exponent(const std::vector<DeviationSample>& series);

/// Torus-onset detection on the post-transient tail of a deviation series.
/// sustained requires: oscillation present (>= 3 upward mean-crossings in
/// the tail), envelope amplitude stable within 10% across the last two
/// windows of two slow periods each, and amplitude above 1e-4 (below that
/// the tail is indistinguishable from integration noise). The slow period
/// is estimated from upward crossing spacing; near onset it is ~2T.
struct TorusReport {
    bool sustained;
    double oscillation_period;
    double relative_amplitude; ///< half peak-to-peak of the tail oscillation
    double transient_end;
};
TorusReport detect_torus(const std::vector<DeviationSample>& series, double T);

/// CSV export of a deviation series: header t,deviation.
void write_series_csv(std::ostream& os,
                      const std::vector<DeviationSample>& series);

} // namespace duffing
