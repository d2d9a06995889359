#ifndef GTB_ESTIMATORS_HPP
#define GTB_ESTIMATORS_HPP

#include "gtb/dynamics.hpp"

namespace gtb {

struct WindowConfig {
    double epsilon = 0.25;  // window fraction, strictly inside (0, 1/2)
    double alpha = 3.0;     // confidence exponent, delta_t = t^-alpha
    double sigma = 0.0;
};

// Throw BadParameters unless epsilon in (0,1/2), sigma >= 0 and alpha above
// the algorithm-specific floor (> 2 for the rising UCB, >= 5 for the rotting
// one).
void validate_rising(const WindowConfig& cfg);
void validate_rotting(const WindowConfig& cfg);

// Last-two-observations linear extrapolation to round t (deterministic
// rising estimator). Returns +infinity while the arm has fewer than two
// pulls; refuses noisy histories.
double det_estimate(const History& h, int arm, long t);

// Same extrapolation with internal times measured under the block-diagonal
// sub-matrix the history was configured with.
double det_estimate_sub(const History& h, int arm, long t, const CliquePartition& sub);

// Windowed derivative estimator over the last 2h samples of the arm,
// extrapolated to round t. +infinity unless 1 <= h <= floor(N/2).
double windowed_estimate(const History& h, int arm, long t, long window);

// Expectation of the windowed estimator: true means at the recorded internal
// times in place of observations. Test oracle for concentration checks.
double expected_windowed_estimate(const GtbInstance& inst, const History& h, int arm, long t,
                                  long window);

// sigma * (t - n_pulls + h - 1) * sqrt(10*log(1/delta) / h^3)
double beta_radius(double sigma, long t, long n_pulls, long window, double delta);
double beta_radius(const WindowConfig& cfg, long t, long n_pulls, long window);

// Mean of the h most recent observations of the arm. +infinity unless
// 1 <= h <= N.
double rotting_window_estimate(const History& h, int arm, long window);

// sqrt(2*sigma^2*log(2/delta) / h)
double rotting_radius(double sigma, long window, double delta);
double rotting_radius(const WindowConfig& cfg, long t, long window);

} // namespace gtb

#endif
