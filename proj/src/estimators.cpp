#include "gtb/estimators.hpp"

#include <cmath>
#include <limits>

#include "gtb/errors.hpp"

namespace gtb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void validate_rising(const WindowConfig& cfg) {
    if (!(cfg.epsilon > 0 && cfg.epsilon < 0.5))
        throw BadParameters("epsilon must lie strictly inside (0, 1/2)");
    if (!(cfg.alpha > 2)) throw BadParameters("alpha must exceed 2");
    if (cfg.sigma < 0) throw BadParameters("sigma must be nonnegative");
}

void validate_rotting(const WindowConfig& cfg) {
    if (!(cfg.alpha >= 5)) throw BadParameters("alpha must be at least 5");
    if (cfg.sigma < 0) throw BadParameters("sigma must be nonnegative");
}

double det_estimate(const History& h, int arm, long t) {
    if (h.noisy()) throw NonDeterministicHistory();
    const long n = h.pulls(arm);
    if (n < 2) return kInf;
    const long x = h.internal_time(arm, n);
    const long y = h.internal_time(arm, n - 1);
    if (x == y) throw Error("internal times of consecutive pulls coincide");
    const double last = h.observation(arm, n);
    const double prev = h.observation(arm, n - 1);
    return last + static_cast<double>(t - x) * (last - prev) / static_cast<double>(x - y);
}

double det_estimate_sub(const History& h, int arm, long t, const CliquePartition& sub) {
    if (h.noisy()) throw NonDeterministicHistory();
    if (!h.has_aux() || !(h.aux_partition() == sub))
        throw BadArguments("history does not maintain internal times for this sub-matrix");
    const long n = h.pulls(arm);
    if (n < 2) return kInf;
    const long x = h.aux_internal_time(arm, n);
    const long y = h.aux_internal_time(arm, n - 1);
    if (x == y) throw Error("internal times of consecutive pulls coincide");
    const double last = h.observation(arm, n);
    const double prev = h.observation(arm, n - 1);
    return last + static_cast<double>(t - x) * (last - prev) / static_cast<double>(x - y);
}

double windowed_estimate(const History& h, int arm, long t, long window) {
    const long n = h.pulls(arm);
    if (window < 1 || window > n / 2) return kInf;
    const double hd = static_cast<double>(window);
    double acc = 0;
    for (long l = n - window + 1; l <= n; ++l) {
        const double x_l = h.observation(arm, l);
        const double x_prev = h.observation(arm, l - window);
        acc += x_l + static_cast<double>(t - l) * (x_l - x_prev) / hd;
    }
    return acc / hd;
}

double expected_windowed_estimate(const GtbInstance& inst, const History& h, int arm, long t,
                                  long window) {
    const long n = h.pulls(arm);
    if (window < 1 || window > n / 2) return kInf;
    const double hd = static_cast<double>(window);
    double acc = 0;
    for (long l = n - window + 1; l <= n; ++l) {
        const double mu_l = inst.mean(arm, h.internal_time(arm, l));
        const double mu_prev = inst.mean(arm, h.internal_time(arm, l - window));
        acc += mu_l + static_cast<double>(t - l) * (mu_l - mu_prev) / hd;
    }
    return acc / hd;
}

double beta_radius(double sigma, long t, long n_pulls, long window, double delta) {
    const double hd = static_cast<double>(window);
    return sigma * static_cast<double>(t - n_pulls + window - 1) *
           std::sqrt(10.0 * std::log(1.0 / delta) / (hd * hd * hd));
}

double beta_radius(const WindowConfig& cfg, long t, long n_pulls, long window) {
    // log(1/delta_t) = alpha * log t for delta_t = t^-alpha
    const double hd = static_cast<double>(window);
    return cfg.sigma * static_cast<double>(t - n_pulls + window - 1) *
           std::sqrt(10.0 * cfg.alpha * std::log(static_cast<double>(t)) / (hd * hd * hd));
}

double rotting_window_estimate(const History& h, int arm, long window) {
    const long n = h.pulls(arm);
    if (window < 1 || window > n) return kInf;
    double acc = 0;
    for (long l = n - window + 1; l <= n; ++l) acc += h.observation(arm, l);
    return acc / static_cast<double>(window);
}

double rotting_radius(double sigma, long window, double delta) {
    return std::sqrt(2.0 * sigma * sigma * std::log(2.0 / delta) / static_cast<double>(window));
}

double rotting_radius(const WindowConfig& cfg, long t, long window) {
    const double delta = std::pow(static_cast<double>(t), -cfg.alpha);
    return rotting_radius(cfg.sigma, window, delta);
}

} // namespace gtb
