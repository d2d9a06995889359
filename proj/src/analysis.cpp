#include "gtb/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "gtb/errors.hpp"

namespace gtb {

namespace {
constexpr double kTol = 1e-12;

double pow_q(double g, double q) {
    if (q == 0.0) return g > kTol ? 1.0 : 0.0;
    return std::pow(std::max(g, 0.0), q);
}
} // namespace

ComplexityProfile::ComplexityProfile(const GtbInstance& inst, long horizon) : horizon_(horizon) {
    max_gamma_.assign(horizon_ + 1, 0.0);
    max_abs_gamma_.assign(horizon_ + 1, 0.0);
    const int k = inst.k();
    for (long n = 1; n <= horizon_; ++n) {
        double g_max = -1e300, a_max = 0.0;
        for (int i = 0; i < k; ++i) {
            const double g = inst.mean(i, n + 1) - inst.mean(i, n);
            g_max = std::max(g_max, g);
            a_max = std::max(a_max, std::abs(g));
        }
        max_gamma_[n] = g_max;
        max_abs_gamma_[n] = a_max;
    }
    double l = 0.0;
    for (long n = 1; n <= horizon_; ++n) l = std::max(l, max_abs_gamma_[n]);
    double mu0_max = -1e300;
    for (int i = 0; i < k; ++i) mu0_max = std::max(mu0_max, inst.mean(i, 0));
    double conv = 0.0;
    for (int i = 0; i < k; ++i) conv = std::max(conv, std::abs(inst.mean(i, 0) - mu0_max));
    l_from_convention_ = conv > l;
    l_value_ = std::max(l, conv);
}

double ComplexityProfile::upsilon(long M, double q) const {
    double acc = 0.0;
    for (long t = 1; t <= std::min(M - 1, horizon_); ++t) acc += pow_q(max_gamma_[t], q);
    return acc;
}

double ComplexityProfile::total_decrement(long M, DecrementConvention c) const {
    double acc = 0.0;
    for (long n = 1; n <= std::min(M - 1, horizon_); ++n)
        acc += c == DecrementConvention::Magnitude ? max_abs_gamma_[n] : max_gamma_[n];
    return acc;
}

double upsilon(const GtbInstance& inst, long M, double q) {
    if (inst.kind != Kind::Rising) throw BadArguments("upsilon is a rising-instance measure");
    if (M < 2 || M > inst.T) throw BadArguments("upsilon needs 2 <= M <= T");
    if (q < 0 || q > 1) throw BadArguments("upsilon needs q in [0,1]");
    return ComplexityProfile(inst).upsilon(M, q);
}

double total_decrement(const GtbInstance& inst, long M, DecrementConvention c) {
    if (inst.kind != Kind::Rotting) throw BadArguments("total decrement is a rotting-instance measure");
    if (M < 1 || M > inst.T) throw BadArguments("total decrement needs 1 <= M <= T");
    return ComplexityProfile(inst).total_decrement(M, c);
}

double max_variation(const GtbInstance& inst) {
    if (inst.kind != Kind::Rotting) throw BadArguments("max variation is a rotting-instance measure");
    return ComplexityProfile(inst).max_variation();
}

double regret(const GtbInstance& inst, double j, const OracleSolution& oracle) {
    if (oracle.k != inst.k() || oracle.T != inst.T || oracle.kind != inst.kind)
        throw OracleMismatch("oracle was solved for a different instance");
    return oracle.j_star - j;
}

double regret(const GtbInstance& inst, const RunResult& run, const OracleSolution& oracle) {
    return regret(inst, run.J, oracle);
}

namespace {

long ceil_div_scaled(double scale, long T, long denom) {
    // ceil(scale * T / denom), clamped to at least 1
    const double v = scale * static_cast<double>(T) / static_cast<double>(denom);
    return std::max<long>(1, static_cast<long>(std::ceil(v - 1e-12)));
}

} // namespace

BoundCurve bound_rising_stochastic(const ComplexityProfile& profile,
                                   const CliquePartition& partition, double epsilon, double alpha,
                                   double sigma, const std::vector<long>& t_grid,
                                   const std::vector<double>& q_grid) {
    if (!(epsilon > 0 && epsilon < 0.5) || !(alpha > 2) || sigma < 0)
        throw BadParameters("bound_rising_stochastic needs epsilon in (0,1/2), alpha > 2, sigma >= 0");
    int k = 0;
    long k1 = 0;
    for (const auto& b : partition.blocks) {
        k += static_cast<int>(b.size());
        if (b.size() == 1) ++k1;
    }
    const double ceil_eps = std::ceil(1.0 / epsilon);
    const double ceil_gap = std::ceil(1.0 / (1.0 - 2.0 * epsilon));

    BoundCurve curve;
    curve.theorem = "thm6";
    curve.constants_mode = "explicit";
    curve.epsilon = epsilon;
    curve.alpha = alpha;
    curve.sigma = sigma;
    curve.t_grid = t_grid;
    for (long T : t_grid) {
        if (T > profile.horizon()) throw BadArguments("bound grid point beyond tabulated horizon");
        const double Td = static_cast<double>(T);
        const double log_t = std::log(Td);
        const double base = 1.0 + 2.0 * k / (alpha - 2.0) + 5.0 * k + k / epsilon +
                            (3.0 * k / epsilon) * std::pow(2.0 * sigma * Td, 2.0 / 3.0) *
                                std::pow(10.0 * alpha * log_t, 1.0 / 3.0) +
                            2.0 * k;
        double best = 0, best_q = 0;
        bool first = true;
        for (double q : q_grid) {
            double v = base;
            if (k1 > 0) {
                const long m = ceil_div_scaled(1.0 - 2.0 * epsilon, T, k1);
                v += static_cast<double>(k1) * std::pow(Td, q) * ceil_gap * profile.upsilon(m, q);
            }
            const double log_factor = std::max(1.0 + std::log(epsilon * Td), 0.0);
            const double common = std::pow(Td, 2.0 * q / (1.0 + q)) *
                                  std::pow(log_factor, q / (1.0 + q)) * ceil_eps * ceil_gap;
            double restless = static_cast<double>(k) *
                              std::pow(profile.upsilon(ceil_div_scaled(1.0 - 2.0 * epsilon, T, k), q),
                                       1.0 / (1.0 + q));
            for (const auto& b : partition.blocks) {
                if (b.size() <= 1) continue;
                const long c = static_cast<long>(b.size());
                restless += static_cast<double>(c) *
                            std::pow(profile.upsilon(ceil_div_scaled(1.0 - 2.0 * epsilon, T, c), q),
                                     1.0 / (1.0 + q));
            }
            v += common * restless;
            if (first || v < best) {
                best = v;
                best_q = q;
                first = false;
            }
        }
        curve.values.push_back(best);
        curve.q_star.push_back(best_q);
    }
    return curve;
}

RottingBoundParts rotting_bound_parts(const ComplexityProfile& profile,
                                      const CliquePartition& partition, double alpha, double sigma,
                                      long T) {
    if (T > profile.horizon()) throw BadArguments("bound grid point beyond tabulated horizon");
    int k = 0;
    for (const auto& b : partition.blocks) k += static_cast<int>(b.size());
    const double L = profile.max_variation();
    const double Td = static_cast<double>(T);
    const double log_t = std::log(Td);
    const double V = profile.total_decrement(T, DecrementConvention::Magnitude);

    double sum_c2 = 0, rested_sq = 0, restless_a = 0, restless_b = 0;
    for (const auto& b : partition.blocks) {
        const double c = static_cast<double>(b.size());
        const double share = c / static_cast<double>(k) * Td;
        sum_c2 += c * c;
        rested_sq += std::sqrt(std::max(c * share * log_t, 0.0));
        restless_a += std::pow(V * c * share * share * log_t, 1.0 / 3.0);
        restless_b += std::pow(V * V * c * c * share * std::sqrt(log_t), 1.0 / 3.0);
    }
    RottingBoundParts parts;
    parts.rested_root = 2.0 * sigma * rested_sq;
    parts.good_event = 2.0 * k * sigma * std::sqrt(log_t) + L * sum_c2 + parts.rested_root;
    parts.bad_event = 2.0 * k * L;
    parts.restless_cube = 4.0 * std::pow(8.0 * alpha * sigma, 2.0 / 3.0) * restless_a;
    parts.in_clique = 6.0 * k * V + parts.restless_cube +
                      2.0 * std::pow(2.0 * std::sqrt(2.0) * alpha * sigma, 1.0 / 3.0) * restless_b;
    return parts;
}

BoundCurve bound_rotting(const ComplexityProfile& profile, const CliquePartition& partition,
                         double alpha, double sigma, const std::vector<long>& t_grid) {
    if (!(alpha >= 5) || sigma < 0)
        throw BadParameters("bound_rotting needs alpha >= 5 and sigma >= 0");
    BoundCurve curve;
    curve.theorem = "thm10";
    curve.constants_mode = "explicit";
    curve.alpha = alpha;
    curve.sigma = sigma;
    curve.t_grid = t_grid;
    for (long T : t_grid)
        curve.values.push_back(rotting_bound_parts(profile, partition, alpha, sigma, T).total());
    return curve;
}

BoundCurve bound_rising_deterministic(const ComplexityProfile& profile,
                                      const CliquePartition& partition,
                                      const std::vector<long>& t_grid,
                                      const std::vector<double>& q_grid) {
    BoundCurve curve;
    curve.theorem = "thm3";
    curve.constants_mode = "order-level";
    curve.t_grid = t_grid;
    for (long T : t_grid) {
        if (T > profile.horizon()) throw BadArguments("bound grid point beyond tabulated horizon");
        const double Td = static_cast<double>(T);
        double best = 0, best_q = 0;
        bool first = true;
        for (double q : q_grid) {
            double rested = 0, restless = 0;
            for (const auto& b : partition.blocks) {
                const long c = static_cast<long>(b.size());
                const double u = profile.upsilon((T + c - 1) / c, q);
                rested += static_cast<double>(c) * u;
                if (c > 1)
                    restless += static_cast<double>(c) * std::pow(Td, q / (1.0 + q)) *
                                std::pow(u, 1.0 / (1.0 + q));
            }
            const double v = std::pow(Td, q) * rested + restless;
            if (first || v < best) {
                best = v;
                best_q = q;
                first = false;
            }
        }
        curve.values.push_back(best);
        curve.q_star.push_back(best_q);
    }
    return curve;
}

} // namespace gtb
