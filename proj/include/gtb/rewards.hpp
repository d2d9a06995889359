#ifndef GTB_REWARDS_HPP
#define GTB_REWARDS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtb/graph.hpp"
#include "gtb/rng.hpp"

namespace gtb {

// Expected-reward curve, evaluable at every integer n >= 0. Index n counts
// triggers; pulls only ever realize n >= 1, n = 0 exists for the variation
// measure's convention.
class RewardCurve {
public:
    enum class Family {
        Constant,
        SaturatingLinear,
        ExponentialRise,
        StepDown,
        ExponentialDecay,
        Tabulated,
    };

    static RewardCurve constant(double c) { return {Family::Constant, c, 0}; }
    // min(slope*n, cap)
    static RewardCurve saturating_linear(double slope, double cap) {
        return {Family::SaturatingLinear, slope, cap};
    }
    // c*(1 - rho^n)
    static RewardCurve exponential_rise(double c, double rho) {
        return {Family::ExponentialRise, c, rho};
    }
    // level for n <= cutoff, else 0
    static RewardCurve step_down(double level, long cutoff) {
        return {Family::StepDown, level, static_cast<double>(cutoff)};
    }
    // c*rho^n
    static RewardCurve exponential_decay(double c, double rho) {
        return {Family::ExponentialDecay, c, rho};
    }
    // values[i] = mu(i) starting at n=0; clamps to the last entry beyond the table
    static RewardCurve tabulated(std::vector<double> values_from_zero);

    double value(long n) const;

    Family family() const { return family_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<double>& table() const { return table_; }

private:
    RewardCurve(Family f, double a, double b) : family_(f), a_(a), b_(b) {}
    Family family_;
    double a_, b_;
    std::vector<double> table_;
};

enum class Kind { Rising, Rotting };

// An instance (nu, G, T): one curve per arm, the connectivity matrix, the
// horizon, and the Gaussian noise scale. The gadget flag exempts hardness
// constructions from the [0,1] range convention (their curves exceed 1 by
// design and are only ever used with sigma=0).
struct GtbInstance {
    std::vector<RewardCurve> curves;
    ConnectivityMatrix graph;
    long T = 0;
    double sigma = 0;
    Kind kind = Kind::Rising;
    bool gadget = false;

    int k() const { return static_cast<int>(curves.size()); }
    double mean(int arm, long n) const { return curves[arm].value(n); }
};

// gamma_i(n) = mu_i(n+1) - mu_i(n); requires arm in [0,k) and 1 <= n <= T-1.
double gamma(const GtbInstance& inst, int arm, long n);

struct AssumptionViolation {
    int arm = -1;
    long n = 0;
    double gamma_n = 0;
    double gamma_prev = 0;  // set for concavity violations
};

struct AssumptionReport {
    bool pass = true;
    std::optional<AssumptionViolation> monotonicity;
    std::optional<AssumptionViolation> concavity;  // rising only
    std::optional<AssumptionViolation> range;      // mu outside [0,1]; skipped for gadgets
    std::string describe() const;
};

// Scans n in [1, T-1] per arm; reports the first violation per clause.
// Violations are data, not faults. Comparison tolerance 1e-12.
AssumptionReport check_assumption(const GtbInstance& inst);

// mu_arm(trigger_count) plus Gaussian noise of scale sigma; sigma=0 returns
// the mean exactly and does not consume the rng.
double sample_reward(const GtbInstance& inst, int arm, long trigger_count, Rng& rng);

// Hardness construction for rising instances: one arm per (node, round)
// pair, arms of adjacent nodes all connected, curves
// mu_{v,t'}(n) = min{1+eta*t', (n/t')*(1+eta*t')} with eta = T^-2. The
// optimum reaches sum_t (1+eta*t) iff the graph has a clique of size T.
GtbInstance rising_clique_gadget(int num_nodes, const std::vector<std::pair<int, int>>& edges,
                                 long T);

// Hardness construction for rotting instances: one arm per node, curves
// mu(n) = max{2-n, 0}. The optimum reaches T iff an independent set of size
// T exists.
GtbInstance rotting_independent_set_gadget(int num_nodes,
                                           const std::vector<std::pair<int, int>>& edges, long T);

// Non-learnability pair: 3 arms, edges {0,1} and {0,2} (not block-diagonal).
// Arms 1,2 pay 2/3 for their first T/2 triggers. Arm 0 pays 1 for its first
// T/2 triggers in the first instance, and 1 for all T triggers in the
// second. T must be even and >= 4.
std::pair<GtbInstance, GtbInstance> rotting_lower_bound_pair(long T);

struct RandomInstanceSpec {
    Kind kind = Kind::Rising;
    int k = 2;
    // graph: blocks if non-empty; else G(k, edge_density) if density >= 0;
    // else identity.
    std::vector<int> block_sizes;
    double edge_density = -1;
    RewardCurve::Family family = RewardCurve::Family::ExponentialRise;
    double level_lo = 0.1, level_hi = 0.9;  // scale-parameter range
    long T = 10;
    double sigma = 0;
    int max_retries = 64;
};

// Instance passing check_assumption for its kind; parameters are resampled
// until valid, GenerationFailed past the retry cap.
GtbInstance random_instance(const RandomInstanceSpec& spec, Rng& rng);

} // namespace gtb

#endif
