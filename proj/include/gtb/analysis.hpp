#ifndef GTB_ANALYSIS_HPP
#define GTB_ANALYSIS_HPP

#include <string>
#include <vector>

#include "gtb/policies.hpp"
#include "gtb/rewards.hpp"

namespace gtb {

enum class DecrementConvention {
    Magnitude,  // sum of max |gamma| per step; nonnegative, used by the bounds
    Literal,    // the signed formula as written; nonpositive for rotting curves
};

// Per-step increment tables of an instance, tabulated once up to a chosen
// horizon so bound curves can be evaluated over a T grid.
class ComplexityProfile {
public:
    ComplexityProfile(const GtbInstance& inst, long horizon);
    explicit ComplexityProfile(const GtbInstance& inst) : ComplexityProfile(inst, inst.T) {}

    long horizon() const { return horizon_; }

    // Total increment: sum_{t<M} (max_i gamma_i(t))^q. M=1 gives 0. The q=0
    // power is read as 1{gamma > 1e-12}, so it counts strictly rising steps.
    double upsilon(long M, double q) const;

    // Total decrement over [M-1] steps.
    double total_decrement(long M, DecrementConvention c = DecrementConvention::Magnitude) const;

    // Max per-step variation |gamma| over n in [T], with the start-of-curve
    // convention term |mu_i(0) - max_j mu_j(0)| as an extra candidate.
    double max_variation() const { return l_value_; }
    bool max_variation_from_convention() const { return l_from_convention_; }

    // max_i gamma_i(n) for n = 1..horizon
    const std::vector<double>& max_gamma() const { return max_gamma_; }

private:
    long horizon_;
    std::vector<double> max_gamma_;      // per n, max over arms of gamma
    std::vector<double> max_abs_gamma_;  // per n, max over arms of |gamma|
    double l_value_ = 0;
    bool l_from_convention_ = false;
};

// Spec-level wrappers with the documented argument checks.
double upsilon(const GtbInstance& inst, long M, double q);
double total_decrement(const GtbInstance& inst, long M,
                       DecrementConvention c = DecrementConvention::Magnitude);
double max_variation(const GtbInstance& inst);

// J* - J; throws OracleMismatch when the oracle was computed for a
// different instance shape.
double regret(const GtbInstance& inst, double j, const OracleSolution& oracle);
double regret(const GtbInstance& inst, const RunResult& run, const OracleSolution& oracle);

struct BoundCurve {
    std::string theorem;         // thm3 | thm4 | thm6 | thm7 | thm10
    std::string constants_mode;  // explicit | order-level
    std::string partition_note;  // which partition the curve was computed for
    std::vector<long> t_grid;
    std::vector<double> values;
    std::vector<double> q_star;  // chosen q per grid point; empty for thm10
    double epsilon = 0, alpha = 0, sigma = 0;
};

inline std::vector<double> default_q_grid() {
    std::vector<double> q;
    for (int i = 0; i <= 20; ++i) q.push_back(i / 20.0);
    return q;
}

// Explicit-constant regret bound of the sliding-window UCB on rising
// instances, minimized over the q grid. The partition is the instance's
// clique partition (block-diagonal case) or the minimal super-matrix
// partition (general case); singleton blocks feed the rested term.
BoundCurve bound_rising_stochastic(const ComplexityProfile& profile, const CliquePartition& partition,
                                   double epsilon, double alpha, double sigma,
                                   const std::vector<long>& t_grid,
                                   const std::vector<double>& q_grid = default_q_grid());

// Explicit-constant regret bound of the adaptive-window UCB on rotting
// block-diagonal instances, with clique allocations replaced by (|C|/k)T.
BoundCurve bound_rotting(const ComplexityProfile& profile, const CliquePartition& partition,
                         double alpha, double sigma, const std::vector<long>& t_grid);

// Labeled components of the rotting bound at one horizon.
struct RottingBoundParts {
    double good_event = 0;    // cross-clique part under the good events
    double bad_event = 0;     // 2kL
    double in_clique = 0;     // within-clique restless part
    double rested_root = 0;   // 2*sigma*sum_C sqrt(|C|*(|C|/k)T*lnT), inside good_event
    double restless_cube = 0; // 4(8*alpha*sigma)^(2/3)*sum_C (...)^(1/3), inside in_clique
    double total() const { return good_event + bad_event + in_clique; }
};
RottingBoundParts rotting_bound_parts(const ComplexityProfile& profile,
                                      const CliquePartition& partition, double alpha, double sigma,
                                      long T);

// Order-level (unit-constant) bound for the deterministic rising
// algorithms; partition is the true clique partition or a maximal
// sub-matrix.
BoundCurve bound_rising_deterministic(const ComplexityProfile& profile,
                                      const CliquePartition& partition,
                                      const std::vector<long>& t_grid,
                                      const std::vector<double>& q_grid = default_q_grid());

} // namespace gtb

#endif
