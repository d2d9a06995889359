#ifndef GTB_POLICIES_HPP
#define GTB_POLICIES_HPP

#include <memory>
#include <string>
#include <vector>

#include "gtb/dynamics.hpp"
#include "gtb/estimators.hpp"

namespace gtb {

// Everything ties break to the lowest arm index; cliques and partitions to
// the lexicographically smallest, matching the graph module's canonical form.

// Optimistic greedy on the last-two-observations extrapolation, for
// deterministic rising instances with a block-diagonal matrix. Plays every
// arm twice before the estimator is defined (the +infinity sentinel makes
// this automatic).
std::unique_ptr<Policy> dr_bd_ub(const GtbInstance& inst, const ConnectivityMatrix& g);

// General-matrix variant: extracts a maximal sub-matrix of g (exact below
// the cap, greedy above) and runs the same estimator on sub-matrix internal
// times.
std::unique_ptr<Policy> dr_g_ub(const GtbInstance& inst, const ConnectivityMatrix& g,
                                int exact_cap = 10);

// Which sub-matrix a DR-G-UB policy settled on; null for other policies.
struct SubMatrixInfo {
    CliquePartition partition;
    bool exact = false;
};
const SubMatrixInfo* sub_matrix_info(const Policy& p);

// Sliding-window UCB for stochastic rising instances; anytime and
// graph-agnostic. Window h = floor(epsilon * N), index = windowed estimate
// plus the beta radius at delta_t = t^-alpha.
std::unique_ptr<Policy> r_square_ucb(const WindowConfig& cfg);

// Adaptive-window UCB for stochastic rotting instances; graph-agnostic.
// Index = min over h of trailing-mean plus radius c(h, t^-alpha).
std::unique_ptr<Policy> raw_ucb(const WindowConfig& cfg);

std::unique_ptr<Policy> fixed_arm(int arm);
std::unique_ptr<Policy> uniform_random();
std::unique_ptr<Policy> round_robin();
std::unique_ptr<Policy> scripted(std::vector<int> actions, std::string label = "scripted");

struct OracleSolution {
    double j_star = 0;
    std::vector<int> sequence;       // an optimal action sequence, when available
    std::string method;              // closed-form-rising | closed-form-rotting | brute-force
    std::vector<int> best_clique;    // rising block-diagonal only
    std::vector<double> prefix;      // J*(t) for t = 1..T, closed-form oracles only
    Kind kind = Kind::Rising;
    int k = 0;
    long T = 0;

    OracleValue value() const { return OracleValue{j_star, prefix}; }
};

// Best-cumulative-reward clique, then greedy inside it.
OracleSolution oracle_rising_block(const GtbInstance& inst);

// Greedy on prospective means; the value is cross-checked against the
// closed-form clique allocation sum.
OracleSolution oracle_rotting_block(const GtbInstance& inst);

// Exhaustive search over action sequences with branch-and-bound pruning;
// requires sigma = 0 and k^T within the cap.
OracleSolution oracle_brute_force(const GtbInstance& inst, double cap = 1e7);

} // namespace gtb

#endif
