#ifndef GTB_DYNAMICS_HPP
#define GTB_DYNAMICS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gtb/graph.hpp"
#include "gtb/rewards.hpp"
#include "gtb/rng.hpp"

namespace gtb {

// Full interaction record of one episode: actions, observed rewards, pull
// counts N, trigger counts ~N, pull rounds and internal times per arm.
// Internal times are stored at pull time so estimator inputs are O(1).
// Optionally maintains a second set of trigger counters under an override
// block-diagonal matrix (the sub-matrix internal times used by DR-G-UB).
class History {
public:
    explicit History(const GtbInstance& inst)
        : History(inst.graph, inst.T, inst.sigma > 0) {}
    History(const GtbInstance& inst, const CliquePartition& aux)
        : History(inst.graph, inst.T, inst.sigma > 0) {
        aux_partition_ = aux;
        aux_adj_ = aux.to_matrix(graph_.k());
        has_aux_ = true;
        aux_triggers_.assign(graph_.k(), 0);
        aux_internal_.assign(graph_.k(), {});
    }
    History(const ConnectivityMatrix& g, long T, bool noisy = false);

    void record(int arm, double reward);

    long round() const { return t_; }
    long horizon() const { return horizon_; }
    int k() const { return graph_.k(); }
    bool noisy() const { return noisy_; }
    const ConnectivityMatrix& graph() const { return graph_; }

    const std::vector<int>& actions() const { return actions_; }
    const std::vector<double>& rewards() const { return rewards_; }

    long pulls(int arm) const { return static_cast<long>(pull_rounds_[arm].size()); }
    long triggers(int arm) const { return triggers_[arm]; }
    // n is the 1-based pull index
    long pull_round(int arm, long n) const { return pull_rounds_[arm][n - 1]; }
    long internal_time(int arm, long n) const { return internal_[arm][n - 1]; }
    double observation(int arm, long n) const { return obs_[arm][n - 1]; }

    bool has_aux() const { return has_aux_; }
    const CliquePartition& aux_partition() const { return aux_partition_; }
    long aux_internal_time(int arm, long n) const { return aux_internal_[arm][n - 1]; }

private:
    ConnectivityMatrix graph_;
    long horizon_;
    bool noisy_;
    long t_ = 0;
    std::vector<int> actions_;
    std::vector<double> rewards_;
    std::vector<long> triggers_;
    std::vector<std::vector<long>> pull_rounds_;
    std::vector<std::vector<long>> internal_;
    std::vector<std::vector<double>> obs_;

    bool has_aux_ = false;
    CliquePartition aux_partition_;
    ConnectivityMatrix aux_adj_;
    std::vector<long> aux_triggers_;
    std::vector<std::vector<long>> aux_internal_;
};

// Spec-level convenience wrapper; the instance supplies nothing beyond what
// the history already carries.
void record_pull(History& h, const GtbInstance& inst, int arm, double reward);

// Number of triggers of a clique: the summed pull counts of its arms.
long clique_trigger_count(const History& h, const CliquePartition& partition, std::size_t block);

struct EpisodeContext {
    int k = 0;
    long T = 0;
    double sigma = 0;
};

// Decision rule. Policies see bandit feedback only: the round index, their
// own chosen arms and the rewards those pulls returned. Graph-aware
// algorithms receive the matrix at construction and reconstruct trigger
// counts from their own action stream.
class Policy {
public:
    virtual ~Policy() = default;
    virtual std::string name() const = 0;
    virtual void reset(const EpisodeContext& ctx) = 0;
    virtual int select(long t, Rng& rng) = 0;
    virtual void observe(int arm, double reward) = 0;
};

struct OracleValue {
    double j_star = 0;
    std::vector<double> prefix;  // J*(t) for t=1..T when the oracle is simulable
};

struct RunResult {
    std::vector<int> actions;
    std::vector<double> rewards;           // observed, noise included
    std::vector<double> expected_rewards;  // mu at the realized trigger counts
    double J = 0;                          // sum of expected rewards
    std::optional<double> final_regret;
    std::vector<double> regret_curve;      // J*(t) - J(t); empty without oracle prefixes
};

// Runs T rounds of policy against the instance. Each round the policy picks
// an arm, the environment samples a reward at the post-pull trigger count,
// and the policy observes it. J accumulates true means.
RunResult run_episode(const GtbInstance& inst, Policy& policy, Rng& rng,
                      const OracleValue* oracle = nullptr, History* out_history = nullptr);

// Deterministic cumulative expected reward of a fixed action sequence.
double evaluate_sequence(const GtbInstance& inst, const std::vector<int>& actions);

} // namespace gtb

#endif
