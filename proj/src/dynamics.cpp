#include "gtb/dynamics.hpp"

#include "gtb/errors.hpp"

namespace gtb {

History::History(const ConnectivityMatrix& g, long T, bool noisy)
    : graph_(g), horizon_(T), noisy_(noisy) {
    const int k = g.k();
    triggers_.assign(k, 0);
    pull_rounds_.assign(k, {});
    internal_.assign(k, {});
    obs_.assign(k, {});
}

void History::record(int arm, double reward) {
    const int k = graph_.k();
    if (arm < 0 || arm >= k) throw InvalidArm(arm, k);
    if (t_ >= horizon_) throw HorizonExceeded(horizon_);
    ++t_;
    actions_.push_back(arm);
    rewards_.push_back(reward);
    for (int j = 0; j < k; ++j)
        if (graph_.at(arm, j)) ++triggers_[j];
    pull_rounds_[arm].push_back(t_);
    internal_[arm].push_back(triggers_[arm]);
    obs_[arm].push_back(reward);
    if (has_aux_) {
        for (int j = 0; j < k; ++j)
            if (aux_adj_.at(arm, j)) ++aux_triggers_[j];
        aux_internal_[arm].push_back(aux_triggers_[arm]);
    }
}

void record_pull(History& h, const GtbInstance& inst, int arm, double reward) {
    (void)inst;
    h.record(arm, reward);
}

long clique_trigger_count(const History& h, const CliquePartition& partition, std::size_t block) {
    if (block >= partition.blocks.size()) throw BadArguments("block index outside partition");
    long n = 0;
    for (int arm : partition.blocks[block]) n += h.pulls(arm);
    return n;
}

RunResult run_episode(const GtbInstance& inst, Policy& policy, Rng& rng, const OracleValue* oracle,
                      History* out_history) {
    const int k = inst.k();
    History h(inst);
    policy.reset(EpisodeContext{k, inst.T, inst.sigma});
    RunResult res;
    res.actions.reserve(inst.T);
    res.rewards.reserve(inst.T);
    res.expected_rewards.reserve(inst.T);
    const bool curve = oracle && static_cast<long>(oracle->prefix.size()) >= inst.T;
    if (curve) res.regret_curve.reserve(inst.T);
    double j = 0;
    for (long t = 1; t <= inst.T; ++t) {
        const int arm = policy.select(t, rng);
        if (arm < 0 || arm >= k) throw InvalidArm(arm, k);
        const long n = h.triggers(arm) + 1;  // trigger count including this pull
        const double reward = sample_reward(inst, arm, n, rng);
        h.record(arm, reward);
        policy.observe(arm, reward);
        const double mu = inst.mean(arm, n);
        j += mu;
        res.actions.push_back(arm);
        res.rewards.push_back(reward);
        res.expected_rewards.push_back(mu);
        if (curve) res.regret_curve.push_back(oracle->prefix[t - 1] - j);
    }
    res.J = j;
    if (oracle) res.final_regret = oracle->j_star - j;
    if (out_history) *out_history = std::move(h);
    return res;
}

double evaluate_sequence(const GtbInstance& inst, const std::vector<int>& actions) {
    const int k = inst.k();
    std::vector<long> triggers(k, 0);
    double j = 0;
    for (int arm : actions) {
        if (arm < 0 || arm >= k) throw InvalidArm(arm, k);
        for (int i = 0; i < k; ++i)
            if (inst.graph.at(arm, i)) ++triggers[i];
        j += inst.mean(arm, triggers[arm]);
    }
    return j;
}

} // namespace gtb
