#include "gtb/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gtb/errors.hpp"

namespace gtb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int argmax_lowest(const std::vector<double>& values) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(values.size()); ++i)
        if (values[i] > values[best]) best = i;
    return best;
}

// Shared core of DR-BD-UB and DR-G-UB: greedy on the last-two-observations
// extrapolation, with trigger counters maintained under the supplied matrix.
class DetRisingPolicy final : public Policy {
public:
    DetRisingPolicy(std::string name, ConnectivityMatrix m) : name_(std::move(name)), m_(std::move(m)) {}

    std::string name() const override { return name_; }

    void reset(const EpisodeContext& ctx) override {
        if (ctx.k != m_.k()) throw BadParameters(name_ + ": matrix size does not match instance");
        if (ctx.sigma != 0) throw StochasticInstance();
        triggers_.assign(ctx.k, 0);
        arms_.assign(ctx.k, {});
        index_.assign(ctx.k, 0.0);
    }

    int select(long t, Rng&) override {
        for (int i = 0; i < static_cast<int>(arms_.size()); ++i) {
            const ArmState& a = arms_[i];
            if (a.n < 2) {
                index_[i] = kInf;
            } else {
                index_[i] = a.x_last + static_cast<double>(t - a.t_last) * (a.x_last - a.x_prev) /
                                           static_cast<double>(a.t_last - a.t_prev);
            }
        }
        return argmax_lowest(index_);
    }

    void observe(int arm, double reward) override {
        for (int j = 0; j < m_.k(); ++j)
            if (m_.at(arm, j)) ++triggers_[j];
        ArmState& a = arms_[arm];
        a.t_prev = a.t_last;
        a.x_prev = a.x_last;
        a.t_last = triggers_[arm];
        a.x_last = reward;
        ++a.n;
    }

    SubMatrixInfo sub_info;
    bool has_sub_info = false;

private:
    struct ArmState {
        long n = 0;
        long t_last = 0, t_prev = 0;  // internal times of the last two pulls
        double x_last = 0, x_prev = 0;
    };

    std::string name_;
    ConnectivityMatrix m_;
    std::vector<long> triggers_;
    std::vector<ArmState> arms_;
    std::vector<double> index_;
};

class RSquareUcbPolicy final : public Policy {
public:
    explicit RSquareUcbPolicy(const WindowConfig& cfg) : cfg_(cfg) {}

    std::string name() const override { return "r_square_ucb"; }

    void reset(const EpisodeContext& ctx) override {
        obs_.assign(ctx.k, {});
        index_.assign(ctx.k, 0.0);
    }

    int select(long t, Rng&) override {
        const double td = static_cast<double>(t);
        const double log_term = 10.0 * cfg_.alpha * std::log(td);
        for (int i = 0; i < static_cast<int>(obs_.size()); ++i) {
            const auto& x = obs_[i];
            const long n = static_cast<long>(x.size());
            const long h = static_cast<long>(std::floor(cfg_.epsilon * static_cast<double>(n)));
            if (h < 1) {
                index_[i] = kInf;
                continue;
            }
            const double hd = static_cast<double>(h);
            double acc = 0;
            for (long l = n - h + 1; l <= n; ++l)
                acc += x[l - 1] + static_cast<double>(t - l) * (x[l - 1] - x[l - h - 1]) / hd;
            const double beta = cfg_.sigma * static_cast<double>(t - n + h - 1) *
                                std::sqrt(log_term / (hd * hd * hd));
            index_[i] = acc / hd + beta;
        }
        return argmax_lowest(index_);
    }

    void observe(int arm, double reward) override { obs_[arm].push_back(reward); }

private:
    WindowConfig cfg_;
    std::vector<std::vector<double>> obs_;
    std::vector<double> index_;
};

class RawUcbPolicy final : public Policy {
public:
    explicit RawUcbPolicy(const WindowConfig& cfg) : cfg_(cfg) {}

    std::string name() const override { return "raw_ucb"; }

    void reset(const EpisodeContext& ctx) override {
        prefix_.assign(ctx.k, {0.0});
        index_.assign(ctx.k, 0.0);
    }

    int select(long t, Rng&) override {
        const double log_term =
            2.0 * cfg_.sigma * cfg_.sigma * std::log(2.0 * std::pow(static_cast<double>(t), cfg_.alpha));
        for (int i = 0; i < static_cast<int>(prefix_.size()); ++i) {
            const auto& p = prefix_[i];
            const long n = static_cast<long>(p.size()) - 1;
            if (n == 0) {
                index_[i] = kInf;
                continue;
            }
            double best = kInf;
            for (long h = 1; h <= n; ++h) {
                const double mean = (p[n] - p[n - h]) / static_cast<double>(h);
                const double ucb = mean + std::sqrt(log_term / static_cast<double>(h));
                if (ucb < best) best = ucb;
            }
            index_[i] = best;
        }
        return argmax_lowest(index_);
    }

    void observe(int arm, double reward) override {
        prefix_[arm].push_back(prefix_[arm].back() + reward);
    }

private:
    WindowConfig cfg_;
    std::vector<std::vector<double>> prefix_;
    std::vector<double> index_;
};

class FixedArmPolicy final : public Policy {
public:
    explicit FixedArmPolicy(int arm) : arm_(arm) {}
    std::string name() const override { return "fixed_arm_" + std::to_string(arm_); }
    void reset(const EpisodeContext& ctx) override {
        if (arm_ < 0 || arm_ >= ctx.k) throw InvalidArm(arm_, ctx.k);
    }
    int select(long, Rng&) override { return arm_; }
    void observe(int, double) override {}

private:
    int arm_;
};

class UniformRandomPolicy final : public Policy {
public:
    std::string name() const override { return "uniform_random"; }
    void reset(const EpisodeContext& ctx) override { k_ = ctx.k; }
    int select(long, Rng& rng) override { return static_cast<int>(rng.next_below(k_)); }
    void observe(int, double) override {}

private:
    int k_ = 1;
};

class RoundRobinPolicy final : public Policy {
public:
    std::string name() const override { return "round_robin"; }
    void reset(const EpisodeContext& ctx) override { k_ = ctx.k; }
    int select(long t, Rng&) override { return static_cast<int>((t - 1) % k_); }
    void observe(int, double) override {}

private:
    int k_ = 1;
};

class ScriptedPolicy final : public Policy {
public:
    ScriptedPolicy(std::vector<int> actions, std::string label)
        : actions_(std::move(actions)), label_(std::move(label)) {}
    std::string name() const override { return label_; }
    void reset(const EpisodeContext& ctx) override {
        if (static_cast<long>(actions_.size()) < ctx.T)
            throw BadParameters("scripted policy has fewer actions than the horizon");
    }
    int select(long t, Rng&) override { return actions_[t - 1]; }
    void observe(int, double) override {}

private:
    std::vector<int> actions_;
    std::string label_;
};

} // namespace

std::unique_ptr<Policy> dr_bd_ub(const GtbInstance& inst, const ConnectivityMatrix& g) {
    if (inst.sigma != 0) throw StochasticInstance();
    if (inst.kind != Kind::Rising) throw BadParameters("dr_bd_ub expects a rising instance");
    validate(g);
    if (!block_diagonal_partition(g)) throw NotBlockDiagonal();
    return std::make_unique<DetRisingPolicy>("dr_bd_ub", g);
}

std::unique_ptr<Policy> dr_g_ub(const GtbInstance& inst, const ConnectivityMatrix& g,
                                int exact_cap) {
    if (inst.sigma != 0) throw StochasticInstance();
    if (inst.kind != Kind::Rising) throw BadParameters("dr_g_ub expects a rising instance");
    validate(g);
    const bool exact = g.k() <= exact_cap;
    CliquePartition part =
        maximal_sub_matrix(g, exact ? SubMatrixMode::Exact : SubMatrixMode::Greedy, exact_cap);
    auto p = std::make_unique<DetRisingPolicy>("dr_g_ub", part.to_matrix(g.k()));
    p->sub_info = SubMatrixInfo{part, exact};
    p->has_sub_info = true;
    return p;
}

const SubMatrixInfo* sub_matrix_info(const Policy& p) {
    auto* d = dynamic_cast<const DetRisingPolicy*>(&p);
    return d && d->has_sub_info ? &d->sub_info : nullptr;
}

std::unique_ptr<Policy> r_square_ucb(const WindowConfig& cfg) {
    validate_rising(cfg);
    return std::make_unique<RSquareUcbPolicy>(cfg);
}

std::unique_ptr<Policy> raw_ucb(const WindowConfig& cfg) {
    validate_rotting(cfg);
    return std::make_unique<RawUcbPolicy>(cfg);
}

std::unique_ptr<Policy> fixed_arm(int arm) { return std::make_unique<FixedArmPolicy>(arm); }
std::unique_ptr<Policy> uniform_random() { return std::make_unique<UniformRandomPolicy>(); }
std::unique_ptr<Policy> round_robin() { return std::make_unique<RoundRobinPolicy>(); }
std::unique_ptr<Policy> scripted(std::vector<int> actions, std::string label) {
    return std::make_unique<ScriptedPolicy>(std::move(actions), std::move(label));
}

OracleSolution oracle_rising_block(const GtbInstance& inst) {
    if (inst.kind != Kind::Rising) throw BadArguments("rising oracle on a rotting instance");
    validate(inst.graph);
    auto part = block_diagonal_partition(inst.graph);
    if (!part) throw NotBlockDiagonal();
    const auto& blocks = part->blocks;
    const long T = inst.T;

    std::vector<double> clique_prefix(blocks.size(), 0.0);
    std::vector<double> prefix(T, 0.0);
    for (long t = 1; t <= T; ++t) {
        for (std::size_t m = 0; m < blocks.size(); ++m) {
            double row = -kInf;
            for (int j : blocks[m]) row = std::max(row, inst.mean(j, t));
            clique_prefix[m] += row;
        }
        prefix[t - 1] = *std::max_element(clique_prefix.begin(), clique_prefix.end());
    }
    // C* is the clique with the best horizon-T total; first block wins ties
    std::size_t star = 0;
    for (std::size_t m = 1; m < blocks.size(); ++m)
        if (clique_prefix[m] > clique_prefix[star]) star = m;

    OracleSolution sol;
    sol.method = "closed-form-rising";
    sol.kind = inst.kind;
    sol.k = inst.k();
    sol.T = T;
    sol.best_clique = blocks[star];
    sol.prefix = std::move(prefix);
    sol.j_star = sol.prefix.back();
    sol.sequence.reserve(T);
    for (long t = 1; t <= T; ++t) {
        int pick = blocks[star].front();
        for (int j : blocks[star])
            if (inst.mean(j, t) > inst.mean(pick, t)) pick = j;
        sol.sequence.push_back(pick);
    }
    return sol;
}

OracleSolution oracle_rotting_block(const GtbInstance& inst) {
    if (inst.kind != Kind::Rotting) throw BadArguments("rotting oracle on a rising instance");
    validate(inst.graph);
    auto part = block_diagonal_partition(inst.graph);
    if (!part) throw NotBlockDiagonal();
    const int k = inst.k();
    const long T = inst.T;

    OracleSolution sol;
    sol.method = "closed-form-rotting";
    sol.kind = inst.kind;
    sol.k = k;
    sol.T = T;
    sol.prefix.reserve(T);
    sol.sequence.reserve(T);

    std::vector<long> triggers(k, 0);
    double j = 0;
    for (long t = 1; t <= T; ++t) {
        int pick = 0;
        double best = -kInf;
        for (int i = 0; i < k; ++i) {
            const double v = inst.mean(i, triggers[i] + 1);
            if (v > best) {
                best = v;
                pick = i;
            }
        }
        for (int i = 0; i < k; ++i)
            if (inst.graph.at(pick, i)) ++triggers[i];
        j += inst.mean(pick, triggers[pick]);
        sol.prefix.push_back(j);
        sol.sequence.push_back(pick);
    }
    sol.j_star = j;

    // closed-form cross-check: sum over cliques of the running maxima up to
    // the realized clique allocations
    double closed = 0;
    for (const auto& block : part->blocks) {
        const long pulls = triggers[block.front()];
        for (long n = 1; n <= pulls; ++n) {
            double row = -kInf;
            for (int i : block) row = std::max(row, inst.mean(i, n));
            closed += row;
        }
    }
    if (std::abs(closed - j) > 1e-9 * std::max(1.0, std::abs(j)))
        throw Error("rotting oracle: greedy value and closed form disagree");
    return sol;
}

OracleSolution oracle_brute_force(const GtbInstance& inst, double cap) {
    if (inst.sigma != 0) throw BadArguments("brute-force oracle needs sigma=0");
    const int k = inst.k();
    const long T = inst.T;
    const double size = std::pow(static_cast<double>(k), static_cast<double>(T));
    if (size > cap) throw InstanceTooLarge("brute-force search space k^T", size, cap);

    double max_mu = -kInf;
    for (int i = 0; i < k; ++i)
        for (long n = 1; n <= T; ++n) max_mu = std::max(max_mu, inst.mean(i, n));

    std::vector<long> triggers(k, 0);
    std::vector<int> current(T, 0);
    std::vector<int> best_seq;
    double best = -kInf;

    auto dfs = [&](auto&& self, long depth, double j) -> void {
        if (depth == T) {
            if (j > best) {
                best = j;
                best_seq = current;
            }
            return;
        }
        if (j + static_cast<double>(T - depth) * max_mu <= best) return;
        for (int a = 0; a < k; ++a) {
            for (int i = 0; i < k; ++i)
                if (inst.graph.at(a, i)) ++triggers[i];
            current[depth] = a;
            self(self, depth + 1, j + inst.mean(a, triggers[a]));
            for (int i = 0; i < k; ++i)
                if (inst.graph.at(a, i)) --triggers[i];
        }
    };
    dfs(dfs, 0, 0.0);

    OracleSolution sol;
    sol.method = "brute-force";
    sol.kind = inst.kind;
    sol.k = k;
    sol.T = T;
    sol.j_star = best;
    sol.sequence = std::move(best_seq);
    return sol;
}

} // namespace gtb
