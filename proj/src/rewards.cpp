#include "gtb/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gtb/errors.hpp"

namespace gtb {

namespace {
constexpr double kTol = 1e-12;
}

RewardCurve RewardCurve::tabulated(std::vector<double> values_from_zero) {
    if (values_from_zero.empty()) throw BadArguments("tabulated curve needs at least one value");
    RewardCurve c(Family::Tabulated, 0, 0);
    c.table_ = std::move(values_from_zero);
    return c;
}

double RewardCurve::value(long n) const {
    switch (family_) {
        case Family::Constant:
            return a_;
        case Family::SaturatingLinear:
            return std::min(a_ * static_cast<double>(n), b_);
        case Family::ExponentialRise:
            return a_ * (1.0 - std::pow(b_, static_cast<double>(n)));
        case Family::StepDown:
            return static_cast<double>(n) <= b_ ? a_ : 0.0;
        case Family::ExponentialDecay:
            return a_ * std::pow(b_, static_cast<double>(n));
        case Family::Tabulated: {
            const auto idx = std::min<std::size_t>(static_cast<std::size_t>(std::max(n, 0L)),
                                                   table_.size() - 1);
            return table_[idx];
        }
    }
    return 0.0;
}

double gamma(const GtbInstance& inst, int arm, long n) {
    if (arm < 0 || arm >= inst.k())
        throw IndexOutOfRange("gamma: arm " + std::to_string(arm) + " outside [0," +
                              std::to_string(inst.k()) + ")");
    if (n < 1 || n > inst.T - 1)
        throw IndexOutOfRange("gamma: n " + std::to_string(n) + " outside [1," +
                              std::to_string(inst.T - 1) + "]");
    return inst.mean(arm, n + 1) - inst.mean(arm, n);
}

std::string AssumptionReport::describe() const {
    if (pass) return "pass";
    std::ostringstream out;
    auto put = [&](const char* clause, const AssumptionViolation& v) {
        out << clause << " violated at arm " << v.arm << ", n=" << v.n << " (gamma=" << v.gamma_n;
        if (v.gamma_prev != 0 || std::string(clause) == "concavity") out << ", prev=" << v.gamma_prev;
        out << "); ";
    };
    if (monotonicity) put("monotonicity", *monotonicity);
    if (concavity) put("concavity", *concavity);
    if (range) {
        out << "range violated at arm " << range->arm << ", n=" << range->n
            << " (mu=" << range->gamma_n << "); ";
    }
    return out.str();
}

AssumptionReport check_assumption(const GtbInstance& inst) {
    AssumptionReport rep;
    const int k = inst.k();
    for (int i = 0; i < k && !rep.monotonicity; ++i) {
        for (long n = 1; n <= inst.T - 1; ++n) {
            const double g = inst.mean(i, n + 1) - inst.mean(i, n);
            const bool bad = inst.kind == Kind::Rising ? g < -kTol : g > kTol;
            if (bad) {
                rep.monotonicity = AssumptionViolation{i, n, g, 0};
                break;
            }
        }
    }
    if (inst.kind == Kind::Rising) {
        for (int i = 0; i < k && !rep.concavity; ++i) {
            for (long n = 2; n <= inst.T - 1; ++n) {
                const double g_prev = inst.mean(i, n) - inst.mean(i, n - 1);
                const double g = inst.mean(i, n + 1) - inst.mean(i, n);
                if (g_prev < g - kTol) {
                    rep.concavity = AssumptionViolation{i, n, g, g_prev};
                    break;
                }
            }
        }
    }
    if (!inst.gadget) {
        for (int i = 0; i < k && !rep.range; ++i) {
            for (long n = 1; n <= inst.T; ++n) {
                const double mu = inst.mean(i, n);
                if (mu < -kTol || mu > 1.0 + kTol) {
                    rep.range = AssumptionViolation{i, n, mu, 0};
                    break;
                }
            }
        }
    }
    rep.pass = !rep.monotonicity && !rep.concavity && !rep.range;
    return rep;
}

double sample_reward(const GtbInstance& inst, int arm, long trigger_count, Rng& rng) {
    const double mu = inst.mean(arm, trigger_count);
    if (inst.sigma == 0) return mu;
    return mu + inst.sigma * rng.next_gaussian();
}

GtbInstance rising_clique_gadget(int num_nodes, const std::vector<std::pair<int, int>>& edges,
                                 long T) {
    if (num_nodes < 1 || T < 1) throw BadArguments("rising gadget needs |V| >= 1 and T >= 1");
    const int k = num_nodes * static_cast<int>(T);
    const double eta = 1.0 / (static_cast<double>(T) * static_cast<double>(T));
    GtbInstance inst;
    inst.kind = Kind::Rising;
    inst.sigma = 0;
    inst.T = T;
    inst.gadget = true;
    inst.graph = ConnectivityMatrix(k);
    std::vector<std::vector<char>> adj(num_nodes, std::vector<char>(num_nodes, 0));
    for (auto [a, b] : edges) {
        if (a < 0 || a >= num_nodes || b < 0 || b >= num_nodes || a == b)
            throw BadArguments("rising gadget: bad edge");
        adj[a][b] = adj[b][a] = 1;
    }
    auto arm_of = [T](int v, long tp) { return v * static_cast<int>(T) + static_cast<int>(tp - 1); };
    for (int v = 0; v < num_nodes; ++v)
        for (long tp = 1; tp <= T; ++tp) {
            const double cap = 1.0 + eta * static_cast<double>(tp);
            inst.curves.push_back(RewardCurve::saturating_linear(cap / static_cast<double>(tp), cap));
        }
    for (int v = 0; v < num_nodes; ++v)
        for (int w = 0; w < num_nodes; ++w) {
            if (!adj[v][w]) continue;
            for (long t1 = 1; t1 <= T; ++t1)
                for (long t2 = 1; t2 <= T; ++t2) inst.graph.set(arm_of(v, t1), arm_of(w, t2), true);
        }
    return inst;
}

GtbInstance rotting_independent_set_gadget(int num_nodes,
                                           const std::vector<std::pair<int, int>>& edges, long T) {
    if (num_nodes < 1 || T < 1) throw BadArguments("rotting gadget needs |V| >= 1 and T >= 1");
    GtbInstance inst;
    inst.kind = Kind::Rotting;
    inst.sigma = 0;
    inst.T = T;
    inst.gadget = true;
    inst.graph = ConnectivityMatrix::from_edges(num_nodes, edges);
    for (int v = 0; v < num_nodes; ++v)
        inst.curves.push_back(RewardCurve::tabulated({2.0, 1.0, 0.0}));
    return inst;
}

std::pair<GtbInstance, GtbInstance> rotting_lower_bound_pair(long T) {
    if (T < 4 || T % 2 != 0) throw OddHorizon(T);
    GtbInstance nu;
    nu.kind = Kind::Rotting;
    nu.sigma = 0;
    nu.T = T;
    nu.graph = ConnectivityMatrix::from_edges(3, {{0, 1}, {0, 2}});
    nu.curves = {RewardCurve::step_down(1.0, T / 2), RewardCurve::step_down(2.0 / 3.0, T / 2),
                 RewardCurve::step_down(2.0 / 3.0, T / 2)};
    GtbInstance nu_prime = nu;
    nu_prime.curves[0] = RewardCurve::constant(1.0);
    return {nu, nu_prime};
}

namespace {

RewardCurve sample_curve(RewardCurve::Family family, Kind kind, double lo, double hi, long T,
                         Rng& rng) {
    auto unif = [&](double a, double b) { return a + (b - a) * rng.next_uniform(); };
    const double level = unif(lo, hi);
    switch (family) {
        case RewardCurve::Family::Constant:
            return RewardCurve::constant(level);
        case RewardCurve::Family::SaturatingLinear: {
            const long knee = 1 + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(
                                  std::max<long>(1, T / 2))));
            return RewardCurve::saturating_linear(level / static_cast<double>(knee), level);
        }
        case RewardCurve::Family::ExponentialRise:
            return RewardCurve::exponential_rise(level, unif(0.2, 0.95));
        case RewardCurve::Family::StepDown: {
            const long cutoff = 1 + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(
                                    std::max<long>(1, T - 1))));
            return RewardCurve::step_down(level, cutoff);
        }
        case RewardCurve::Family::ExponentialDecay:
            return RewardCurve::exponential_decay(level, unif(0.2, 0.95));
        case RewardCurve::Family::Tabulated: {
            // monotone table matching the requested kind
            std::vector<double> vals;
            double v = kind == Kind::Rising ? unif(0.0, 0.3) : level;
            vals.push_back(v);
            for (long n = 1; n <= T; ++n) {
                const double step = unif(0.0, 0.1);
                v = kind == Kind::Rising ? std::min(1.0, v + step * (vals.size() < 2 ? 1.0 : 0.5))
                                         : std::max(0.0, v - step);
                vals.push_back(v);
            }
            if (kind == Kind::Rising) {
                // enforce concavity by sorting increments downwards
                std::vector<double> inc;
                for (std::size_t i = 1; i < vals.size(); ++i) inc.push_back(vals[i] - vals[i - 1]);
                std::sort(inc.rbegin(), inc.rend());
                double acc = vals[0];
                for (std::size_t i = 1; i < vals.size(); ++i) {
                    acc = std::min(1.0, acc + inc[i - 1]);
                    vals[i] = acc;
                }
            }
            return RewardCurve::tabulated(std::move(vals));
        }
    }
    return RewardCurve::constant(level);
}

ConnectivityMatrix sample_graph(const RandomInstanceSpec& spec, Rng& rng) {
    if (!spec.block_sizes.empty()) {
        int total = 0;
        std::vector<std::vector<int>> blocks;
        for (int sz : spec.block_sizes) {
            std::vector<int> b;
            for (int i = 0; i < sz; ++i) b.push_back(total + i);
            total += sz;
            blocks.push_back(std::move(b));
        }
        if (total != spec.k) throw BadArguments("block sizes must sum to k");
        return ConnectivityMatrix::from_blocks(spec.k, blocks);
    }
    if (spec.edge_density >= 0) {
        ConnectivityMatrix g(spec.k);
        for (int i = 0; i < spec.k; ++i)
            for (int j = i + 1; j < spec.k; ++j)
                if (rng.next_uniform() < spec.edge_density) {
                    g.set(i, j, true);
                    g.set(j, i, true);
                }
        return g;
    }
    return ConnectivityMatrix::identity(spec.k);
}

} // namespace

GtbInstance random_instance(const RandomInstanceSpec& spec, Rng& rng) {
    for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
        GtbInstance inst;
        inst.kind = spec.kind;
        inst.T = spec.T;
        inst.sigma = spec.sigma;
        inst.graph = sample_graph(spec, rng);
        for (int i = 0; i < spec.k; ++i)
            inst.curves.push_back(
                sample_curve(spec.family, spec.kind, spec.level_lo, spec.level_hi, spec.T, rng));
        if (check_assumption(inst).pass) return inst;
    }
    throw GenerationFailed("no valid instance after " + std::to_string(spec.max_retries) +
                           " attempts");
}

} // namespace gtb
