#ifndef GTB_CONFIG_HPP
#define GTB_CONFIG_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtb/policies.hpp"
#include "gtb/rewards.hpp"

namespace gtb {

// Config file layout (JSON, arm/node indices 1-based):
//
// {
//   "instance": {
//     "kind": "rising" | "rotting",
//     "k": 3, "T": 8, "sigma": 0.0,
//     "graph": "identity" | "complete" | {"edges": [[1,2]]} |
//              {"blocks": [[1,2],[3]]} | {"matrix": [[1,1,0],...]},
//     "arms": [{"family": "constant", "c": 0.4}, ...]   // or "block_arms"
//   },
//   -- or --
//   "gadget": {"kind": "rising-clique" | "rotting-independent-set" |
//              "rotting-lb", "nodes": 3, "edges": [[1,2]], "T": 3,
//              "variant": "nu" | "nu-prime"},
//
//   "algorithms": [{"name": "raw_ucb", "alpha": 5.0, "label": "raw"}, ...],
//   "replications": 3, "seed": 42, "out": "results",
//   "T_grid": [100, 1000], "oracle": "closed-form" | "brute-force" | "none",
//   "bounds": {"epsilon": 0.25, "alpha": 3.0}, "brute_cap": 1e7
// }

GtbInstance instance_from_json(const nlohmann::json& spec);
nlohmann::json instance_to_json(const GtbInstance& inst);

nlohmann::json curve_to_json(const RewardCurve& c);
RewardCurve curve_from_json(const nlohmann::json& j);

struct AlgoSpec {
    std::string name;
    nlohmann::json params;
    std::string label;
};

struct ExperimentConfig {
    nlohmann::json instance_json;  // resolved instance section, canonical for fingerprinting
    GtbInstance instance;
    std::vector<AlgoSpec> algorithms;
    int replications = 1;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::vector<long> t_grid;
    std::string oracle_mode = "closed-form";
    double bounds_epsilon = 0.25;
    double bounds_alpha = -1;  // <0 means kind-specific default (3 rising, 5 rotting)
    double brute_cap = 1e7;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
};

// Known algorithm names: dr_bd_ub, dr_g_ub, r_square_ucb, raw_ucb,
// fixed_arm, uniform_random, round_robin, oracle_replay.
std::unique_ptr<Policy> make_policy(const AlgoSpec& algo, const GtbInstance& inst,
                                    const OracleSolution* oracle);

std::string fingerprint(const nlohmann::json& canonical);

} // namespace gtb

#endif
