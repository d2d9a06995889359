#include "gtb/config.hpp"

#include <fstream>
#include <set>

#include "gtb/errors.hpp"

namespace gtb {

using nlohmann::json;

namespace {

std::pair<int, int> edge_from_json(const json& e) {
    if (!e.is_array() || e.size() != 2) throw ConfigError("edge must be a pair of 1-based indices");
    return {e[0].get<int>() - 1, e[1].get<int>() - 1};
}

ConnectivityMatrix graph_from_json(const json& g, int k) {
    if (g.is_string()) {
        const auto s = g.get<std::string>();
        if (s == "identity") return ConnectivityMatrix::identity(k);
        if (s == "complete") return ConnectivityMatrix::complete(k);
        throw ConfigError("unknown graph spec '" + s + "'");
    }
    if (g.contains("edges")) {
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : g["edges"]) edges.push_back(edge_from_json(e));
        return ConnectivityMatrix::from_edges(k, edges);
    }
    if (g.contains("blocks")) {
        std::vector<std::vector<int>> blocks;
        for (const auto& b : g["blocks"]) {
            std::vector<int> block;
            for (const auto& v : b) block.push_back(v.get<int>() - 1);
            blocks.push_back(std::move(block));
        }
        return ConnectivityMatrix::from_blocks(k, blocks);
    }
    if (g.contains("matrix")) {
        const auto& rows = g["matrix"];
        if (static_cast<int>(rows.size()) != k) throw ConfigError("matrix must have k rows");
        ConnectivityMatrix m(k);
        for (int i = 0; i < k; ++i) {
            if (static_cast<int>(rows[i].size()) != k) throw ConfigError("matrix must have k columns");
            for (int j = 0; j < k; ++j) m.set(i, j, rows[i][j].get<int>() != 0);
        }
        return m;
    }
    throw ConfigError("graph spec needs 'edges', 'blocks', 'matrix', 'identity' or 'complete'");
}

json graph_to_json(const ConnectivityMatrix& g) {
    json rows = json::array();
    for (int i = 0; i < g.k(); ++i) {
        json row = json::array();
        for (int j = 0; j < g.k(); ++j) row.push_back(g.at(i, j) ? 1 : 0);
        rows.push_back(row);
    }
    return json{{"matrix", rows}};
}

} // namespace

RewardCurve curve_from_json(const json& j) {
    const auto family = j.at("family").get<std::string>();
    if (family == "constant") return RewardCurve::constant(j.at("c").get<double>());
    if (family == "saturating_linear")
        return RewardCurve::saturating_linear(j.at("slope").get<double>(), j.at("cap").get<double>());
    if (family == "exponential_rise")
        return RewardCurve::exponential_rise(j.at("c").get<double>(), j.at("rho").get<double>());
    if (family == "step_down")
        return RewardCurve::step_down(j.at("level").get<double>(), j.at("cutoff").get<long>());
    if (family == "exponential_decay")
        return RewardCurve::exponential_decay(j.at("c").get<double>(), j.at("rho").get<double>());
    if (family == "tabulated") {
        std::vector<double> vals;
        const auto& arr = j.at("values");
        vals.push_back(j.contains("value0") ? j["value0"].get<double>() : arr.at(0).get<double>());
        for (const auto& v : arr) vals.push_back(v.get<double>());
        return RewardCurve::tabulated(std::move(vals));
    }
    throw ConfigError("unknown curve family '" + family + "'");
}

json curve_to_json(const RewardCurve& c) {
    switch (c.family()) {
        case RewardCurve::Family::Constant:
            return {{"family", "constant"}, {"c", c.a()}};
        case RewardCurve::Family::SaturatingLinear:
            return {{"family", "saturating_linear"}, {"slope", c.a()}, {"cap", c.b()}};
        case RewardCurve::Family::ExponentialRise:
            return {{"family", "exponential_rise"}, {"c", c.a()}, {"rho", c.b()}};
        case RewardCurve::Family::StepDown:
            return {{"family", "step_down"}, {"level", c.a()}, {"cutoff", static_cast<long>(c.b())}};
        case RewardCurve::Family::ExponentialDecay:
            return {{"family", "exponential_decay"}, {"c", c.a()}, {"rho", c.b()}};
        case RewardCurve::Family::Tabulated: {
            json vals = json::array();
            for (std::size_t i = 1; i < c.table().size(); ++i) vals.push_back(c.table()[i]);
            return {{"family", "tabulated"}, {"value0", c.table().front()}, {"values", vals}};
        }
    }
    throw ConfigError("unserializable curve");
}

GtbInstance instance_from_json(const json& spec) {
    GtbInstance inst;
    const auto kind = spec.at("kind").get<std::string>();
    if (kind == "rising")
        inst.kind = Kind::Rising;
    else if (kind == "rotting")
        inst.kind = Kind::Rotting;
    else
        throw ConfigError("kind must be 'rising' or 'rotting'");
    const int k = spec.at("k").get<int>();
    if (k < 1) throw ConfigError("k must be positive");
    inst.T = spec.at("T").get<long>();
    if (inst.T < 1) throw ConfigError("T must be positive");
    inst.sigma = spec.value("sigma", 0.0);
    if (inst.sigma < 0) throw ConfigError("sigma must be nonnegative");
    inst.gadget = spec.value("gadget", false);
    inst.graph = graph_from_json(spec.at("graph"), k);
    validate(inst.graph);

    if (spec.contains("arms")) {
        for (const auto& a : spec["arms"]) inst.curves.push_back(curve_from_json(a));
        if (inst.k() != k) throw ConfigError("'arms' must list exactly k curves");
    } else if (spec.contains("block_arms")) {
        auto part = block_diagonal_partition(inst.graph);
        if (!part) throw ConfigError("'block_arms' needs a block-diagonal graph");
        const auto& specs = spec["block_arms"];
        if (specs.size() != part->blocks.size())
            throw ConfigError("'block_arms' must list one curve per block");
        inst.curves.assign(k, RewardCurve::constant(0));
        for (std::size_t m = 0; m < part->blocks.size(); ++m) {
            RewardCurve c = curve_from_json(specs[m]);
            for (int arm : part->blocks[m]) inst.curves[arm] = c;
        }
    } else {
        throw ConfigError("instance needs 'arms' or 'block_arms'");
    }
    return inst;
}

json instance_to_json(const GtbInstance& inst) {
    json arms = json::array();
    for (const auto& c : inst.curves) arms.push_back(curve_to_json(c));
    json j{{"kind", inst.kind == Kind::Rising ? "rising" : "rotting"},
           {"k", inst.k()},
           {"T", inst.T},
           {"sigma", inst.sigma},
           {"graph", graph_to_json(inst.graph)},
           {"arms", arms}};
    if (inst.gadget) j["gadget"] = true;
    return j;
}

namespace {

GtbInstance gadget_from_json(const json& g, json& canonical) {
    const auto kind = g.at("kind").get<std::string>();
    const long T = g.at("T").get<long>();
    GtbInstance inst;
    if (kind == "rotting-lb") {
        auto pair = rotting_lower_bound_pair(T);
        const auto variant = g.value("variant", "nu");
        if (variant == "nu")
            inst = pair.first;
        else if (variant == "nu-prime" || variant == "nu_prime")
            inst = pair.second;
        else
            throw ConfigError("rotting-lb variant must be 'nu' or 'nu-prime'");
    } else {
        const int nodes = g.at("nodes").get<int>();
        std::vector<std::pair<int, int>> edges;
        if (g.contains("edges"))
            for (const auto& e : g["edges"]) edges.push_back(edge_from_json(e));
        if (kind == "rising-clique")
            inst = rising_clique_gadget(nodes, edges, T);
        else if (kind == "rotting-independent-set")
            inst = rotting_independent_set_gadget(nodes, edges, T);
        else
            throw ConfigError("unknown gadget kind '" + kind + "'");
    }
    canonical = instance_to_json(inst);
    return inst;
}

const std::set<std::string> kAlgoNames = {
    "dr_bd_ub", "dr_g_ub", "r_square_ucb", "raw_ucb",
    "fixed_arm", "uniform_random", "round_robin", "oracle_replay",
};

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("instance")) {
        cfg.instance = instance_from_json(j["instance"]);
        cfg.instance_json = j["instance"];
    } else if (j.contains("gadget")) {
        cfg.instance = gadget_from_json(j["gadget"], cfg.instance_json);
    } else {
        throw ConfigError("config needs an 'instance' or 'gadget' section");
    }
    if (!j.contains("algorithms") || j["algorithms"].empty())
        throw ConfigError("config needs a non-empty 'algorithms' list");
    std::set<std::string> used_labels;
    for (const auto& a : j["algorithms"]) {
        AlgoSpec spec;
        spec.name = a.at("name").get<std::string>();
        if (!kAlgoNames.count(spec.name)) throw ConfigError("unknown algorithm '" + spec.name + "'");
        spec.params = a;
        spec.label = a.value("label", spec.name);
        if (spec.name == "fixed_arm" && !a.contains("label"))
            spec.label += "_" + std::to_string(a.value("arm", 1));
        while (used_labels.count(spec.label)) spec.label += "_";
        used_labels.insert(spec.label);
        cfg.algorithms.push_back(std::move(spec));
    }
    cfg.replications = j.value("replications", 1);
    if (cfg.replications < 1) throw ConfigError("replications must be >= 1");
    cfg.seed = j.value("seed", 0ULL);
    cfg.out_dir = j.value("out", "");
    if (j.contains("T_grid"))
        for (const auto& t : j["T_grid"]) cfg.t_grid.push_back(t.get<long>());
    cfg.oracle_mode = j.value("oracle", "closed-form");
    if (cfg.oracle_mode != "closed-form" && cfg.oracle_mode != "brute-force" &&
        cfg.oracle_mode != "none")
        throw ConfigError("oracle mode must be closed-form, brute-force or none");
    if (j.contains("bounds")) {
        cfg.bounds_epsilon = j["bounds"].value("epsilon", 0.25);
        cfg.bounds_alpha = j["bounds"].value("alpha", -1.0);
    }
    cfg.brute_cap = j.value("brute_cap", 1e7);
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in, nullptr, true, true);  // allow comments
    } catch (const json::parse_error& e) {
        throw ConfigError("parse error in '" + path + "': " + e.what());
    }
    return from_json(j);
}

std::unique_ptr<Policy> make_policy(const AlgoSpec& algo, const GtbInstance& inst,
                                    const OracleSolution* oracle) {
    const auto& p = algo.params;
    if (algo.name == "dr_bd_ub") return dr_bd_ub(inst, inst.graph);
    if (algo.name == "dr_g_ub") return dr_g_ub(inst, inst.graph, p.value("exact_cap", 10));
    if (algo.name == "r_square_ucb") {
        if (inst.kind != Kind::Rising)
            throw ConfigError("r_square_ucb runs on rising instances only");
        WindowConfig cfg;
        cfg.epsilon = p.value("epsilon", 0.25);
        cfg.alpha = p.value("alpha", 3.0);
        cfg.sigma = p.value("sigma", inst.sigma);
        return r_square_ucb(cfg);
    }
    if (algo.name == "raw_ucb") {
        if (inst.kind != Kind::Rotting)
            throw ConfigError("raw_ucb runs on rotting instances only");
        WindowConfig cfg;
        cfg.epsilon = 0.25;  // unused by the rotting index
        cfg.alpha = p.value("alpha", 5.0);
        cfg.sigma = p.value("sigma", inst.sigma);
        return raw_ucb(cfg);
    }
    if (algo.name == "fixed_arm") return fixed_arm(p.value("arm", 1) - 1);
    if (algo.name == "uniform_random") return uniform_random();
    if (algo.name == "round_robin") return round_robin();
    if (algo.name == "oracle_replay") {
        if (!oracle || oracle->sequence.empty())
            throw ConfigError("oracle_replay needs an oracle with a recorded sequence");
        return scripted(oracle->sequence, "oracle_replay");
    }
    throw ConfigError("unknown algorithm '" + algo.name + "'");
}

std::string fingerprint(const json& canonical) {
    const std::string s = canonical.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace gtb
