#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gtb/errors.hpp"
#include "gtb/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

gtb::ExperimentConfig load_config(const std::string& path, const std::string& out_override,
                                  std::uint64_t seed_override, bool seed_set, double cap_override) {
    auto cfg = gtb::ExperimentConfig::from_file(path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_set) cfg.seed = seed_override;
    if (cap_override > 0) cfg.brute_cap = cap_override;
    return cfg;
}

int cmd_validate(const gtb::ExperimentConfig& cfg) {
    gtb::validate(cfg.instance.graph);
    const auto report = gtb::check_assumption(cfg.instance);
    std::cout << (report.pass ? "pass" : report.describe()) << "\n";
    return report.pass ? 0 : 1;
}

int cmd_oracle(const gtb::ExperimentConfig& cfg) {
    const auto oracle = gtb::make_oracle(cfg);
    if (!oracle) {
        std::cerr << "oracle mode 'none' requested\n";
        return 1;
    }
    std::cout << "method: " << oracle->method << "\n";
    std::cout << "j_star: " << gtb::format_number(oracle->j_star) << "\n";
    if (!oracle->best_clique.empty()) {
        std::cout << "best_clique:";
        for (int a : oracle->best_clique) std::cout << " " << a + 1;
        std::cout << "\n";
    }
    if (!cfg.out_dir.empty() && !oracle->sequence.empty()) {
        fs::create_directories(cfg.out_dir);
        const auto path = (fs::path(cfg.out_dir) / "optimal_sequence.csv").string();
        std::ofstream out(path);
        out << "t,arm\n";
        for (std::size_t t = 0; t < oracle->sequence.size(); ++t)
            out << t + 1 << ',' << oracle->sequence[t] + 1 << '\n';
        std::cout << "sequence: " << path << "\n";
    }
    return 0;
}

int cmd_run(const gtb::ExperimentConfig& cfg, bool serial) {
    const auto summary = gtb::run_experiment(cfg, !serial);
    if (!cfg.out_dir.empty())
        std::cout << "summary: " << (fs::path(cfg.out_dir) / "summary.json").string() << "\n";
    for (const auto& a : summary.algos) {
        std::cout << a.label << ": mean_J=" << gtb::format_number(a.mean_j);
        if (a.mean_regret)
            std::cout << " mean_regret=" << gtb::format_number(*a.mean_regret)
                      << " ci95_half=" << gtb::format_number(*a.ci95_half);
        std::cout << "\n";
    }
    return 0;
}

int cmd_bounds(const gtb::ExperimentConfig& cfg) {
    const auto curves = gtb::bound_curves_for(cfg);
    const auto dir = cfg.out_dir.empty() ? std::string(".") : cfg.out_dir;
    fs::create_directories(dir);
    const auto path = (fs::path(dir) / "bounds.csv").string();
    gtb::write_bounds_csv(path, curves);
    std::cout << "bounds: " << path << "\n";
    return 0;
}

int cmd_gadget(const std::string& kind, const std::string& graph_path, long T,
               const std::string& out_dir) {
    int nodes = 0;
    std::vector<std::pair<int, int>> edges;
    if (kind != "rotting-lb") {
        std::ifstream in(graph_path);
        if (!in) throw gtb::ConfigError("cannot open graph file '" + graph_path + "'");
        json g;
        try {
            g = json::parse(in, nullptr, true, true);
        } catch (const json::parse_error& e) {
            throw gtb::ConfigError("parse error in '" + graph_path + "': " + e.what());
        }
        nodes = g.at("nodes").get<int>();
        if (g.contains("edges"))
            for (const auto& e : g["edges"]) {
                if (!e.is_array() || e.size() != 2)
                    throw gtb::ConfigError("edge must be a 1-based pair");
                edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
            }
    }
    fs::create_directories(out_dir);
    auto dump = [&](const gtb::GtbInstance& inst, const std::string& name) {
        const auto path = (fs::path(out_dir) / name).string();
        std::ofstream out(path);
        out << json{{"instance", gtb::instance_to_json(inst)}}.dump(2) << '\n';
        std::cout << path << "\n";
    };
    if (kind == "rising-clique") {
        dump(gtb::rising_clique_gadget(nodes, edges, T), "gadget.json");
    } else if (kind == "rotting-independent-set") {
        dump(gtb::rotting_independent_set_gadget(nodes, edges, T), "gadget.json");
    } else if (kind == "rotting-lb") {
        auto pair = gtb::rotting_lower_bound_pair(T);
        dump(pair.first, "gadget_nu.json");
        dump(pair.second, "gadget_nu_prime.json");
    } else {
        throw gtb::ConfigError("unknown gadget kind '" + kind + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-triggered bandit simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, graph_path, gadget_kind;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double cap = 0;
    int jobs = 0;
    long gadget_T = 0;
    bool serial = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
            seed_set = true;
        });
        sub->add_option("--cap", cap, "brute-force search cap override");
        sub->add_option("--jobs", jobs, "worker threads (0 = library default)");
        sub->add_flag("--serial", serial, "disable the parallel replication loop");
    };

    auto* validate = app.add_subcommand("validate", "check graph and reward assumptions");
    add_common(validate, true);
    auto* oracle = app.add_subcommand("oracle", "print the optimal value J*");
    add_common(oracle, true);
    auto* run = app.add_subcommand("run", "run the configured experiment");
    add_common(run, true);
    auto* bounds = app.add_subcommand("bounds", "emit theoretical bound curves");
    add_common(bounds, true);

    auto* gadget = app.add_subcommand("gadget", "materialize a hardness instance spec");
    gadget->add_option("--kind", gadget_kind,
                       "rising-clique | rotting-independent-set | rotting-lb")
        ->required();
    gadget->add_option("--graph", graph_path, "graph file: {\"nodes\":N,\"edges\":[[a,b],...]}");
    gadget->add_option("--T", gadget_T, "horizon")->required();
    gadget->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#endif

    try {
        if (gadget->parsed()) return cmd_gadget(gadget_kind, graph_path, gadget_T, out_dir);
        auto cfg = load_config(config_path, out_dir, seed, seed_set, cap);
        if (validate->parsed()) return cmd_validate(cfg);
        if (oracle->parsed()) return cmd_oracle(cfg);
        if (run->parsed()) return cmd_run(cfg, serial);
        if (bounds->parsed()) return cmd_bounds(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
