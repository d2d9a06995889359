#include "gtb/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gtb/errors.hpp"

namespace gtb {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<RunResult> run_replications_serial(const GtbInstance& inst, const AlgoSpec& algo,
                                               int algo_index, int replications,
                                               std::uint64_t master_seed,
                                               const OracleSolution* oracle) {
    std::vector<RunResult> out(replications);
    const OracleValue value = oracle ? oracle->value() : OracleValue{};
    for (int rep = 0; rep < replications; ++rep) {
        auto policy = make_policy(algo, inst, oracle);
        Rng rng = Rng::stream(master_seed, static_cast<std::uint64_t>(algo_index),
                              static_cast<std::uint64_t>(rep));
        out[rep] = run_episode(inst, *policy, rng, oracle ? &value : nullptr);
    }
    return out;
}

std::vector<RunResult> run_replications(const GtbInstance& inst, const AlgoSpec& algo,
                                        int algo_index, int replications, std::uint64_t master_seed,
                                        const OracleSolution* oracle, bool parallel) {
    if (!parallel) return run_replications_serial(inst, algo, algo_index, replications, master_seed, oracle);
    std::vector<RunResult> out(replications);
    const OracleValue value = oracle ? oracle->value() : OracleValue{};
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < replications; ++rep) {
        try {
            auto policy = make_policy(algo, inst, oracle);
            Rng rng = Rng::stream(master_seed, static_cast<std::uint64_t>(algo_index),
                                  static_cast<std::uint64_t>(rep));
            out[rep] = run_episode(inst, *policy, rng, oracle ? &value : nullptr);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::optional<OracleSolution> make_oracle(const ExperimentConfig& cfg) {
    if (cfg.oracle_mode == "none") return std::nullopt;
    if (cfg.oracle_mode == "brute-force") return oracle_brute_force(cfg.instance, cfg.brute_cap);
    return cfg.instance.kind == Kind::Rising ? oracle_rising_block(cfg.instance)
                                             : oracle_rotting_block(cfg.instance);
}

json SummaryRecord::to_json() const {
    json algos_json = json::array();
    for (const auto& a : algos) {
        json ja{{"label", a.label},
                {"replications", a.replications},
                {"mean_J", a.mean_j},
                {"trajectories", a.trajectory_paths}};
        if (a.mean_regret) {
            ja["mean_regret"] = *a.mean_regret;
            ja["std_regret"] = *a.std_regret;
            ja["ci95_half"] = *a.ci95_half;
            ja["final_regrets"] = a.final_regrets;
        }
        if (!a.note.empty()) ja["note"] = a.note;
        algos_json.push_back(std::move(ja));
    }
    json j{{"version", version},
           {"instance_fingerprint", instance_fingerprint},
           {"algorithms", algos_json}};
    if (j_star) {
        j["oracle"] = json{{"method", oracle_method}, {"j_star", *j_star}};
    }
    if (!bounds_path.empty()) j["bounds"] = bounds_path;
    return j;
}

void write_trajectory_csv(const std::string& path, const std::string& label, int rep,
                          const RunResult& run) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "run_id,algo,t,arm,reward,expected_reward,cum_regret\n";
    const long T = static_cast<long>(run.actions.size());
    for (long t = 1; t <= T; ++t) {
        out << rep << ',' << label << ',' << t << ',' << run.actions[t - 1] + 1 << ','
            << format_number(run.rewards[t - 1]) << ',' << format_number(run.expected_rewards[t - 1])
            << ',';
        if (!run.regret_curve.empty())
            out << format_number(run.regret_curve[t - 1]);
        else if (t == T && run.final_regret)
            out << format_number(*run.final_regret);
        out << '\n';
    }
}

void write_bounds_csv(const std::string& path, const std::vector<BoundCurve>& curves) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "theorem,T,q_star,value,constants_mode\n";
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.t_grid.size(); ++i) {
            out << c.theorem << ',' << c.t_grid[i] << ',';
            if (!c.q_star.empty()) out << format_number(c.q_star[i]);
            out << ',' << format_number(c.values[i]) << ',' << c.constants_mode << '\n';
        }
}

SummaryRecord run_experiment(const ExperimentConfig& cfg, bool parallel) {
    SummaryRecord summary;
    summary.version = kVersion;
    summary.instance_fingerprint = fingerprint(cfg.instance_json);

    const auto oracle = make_oracle(cfg);
    if (oracle) {
        summary.oracle_method = oracle->method;
        summary.j_star = oracle->j_star;
    }

    std::vector<std::string> written;
    const bool emit = !cfg.out_dir.empty();
    try {
        if (emit) {
            fs::create_directories(fs::path(cfg.out_dir) / "trajectories");
        }
        for (int ai = 0; ai < static_cast<int>(cfg.algorithms.size()); ++ai) {
            const auto& algo = cfg.algorithms[ai];
            auto runs = run_replications(cfg.instance, algo, ai, cfg.replications, cfg.seed,
                                         oracle ? &*oracle : nullptr, parallel);
            AlgoSummary s;
            s.label = algo.label;
            s.replications = cfg.replications;
            double jsum = 0;
            for (const auto& r : runs) jsum += r.J;
            s.mean_j = jsum / cfg.replications;
            if (oracle) {
                double sum = 0;
                for (const auto& r : runs) {
                    s.final_regrets.push_back(*r.final_regret);
                    sum += *r.final_regret;
                }
                const double mean = sum / cfg.replications;
                double var = 0;
                for (double r : s.final_regrets) var += (r - mean) * (r - mean);
                var = cfg.replications > 1 ? var / (cfg.replications - 1) : 0.0;
                s.mean_regret = mean;
                s.std_regret = std::sqrt(var);
                s.ci95_half = 1.96 * std::sqrt(var / cfg.replications);
            }
            {
                auto probe = make_policy(algo, cfg.instance, oracle ? &*oracle : nullptr);
                if (const auto* info = sub_matrix_info(*probe))
                    s.note = std::string("sub-matrix mode: ") + (info->exact ? "exact" : "greedy");
            }
            if (emit) {
                for (int rep = 0; rep < cfg.replications; ++rep) {
                    // summary records paths relative to the output directory
                    const auto rel = "trajectories/" + algo.label + "_" + std::to_string(rep) + ".csv";
                    const auto path = (fs::path(cfg.out_dir) / rel).string();
                    write_trajectory_csv(path, algo.label, rep, runs[rep]);
                    written.push_back(path);
                    s.trajectory_paths.push_back(rel);
                }
            }
            summary.algos.push_back(std::move(s));
        }
        if (emit && !cfg.t_grid.empty()) {
            std::vector<BoundCurve> curves;
            try {
                curves = bound_curves_for(cfg);
            } catch (const BadArguments&) {
                // no bound curve applies to this instance
            }
            if (!curves.empty()) {
                const auto path = (fs::path(cfg.out_dir) / "bounds.csv").string();
                write_bounds_csv(path, curves);
                written.push_back(path);
                summary.bounds_path = "bounds.csv";
            }
        }
        if (emit) {
            const auto path = (fs::path(cfg.out_dir) / "summary.json").string();
            std::ofstream out(path);
            if (!out) throw Error("cannot write " + path);
            out << summary.to_json().dump(2) << '\n';
            written.push_back(path);
        }
    } catch (...) {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw;
    }
    return summary;
}

std::vector<BoundCurve> bound_curves_for(const ExperimentConfig& cfg) {
    const auto& inst = cfg.instance;
    std::vector<long> grid = cfg.t_grid;
    if (grid.empty()) grid = {inst.T};
    long horizon = inst.T;
    for (long t : grid) horizon = std::max(horizon, t);
    ComplexityProfile profile(inst, horizon);
    const double alpha = cfg.bounds_alpha > 0 ? cfg.bounds_alpha
                                              : (inst.kind == Kind::Rising ? 3.0 : 5.0);

    auto note_for = [](const CliquePartition& p) {
        std::string s = "partition:";
        for (const auto& b : p.blocks) {
            s += " {";
            for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i] + 1);
            s += "}";
        }
        return s;
    };

    std::vector<BoundCurve> curves;
    auto block = block_diagonal_partition(inst.graph);
    if (inst.kind == Kind::Rising) {
        if (block) {
            auto det = bound_rising_deterministic(profile, *block, grid);
            det.theorem = "thm3";
            det.partition_note = note_for(*block);
            curves.push_back(std::move(det));
            auto stoch = bound_rising_stochastic(profile, *block, cfg.bounds_epsilon, alpha,
                                                 inst.sigma, grid);
            stoch.theorem = "thm6";
            stoch.partition_note = note_for(*block);
            curves.push_back(std::move(stoch));
        } else {
            auto sub = maximal_sub_matrix(
                inst.graph, inst.k() <= 10 ? SubMatrixMode::Exact : SubMatrixMode::Greedy);
            auto det = bound_rising_deterministic(profile, sub, grid);
            det.theorem = "thm4";
            det.partition_note = note_for(sub) + (inst.k() <= 10 ? " (exact)" : " (greedy)");
            curves.push_back(std::move(det));
            auto super = minimal_super_matrix(inst.graph);
            auto stoch = bound_rising_stochastic(profile, super, cfg.bounds_epsilon, alpha,
                                                 inst.sigma, grid);
            stoch.theorem = "thm7";
            stoch.partition_note = note_for(super);
            curves.push_back(std::move(stoch));
        }
    } else {
        if (!block) throw BadArguments("no bound curve applies: rotting with a general matrix");
        auto rot = bound_rotting(profile, *block, alpha, inst.sigma, grid);
        rot.partition_note = note_for(*block);
        curves.push_back(std::move(rot));
    }
    return curves;
}

} // namespace gtb
