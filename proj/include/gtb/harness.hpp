#ifndef GTB_HARNESS_HPP
#define GTB_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "gtb/analysis.hpp"
#include "gtb/config.hpp"

namespace gtb {

inline constexpr const char* kVersion = "0.1.0";

// Each episode draws its noise from a stream keyed by (master seed,
// algorithm index, replication index), so serial and parallel execution give
// bit-identical results and extending the replication count extends, never
// alters, earlier replications.
std::vector<RunResult> run_replications(const GtbInstance& inst, const AlgoSpec& algo,
                                        int algo_index, int replications, std::uint64_t master_seed,
                                        const OracleSolution* oracle, bool parallel = true);

// Serial reference path; the parallel kernel is checked against it in the
// tests and the benchmark tool.
std::vector<RunResult> run_replications_serial(const GtbInstance& inst, const AlgoSpec& algo,
                                               int algo_index, int replications,
                                               std::uint64_t master_seed,
                                               const OracleSolution* oracle);

struct AlgoSummary {
    std::string label;
    int replications = 0;
    std::optional<double> mean_regret;
    std::optional<double> std_regret;
    std::optional<double> ci95_half;
    double mean_j = 0;
    std::vector<double> final_regrets;
    std::vector<std::string> trajectory_paths;
    std::string note;
};

struct SummaryRecord {
    std::string version;
    std::string instance_fingerprint;
    std::string oracle_method;
    std::optional<double> j_star;
    std::string bounds_path;  // relative; empty when no bound curve applies
    std::vector<AlgoSummary> algos;
    nlohmann::json to_json() const;
};

// Computes the oracle the config asks for ('none' yields std::nullopt).
std::optional<OracleSolution> make_oracle(const ExperimentConfig& cfg);

// Runs every algorithm for the configured replication count, writes
// trajectories/<label>_<rep>.csv and summary.json when an output directory
// is set, and returns the summary. Partial outputs are removed on failure.
SummaryRecord run_experiment(const ExperimentConfig& cfg, bool parallel = true);

// Bound-curve dispatch per instance kind and graph shape; returns the
// applicable curves (thm3+thm6 rising block-diagonal, thm4+thm7 rising
// general, thm10 rotting block-diagonal).
std::vector<BoundCurve> bound_curves_for(const ExperimentConfig& cfg);

void write_bounds_csv(const std::string& path, const std::vector<BoundCurve>& curves);
void write_trajectory_csv(const std::string& path, const std::string& label, int rep,
                          const RunResult& run);

// 12-significant-digit decimal used in every emitted CSV/JSON number.
std::string format_number(double v);

} // namespace gtb

#endif
