#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtb/errors.hpp"
#include "gtb/harness.hpp"

using namespace gtb;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json small_config() {
    return json::parse(R"({
      "instance": {
        "kind": "rising", "k": 3, "T": 60, "sigma": 0.2,
        "graph": {"blocks": [[1, 2], [3]]},
        "arms": [
          {"family": "exponential_rise", "c": 0.8, "rho": 0.7},
          {"family": "exponential_rise", "c": 0.6, "rho": 0.5},
          {"family": "constant", "c": 0.55}
        ]
      },
      "algorithms": [
        {"name": "r_square_ucb", "epsilon": 0.25, "alpha": 3.0},
        {"name": "round_robin"}
      ],
      "replications": 3,
      "seed": 99,
      "oracle": "closed-form"
    })");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config parsing and validation") {
    auto cfg = ExperimentConfig::from_json(small_config());
    CHECK(cfg.instance.k() == 3);
    CHECK(cfg.instance.T == 60);
    CHECK(cfg.algorithms.size() == 2);
    CHECK(cfg.algorithms[0].label == "r_square_ucb");
    CHECK(cfg.replications == 3);

    auto bad_algo = small_config();
    bad_algo["algorithms"][0]["name"] = "thompson";
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_algo), ConfigError);

    auto bad_reps = small_config();
    bad_reps["replications"] = 0;
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_reps), ConfigError);

    auto bad_arms = small_config();
    bad_arms["instance"]["arms"].erase(2);
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_arms), ConfigError);

    // an explicit matrix with a missing mirror entry surfaces the graph error
    auto asym = small_config();
    asym["instance"]["graph"] = json{{"matrix", {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(asym), AsymmetricMatrix);
}

TEST_CASE("instance specs round-trip through json") {
    auto cfg = ExperimentConfig::from_json(small_config());
    auto j = instance_to_json(cfg.instance);
    auto back = instance_from_json(j);
    CHECK(back.k() == cfg.instance.k());
    CHECK(back.graph == cfg.instance.graph);
    for (int i = 0; i < back.k(); ++i)
        for (long n = 0; n <= back.T; ++n) CHECK(back.mean(i, n) == cfg.instance.mean(i, n));

    auto gadget = rotting_independent_set_gadget(3, {{0, 1}}, 4);
    auto gj = instance_to_json(gadget);
    auto gb = instance_from_json(gj);
    CHECK(gb.gadget);
    CHECK(gb.mean(0, 0) == 2.0);
    CHECK(check_assumption(gb).pass);
}

TEST_CASE("gadget directives resolve inside configs") {
    auto j = json::parse(R"({
      "gadget": {"kind": "rotting-lb", "T": 8, "variant": "nu-prime"},
      "algorithms": [{"name": "fixed_arm", "arm": 1}],
      "replications": 1, "oracle": "brute-force"
    })");
    auto cfg = ExperimentConfig::from_json(j);
    CHECK(cfg.instance.k() == 3);
    auto summary = run_experiment(cfg, false);
    REQUIRE(summary.j_star);
    CHECK(*summary.j_star == doctest::Approx(8.0).epsilon(1e-12));
    REQUIRE(summary.algos[0].mean_regret);
    CHECK(*summary.algos[0].mean_regret == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("experiment emits the contracted files") {
    TempDir dir("gtb_harness_files");
    auto cfg = ExperimentConfig::from_json(small_config());
    cfg.out_dir = dir.path.string();
    auto summary = run_experiment(cfg);
    CHECK(summary.algos.size() == 2);

    int files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path / "trajectories")) ++files;
    CHECK(files == 6);
    CHECK(fs::exists(dir.path / "summary.json"));

    // schema: header plus T data rows per trajectory
    const auto one = (dir.path / "trajectories" / "round_robin_0.csv").string();
    std::ifstream in(one);
    std::string header;
    std::getline(in, header);
    CHECK(header == "run_id,algo,t,arm,reward,expected_reward,cum_regret");
    long rows = 0;
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) {
            ++rows;
            last = line;
        }
    CHECK(rows == 60);

    // summary mean regret equals the mean of the trajectory files' final rows
    for (const auto& algo : summary.algos) {
        double sum = 0;
        for (const auto& rel : algo.trajectory_paths) {
            std::ifstream t((dir.path / rel).string());
            std::string l, final_line;
            std::getline(t, l);
            while (std::getline(t, l))
                if (!l.empty()) final_line = l;
            const auto pos = final_line.rfind(',');
            sum += std::stod(final_line.substr(pos + 1));
        }
        // final CSV values are rounded to 12 significant digits
        CHECK(sum / algo.replications ==
              doctest::Approx(*algo.mean_regret).epsilon(1e-9));
    }
}

TEST_CASE("reruns are byte-identical and replications extend stably") {
    TempDir d1("gtb_rer_a"), d2("gtb_rer_b");
    auto cfg = ExperimentConfig::from_json(small_config());
    cfg.out_dir = d1.path.string();
    run_experiment(cfg);
    cfg.out_dir = d2.path.string();
    run_experiment(cfg);
    CHECK(slurp((d1.path / "summary.json").string()) == slurp((d2.path / "summary.json").string()));
    CHECK(slurp((d1.path / "trajectories" / "r_square_ucb_1.csv").string()) ==
          slurp((d2.path / "trajectories" / "r_square_ucb_1.csv").string()));

    auto cfg5 = ExperimentConfig::from_json(small_config());
    cfg5.replications = 5;
    auto s3 = run_experiment(ExperimentConfig::from_json(small_config()), false);
    auto s5 = run_experiment(cfg5, false);
    for (std::size_t a = 0; a < s3.algos.size(); ++a)
        for (int r = 0; r < 3; ++r)
            CHECK(s3.algos[a].final_regrets[r] == s5.algos[a].final_regrets[r]);
}

TEST_CASE("parallel and serial replication kernels agree bit-exactly") {
    auto cfg = ExperimentConfig::from_json(small_config());
    const auto oracle = make_oracle(cfg);
    for (int ai = 0; ai < 2; ++ai) {
        auto serial =
            run_replications_serial(cfg.instance, cfg.algorithms[ai], ai, 6, cfg.seed, &*oracle);
        auto parallel = run_replications(cfg.instance, cfg.algorithms[ai], ai, 6, cfg.seed, &*oracle);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t r = 0; r < serial.size(); ++r) {
            CHECK(serial[r].actions == parallel[r].actions);
            CHECK(serial[r].rewards == parallel[r].rewards);
            CHECK(serial[r].J == parallel[r].J);
        }
    }
}

TEST_CASE("oracle replay has zero regret on deterministic instances") {
    auto j = small_config();
    j["instance"]["sigma"] = 0.0;
    j["algorithms"] = json::array({json{{"name", "oracle_replay"}}});
    auto cfg = ExperimentConfig::from_json(j);
    auto summary = run_experiment(cfg, false);
    CHECK(*summary.algos[0].mean_regret == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("partial outputs are removed when a run fails") {
    TempDir dir("gtb_partial");
    auto j = small_config();
    // the second algorithm fails at policy construction: no oracle sequence
    // is available under oracle mode 'none'
    j["algorithms"] = nlohmann::json::array(
        {nlohmann::json{{"name", "round_robin"}}, nlohmann::json{{"name", "oracle_replay"}}});
    j["oracle"] = "none";
    auto cfg = ExperimentConfig::from_json(j);
    cfg.out_dir = dir.path.string();
    CHECK_THROWS_AS(run_experiment(cfg, false), ConfigError);
    int files = 0;
    if (fs::exists(dir.path / "trajectories"))
        for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path / "trajectories"))
            ++files;
    CHECK(files == 0);
    CHECK_FALSE(fs::exists(dir.path / "summary.json"));
}

TEST_CASE("fingerprints are stable and sensitive") {
    auto a = small_config();
    auto b = small_config();
    CHECK(fingerprint(a["instance"]) == fingerprint(b["instance"]));
    b["instance"]["sigma"] = 0.3;
    CHECK(fingerprint(a["instance"]) != fingerprint(b["instance"]));
}

TEST_CASE("bound curve dispatch follows kind and graph shape") {
    auto cfg = ExperimentConfig::from_json(small_config());
    cfg.t_grid = {20, 60};
    auto curves = bound_curves_for(cfg);
    REQUIRE(curves.size() == 2);
    CHECK(curves[0].theorem == "thm3");
    CHECK(curves[1].theorem == "thm6");

    auto open = small_config();
    open["instance"]["graph"] = json{{"edges", {{1, 2}, {2, 3}}}};
    auto cfg2 = ExperimentConfig::from_json(open);
    cfg2.t_grid = {20, 60};
    auto curves2 = bound_curves_for(cfg2);
    REQUIRE(curves2.size() == 2);
    CHECK(curves2[0].theorem == "thm4");
    CHECK(curves2[1].theorem == "thm7");

    auto rot = json::parse(R"({
      "instance": {
        "kind": "rotting", "k": 2, "T": 50, "sigma": 0.1,
        "graph": {"blocks": [[1, 2]]},
        "arms": [{"family": "step_down", "level": 0.7, "cutoff": 10},
                  {"family": "constant", "c": 0.3}]
      },
      "algorithms": [{"name": "raw_ucb", "alpha": 5.0}],
      "replications": 1
    })");
    auto cfg3 = ExperimentConfig::from_json(rot);
    auto curves3 = bound_curves_for(cfg3);
    REQUIRE(curves3.size() == 1);
    CHECK(curves3[0].theorem == "thm10");

    TempDir dir("gtb_bounds_csv");
    const auto path = (dir.path / "bounds.csv").string();
    write_bounds_csv(path, curves);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "theorem,T,q_star,value,constants_mode");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}
