// Acceptance suite: one check per release criterion, one PASS/FAIL line
// each. Exits with the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "tuav/harness.hpp"

using namespace tuav;
namespace fs = std::filesystem;

namespace {

std::string scenario1_path() {
    return (fs::path(TUAV_SCENARIO_DIR) / "scenario1.json").string();
}

std::string fail(const std::string& msg) { return msg; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable: " + path + ">";
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// 1. Friis correctness against an independently computed oracle.
// ---------------------------------------------------------------------------

std::string check_friis_oracle() {
    // Frozen before implementation: 35 W, 25/25 dBi, 25 GHz, 10 m.
    const double frozen = 0.03187202848000333;
    // Same physics evaluated from scratch right here.
    const double lambda = 299792458.0 / 25e9;
    const double gain = std::pow(10.0, 2.5);
    const double oracle = 35.0 * gain * gain * lambda * lambda /
                          std::pow(4.0 * std::numbers::pi * 10.0, 2.0);

    const WptLink link{};
    const double impl = received_power(link, 10.0);
    if (std::abs(impl - frozen) / frozen > 1e-9)
        return fail("impl " + std::to_string(impl) + " != frozen oracle");
    if (std::abs(oracle - frozen) / frozen > 1e-9)
        return fail("inline oracle drifted from frozen value");

    const double k = received_power(link, 1.0);
    for (int d = 1; d <= 100; ++d) {
        const double pd = received_power(link, double(d));
        if (std::abs(pd * d * d - k) / k > 1e-12)
            return fail("inverse-square violated at d=" + std::to_string(d));
    }
    return {};
}

// ---------------------------------------------------------------------------
// 2. Analytic flying time with the transmitter dark.
// ---------------------------------------------------------------------------

std::string check_no_charging_flight_time() {
    ScenarioConfig cfg = load_scenario(scenario1_path());
    cfg.link.tx_power = 0.0;
    cfg.initial_battery_min = 100.0;
    cfg.initial_battery_max = 100.0;

    for (int episode = 0; episode < 5; ++episode) {
        Rng rng(100 + episode);
        auto [state, obs] = reset(cfg, rng);
        while (!state.terminal()) {
            const auto legal = valid_actions(cfg.grid, state.tuav_cell);
            state = step(state, legal[rng.uniform_index(legal.size())], cfg).state;
        }
        for (const RUavStatus& r : state.ruavs) {
            const double minutes = r.flight_time / 60.0;
            if (std::abs(minutes - 120.0) / 120.0 > 1e-9)
                return fail("fixed-battery flight time " + std::to_string(minutes) +
                            " min != 120 min");
        }
    }

    cfg.initial_battery_min = 60.0;
    cfg.initial_battery_max = 100.0;
    const EvalResult r =
        evaluate_policy(cfg, PolicyKind::RandomWalk, nullptr, 1000, 11);
    if (std::abs(r.summary.mean_flight_time_min - 96.0) > 2.0)
        return fail("mean over [60,100] batteries " +
                    std::to_string(r.summary.mean_flight_time_min) +
                    " min outside 96 +/- 2");
    return {};
}

// ---------------------------------------------------------------------------
// 3. Q-learning equals exhaustive value iteration on a two-cell world.
//
// The toy scenario is engineered so the quantized battery level is an exact
// function of the episode history: each step drops the level by exactly 1
// when the transmitter sits over the receiver and exactly 2 otherwise, so
// the (cell, level) process is a genuine 6-state MDP. The model below is
// hand-coded from the closed-form physics and solved by value iteration,
// fully independently of the simulator's step path.
// ---------------------------------------------------------------------------

struct ToyModel {
    double p_near = 0.0; // W over the receiver (distance 5 m)
    double p_far = 0.0;  // W over the empty cell (distance sqrt(125) m)
    static constexpr double kConsumption = 405.0; // W
    static constexpr double kTimeStep = 20.0;     // s
    static constexpr double kMu = 100.0;
    static constexpr double kNu = -50.0;

    struct Outcome {
        double reward;
        int next_level; // -1 when the receiver depletes
    };

    Outcome transition(int level, int target_cell) const {
        const double battery = level + 0.5; // bin width is exactly 1 Wh
        const double p = target_cell == 0 ? p_near : p_far;
        const double delta = (p - kConsumption) * kTimeStep / 3600.0;
        if (battery + delta <= 0.0) {
            const double t_star = battery * 3600.0 / (kConsumption - p);
            return {kMu * (p * t_star / 3600.0) + kNu, -1};
        }
        return {kMu * (p * kTimeStep / 3600.0), int(std::floor(battery + delta))};
    }

    // V*(cell, level) and the optimal target cell, by value iteration over
    // the six live states.
    void solve(double gamma, double v[2][3], int best_cell[2][3]) const {
        for (int c = 0; c < 2; ++c)
            for (int l = 0; l < 3; ++l) v[c][l] = 0.0;
        for (int sweep = 0; sweep < 500; ++sweep) {
            for (int c = 0; c < 2; ++c)
                for (int l = 0; l < 3; ++l) {
                    double best = -1e300;
                    int arg = 0;
                    for (int target = 0; target < 2; ++target) {
                        const Outcome out = transition(l, target);
                        const double q =
                            out.reward +
                            (out.next_level < 0 ? 0.0 : gamma * v[target][out.next_level]);
                        if (q > best) {
                            best = q;
                            arg = target;
                        }
                    }
                    v[c][l] = best;
                    best_cell[c][l] = arg;
                }
        }
    }
};

std::string check_qlearning_vs_value_iteration() {
    const double lambda = 299792458.0 / 25e9;
    const double friis_factor_5m =
        1e5 * lambda * lambda / std::pow(4.0 * std::numbers::pi * 5.0, 2.0);

    ScenarioConfig cfg;
    cfg.name = "toy";
    cfg.grid = {1, 2, 10.0, 5.0};
    cfg.ruav_cells = {{0, 0}};
    cfg.link.tx_power = 225.0 / friis_factor_5m; // exactly 225 W received overhead
    cfg.consumption_power = 405.0;
    cfg.battery_capacity = 3.0;
    cfg.initial_battery_min = 2.5;
    cfg.initial_battery_max = 2.5;
    cfg.battery_levels = 3;

    ToyModel model;
    model.p_near = received_power(cfg.link, 5.0);
    model.p_far = received_power(cfg.link, std::sqrt(125.0));

    QLearningParams params;
    params.training_episodes = 20000;
    params.epsilon_decay_episodes = 16000;
    const TrainResult trained = train(cfg, params, 99);

    double v[2][3];
    int best_cell[2][3];
    model.solve(params.discount, v, best_cell);

    // Walk the trained greedy policy from both start states and compare it
    // with the oracle at every state it reaches.
    std::vector<std::pair<int, int>> frontier = {{0, 2}, {1, 2}};
    std::vector<std::pair<int, int>> seen;
    while (!frontier.empty()) {
        const auto [cell, level] = frontier.back();
        frontier.pop_back();
        bool dup = false;
        for (const auto& s : seen) dup = dup || s == std::make_pair(cell, level);
        if (dup) continue;
        seen.emplace_back(cell, level);

        const Observation obs{{0, cell}, {level}};
        const auto legal = valid_actions(cfg.grid, {0, cell});
        const Action greedy = best_action(trained.qtable, obs, legal);
        const int target = apply_action({0, cell}, greedy).col;
        if (target != best_cell[cell][level])
            return fail("state (cell " + std::to_string(cell) + ", level " +
                        std::to_string(level) + "): greedy goes to cell " +
                        std::to_string(target) + ", optimal is " +
                        std::to_string(best_cell[cell][level]));

        const double q = trained.qtable.value(obs, greedy);
        if (std::abs(q - v[cell][level]) > 1e-2)
            return fail("state (cell " + std::to_string(cell) + ", level " +
                        std::to_string(level) + "): Q " + std::to_string(q) +
                        " vs V* " + std::to_string(v[cell][level]));

        const ToyModel::Outcome out = model.transition(level, target);
        if (out.next_level >= 0) frontier.emplace_back(target, out.next_level);
    }
    return {};
}

// ---------------------------------------------------------------------------
// 4. Trained policy beats both baselines on paired episodes.
// ---------------------------------------------------------------------------

struct PairedGap {
    double mean = 0.0;
    double std_error = 0.0;
};

PairedGap paired_gap(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    const MeanStdError m = mean_std_error(diff);
    return {m.mean, m.std_error};
}

std::string check_policy_ordering() {
    const ScenarioConfig cfg = load_scenario(scenario1_path());
    const QLearningParams params{}; // 50000 episodes, decay at 40000
    const std::uint64_t master = 1;
    const TrainResult trained =
        train(cfg, params, derive_train_seed(master, cfg.name));

    const long evals = 2000;
    const EvalResult learned =
        evaluate_policy(cfg, PolicyKind::QLearning, &trained.qtable, evals, master);
    const EvalResult random =
        evaluate_policy(cfg, PolicyKind::RandomWalk, nullptr, evals, master);
    const EvalResult hover =
        evaluate_policy(cfg, PolicyKind::StaticHover, nullptr, evals, master);

    const PairedGap vs_random = paired_gap(learned.episode_minutes, random.episode_minutes);
    const PairedGap vs_hover = paired_gap(learned.episode_minutes, hover.episode_minutes);

    std::ostringstream detail;
    detail << "learned " << learned.summary.mean_flight_time_min
           << " min; gap vs random " << vs_random.mean << " (se " << vs_random.std_error
           << "), vs hover " << vs_hover.mean << " (se " << vs_hover.std_error << ")";
    std::cout << "       ordering: " << detail.str() << "\n";

    std::string verdict;
    if (!(vs_random.mean > 3.0 * vs_random.std_error))
        verdict += "learned does not exceed random walk by 3 standard errors; ";
    if (!(vs_hover.mean > 3.0 * vs_hover.std_error))
        verdict += "learned does not exceed static hover by 3 standard errors; ";
    if (!verdict.empty()) return fail(verdict + detail.str());
    return {};
}

// ---------------------------------------------------------------------------
// 5. Power sweep: flying time non-decreasing in transmit power, and the
//    learned advantage widens at the top of the range.
// ---------------------------------------------------------------------------

std::string check_power_sweep_trend() {
    ExperimentPlan plan;
    plan.scenario_paths = {scenario1_path()};
    plan.power_levels = {25.0, 35.0, 45.0, 55.0};
    plan.eval_episodes = 2000;
    plan.master_seed = 1;
    plan.out_dir = "acceptance_out/sweep";
    const auto runs = run_power_sweep(plan);
    const SweepOutputs& run = runs.front();
    const std::size_t n_policies = plan.policies.size();

    for (std::size_t policy = 0; policy < n_policies; ++policy) {
        for (std::size_t p = 1; p < plan.power_levels.size(); ++p) {
            const double lo = run.evals[(p - 1) * n_policies + policy]
                                  .summary.mean_flight_time_min;
            const double hi = run.evals[p * n_policies + policy]
                                  .summary.mean_flight_time_min;
            if (hi < lo - 1e-9)
                return fail(std::string(policy_name(plan.policies[policy])) +
                            " flying time decreases from " + std::to_string(lo) +
                            " to " + std::to_string(hi) + " between powers " +
                            std::to_string(plan.power_levels[p - 1]) + " and " +
                            std::to_string(plan.power_levels[p]));
        }
    }

    // plan.policies order is {QLearning, RandomWalk, StaticHover}.
    const auto gap_at = [&](std::size_t p) {
        return paired_gap(run.evals[p * n_policies + 0].episode_minutes,
                          run.evals[p * n_policies + 1].episode_minutes)
            .mean;
    };
    const double gap25 = gap_at(0);
    const double gap55 = gap_at(3);
    std::cout << "       learned-vs-random gap: " << gap25 << " min @25 W, " << gap55
              << " min @55 W\n";
    if (gap55 < gap25)
        return fail("learned-vs-random gap shrank with power: " + std::to_string(gap25) +
                    " @25 W vs " + std::to_string(gap55) + " @55 W");
    return {};
}

// ---------------------------------------------------------------------------
// 6. CLI determinism: identical flags and seed give identical bytes.
// ---------------------------------------------------------------------------

std::string run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + TUAV_CLI_PATH + "\" " + args + " > /dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) return "command failed (" + std::to_string(rc) + "): " + cmd;
    return {};
}

std::string check_cli_determinism() {
    const std::string scen = "\"" + scenario1_path() + "\"";
    for (const char* dir : {"acc6_train_a", "acc6_train_b"}) {
        fs::remove_all(dir);
        const std::string err =
            run_cli("train --scenario " + scen + " --episodes 2000 --seed 7 --out " + dir +
                    " --qtable " + std::string(dir) + "/qt.txt");
        if (!err.empty()) return err;
    }
    for (const char* file : {"train_scenario-1.csv", "train_scenario-1.svg", "qt.txt"}) {
        if (read_file(std::string("acc6_train_a/") + file) !=
            read_file(std::string("acc6_train_b/") + file))
            return fail(std::string("train outputs differ: ") + file);
    }

    for (const char* dir : {"acc6_cmp_a", "acc6_cmp_b"}) {
        fs::remove_all(dir);
        const std::string err =
            run_cli("compare --scenario " + scen +
                    " --episodes 1200 --eval-episodes 300 --seed 9 --out " + dir);
        if (!err.empty()) return err;
    }
    for (const char* file : {"compare_scenario-1.csv", "compare_scenario-1.svg"}) {
        if (read_file(std::string("acc6_cmp_a/") + file) !=
            read_file(std::string("acc6_cmp_b/") + file))
            return fail(std::string("compare outputs differ: ") + file);
    }
    return {};
}

// ---------------------------------------------------------------------------
// 7. Q-table persistence round trip on randomized tables.
// ---------------------------------------------------------------------------

std::string check_qtable_round_trip() {
    Rng rng(2025);
    for (int trial = 0; trial < 200; ++trial) {
        QTable q;
        const auto keys = rng.uniform_index(60);
        for (std::uint64_t k = 0; k < keys; ++k) {
            Observation obs{{int(rng.uniform_index(3)), int(rng.uniform_index(3))},
                            {int(rng.uniform_index(5)), int(rng.uniform_index(5)),
                             int(rng.uniform_index(5))}};
            for (int a = 0; a < kActionCount; ++a) {
                double v = 0.0;
                switch (rng.uniform_index(5)) {
                    case 0: break;
                    case 1: v = rng.uniform_double(-1e6, 1e6); break;
                    case 2: v = rng.uniform_double(-1.0, 1.0) * 1e300; break;
                    case 3: v = rng.uniform_double(-1.0, 1.0) * 1e-300; break;
                    case 4: v = rng.uniform_double(-1e-3, 1e-3); break;
                }
                q.set(obs, static_cast<Action>(a), v);
            }
        }
        save_qtable(q, "acc7_qtable.txt");
        const QTable back = load_qtable("acc7_qtable.txt");
        if (!(back == q)) return fail("round trip mismatch at trial " + std::to_string(trial));
    }
    return {};
}

// ---------------------------------------------------------------------------
// 8. Exploration schedule.
// ---------------------------------------------------------------------------

std::string check_epsilon_schedule() {
    const QLearningParams p{};
    if (epsilon(p, 0) != 1.0) return fail("epsilon(0) != 1");
    if (epsilon(p, 40000) != 0.0) return fail("epsilon(40000) != 0");
    for (int i = 0; i <= 100; ++i) {
        const long episode = i * 400;
        const double expected = 1.0 - double(episode) / 40000.0;
        if (std::abs(epsilon(p, episode) - expected) > 1e-12)
            return fail("nonlinear at episode " + std::to_string(episode));
    }
    return {};
}

struct Criterion {
    int id;
    const char* name;
    std::function<std::string()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "friis-oracle", check_friis_oracle},
        {2, "no-charging-flight-time", check_no_charging_flight_time},
        {3, "qlearning-vs-value-iteration", check_qlearning_vs_value_iteration},
        {4, "policy-ordering", check_policy_ordering},
        {5, "power-sweep-trend", check_power_sweep_trend},
        {6, "cli-determinism", check_cli_determinism},
        {7, "qtable-round-trip", check_qtable_round_trip},
        {8, "epsilon-schedule", check_epsilon_schedule},
    };

    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = c.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        if (detail.empty()) {
            std::printf("[PASS] %d %s (%lld ms)\n", c.id, c.name,
                        static_cast<long long>(ms));
        } else {
            ++failures;
            std::printf("[FAIL] %d %s: %s (%lld ms)\n", c.id, c.name, detail.c_str(),
                        static_cast<long long>(ms));
        }
        std::fflush(stdout);
    }
    return failures;
}
