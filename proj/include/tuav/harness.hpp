#ifndef TUAV_HARNESS_HPP
#define TUAV_HARNESS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tuav/agent.hpp"
#include "tuav/report.hpp"

namespace tuav {

// Everything one batch run needs. Training and evaluation seeds are derived
// from master_seed so that a plan is reproducible byte-for-byte.
struct ExperimentPlan {
    std::vector<std::string> scenario_paths;
    std::vector<PolicyKind> policies = {PolicyKind::QLearning, PolicyKind::RandomWalk,
                                        PolicyKind::StaticHover};
    std::vector<double> power_levels = {25.0, 35.0, 45.0, 55.0};
    QLearningParams params;
    long eval_episodes = 2000;
    std::uint64_t master_seed = 1;
    std::string out_dir = "out";
    std::string qtable_path; // train: save here; compare: load instead of training

    void validate() const;
};

std::uint64_t fnv1a64(std::string_view s);

// Seed for a named deterministic stream under a master seed.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view label);

// Per-episode evaluation seed; depends on (master, scenario, episode) only,
// never on the policy or the transmit power, so evaluations are paired: the
// same episode index sees the same initial batteries and start cell.
std::uint64_t derive_episode_seed(std::uint64_t master_seed, std::string_view scenario,
                                  std::uint64_t episode);

// Training stream seed for a scenario (power-independent, see above).
std::uint64_t derive_train_seed(std::uint64_t master_seed, std::string_view scenario);

struct EvalResult {
    RunSummary summary;
    std::vector<double> episode_minutes; // per-episode mean receiver flying time
};

// Greedy evaluation (epsilon = 0) over `episodes` paired episodes.
// `qtable` is required for PolicyKind::QLearning and ignored otherwise; the
// static-hover target is the central grid cell.
EvalResult evaluate_policy(const ScenarioConfig& config, PolicyKind kind,
                           const QTable* qtable, long episodes,
                           std::uint64_t master_seed);

struct TrainingOutputs {
    ScenarioConfig config;
    TrainResult result;
    std::string csv_path;
    std::string svg_path;
    std::string qtable_path;
};

struct ComparisonOutputs {
    ScenarioConfig config;
    std::vector<EvalResult> evals; // plan.policies order
    std::string csv_path;
    std::string svg_path;
};

struct SweepOutputs {
    ScenarioConfig config;
    std::vector<EvalResult> evals; // power-major, then plan.policies order
    std::string csv_path;
    std::string svg_path;
};

// One trained model per scenario: per-episode CSV, learning-curve SVG
// (moving-average window 500) and the persisted Q-table.
std::vector<TrainingOutputs> run_training(const ExperimentPlan& plan);

// Paired greedy comparison of the planned policies per scenario. Trains
// in-run unless plan.qtable_path points at a saved table.
std::vector<ComparisonOutputs> run_comparison(const ExperimentPlan& plan);

// Re-trains and re-evaluates every planned policy at each transmit power.
std::vector<SweepOutputs> run_power_sweep(const ExperimentPlan& plan);

inline constexpr int kLearningCurveWindow = 500;

} // namespace tuav

#endif
