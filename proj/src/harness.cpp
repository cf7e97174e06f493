#include "tuav/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace tuav {

namespace fs = std::filesystem;

void ExperimentPlan::validate() const {
    if (scenario_paths.empty()) throw ValidationError("plan: no scenario files given");
    if (policies.empty()) throw ValidationError("plan: no policies to run");
    if (eval_episodes < 1) throw ValidationError("plan: eval_episodes must be >= 1");
    params.validate();
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view label) {
    return splitmix64(splitmix64(master_seed) ^ fnv1a64(label));
}

std::uint64_t derive_episode_seed(std::uint64_t master_seed, std::string_view scenario,
                                  std::uint64_t episode) {
    return splitmix64(derive_stream_seed(master_seed, scenario) + episode);
}

std::uint64_t derive_train_seed(std::uint64_t master_seed, std::string_view scenario) {
    return derive_stream_seed(master_seed, std::string(scenario) + "#train");
}

EvalResult evaluate_policy(const ScenarioConfig& config, PolicyKind kind,
                           const QTable* qtable, long episodes,
                           std::uint64_t master_seed) {
    config.validate();
    if (episodes < 1) throw ValidationError("evaluate_policy: episodes must be >= 1");
    if (kind == PolicyKind::QLearning && qtable == nullptr)
        throw std::logic_error("evaluate_policy: QLearning policy needs a Q-table");

    Policy policy;
    switch (kind) {
        case PolicyKind::QLearning: policy = Policy::learned(*qtable); break;
        case PolicyKind::RandomWalk: policy = Policy::random_walk(); break;
        case PolicyKind::StaticHover:
            policy = Policy::static_hover(config.grid.center_cell());
            break;
    }

    EvalResult out;
    out.episode_minutes.reserve(static_cast<std::size_t>(episodes));
    for (long i = 0; i < episodes; ++i) {
        Rng rng(derive_episode_seed(master_seed, config.name,
                                    static_cast<std::uint64_t>(i)));
        auto [state, obs] = reset(config, rng);
        while (!state.terminal()) {
            const std::vector<Action> legal = valid_actions(config.grid, state.tuav_cell);
            const Action a = select_action(policy, obs, legal, /*eps=*/0.0, rng);
            StepResult res = step(state, a, config);
            state = std::move(res.state);
            obs = std::move(res.outcome.observation);
        }
        double flight_sum = 0.0;
        for (const RUavStatus& r : state.ruavs) flight_sum += r.flight_time;
        out.episode_minutes.push_back(flight_sum /
                                      static_cast<double>(state.ruavs.size()) / 60.0);
    }

    const MeanStdError stats = mean_std_error(out.episode_minutes);
    out.summary = {policy_name(kind), config.name,      config.link.tx_power,
                   episodes,          stats.mean,       stats.std_error,
                   master_seed};
    return out;
}

namespace {

std::string join(const std::string& dir, const std::string& file) {
    return (fs::path(dir) / file).string();
}

std::string power_label(double watts) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g W", watts);
    return buf;
}

} // namespace

std::vector<TrainingOutputs> run_training(const ExperimentPlan& plan) {
    plan.validate();
    fs::create_directories(plan.out_dir);

    std::vector<TrainingOutputs> all;
    for (const std::string& path : plan.scenario_paths) {
        TrainingOutputs run;
        run.config = load_scenario(path);
        run.result = train(run.config, plan.params,
                           derive_train_seed(plan.master_seed, run.config.name));

        run.csv_path = join(plan.out_dir, "train_" + run.config.name + ".csv");
        run.svg_path = join(plan.out_dir, "train_" + run.config.name + ".svg");
        run.qtable_path = (!plan.qtable_path.empty() && plan.scenario_paths.size() == 1)
                              ? plan.qtable_path
                              : join(plan.out_dir, "qtable_" + run.config.name + ".txt");

        write_training_csv(run.csv_path, run.result.episodes);
        write_learning_curve_svg(run.svg_path, run.result.episodes, kLearningCurveWindow,
                                 run.config.name + " training");
        save_qtable(run.result.qtable, run.qtable_path);
        all.push_back(std::move(run));
    }
    return all;
}

std::vector<ComparisonOutputs> run_comparison(const ExperimentPlan& plan) {
    plan.validate();
    fs::create_directories(plan.out_dir);

    std::vector<ComparisonOutputs> all;
    for (const std::string& path : plan.scenario_paths) {
        ComparisonOutputs run;
        run.config = load_scenario(path);

        QTable qtable;
        const bool needs_table =
            std::ranges::find(plan.policies, PolicyKind::QLearning) != plan.policies.end();
        if (needs_table) {
            if (!plan.qtable_path.empty()) {
                qtable = load_qtable(plan.qtable_path);
            } else {
                qtable = train(run.config, plan.params,
                               derive_train_seed(plan.master_seed, run.config.name))
                             .qtable;
            }
        }

        std::vector<RunSummary> summaries;
        std::vector<std::string> labels;
        std::vector<double> means, errors;
        for (const PolicyKind kind : plan.policies) {
            EvalResult eval = evaluate_policy(run.config, kind, &qtable,
                                              plan.eval_episodes, plan.master_seed);
            summaries.push_back(eval.summary);
            labels.push_back(eval.summary.policy);
            means.push_back(eval.summary.mean_flight_time_min);
            errors.push_back(eval.summary.std_error);
            run.evals.push_back(std::move(eval));
        }

        run.csv_path = join(plan.out_dir, "compare_" + run.config.name + ".csv");
        run.svg_path = join(plan.out_dir, "compare_" + run.config.name + ".svg");
        write_comparison_csv(run.csv_path, summaries);
        write_bar_chart_svg(run.svg_path, labels, means, errors,
                            run.config.name + " policy comparison",
                            "mean flying time (min)");
        all.push_back(std::move(run));
    }
    return all;
}

std::vector<SweepOutputs> run_power_sweep(const ExperimentPlan& plan) {
    plan.validate();
    if (plan.power_levels.empty())
        throw ValidationError("plan: power sweep needs at least one power level");
    fs::create_directories(plan.out_dir);

    std::vector<SweepOutputs> all;
    for (const std::string& path : plan.scenario_paths) {
        SweepOutputs run;
        run.config = load_scenario(path);

        std::vector<RunSummary> summaries;
        std::vector<std::string> group_labels, series_labels;
        std::vector<std::vector<double>> means, errors;
        for (const PolicyKind kind : plan.policies)
            series_labels.push_back(policy_name(kind));

        for (const double watts : plan.power_levels) {
            ScenarioConfig powered = run.config;
            powered.link.tx_power = watts;
            powered.validate();

            QTable qtable;
            if (std::ranges::find(plan.policies, PolicyKind::QLearning) !=
                plan.policies.end()) {
                qtable = train(powered, plan.params,
                               derive_train_seed(plan.master_seed, powered.name))
                             .qtable;
            }

            group_labels.push_back(power_label(watts));
            means.emplace_back();
            errors.emplace_back();
            for (const PolicyKind kind : plan.policies) {
                EvalResult eval = evaluate_policy(powered, kind, &qtable,
                                                  plan.eval_episodes, plan.master_seed);
                summaries.push_back(eval.summary);
                means.back().push_back(eval.summary.mean_flight_time_min);
                errors.back().push_back(eval.summary.std_error);
                run.evals.push_back(std::move(eval));
            }
        }

        run.csv_path = join(plan.out_dir, "sweep_" + run.config.name + ".csv");
        run.svg_path = join(plan.out_dir, "sweep_" + run.config.name + ".svg");
        write_sweep_csv(run.csv_path, summaries);
        write_grouped_bar_svg(run.svg_path, group_labels, series_labels, means, errors,
                              run.config.name + " transmit power sweep",
                              "mean flying time (min)");
        all.push_back(std::move(run));
    }
    return all;
}

} // namespace tuav
