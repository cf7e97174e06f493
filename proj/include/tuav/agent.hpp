#ifndef TUAV_AGENT_HPP
#define TUAV_AGENT_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tuav/env.hpp"

namespace tuav {

struct QLearningParams {
    double learning_rate = 0.4;          // alpha in (0, 1]
    double discount = 0.95;              // gamma in [0, 1)
    double epsilon_initial = 1.0;
    long epsilon_decay_episodes = 40000; // linear decay reaches zero here
    long training_episodes = 50000;

    void validate() const;
};

// Exploration rate for a given episode: epsilon_initial scaled linearly down
// to exactly zero at epsilon_decay_episodes, zero afterwards. Constant within
// an episode.
double epsilon(const QLearningParams& params, long episode);

// Sparse action-value table keyed by Observation. Missing keys read as all
// zeros; a slot is materialized only when written, so actions that are
// illegal at a key's transmitter cell keep their initialization value.
class QTable {
public:
    using Values = std::array<double, kActionCount>;

    double value(const Observation& obs, Action a) const;
    Values values(const Observation& obs) const;
    void set(const Observation& obs, Action a, double v);

    std::size_t size() const { return table_.size(); }
    bool empty() const { return table_.empty(); }
    const std::map<Observation, Values>& entries() const { return table_; }

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    std::map<Observation, Values> table_;
};

// Argmax of the key's values over the legal actions; ties go to the lowest
// action index in enumeration order. `legal` must be non-empty.
Action best_action(const QTable& q, const Observation& obs, const std::vector<Action>& legal);

enum class PolicyKind { QLearning, RandomWalk, StaticHover };

const char* policy_name(PolicyKind kind);

struct Policy {
    PolicyKind kind = PolicyKind::RandomWalk;
    const QTable* qtable = nullptr; // QLearning only; not owned
    CellIndex hover_target;         // StaticHover only

    static Policy learned(const QTable& q) { return {PolicyKind::QLearning, &q, {}}; }
    static Policy random_walk() { return {PolicyKind::RandomWalk, nullptr, {}}; }
    static Policy static_hover(CellIndex target) { return {PolicyKind::StaticHover, nullptr, target}; }
};

// QLearning: epsilon-greedy (one uniform draw, then either a uniform legal
// action or best_action). RandomWalk: uniform over legal, hovering included.
// StaticHover: one king-move toward the target, Hover once there.
Action select_action(const Policy& policy, const Observation& obs,
                     const std::vector<Action>& legal, double eps, Rng& rng);

// One-step value backup:
//   q[obs,a] <- (1 - alpha) q[obs,a] + alpha (revenue + gamma max q[next])
// with the bootstrap term dropped on terminal transitions and the max taken
// over next_legal only. Touches exactly one table slot.
void update(QTable& q, const Observation& obs, Action action, double revenue,
            const Observation& next_obs, const std::vector<Action>& next_legal,
            bool terminal, const QLearningParams& params);

struct EpisodeRecord {
    long episode = 0;
    double mean_flight_time_min = 0.0; // averaged over receivers
    double total_revenue = 0.0;
    double epsilon = 0.0;              // rate used for the whole episode

    friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

struct TrainResult {
    QTable qtable;
    std::vector<EpisodeRecord> episodes;
};

// Runs training_episodes full episodes of epsilon-greedy Q-learning over the
// scenario. Fully deterministic in (config, params, seed).
TrainResult train(const ScenarioConfig& config, const QLearningParams& params,
                  std::uint64_t seed);

// Plain-text persistence: one line per (observation key, action, value) with
// values printed round-trip exactly. load(save(q)) == q.
void save_qtable(const QTable& q, const std::string& path);
QTable load_qtable(const std::string& path);

} // namespace tuav

#endif
