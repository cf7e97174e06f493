#include "tuav/agent.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tuav {

void QLearningParams::validate() const {
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw ValidationError("learning_rate must be in (0, 1]");
    if (!(discount >= 0.0 && discount < 1.0))
        throw ValidationError("discount must be in [0, 1)");
    if (!(epsilon_initial >= 0.0 && epsilon_initial <= 1.0))
        throw ValidationError("epsilon_initial must be in [0, 1]");
    if (epsilon_decay_episodes < 0)
        throw ValidationError("epsilon_decay_episodes must be >= 0");
    if (training_episodes < 0)
        throw ValidationError("training_episodes must be >= 0");
    if (epsilon_decay_episodes > training_episodes)
        throw ValidationError("epsilon_decay_episodes must be <= training_episodes");
}

double epsilon(const QLearningParams& params, long episode) {
    if (episode >= params.epsilon_decay_episodes) return 0.0;
    const double frac = static_cast<double>(episode) /
                        static_cast<double>(params.epsilon_decay_episodes);
    return params.epsilon_initial * (1.0 - frac);
}

double QTable::value(const Observation& obs, Action a) const {
    const auto it = table_.find(obs);
    return it == table_.end() ? 0.0 : it->second[static_cast<int>(a)];
}

QTable::Values QTable::values(const Observation& obs) const {
    const auto it = table_.find(obs);
    return it == table_.end() ? Values{} : it->second;
}

void QTable::set(const Observation& obs, Action a, double v) {
    table_[obs][static_cast<int>(a)] = v;
}

Action best_action(const QTable& q, const Observation& obs, const std::vector<Action>& legal) {
    if (legal.empty()) throw std::logic_error("best_action: no legal actions");
    bool allowed[kActionCount] = {};
    for (Action a : legal) allowed[static_cast<int>(a)] = true;
    const QTable::Values vals = q.values(obs);
    int best = -1;
    for (int i = 0; i < kActionCount; ++i) {
        if (!allowed[i]) continue;
        if (best < 0 || vals[i] > vals[best]) best = i;
    }
    return static_cast<Action>(best);
}

const char* policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::QLearning: return "qlearning";
        case PolicyKind::RandomWalk: return "random_walk";
        case PolicyKind::StaticHover: return "static_hover";
    }
    return "unknown";
}

namespace {

int sign(int v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

Action action_from_displacement(int drow, int dcol) {
    for (int i = 0; i < kActionCount; ++i) {
        const Displacement d = action_displacement(static_cast<Action>(i));
        if (d.drow == drow && d.dcol == dcol) return static_cast<Action>(i);
    }
    throw std::logic_error("action_from_displacement: no unit action matches");
}

} // namespace

Action select_action(const Policy& policy, const Observation& obs,
                     const std::vector<Action>& legal, double eps, Rng& rng) {
    if (legal.empty()) throw std::logic_error("select_action: no legal actions");
    switch (policy.kind) {
        case PolicyKind::QLearning: {
            const double r = rng.uniform_double(0.0, 1.0);
            if (r < eps) return legal[rng.uniform_index(legal.size())];
            return best_action(*policy.qtable, obs, legal);
        }
        case PolicyKind::RandomWalk:
            return legal[rng.uniform_index(legal.size())];
        case PolicyKind::StaticHover: {
            const int drow = sign(policy.hover_target.row - obs.tuav_cell.row);
            const int dcol = sign(policy.hover_target.col - obs.tuav_cell.col);
            return action_from_displacement(drow, dcol);
        }
    }
    throw std::logic_error("select_action: unknown policy kind");
}

void update(QTable& q, const Observation& obs, Action action, double revenue,
            const Observation& next_obs, const std::vector<Action>& next_legal,
            bool terminal, const QLearningParams& params) {
    double target = revenue;
    if (!terminal) {
        const Action a_star = best_action(q, next_obs, next_legal);
        target += params.discount * q.value(next_obs, a_star);
    }
    const double old = q.value(obs, action);
    q.set(obs, action, (1.0 - params.learning_rate) * old + params.learning_rate * target);
}

TrainResult train(const ScenarioConfig& config, const QLearningParams& params,
                  std::uint64_t seed) {
    config.validate();
    params.validate();

    TrainResult result;
    result.episodes.reserve(static_cast<std::size_t>(params.training_episodes));
    Rng rng(seed);
    const Policy policy = Policy::learned(result.qtable);

    for (long ep = 0; ep < params.training_episodes; ++ep) {
        const double eps = epsilon(params, ep);
        auto [state, obs] = reset(config, rng);
        double total_revenue = 0.0;

        while (!state.terminal()) {
            const std::vector<Action> legal = valid_actions(config.grid, state.tuav_cell);
            const Action a = select_action(policy, obs, legal, eps, rng);
            StepResult res = step(state, a, config);
            const std::vector<Action> next_legal =
                valid_actions(config.grid, res.state.tuav_cell);
            update(result.qtable, obs, a, res.outcome.revenue, res.outcome.observation,
                   next_legal, res.outcome.terminal, params);
            total_revenue += res.outcome.revenue;
            state = std::move(res.state);
            obs = std::move(res.outcome.observation);
        }

        double flight_sum = 0.0;
        for (const RUavStatus& r : state.ruavs) flight_sum += r.flight_time;
        result.episodes.push_back({ep,
                                   flight_sum / static_cast<double>(state.ruavs.size()) / 60.0,
                                   total_revenue, eps});
    }
    return result;
}

namespace {

// %.17g guarantees an exact binary64 round trip through strtod.
std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void save_qtable(const QTable& q, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write qtable file: " + path);
    out << "tuavq v1\n";
    for (const auto& [obs, values] : q.entries()) {
        for (int a = 0; a < kActionCount; ++a) {
            out << obs.tuav_cell.row << ' ' << obs.tuav_cell.col;
            for (int level : obs.battery_levels) out << ' ' << level;
            out << ' ' << a << ' ' << format_value(values[a]) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

QTable load_qtable(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open qtable file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "tuavq v1")
        throw ParseError(path + ": line 1: expected header \"tuavq v1\"");

    QTable q;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (fields >> tok) tokens.push_back(tok);
        // row col level... action value
        if (tokens.size() < 5)
            throw ParseError(path + ": line " + std::to_string(line_no) +
                             ": expected at least 5 fields, got " +
                             std::to_string(tokens.size()));
        try {
            Observation obs;
            obs.tuav_cell.row = std::stoi(tokens[0]);
            obs.tuav_cell.col = std::stoi(tokens[1]);
            for (std::size_t i = 2; i + 2 < tokens.size(); ++i)
                obs.battery_levels.push_back(std::stoi(tokens[i]));
            const int a = std::stoi(tokens[tokens.size() - 2]);
            if (a < 0 || a >= kActionCount)
                throw ParseError(path + ": line " + std::to_string(line_no) +
                                 ": action index out of range");
            std::size_t consumed = 0;
            const std::string& vtok = tokens.back();
            const double v = std::stod(vtok, &consumed);
            if (consumed != vtok.size())
                throw ParseError(path + ": line " + std::to_string(line_no) +
                                 ": malformed value \"" + vtok + "\"");
            q.set(obs, static_cast<Action>(a), v);
        } catch (const std::invalid_argument&) {
            throw ParseError(path + ": line " + std::to_string(line_no) +
                             ": malformed field");
        } catch (const std::out_of_range&) {
            throw ParseError(path + ": line " + std::to_string(line_no) +
                             ": field out of range");
        }
    }
    return q;
}

} // namespace tuav
