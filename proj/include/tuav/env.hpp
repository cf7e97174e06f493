#ifndef TUAV_ENV_HPP
#define TUAV_ENV_HPP

#include <compare>
#include <string>
#include <vector>

#include "tuav/rng.hpp"
#include "tuav/wpt.hpp"

namespace tuav {

// The nine moves available to the transmitter UAV: hover in place or fly to
// one of the eight neighboring cells. The enumeration order is fixed; it is
// the tie-break order for greedy action selection and the index order in
// persisted Q-tables.
enum class Action : int { Hover = 0, N, NE, E, SE, S, SW, W, NW };

inline constexpr int kActionCount = 9;

struct Displacement {
    int drow = 0;
    int dcol = 0;
};

Displacement action_displacement(Action a);
const char* action_name(Action a);
CellIndex apply_action(CellIndex cell, Action a);

// Actions whose displacement keeps the transmitter inside the grid, in
// enumeration order. Hover is always included.
std::vector<Action> valid_actions(const GridSpec& grid, CellIndex cell);

// Full description of one simulated deployment: the world geometry, the
// receiver fleet, the power link, and the reward weights.
struct ScenarioConfig {
    std::string name = "unnamed";
    GridSpec grid;
    std::vector<CellIndex> ruav_cells;
    WptLink link;
    double consumption_power = 50.0;    // W drawn by each receiver while flying
    double battery_capacity = 100.0;    // Wh
    double initial_battery_min = 60.0;  // Wh, uniform reset range
    double initial_battery_max = 100.0; // Wh
    double time_step = 20.0;            // s per action
    int battery_levels = 5;             // observation quantization
    double mu = 100.0;                  // revenue weight on harvested Wh
    double nu = -50.0;                  // revenue weight per depleted receiver

    void validate() const;
};

// JSON persistence. load_scenario defaults the name to the file stem when
// the document has no "name" key. Parse failures throw ParseError, invariant
// violations ValidationError.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario_text(const std::string& json_text, const std::string& origin = "<string>");
void save_scenario(const ScenarioConfig& config, const std::string& path);

struct RUavStatus {
    CellIndex cell;
    double battery = 0.0;     // Wh, continuous ground truth
    bool alive = true;
    double flight_time = 0.0; // s accumulated while alive; frozen at death
};

struct EnvState {
    CellIndex tuav_cell;
    std::vector<RUavStatus> ruavs;
    long step_count = 0;

    bool terminal() const;
};

// The discretized state key the agent learns over: transmitter cell plus one
// quantized battery level per receiver (a depleted receiver reads level 0).
// Receiver cells are fixed per scenario and therefore not part of the key.
struct Observation {
    CellIndex tuav_cell;
    std::vector<int> battery_levels;

    friend bool operator==(const Observation&, const Observation&) = default;
    friend auto operator<=>(const Observation&, const Observation&) = default;
};

struct StepOutcome {
    double revenue = 0.0;
    double harvested_total = 0.0; // Wh delivered to all receivers this step
    int newly_dead = 0;           // receivers depleted during this step
    Observation observation;
    bool terminal = false;
};

// Equal-width battery bins over [0, capacity]; the top edge is inclusive.
// Throws std::domain_error when battery is outside [0, capacity].
int discretize_battery(double battery, const ScenarioConfig& config);

Observation observe(const EnvState& state, const ScenarioConfig& config);

struct ResetResult {
    EnvState state;
    Observation observation;
};

// Starts an episode: transmitter cell uniform over the grid, then one
// uniform battery draw per receiver in ruav_cells order. The draw order is
// part of the determinism contract.
ResetResult reset(const ScenarioConfig& config, Rng& rng);

struct StepResult {
    EnvState state;
    StepOutcome outcome;
};

// Advances one time step: the action displaces the transmitter first, then
// every alive receiver harvests from the new position for the full step
// while draining at consumption_power. A receiver whose battery would cross
// zero dies mid-step and is credited the exact fractional flying time.
// Throws std::logic_error on an illegal action or a terminal state.
StepResult step(const EnvState& state, Action action, const ScenarioConfig& config);

} // namespace tuav

#endif
