#include "tuav/env.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tuav {

namespace {

constexpr Displacement kDisplacements[kActionCount] = {
    {0, 0},   // Hover
    {-1, 0},  // N
    {-1, 1},  // NE
    {0, 1},   // E
    {1, 1},   // SE
    {1, 0},   // S
    {1, -1},  // SW
    {0, -1},  // W
    {-1, -1}, // NW
};

constexpr const char* kActionNames[kActionCount] = {
    "hover", "n", "ne", "e", "se", "s", "sw", "w", "nw",
};

} // namespace

Displacement action_displacement(Action a) {
    return kDisplacements[static_cast<int>(a)];
}

const char* action_name(Action a) {
    return kActionNames[static_cast<int>(a)];
}

CellIndex apply_action(CellIndex cell, Action a) {
    const Displacement d = action_displacement(a);
    return {cell.row + d.drow, cell.col + d.dcol};
}

std::vector<Action> valid_actions(const GridSpec& grid, CellIndex cell) {
    std::vector<Action> out;
    out.reserve(kActionCount);
    for (int i = 0; i < kActionCount; ++i) {
        const Action a = static_cast<Action>(i);
        if (grid.contains(apply_action(cell, a))) out.push_back(a);
    }
    return out;
}

void ScenarioConfig::validate() const {
    grid.validate();
    link.validate();
    if (ruav_cells.empty()) throw ValidationError("ruav_cells must be non-empty");
    std::set<CellIndex> seen;
    for (const CellIndex& c : ruav_cells) {
        if (!grid.contains(c))
            throw ValidationError("ruav_cells: cell (" + std::to_string(c.row) + "," +
                                  std::to_string(c.col) + ") outside grid");
        if (!seen.insert(c).second)
            throw ValidationError("ruav_cells: cell (" + std::to_string(c.row) + "," +
                                  std::to_string(c.col) + ") listed twice");
    }
    if (!(initial_battery_min > 0.0))
        throw ValidationError("initial_battery_range min must be > 0");
    if (!(initial_battery_min <= initial_battery_max))
        throw ValidationError("initial_battery_range min must be <= max");
    if (!(initial_battery_max <= battery_capacity))
        throw ValidationError("initial_battery_range max must be <= battery_capacity");
    if (!(consumption_power > 0.0))
        throw ValidationError("consumption_power must be > 0");
    if (!(time_step > 0.0)) throw ValidationError("time_step must be > 0");
    if (battery_levels < 2) throw ValidationError("battery_levels must be >= 2");
    // Episodes terminate only because every receiver eventually depletes, so
    // the net drain must stay positive even at the closest approach.
    if (received_power(link, grid.tx_altitude_offset) >= consumption_power)
        throw ValidationError(
            "link delivers >= consumption_power at minimum distance; "
            "episodes would never terminate");
}

namespace {

using nlohmann::json;

CellIndex cell_from_json(const json& j, const std::string& origin) {
    if (!j.is_object() || !j.contains("row") || !j.contains("col"))
        throw ParseError(origin + ": each cell must be an object with \"row\" and \"col\"");
    return {j.at("row").get<int>(), j.at("col").get<int>()};
}

ScenarioConfig config_from_json(const json& j, const std::string& origin) {
    ScenarioConfig c;
    if (!j.is_object()) throw ParseError(origin + ": top-level JSON value must be an object");
    try {
        if (j.contains("name")) c.name = j.at("name").get<std::string>();
        if (j.contains("grid")) {
            const json& g = j.at("grid");
            c.grid.rows = g.value("rows", c.grid.rows);
            c.grid.cols = g.value("cols", c.grid.cols);
            c.grid.cell_side = g.value("cell_side", c.grid.cell_side);
            c.grid.tx_altitude_offset = g.value("tx_altitude_offset", c.grid.tx_altitude_offset);
        }
        if (!j.contains("ruav_cells"))
            throw ParseError(origin + ": missing required key \"ruav_cells\"");
        for (const json& jc : j.at("ruav_cells"))
            c.ruav_cells.push_back(cell_from_json(jc, origin));
        if (j.contains("link")) {
            const json& l = j.at("link");
            c.link.tx_power = l.value("tx_power", c.link.tx_power);
            c.link.tx_gain_dbi = l.value("tx_gain_dbi", c.link.tx_gain_dbi);
            c.link.rx_gain_dbi = l.value("rx_gain_dbi", c.link.rx_gain_dbi);
            c.link.frequency = l.value("frequency", c.link.frequency);
            c.link.efficiency = l.value("efficiency", c.link.efficiency);
        }
        c.consumption_power = j.value("consumption_power", c.consumption_power);
        c.battery_capacity = j.value("battery_capacity", c.battery_capacity);
        if (j.contains("initial_battery_range")) {
            const json& r = j.at("initial_battery_range");
            if (!r.is_array() || r.size() != 2)
                throw ParseError(origin + ": \"initial_battery_range\" must be [min, max]");
            c.initial_battery_min = r.at(0).get<double>();
            c.initial_battery_max = r.at(1).get<double>();
        }
        c.time_step = j.value("time_step", c.time_step);
        c.battery_levels = j.value("battery_levels", c.battery_levels);
        c.mu = j.value("mu", c.mu);
        c.nu = j.value("nu", c.nu);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    c.validate();
    return c;
}

json config_to_json(const ScenarioConfig& c) {
    json cells = json::array();
    for (const CellIndex& cell : c.ruav_cells)
        cells.push_back({{"row", cell.row}, {"col", cell.col}});
    return json{
        {"name", c.name},
        {"grid",
         {{"rows", c.grid.rows},
          {"cols", c.grid.cols},
          {"cell_side", c.grid.cell_side},
          {"tx_altitude_offset", c.grid.tx_altitude_offset}}},
        {"ruav_cells", cells},
        {"link",
         {{"tx_power", c.link.tx_power},
          {"tx_gain_dbi", c.link.tx_gain_dbi},
          {"rx_gain_dbi", c.link.rx_gain_dbi},
          {"frequency", c.link.frequency},
          {"efficiency", c.link.efficiency}}},
        {"consumption_power", c.consumption_power},
        {"battery_capacity", c.battery_capacity},
        {"initial_battery_range", {c.initial_battery_min, c.initial_battery_max}},
        {"time_step", c.time_step},
        {"battery_levels", c.battery_levels},
        {"mu", c.mu},
        {"nu", c.nu},
    };
}

} // namespace

ScenarioConfig parse_scenario_text(const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return config_from_json(j, origin);
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    ScenarioConfig c = parse_scenario_text(buf.str(), path);
    if (c.name == "unnamed") c.name = std::filesystem::path(path).stem().string();
    return c;
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << config_to_json(config).dump(2) << "\n";
}

bool EnvState::terminal() const {
    return std::ranges::none_of(ruavs, [](const RUavStatus& r) { return r.alive; });
}

int discretize_battery(double battery, const ScenarioConfig& config) {
    if (!(battery >= 0.0 && battery <= config.battery_capacity))
        throw std::domain_error("discretize_battery: battery outside [0, capacity]");
    const double width = config.battery_capacity / config.battery_levels;
    const int level = static_cast<int>(std::floor(battery / width));
    return std::min(level, config.battery_levels - 1);
}

Observation observe(const EnvState& state, const ScenarioConfig& config) {
    Observation obs;
    obs.tuav_cell = state.tuav_cell;
    obs.battery_levels.reserve(state.ruavs.size());
    for (const RUavStatus& r : state.ruavs)
        obs.battery_levels.push_back(r.alive ? discretize_battery(r.battery, config) : 0);
    return obs;
}

ResetResult reset(const ScenarioConfig& config, Rng& rng) {
    config.validate();
    EnvState state;
    const auto cell = rng.uniform_index(static_cast<std::uint64_t>(config.grid.cell_count()));
    state.tuav_cell = {static_cast<int>(cell) / config.grid.cols,
                       static_cast<int>(cell) % config.grid.cols};
    state.ruavs.reserve(config.ruav_cells.size());
    for (const CellIndex& c : config.ruav_cells) {
        RUavStatus r;
        r.cell = c;
        r.battery = rng.uniform_double(config.initial_battery_min, config.initial_battery_max);
        state.ruavs.push_back(r);
    }
    return {state, observe(state, config)};
}

StepResult step(const EnvState& state, Action action, const ScenarioConfig& config) {
    if (state.terminal())
        throw std::logic_error("step: episode already terminal");
    const std::vector<Action> legal = valid_actions(config.grid, state.tuav_cell);
    if (std::ranges::find(legal, action) == legal.end())
        throw std::logic_error(std::string("step: action ") + action_name(action) +
                               " illegal at cell (" + std::to_string(state.tuav_cell.row) +
                               "," + std::to_string(state.tuav_cell.col) + ")");

    EnvState next = state;
    next.tuav_cell = apply_action(state.tuav_cell, action);
    next.step_count = state.step_count + 1;

    const double t = config.time_step;
    const double consumed_per_step = config.consumption_power * t / 3600.0;
    double harvested_total = 0.0;
    int newly_dead = 0;

    for (RUavStatus& r : next.ruavs) {
        if (!r.alive) continue;
        const double d = cell_distance(config.grid, next.tuav_cell, r.cell);
        const double harvest = step_energy(config.link, d, t);
        const double delta = harvest - consumed_per_step;
        if (r.battery + delta <= 0.0) {
            // Depletes mid-step. Net drain is positive here (battery > 0 and
            // delta < 0 imply received < consumption), so t_star is finite
            // and bounded by the step length.
            const double power = received_power(config.link, d);
            const double drain_w = config.consumption_power - power;
            const double t_star = r.battery * 3600.0 / drain_w;
            harvested_total += power * t_star / 3600.0;
            r.flight_time += t_star;
            r.battery = 0.0;
            r.alive = false;
            ++newly_dead;
        } else {
            harvested_total += harvest;
            r.flight_time += t;
            r.battery = std::min(config.battery_capacity, r.battery + delta);
        }
    }

    StepOutcome outcome;
    outcome.revenue = config.mu * harvested_total + config.nu * newly_dead;
    outcome.harvested_total = harvested_total;
    outcome.newly_dead = newly_dead;
    outcome.observation = observe(next, config);
    outcome.terminal = next.terminal();
    return {std::move(next), std::move(outcome)};
}

} // namespace tuav
