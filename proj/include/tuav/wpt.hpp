#ifndef TUAV_WPT_HPP
#define TUAV_WPT_HPP

#include <compare>

#include "tuav/errors.hpp"

namespace tuav {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

struct CellIndex {
    int row = 0;
    int col = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
    friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

// Discrete 2D world: rows x cols cells of cell_side meters. Receiver UAVs
// hover at the cell centers; the transmitter UAV flies tx_altitude_offset
// meters above that plane, so the transmitter-receiver distance is never
// zero even when both occupy the same cell.
struct GridSpec {
    int rows = 3;
    int cols = 3;
    double cell_side = 10.0;          // m
    double tx_altitude_offset = 5.0;  // m

    int cell_count() const { return rows * cols; }
    bool contains(CellIndex c) const {
        return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
    }
    CellIndex center_cell() const { return {rows / 2, cols / 2}; }
    void validate() const;
};

// RF power-transfer link budget. Gains are stored in dBi and converted to
// linear factors internally; efficiency is the receiver-side conversion
// factor (1.0 = lossless rectification).
struct WptLink {
    double tx_power = 35.0;     // W
    double tx_gain_dbi = 25.0;
    double rx_gain_dbi = 25.0;
    double frequency = 25e9;    // Hz
    double efficiency = 1.0;

    double wavelength() const { return kSpeedOfLight / frequency; }
    void validate() const;
};

// Center-to-center distance between a transmitter cell and a receiver cell,
// including the vertical clearance. Throws std::domain_error on an
// out-of-range cell.
double cell_distance(const GridSpec& grid, CellIndex tx, CellIndex rx);

// Friis free-space received power in watts at distance d meters:
//   P_r = eff * P_t * g_t * g_r * lambda^2 / (4 pi d)^2
// Throws std::domain_error when d <= 0.
double received_power(const WptLink& link, double distance);

// Energy harvested over `duration` seconds at constant received power, in
// watt-hours. Throws std::domain_error on a negative duration.
double step_energy(const WptLink& link, double distance, double duration);

} // namespace tuav

#endif
