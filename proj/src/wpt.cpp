#include "tuav/wpt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tuav {

void GridSpec::validate() const {
    if (rows < 1) throw ValidationError("grid.rows must be >= 1");
    if (cols < 1) throw ValidationError("grid.cols must be >= 1");
    if (!(cell_side > 0.0)) throw ValidationError("grid.cell_side must be > 0");
    if (!(tx_altitude_offset > 0.0))
        throw ValidationError("grid.tx_altitude_offset must be > 0");
}

void WptLink::validate() const {
    if (!(tx_power >= 0.0)) throw ValidationError("link.tx_power must be >= 0");
    if (!(frequency > 0.0)) throw ValidationError("link.frequency must be > 0");
    if (!(efficiency >= 0.0 && efficiency <= 1.0))
        throw ValidationError("link.efficiency must be in [0, 1]");
}

double cell_distance(const GridSpec& grid, CellIndex tx, CellIndex rx) {
    if (!grid.contains(tx))
        throw std::domain_error("cell_distance: tx cell (" + std::to_string(tx.row) +
                                "," + std::to_string(tx.col) + ") outside grid");
    if (!grid.contains(rx))
        throw std::domain_error("cell_distance: rx cell (" + std::to_string(rx.row) +
                                "," + std::to_string(rx.col) + ") outside grid");
    const double dx = (tx.row - rx.row) * grid.cell_side;
    const double dy = (tx.col - rx.col) * grid.cell_side;
    const double dz = grid.tx_altitude_offset;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double received_power(const WptLink& link, double distance) {
    if (!(distance > 0.0))
        throw std::domain_error("received_power: distance must be > 0");
    const double gt = std::pow(10.0, link.tx_gain_dbi / 10.0);
    const double gr = std::pow(10.0, link.rx_gain_dbi / 10.0);
    const double lambda = link.wavelength();
    const double denom = 4.0 * std::numbers::pi * distance;
    return link.efficiency * link.tx_power * gt * gr * lambda * lambda / (denom * denom);
}

double step_energy(const WptLink& link, double distance, double duration) {
    if (duration < 0.0)
        throw std::domain_error("step_energy: duration must be >= 0");
    if (duration == 0.0) return 0.0;
    return received_power(link, distance) * duration / 3600.0;
}

} // namespace tuav
