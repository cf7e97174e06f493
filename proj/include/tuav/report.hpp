#ifndef TUAV_REPORT_HPP
#define TUAV_REPORT_HPP

#include <string>
#include <vector>

#include "tuav/agent.hpp"

namespace tuav {

struct RunSummary {
    std::string policy;
    std::string scenario;
    double tx_power = 0.0;      // W
    long episodes = 0;
    double mean_flight_time_min = 0.0;
    double std_error = 0.0;     // minutes, standard error of the mean
    std::uint64_t seed = 0;
};

// Sample mean and standard error (sample stddev / sqrt(n); 0 for n < 2).
struct MeanStdError {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanStdError mean_std_error(const std::vector<double>& samples);

// Trailing moving average: out[i] = mean(x[max(0, i-window+1) .. i]).
std::vector<double> moving_average(const std::vector<double>& x, int window);

// CSV emission. All numeric cells use a fixed "%.6f" format so outputs are
// byte-stable for a given (plan, seed).
void write_training_csv(const std::string& path, const std::vector<EpisodeRecord>& records);
void write_comparison_csv(const std::string& path, const std::vector<RunSummary>& summaries);
void write_sweep_csv(const std::string& path, const std::vector<RunSummary>& summaries);

// Standalone SVG plots; pure functions of their inputs, deterministic text.
void write_learning_curve_svg(const std::string& path,
                              const std::vector<EpisodeRecord>& records,
                              int window, const std::string& title);
void write_bar_chart_svg(const std::string& path,
                         const std::vector<std::string>& labels,
                         const std::vector<double>& values,
                         const std::vector<double>& errors,
                         const std::string& title, const std::string& y_label);
// values[group][series]; one bar cluster per group.
void write_grouped_bar_svg(const std::string& path,
                           const std::vector<std::string>& group_labels,
                           const std::vector<std::string>& series_labels,
                           const std::vector<std::vector<double>>& values,
                           const std::vector<std::vector<double>>& errors,
                           const std::string& title, const std::string& y_label);

} // namespace tuav

#endif
