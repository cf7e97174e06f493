#include "tuav/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tuav {

namespace {

std::string num(double v, const char* fmt = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string coord(double v) { return num(v, "%.2f"); }

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

constexpr const char* kSeriesColors[] = {"#3b6fb5", "#c0703f", "#5a9a5a",
                                         "#8a63a8", "#b0a040"};

} // namespace

MeanStdError mean_std_error(const std::vector<double>& samples) {
    MeanStdError out;
    const std::size_t n = samples.size();
    if (n == 0) return out;
    double sum = 0.0;
    for (double v : samples) sum += v;
    out.mean = sum / static_cast<double>(n);
    if (n < 2) return out;
    double ss = 0.0;
    for (double v : samples) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / static_cast<double>(n - 1)) /
                    std::sqrt(static_cast<double>(n));
    return out;
}

std::vector<double> moving_average(const std::vector<double>& x, int window) {
    if (window < 1) throw std::domain_error("moving_average: window must be >= 1");
    std::vector<double> out(x.size());
    double running = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        running += x[i];
        if (i >= static_cast<std::size_t>(window)) running -= x[i - window];
        const auto span = std::min<std::size_t>(i + 1, window);
        out[i] = running / static_cast<double>(span);
    }
    return out;
}

void write_training_csv(const std::string& path, const std::vector<EpisodeRecord>& records) {
    std::ofstream out = open_out(path);
    out << "episode,mean_flight_time_min,total_revenue,epsilon\n";
    for (const EpisodeRecord& r : records) {
        out << r.episode << ',' << num(r.mean_flight_time_min) << ','
            << num(r.total_revenue) << ',' << num(r.epsilon) << '\n';
    }
}

void write_comparison_csv(const std::string& path, const std::vector<RunSummary>& summaries) {
    std::ofstream out = open_out(path);
    out << "policy,scenario,tx_power,episodes,mean_flight_time_min,std_error,seed\n";
    for (const RunSummary& s : summaries) {
        out << s.policy << ',' << s.scenario << ',' << num(s.tx_power) << ','
            << s.episodes << ',' << num(s.mean_flight_time_min) << ','
            << num(s.std_error) << ',' << s.seed << '\n';
    }
}

void write_sweep_csv(const std::string& path, const std::vector<RunSummary>& summaries) {
    std::ofstream out = open_out(path);
    out << "tx_power,policy,mean_flight_time_min,std_error\n";
    for (const RunSummary& s : summaries) {
        out << num(s.tx_power) << ',' << s.policy << ','
            << num(s.mean_flight_time_min) << ',' << num(s.std_error) << '\n';
    }
}

namespace {

struct Frame {
    // Plot area in SVG pixel coordinates.
    double x0 = 70, y0 = 50, x1 = 860, y1 = 440;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * (x1 - x0); }
    double py(double y) const { return y1 - (y - ymin) / (ymax - ymin) * (y1 - y0); }
};

void svg_open(std::ofstream& out, int w, int h) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
        << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_text(std::ofstream& out, double x, double y, const std::string& s,
              const char* anchor = "middle", int size = 13) {
    out << "<text x=\"" << coord(x) << "\" y=\"" << coord(y) << "\" font-family=\"sans-serif\""
        << " font-size=\"" << size << "\" text-anchor=\"" << anchor << "\">" << s
        << "</text>\n";
}

void svg_axes(std::ofstream& out, const Frame& f, const std::string& x_label,
              const std::string& y_label, const std::string& title) {
    out << "<line x1=\"" << coord(f.x0) << "\" y1=\"" << coord(f.y1) << "\" x2=\""
        << coord(f.x1) << "\" y2=\"" << coord(f.y1) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << coord(f.x0) << "\" y1=\"" << coord(f.y0) << "\" x2=\""
        << coord(f.x0) << "\" y2=\"" << coord(f.y1) << "\" stroke=\"black\"/>\n";
    svg_text(out, (f.x0 + f.x1) / 2, f.y1 + 36, x_label);
    out << "<text x=\"18\" y=\"" << coord((f.y0 + f.y1) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 18 " << coord((f.y0 + f.y1) / 2) << ")\">" << y_label
        << "</text>\n";
    svg_text(out, (f.x0 + f.x1) / 2, f.y0 - 16, title, "middle", 15);
    // y ticks
    for (int i = 0; i <= 4; ++i) {
        const double y = f.ymin + (f.ymax - f.ymin) * i / 4.0;
        const double yp = f.py(y);
        out << "<line x1=\"" << coord(f.x0 - 4) << "\" y1=\"" << coord(yp) << "\" x2=\""
            << coord(f.x0) << "\" y2=\"" << coord(yp) << "\" stroke=\"black\"/>\n";
        svg_text(out, f.x0 - 8, yp + 4, num(y, "%.1f"), "end", 11);
    }
}

} // namespace

void write_learning_curve_svg(const std::string& path,
                              const std::vector<EpisodeRecord>& records,
                              int window, const std::string& title) {
    std::ofstream out = open_out(path);
    svg_open(out, 900, 500);
    if (records.empty()) {
        svg_text(out, 450, 250, "no episodes");
        out << "</svg>\n";
        return;
    }

    std::vector<double> raw(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) raw[i] = records[i].mean_flight_time_min;
    const std::vector<double> smooth = moving_average(raw, window);

    Frame f;
    f.xmin = 0;
    f.xmax = static_cast<double>(records.size() - 1);
    if (f.xmax <= f.xmin) f.xmax = f.xmin + 1;
    const auto [lo, hi] = std::minmax_element(smooth.begin(), smooth.end());
    const double pad = std::max(0.5, (*hi - *lo) * 0.1);
    f.ymin = *lo - pad;
    f.ymax = *hi + pad;
    svg_axes(out, f, "episode", "mean flying time (min)", title);
    for (int i = 0; i <= 4; ++i) {
        const double x = f.xmin + (f.xmax - f.xmin) * i / 4.0;
        svg_text(out, f.px(x), f.y1 + 18, num(x, "%.0f"), "middle", 11);
    }

    // Decimate long runs so the polyline stays a reasonable size.
    const std::size_t stride = std::max<std::size_t>(1, smooth.size() / 1200);
    out << "<polyline fill=\"none\" stroke=\"" << kSeriesColors[0]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < smooth.size(); i += stride)
        out << coord(f.px(static_cast<double>(i))) << ',' << coord(f.py(smooth[i])) << ' ';
    if ((smooth.size() - 1) % stride != 0)
        out << coord(f.px(static_cast<double>(smooth.size() - 1))) << ','
            << coord(f.py(smooth.back()));
    out << "\"/>\n</svg>\n";
}

void write_bar_chart_svg(const std::string& path,
                         const std::vector<std::string>& labels,
                         const std::vector<double>& values,
                         const std::vector<double>& errors,
                         const std::string& title, const std::string& y_label) {
    if (labels.size() != values.size() || labels.size() != errors.size())
        throw std::invalid_argument("write_bar_chart_svg: size mismatch");
    std::ofstream out = open_out(path);
    svg_open(out, 900, 500);
    Frame f;
    f.xmin = 0;
    f.xmax = static_cast<double>(labels.size());
    double hi = 1.0;
    for (std::size_t i = 0; i < values.size(); ++i) hi = std::max(hi, values[i] + errors[i]);
    f.ymin = 0;
    f.ymax = hi * 1.15;
    svg_axes(out, f, "", y_label, title);

    for (std::size_t i = 0; i < values.size(); ++i) {
        const double cx = static_cast<double>(i) + 0.5;
        const double half = 0.3;
        const double x = f.px(cx - half);
        const double w = f.px(cx + half) - x;
        const double y = f.py(values[i]);
        out << "<rect x=\"" << coord(x) << "\" y=\"" << coord(y) << "\" width=\"" << coord(w)
            << "\" height=\"" << coord(f.y1 - y) << "\" fill=\""
            << kSeriesColors[i % 5] << "\"/>\n";
        if (errors[i] > 0.0) {
            const double yl = f.py(values[i] - errors[i]);
            const double yh = f.py(values[i] + errors[i]);
            const double ex = f.px(cx);
            out << "<line x1=\"" << coord(ex) << "\" y1=\"" << coord(yl) << "\" x2=\""
                << coord(ex) << "\" y2=\"" << coord(yh) << "\" stroke=\"black\"/>\n";
        }
        svg_text(out, f.px(cx), y - 6, num(values[i], "%.2f"), "middle", 11);
        svg_text(out, f.px(cx), f.y1 + 18, labels[i], "middle", 12);
    }
    out << "</svg>\n";
}

void write_grouped_bar_svg(const std::string& path,
                           const std::vector<std::string>& group_labels,
                           const std::vector<std::string>& series_labels,
                           const std::vector<std::vector<double>>& values,
                           const std::vector<std::vector<double>>& errors,
                           const std::string& title, const std::string& y_label) {
    if (values.size() != group_labels.size() || errors.size() != group_labels.size())
        throw std::invalid_argument("write_grouped_bar_svg: group size mismatch");
    std::ofstream out = open_out(path);
    svg_open(out, 900, 500);
    Frame f;
    f.xmin = 0;
    f.xmax = static_cast<double>(group_labels.size());
    double hi = 1.0;
    for (std::size_t g = 0; g < values.size(); ++g) {
        if (values[g].size() != series_labels.size() || errors[g].size() != series_labels.size())
            throw std::invalid_argument("write_grouped_bar_svg: series size mismatch");
        for (std::size_t s = 0; s < values[g].size(); ++s)
            hi = std::max(hi, values[g][s] + errors[g][s]);
    }
    f.ymin = 0;
    f.ymax = hi * 1.15;
    svg_axes(out, f, "", y_label, title);

    const std::size_t ns = series_labels.size();
    const double slot = 0.8 / static_cast<double>(ns);
    for (std::size_t g = 0; g < values.size(); ++g) {
        for (std::size_t s = 0; s < ns; ++s) {
            const double left = static_cast<double>(g) + 0.1 + slot * static_cast<double>(s);
            const double x = f.px(left);
            const double w = f.px(left + slot * 0.9) - x;
            const double y = f.py(values[g][s]);
            out << "<rect x=\"" << coord(x) << "\" y=\"" << coord(y) << "\" width=\""
                << coord(w) << "\" height=\"" << coord(f.y1 - y) << "\" fill=\""
                << kSeriesColors[s % 5] << "\"/>\n";
            if (errors[g][s] > 0.0) {
                const double ex = f.px(left + slot * 0.45);
                out << "<line x1=\"" << coord(ex) << "\" y1=\""
                    << coord(f.py(values[g][s] - errors[g][s])) << "\" x2=\"" << coord(ex)
                    << "\" y2=\"" << coord(f.py(values[g][s] + errors[g][s]))
                    << "\" stroke=\"black\"/>\n";
            }
        }
        svg_text(out, f.px(static_cast<double>(g) + 0.5), f.y1 + 18, group_labels[g],
                 "middle", 12);
    }
    for (std::size_t s = 0; s < ns; ++s) {
        const double lx = f.x1 - 150;
        const double ly = f.y0 + 18 * static_cast<double>(s);
        out << "<rect x=\"" << coord(lx) << "\" y=\"" << coord(ly - 9)
            << "\" width=\"12\" height=\"12\" fill=\"" << kSeriesColors[s % 5] << "\"/>\n";
        svg_text(out, lx + 18, ly + 2, series_labels[s], "start", 12);
    }
    out << "</svg>\n";
}

} // namespace tuav
