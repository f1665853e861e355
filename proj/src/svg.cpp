#include "epilog/svg.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace epilog
{

namespace
{

constexpr double width        = 960.0;
constexpr double height       = 540.0;
constexpr double margin_left  = 80.0;
constexpr double margin_right = 190.0;
constexpr double margin_top   = 50.0;
constexpr double margin_bot   = 60.0;

constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                             "#9467bd", "#8c564b", "#e377c2", "#17becf"};

// Fixed two-decimal coordinates; std::to_chars ignores the C locale.
std::string coord(double x)
{
    char buf[48];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 2);
    return ec == std::errc{} ? std::string(buf, ptr) : "0.00";
}

std::string tick_label(double x)
{
    if (x == 0.0) {
        return "0";
    }
    char buf[48];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 6);
    return ec == std::errc{} ? std::string(buf, ptr) : "?";
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

struct XTick {
    double day;
    std::string label;
};

std::vector<XTick> x_ticks(const Date& epoch, std::size_t n)
{
    const double last = static_cast<double>(n - 1);
    std::vector<XTick> ticks;
    if (last >= 45.0) {
        // first day of every month in range
        using namespace std::chrono;
        year_month ym = epoch.year() / epoch.month();
        if (epoch.day() != day{1}) {
            ym += months{1};
        }
        for (;; ym += months{1}) {
            const Date d{ym / day{1}};
            const auto offset = static_cast<double>(days_between(epoch, d));
            if (offset > last) {
                break;
            }
            ticks.push_back({offset, format_iso_date(d).substr(0, 7)});
        }
        return ticks;
    }
    for (double t : nice_ticks(0.0, last, 6)) {
        if (t >= 0.0 && t <= last) {
            ticks.push_back({t, format_iso_date(add_days(epoch, std::llround(t)))});
        }
    }
    return ticks;
}

} // namespace

std::vector<double> nice_ticks(double lo, double hi, int target_count)
{
    if (!(hi > lo)) {
        hi = lo + 1.0;
    }
    const double raw   = (hi - lo) / std::max(1, target_count);
    const double power = std::pow(10.0, std::floor(std::log10(raw)));
    double step        = power;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * power;
        if (step >= raw) {
            break;
        }
    }
    std::vector<double> ticks;
    const double first = std::floor(lo / step) * step;
    for (int i = 0;; ++i) {
        const double t = first + i * step;
        ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
        if (t >= hi - step * 1e-9) {
            break;
        }
    }
    return ticks;
}

std::string emit_svg(const std::vector<SvgSeries>& series, const SvgStyle& style)
{
    if (series.empty()) {
        throw std::invalid_argument("emit_svg: no series");
    }
    const std::size_t n = series.front().values.size();
    if (n == 0) {
        throw std::invalid_argument("emit_svg: empty series");
    }
    for (const auto& s : series) {
        if (s.values.size() != n) {
            throw std::invalid_argument("emit_svg: series '" + s.label + "' does not share the grid");
        }
    }

    double vmin = 0.0;
    double vmax = 0.0;
    for (const auto& s : series) {
        for (double v : s.values) {
            if (std::isfinite(v)) {
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
        }
    }
    const auto yticks = nice_ticks(vmin, vmax, 6);
    const double ylo  = yticks.front();
    const double yhi  = yticks.back();

    const double plot_w = width - margin_left - margin_right;
    const double plot_h = height - margin_top - margin_bot;
    const double xspan  = n > 1 ? static_cast<double>(n - 1) : 1.0;
    auto px             = [&](double day) { return margin_left + plot_w * day / xspan; };
    auto py             = [&](double v) { return margin_top + plot_h * (1.0 - (v - ylo) / (yhi - ylo)); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"540\" viewBox=\"0 0 960 540\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"540\" fill=\"#ffffff\"/>\n";
    if (!style.title.empty()) {
        out += "<text x=\"" + coord(margin_left) + "\" y=\"30.00\" font-family=\"sans-serif\" font-size=\"18\">" +
               xml_escape(style.title) + "</text>\n";
    }

    out += "<g id=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n";
    out += "<line x1=\"" + coord(margin_left) + "\" y1=\"" + coord(margin_top + plot_h) + "\" x2=\"" +
           coord(margin_left + plot_w) + "\" y2=\"" + coord(margin_top + plot_h) + "\"/>\n";
    out += "<line x1=\"" + coord(margin_left) + "\" y1=\"" + coord(margin_top) + "\" x2=\"" + coord(margin_left) +
           "\" y2=\"" + coord(margin_top + plot_h) + "\"/>\n";
    out += "</g>\n";

    out += "<g id=\"y-ticks\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">\n";
    for (double t : yticks) {
        const auto y = coord(py(t));
        out += "<line x1=\"" + coord(margin_left - 5.0) + "\" y1=\"" + y + "\" x2=\"" + coord(margin_left) +
               "\" y2=\"" + y + "\" stroke=\"#000000\"/>\n";
        out += "<line x1=\"" + coord(margin_left) + "\" y1=\"" + y + "\" x2=\"" + coord(margin_left + plot_w) +
               "\" y2=\"" + y + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + coord(margin_left - 8.0) + "\" y=\"" + coord(py(t) + 4.0) + "\">" + tick_label(t) +
               "</text>\n";
    }
    out += "</g>\n";

    out += "<g id=\"x-ticks\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (const auto& tick : x_ticks(style.epoch, n)) {
        const auto x = coord(px(tick.day));
        out += "<line x1=\"" + x + "\" y1=\"" + coord(margin_top + plot_h) + "\" x2=\"" + x + "\" y2=\"" +
               coord(margin_top + plot_h + 5.0) + "\" stroke=\"#000000\"/>\n";
        out += "<text x=\"" + x + "\" y=\"" + coord(margin_top + plot_h + 20.0) + "\">" + tick.label + "</text>\n";
    }
    out += "</g>\n";

    out += "<text x=\"20.00\" y=\"" + coord(margin_top + plot_h / 2.0) +
           "\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 20.00 " +
           coord(margin_top + plot_h / 2.0) + ")\" text-anchor=\"middle\">" + xml_escape(style.y_label) + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s     = series[k];
        const char* color = palette[k % palette.size()];
        out += "<g id=\"series-" + std::to_string(k) + "\">\n";
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\"";
        if (s.dashed) {
            out += " stroke-dasharray=\"6 4\"";
        }
        out += " points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            if (i) {
                out += ' ';
            }
            out += coord(px(static_cast<double>(i))) + ',' + coord(py(s.values[i]));
        }
        out += "\"/>\n";
        if (s.markers) {
            for (std::size_t i = 0; i < n; ++i) {
                out += "<rect x=\"" + coord(px(static_cast<double>(i)) - 2.0) + "\" y=\"" + coord(py(s.values[i]) - 2.0) +
                       "\" width=\"4\" height=\"4\" fill=\"none\" stroke=\"" + color + "\"/>\n";
            }
        }
        out += "</g>\n";
    }

    out += "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n";
    const double lx = margin_left + plot_w + 15.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double ly   = margin_top + 10.0 + 22.0 * static_cast<double>(k);
        const char* color = palette[k % palette.size()];
        out += "<line x1=\"" + coord(lx) + "\" y1=\"" + coord(ly) + "\" x2=\"" + coord(lx + 25.0) + "\" y2=\"" +
               coord(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
               (series[k].dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        out += "<text x=\"" + coord(lx + 32.0) + "\" y=\"" + coord(ly + 4.0) + "\">" + xml_escape(series[k].label) +
               "</text>\n";
    }
    out += "</g>\n";
    out += "</svg>\n";
    return out;
}

std::string emit_svg(const std::vector<LabeledTrajectory>& trajectories, Column column, const SvgStyle& style)
{
    if (trajectories.empty()) {
        throw std::invalid_argument("emit_svg: no trajectories");
    }
    const auto& first = trajectories.front().trajectory;
    std::vector<SvgSeries> series;
    for (const auto& lt : trajectories) {
        const auto& t = lt.trajectory;
        if (t.size() != first.size() || t.step != first.step || t.t0_epoch != first.t0_epoch) {
            throw std::invalid_argument("emit_svg: trajectory '" + lt.label + "' does not share the grid");
        }
        series.push_back({lt.label, column == Column::Cumulative ? t.cumulative : t.daily});
    }
    SvgStyle s = style;
    s.epoch    = first.t0_epoch;
    return emit_svg(series, s);
}

} // namespace epilog
