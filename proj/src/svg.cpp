#include "powerwise/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "text_util.hpp"

namespace powerwise::svg {

namespace {

constexpr int kLeft = 70;
constexpr int kRight = 160;
constexpr int kTop = 40;
constexpr int kBottom = 55;

std::string num(double v) { return detail::fixed(v, 2); }

double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

std::string tick_label(double v, double step) {
    if (std::abs(v) < step * 1e-9) v = 0.0;
    const int digits = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
    return detail::fixed(v, digits);
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void settle() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

}  // namespace

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string render(const Plot& plot) {
    Range xr, yr;
    for (const auto& b : plot.bands) {
        for (double v : b.x) xr.add(v);
        for (double v : b.lower) yr.add(v);
        for (double v : b.upper) yr.add(v);
    }
    for (const auto& s : plot.series) {
        for (const auto& [x, y] : s.points) {
            xr.add(x);
            yr.add(y);
        }
    }
    xr.settle();
    yr.settle();

    const double pw = plot.width - kLeft - kRight;
    const double ph = plot.height - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) {
        const double f = (y - yr.lo) / (yr.hi - yr.lo);
        return plot.invert_y ? kTop + f * ph : kTop + (1.0 - f) * ph;
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\""
      << plot.height << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << plot.width << "\" height=\"" << plot.height
      << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << plot.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(plot.title) << "</text>\n";

    const double xs = nice_step(xr.hi - xr.lo, 6);
    for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-12; t += xs) {
        o << "<line x1=\"" << num(px(t)) << "\" y1=\"" << kTop << "\" x2=\"" << num(px(t))
          << "\" y2=\"" << num(kTop + ph) << "\" stroke=\"#e0e0e0\"/>\n";
        o << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + ph + 16)
          << "\" text-anchor=\"middle\">" << tick_label(t, xs) << "</text>\n";
    }
    const double ys = nice_step(yr.hi - yr.lo, 6);
    for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-12; t += ys) {
        o << "<line x1=\"" << kLeft << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft + pw)
          << "\" y2=\"" << num(py(t)) << "\" stroke=\"#e0e0e0\"/>\n";
        o << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
          << tick_label(t, ys) << "</text>\n";
    }
    o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << num(pw) << "\" height=\""
      << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << plot.height - 12
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
    o << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(kTop + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";

    for (const auto& b : plot.bands) {
        o << "<polygon fill=\"" << b.color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < b.x.size(); ++i) o << num(px(b.x[i])) << ',' << num(py(b.upper[i])) << ' ';
        for (std::size_t i = b.x.size(); i-- > 0;) o << num(px(b.x[i])) << ',' << num(py(b.lower[i])) << ' ';
        o << "\"/>\n";
    }
    for (const auto& s : plot.series) {
        if (s.as_line) {
            o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
            for (const auto& [x, y] : s.points) o << num(px(x)) << ',' << num(py(y)) << ' ';
            o << "\"/>\n";
        } else {
            for (const auto& [x, y] : s.points) {
                o << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\""
                  << s.color << "\" fill-opacity=\"0.6\"/>\n";
            }
        }
    }

    int ly = kTop + 10;
    for (const auto& s : plot.series) {
        if (s.label.empty()) continue;
        const int lx = plot.width - kRight + 14;
        o << "<rect x=\"" << lx << "\" y=\"" << ly - 9 << "\" width=\"12\" height=\"12\" fill=\""
          << s.color << "\"/>\n";
        o << "<text x=\"" << lx + 18 << "\" y=\"" << ly + 1 << "\">" << escape(s.label) << "</text>\n";
        ly += 18;
    }
    o << "</svg>\n";
    return o.str();
}

std::string render_bars(const std::string& title, const std::vector<Bar>& bars, int width) {
    constexpr int kRow = 18;
    constexpr int kLabel = 170;
    const int height = kTop + static_cast<int>(bars.size()) * kRow + 20;
    double lo = 0.0, hi = 0.0;
    for (const auto& b : bars) {
        lo = std::min(lo, b.value);
        hi = std::max(hi, b.value);
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;
    const double pw = width - kLabel - 70;
    auto px = [&](double v) { return kLabel + (v - lo) / (hi - lo) * pw; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(title) << "</text>\n";
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& b = bars[i];
        const double y = kTop + static_cast<double>(i) * kRow;
        const double x0 = px(std::min(0.0, b.value));
        const double x1 = px(std::max(0.0, b.value));
        const char* weight = b.emphasized ? " font-weight=\"bold\"" : "";
        o << "<text x=\"" << kLabel - 6 << "\" y=\"" << num(y + 12) << "\" text-anchor=\"end\"" << weight
          << '>' << escape(b.label) << (b.emphasized ? " *" : "") << "</text>\n";
        o << "<rect x=\"" << num(x0) << "\" y=\"" << num(y + 2) << "\" width=\"" << num(x1 - x0)
          << "\" height=\"" << kRow - 4 << "\" fill=\"" << (b.emphasized ? "#d62728" : "#1f77b4")
          << "\"/>\n";
        o << "<text x=\"" << num(x1 + 4) << "\" y=\"" << num(y + 12) << "\"" << weight << '>'
          << detail::shortest(b.value) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace powerwise::svg
