#include "mfeit/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include "mfeit/errors.hpp"

namespace mfeit {

namespace {

constexpr double kW = 640.0, kH = 480.0, kMargin = 56.0;

struct Box {
    double xmin = std::numeric_limits<double>::max();
    double xmax = -std::numeric_limits<double>::max();
    double ymin = std::numeric_limits<double>::max();
    double ymax = -std::numeric_limits<double>::max();

    void add(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    void pad(double frac) {
        const double dx = std::max(1e-12, (xmax - xmin) * frac);
        const double dy = std::max(1e-12, (ymax - ymin) * frac);
        xmin -= dx; xmax += dx; ymin -= dy; ymax += dy;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// y axis points up in data space, down in SVG space.
std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys, const Box& b,
                     const char* style, bool close) {
    std::string s = close ? "<polygon fill=\"none\" " : "<polyline fill=\"none\" ";
    s += style;
    s += " points=\"";
    char buf[64];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double px = kMargin + (xs[i] - b.xmin) / (b.xmax - b.xmin) * (kW - 2 * kMargin);
        const double py = kH - kMargin - (ys[i] - b.ymin) / (b.ymax - b.ymin) * (kH - 2 * kMargin);
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px, py);
        s += buf;
    }
    s += "\"/>\n";
    return s;
}

std::ofstream open_svg(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot write " + path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return os;
}

void frame(std::ofstream& os, const Box& b, const std::string& x_label,
           const std::string& y_label, const std::string& title) {
    os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kW - 2 * kMargin
       << "\" height=\"" << kH - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
       << "</text>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
       << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
       << kH / 2 << ")\">" << y_label << "</text>\n";
    os << "<text x=\"" << kMargin << "\" y=\"" << kH - kMargin + 16 << "\" font-size=\"11\">"
       << fmt(b.xmin) << "</text>\n";
    os << "<text x=\"" << kW - kMargin << "\" y=\"" << kH - kMargin + 16
       << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(b.xmax) << "</text>\n";
    os << "<text x=\"" << kMargin - 4 << "\" y=\"" << kH - kMargin
       << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(b.ymin) << "</text>\n";
    os << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 10
       << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(b.ymax) << "</text>\n";
}

}  // namespace

void write_overlay_svg(const std::string& path, const Curve& target, const Curve& reconstruction,
                       const Curve* domain) {
    Box b;
    auto add_curve = [&](const Curve& c) {
        for (const auto& p : c.nodes) b.add(p.x, p.y);
    };
    add_curve(target);
    add_curve(reconstruction);
    if (domain) add_curve(*domain);
    b.pad(0.08);
    // Axis-equal: widen the smaller extent.
    const double cx = 0.5 * (b.xmin + b.xmax), cy = 0.5 * (b.ymin + b.ymax);
    const double half = 0.5 * std::max(b.xmax - b.xmin, (b.ymax - b.ymin) * (kW - 2 * kMargin) /
                                                            (kH - 2 * kMargin));
    b.xmin = cx - half; b.xmax = cx + half;
    const double halfy = half * (kH - 2 * kMargin) / (kW - 2 * kMargin);
    b.ymin = cy - halfy; b.ymax = cy + halfy;

    auto os = open_svg(path);
    frame(os, b, "x", "y", "Target and reconstruction");
    auto emit = [&](const Curve& c, const char* style) {
        std::vector<double> xs, ys;
        for (const auto& p : c.nodes) {
            xs.push_back(p.x);
            ys.push_back(p.y);
        }
        os << polyline(xs, ys, b, style, true);
    };
    if (domain) emit(*domain, "stroke=\"gray\" stroke-width=\"1\"");
    emit(target, "stroke=\"blue\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
    emit(reconstruction, "stroke=\"red\" stroke-width=\"1.5\"");
    os << "</svg>\n";
}

void write_chart_svg(const std::string& path, const std::vector<double>& x,
                     const std::vector<double>& y, const std::string& x_label,
                     const std::string& y_label, const std::string& title) {
    if (x.size() != y.size() || x.empty())
        throw ValidationError("write_chart_svg: need matching non-empty series");
    Box b;
    for (std::size_t i = 0; i < x.size(); ++i) b.add(x[i], y[i]);
    b.pad(0.05);
    auto os = open_svg(path);
    frame(os, b, x_label, y_label, title);
    os << polyline(x, y, b, "stroke=\"red\" stroke-width=\"1.5\"", false);
    os << "</svg>\n";
}

}  // namespace mfeit
