#include "elfscan/plot.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace elfscan {

namespace {

// Severity-ordered palette, most dangerous first; cycles beyond five.
const std::array<const char*, 5> kPalette = {"#00b7c3", "#ff8c00", "#2e8b57", "#1f5fbf",
                                             "#8b5a2b"};

const char* cluster_color(int cluster) {
    return kPalette[static_cast<std::size_t>(cluster) % kPalette.size()];
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string num(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

// Smallest "nice" value >= x.
double nice_ceil(double x) {
    if (x <= 0.0) return 1.0;
    const double e = std::floor(std::log10(x));
    const double base = std::pow(10.0, e);
    for (double m : {1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0}) {
        if (m * base >= x * (1.0 - 1e-12)) return m * base;
    }
    return 10.0 * base;
}

struct Frame {
    static constexpr double width = 640.0;
    static constexpr double height = 420.0;
    static constexpr double left = 64.0;
    static constexpr double right = 620.0;
    static constexpr double top = 46.0;
    static constexpr double bottom = 368.0;
    double ymax = 1.0;

    double y(double value) const {
        return bottom - (bottom - top) * (value / ymax);
    }
};

std::string cell_key(const CellAnalysis& cell) {
    std::string key = cell.side == Side::TopBody ? "top_" : "bottom_";
    key += cell.power_source == PowerSource::AC ? "ac" : "battery";
    return key;
}

std::string sanitize(const std::string& id) {
    std::string out = id;
    for (char& c : out) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    }
    return out;
}

void open_svg(std::ostringstream& svg, const std::string& title) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::width
        << "\" height=\"" << Frame::height << "\" viewBox=\"0 0 " << Frame::width << ' '
        << Frame::height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << Frame::width << "\" height=\"" << Frame::height
        << "\" fill=\"#ffffff\"/>\n";
    svg << "<text x=\"" << px((Frame::left + Frame::right) / 2)
        << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">"
        << title << "</text>\n";
}

void draw_axes(std::ostringstream& svg, const Frame& frame,
               const std::vector<std::string>& categories, double limit_uT) {
    svg << "<line x1=\"" << px(Frame::left) << "\" y1=\"" << px(Frame::top) << "\" x2=\""
        << px(Frame::left) << "\" y2=\"" << px(Frame::bottom)
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << px(Frame::left) << "\" y1=\"" << px(Frame::bottom) << "\" x2=\""
        << px(Frame::right) << "\" y2=\"" << px(Frame::bottom)
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    for (int t = 0; t <= 4; ++t) {
        const double value = frame.ymax * t / 4.0;
        const double y = frame.y(value);
        svg << "<line class=\"ytick\" data-value=\"" << num(value) << "\" x1=\""
            << px(Frame::left - 4) << "\" y1=\"" << px(y) << "\" x2=\"" << px(Frame::left)
            << "\" y2=\"" << px(y) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << px(Frame::left - 8) << "\" y=\"" << px(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << num(value) << "</text>\n";
    }
    svg << "<text x=\"16\" y=\"" << px((Frame::top + Frame::bottom) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 16 "
        << px((Frame::top + Frame::bottom) / 2) << ")\">B (uT)</text>\n";

    const double slot = (Frame::right - Frame::left) / static_cast<double>(categories.size());
    for (std::size_t i = 0; i < categories.size(); ++i) {
        const double x = Frame::left + (static_cast<double>(i) + 0.5) * slot;
        svg << "<text x=\"" << px(x) << "\" y=\"" << px(Frame::bottom + 18)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << categories[i] << "</text>\n";
    }

    // The one horizontal reference line at the active limit.
    const double ly = frame.y(limit_uT);
    svg << "<line class=\"limit\" data-value=\"" << num(limit_uT) << "\" x1=\""
        << px(Frame::left) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(Frame::right)
        << "\" y2=\"" << px(ly)
        << "\" stroke=\"#c62828\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
}

struct PlotPoint {
    std::size_t category = 0;
    double value = 0.0;
    int cluster = 0;
    std::size_t jitter_slot = 0;  // laptop index within one category
};

void draw_points(std::ostringstream& svg, const Frame& frame,
                 const std::vector<std::string>& categories, const std::vector<PlotPoint>& pts,
                 std::size_t jitter_slots) {
    const double slot = (Frame::right - Frame::left) / static_cast<double>(categories.size());
    for (const auto& p : pts) {
        double x = Frame::left + (static_cast<double>(p.category) + 0.5) * slot;
        if (jitter_slots > 1) {
            const double spread = slot * 0.7;
            x += spread * (static_cast<double>(p.jitter_slot) /
                               static_cast<double>(jitter_slots - 1) -
                           0.5);
        }
        svg << "<circle class=\"pt c" << p.cluster << "\" cx=\"" << px(x) << "\" cy=\""
            << px(frame.y(p.value)) << "\" r=\"4\" fill=\"" << cluster_color(p.cluster)
            << "\" fill-opacity=\"0.85\"/>\n";
    }
}

void draw_legend(std::ostringstream& svg, const std::vector<HazardLabel>& labels) {
    double y = Frame::top + 8;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        svg << "<circle cx=\"" << px(Frame::right - 104) << "\" cy=\"" << px(y - 4)
            << "\" r=\"4\" fill=\"" << cluster_color(static_cast<int>(j)) << "\"/>\n";
        svg << "<text x=\"" << px(Frame::right - 94) << "\" y=\"" << px(y)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << labels[j].name
            << (labels[j].dangerous ? " (!)" : "") << "</text>\n";
        y += 16;
    }
}

void write_svg(const std::filesystem::path& file, const std::string& content) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << content;
    if (!out) throw IoError("short write to " + file.string());
}

}  // namespace

std::vector<std::filesystem::path> render_plots(const AnalysisReport& report,
                                                const std::filesystem::path& out_dir) {
    if (!report.any_ok()) {
        std::cerr << "elfscan: no successful cells, nothing to plot\n";
        return {};
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    for (const auto& cell : report.cells) {
        if (!cell.ok) continue;
        const std::string key = cell_key(cell);
        const std::string cell_name =
            to_string(cell.side) + " / " + to_string(cell.power_source);

        // Category axis: the point ids present, index order.
        std::vector<std::string> categories;
        std::map<std::string, std::size_t> category_of;
        for (int idx = 1; idx <= kGridPointsPerSide; ++idx) {
            categories.push_back(MeasurementPoint(cell.side, idx).id());
            category_of[categories.back()] = categories.size() - 1;
        }

        Frame frame;
        double peak = report.limit_uT;
        for (const auto& f : cell.features) peak = std::max(peak, f.value_uT);
        frame.ymax = nice_ceil(peak * 1.05);

        // Laptops in feature order (already laptop asc, point asc).
        std::vector<std::string> laptops;
        std::map<std::string, std::size_t> laptop_slot;
        for (const auto& f : cell.features) {
            if (laptop_slot.emplace(f.laptop_id, laptops.size()).second) {
                laptops.push_back(f.laptop_id);
            }
        }

        std::vector<PlotPoint> all_points;
        std::map<std::string, std::vector<PlotPoint>> per_laptop;
        for (std::size_t i = 0; i < cell.features.size(); ++i) {
            const Feature& f = cell.features[i];
            PlotPoint p;
            p.category = category_of.at(f.point_id);
            p.value = f.value_uT;
            p.cluster = cell.clustering.assignments[i];
            p.jitter_slot = laptop_slot.at(f.laptop_id);
            all_points.push_back(p);
            per_laptop[f.laptop_id].push_back(p);
        }

        for (const auto& laptop : laptops) {
            std::ostringstream svg;
            open_svg(svg, cell_name + " &#8212; " + laptop);
            draw_axes(svg, frame, categories, report.limit_uT);
            draw_points(svg, frame, categories, per_laptop.at(laptop), 1);
            svg << "</svg>\n";
            const auto file = out_dir / (key + "_" + sanitize(laptop) + ".svg");
            write_svg(file, svg.str());
            written.push_back(file);
        }

        std::ostringstream svg;
        open_svg(svg, cell_name + " &#8212; all laptops");
        draw_axes(svg, frame, categories, report.limit_uT);
        draw_points(svg, frame, categories, all_points, laptops.size());
        draw_legend(svg, cell.labels);
        svg << "</svg>\n";
        const auto file = out_dir / (key + "_summary.svg");
        write_svg(file, svg.str());
        written.push_back(file);
    }
    return written;
}

}  // namespace elfscan
