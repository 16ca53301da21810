#include "svg_report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "probclust/errors.hpp"

namespace probclust::cli {

namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 48.0;

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

struct Bounds {
    double lo_x = std::numeric_limits<double>::infinity();
    double hi_x = -std::numeric_limits<double>::infinity();
    double lo_y = std::numeric_limits<double>::infinity();
    double hi_y = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        lo_x = std::min(lo_x, x);
        hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y);
        hi_y = std::max(hi_y, y);
    }
};

std::string num(double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << v;
    return s.str();
}

}  // namespace

std::string render_projection_svg(const ClusterModel& model, const Dataset& data, std::size_t jx,
                                  std::size_t jy) {
    if (jx >= model.dim || jy >= model.dim) {
        throw Error(ErrorKind::InvalidArgument,
                    "projection index out of range for a " + std::to_string(model.dim) +
                        "-dimensional model");
    }
    require_same_dim(model.dim, data.dim(), "report input");

    Bounds b;
    for (const auto& v : data.vectors) {
        b.add(v[jx], v[jy]);
    }
    std::map<int, std::size_t> color_of;
    for (const auto& r : model.regions) {
        const auto& s = *r.space;
        b.add(s.center[jx] - s.scale[jx], s.center[jy] - s.scale[jy]);
        b.add(s.center[jx] + s.scale[jx], s.center[jy] + s.scale[jy]);
        color_of.emplace(r.id, color_of.size() % kPalette.size());
    }
    const double span = std::max({b.hi_x - b.lo_x, b.hi_y - b.lo_y, 1e-12});
    const double unit = (kSize - 2 * kMargin) / span;
    auto px = [&](double x) { return kMargin + (x - b.lo_x) * unit; };
    auto py = [&](double y) { return kSize - kMargin - (y - b.lo_y) * unit; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
        << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
        << "<title>projection onto x" << jx << ", x" << jy << "</title>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">x" << jx << "</text>\n"
        << "<text x=\"16\" y=\"" << kSize / 2 << "\" text-anchor=\"middle\" font-size=\"14\" "
        << "transform=\"rotate(-90 16 " << kSize / 2 << ")\">x" << jy << "</text>\n";

    svg << "<g class=\"points\">\n";
    for (const auto& v : data.vectors) {
        const int id = assign(v, model).region_id;
        svg << "<circle cx=\"" << num(px(v[jx])) << "\" cy=\"" << num(py(v[jy]))
            << "\" r=\"1.6\" fill=\"" << kPalette[color_of[id]] << "\" fill-opacity=\"0.6\"/>\n";
    }
    svg << "</g>\n";

    for (const auto& r : model.regions) {
        const auto& s = *r.space;
        const char* color = kPalette[color_of[r.id]];
        const double x0 = px(s.center[jx] - s.scale[jx]);
        const double y0 = py(s.center[jy] + s.scale[jy]);
        svg << "<g class=\"region\" data-id=\"" << r.id << "\">\n"
            << "<rect class=\"scale\" x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\""
            << num(2 * s.scale[jx] * unit) << "\" height=\"" << num(2 * s.scale[jy] * unit)
            << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        const double cx = px(s.center[jx]);
        const double cy = py(s.center[jy]);
        svg << "<path class=\"center\" d=\"M" << num(cx - 6) << ' ' << num(cy) << " H"
            << num(cx + 6) << " M" << num(cx) << ' ' << num(cy - 6) << " V" << num(cy + 6)
            << "\" stroke=\"black\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << num(cx + 8) << "\" y=\"" << num(cy - 8)
            << "\" font-size=\"12\">" << r.id << "</text>\n"
            << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace probclust::cli
