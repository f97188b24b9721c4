#include "metromesh/render.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace metromesh {

namespace {

struct Ramp {
    // Dark blue to yellow, five anchor colors.
    static constexpr double stops[5][3] = {{0.27, 0.00, 0.33},
                                           {0.23, 0.32, 0.55},
                                           {0.13, 0.57, 0.55},
                                           {0.37, 0.79, 0.38},
                                           {0.99, 0.91, 0.14}};

    static void color(double t, int rgb[3])
    {
        t = std::clamp(t, 0.0, 1.0) * 4.0;
        const int k = std::min(static_cast<int>(t), 3);
        const double f = t - k;
        for (int c = 0; c < 3; ++c) {
            const double v = stops[k][c] + f * (stops[k + 1][c] - stops[k][c]);
            rgb[c] = static_cast<int>(v * 255.0 + 0.5);
        }
    }
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

void render_svg(std::ostream& out, const Mesh& mesh, const RenderOptions& options)
{
    const BBox box = mesh.bbox();
    const double span_x = std::max(box.x_max - box.x_min, 1e-12);
    const double span_y = std::max(box.y_max - box.y_min, 1e-12);
    const double margin = 0.05 * std::max(span_x, span_y);
    const double scale = options.width_px / (span_x + 2.0 * margin);
    const double height_px = scale * (span_y + 2.0 * margin);
    const bool colored = options.values.has_value();

    const auto px = [&](Point2 p) {
        return Point2{(p.x - box.x_min + margin) * scale,
                      height_px - (p.y - box.y_min + margin) * scale};
    };

    double lo = 0.0, hi = 1.0;
    if (colored && !options.values->empty()) {
        lo = *std::min_element(options.values->begin(), options.values->end());
        hi = *std::max_element(options.values->begin(), options.values->end());
        if (hi <= lo) hi = lo + 1.0;
    }

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(options.width_px)
        << "\" height=\"" << num(height_px) << "\" viewBox=\"0 0 " << num(options.width_px) << ' '
        << num(height_px) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<g stroke=\"#333333\" stroke-width=\"" << num(options.width_px * 0.0015) << "\""
        << (colored ? "" : " fill=\"none\"") << ">\n";

    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto& tri = mesh.triangles[t];
        out << "<polygon points=\"";
        for (int k = 0; k < 3; ++k) {
            const Point2 p = px(mesh.points[tri[k]]);
            out << num(p.x) << ',' << num(p.y) << (k < 2 ? " " : "");
        }
        out << "\"";
        if (colored) {
            double v = 0.0;
            for (int k = 0; k < 3; ++k) v += (*options.values)[tri[k]];
            v /= 3.0;
            int rgb[3];
            Ramp::color((v - lo) / (hi - lo), rgb);
            char fill[16];
            std::snprintf(fill, sizeof fill, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
            out << " fill=\"" << fill << "\"";
        }
        out << "/>\n";
    }
    out << "</g>\n";

    if (colored) {
        out << "<g id=\"legend\" font-family=\"monospace\" font-size=\"12\">\n";
        const double bar_x = options.width_px - 40.0, bar_y = 20.0, bar_h = 120.0;
        for (int i = 0; i < 32; ++i) {
            int rgb[3];
            Ramp::color(1.0 - static_cast<double>(i) / 31.0, rgb);
            char fill[16];
            std::snprintf(fill, sizeof fill, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
            out << "<rect x=\"" << num(bar_x) << "\" y=\"" << num(bar_y + i * bar_h / 32.0)
                << "\" width=\"14\" height=\"" << num(bar_h / 32.0 + 0.5) << "\" fill=\"" << fill
                << "\"/>\n";
        }
        char label[64];
        std::snprintf(label, sizeof label, "%.3g", hi);
        out << "<text x=\"" << num(bar_x - 6.0) << "\" y=\"" << num(bar_y + 6.0)
            << "\" text-anchor=\"end\">" << label << "</text>\n";
        std::snprintf(label, sizeof label, "%.3g", lo);
        out << "<text x=\"" << num(bar_x - 6.0) << "\" y=\"" << num(bar_y + bar_h)
            << "\" text-anchor=\"end\">" << label << "</text>\n";
        out << "<text x=\"" << num(bar_x - 6.0) << "\" y=\"" << num(bar_y + bar_h + 16.0)
            << "\" text-anchor=\"end\">" << options.value_label << "</text>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
}

} // namespace metromesh
