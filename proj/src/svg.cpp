#include "circlepack/svg.hpp"

#include <cmath>
#include <sstream>

namespace circlepack {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8g", x);
    return buf;
}

template <class S>
std::string render(const Packing<S>& p, const RenderOptions& options) {
    if (p.circles.empty() && p.specials.empty()) throw std::invalid_argument("render_svg: empty packing");

    // Fitted viewport: the outer circle for bounded packings, the period
    // window for strips, otherwise the bounding box of the circles.
    RenderOptions::Box box{-1, -1, 1, 1};
    if (options.viewport) {
        box = *options.viewport;
    } else {
        bool have = false;
        for (std::size_t i = 0; i < p.specials.size(); ++i) {
            if (p.special_kinds[i] != SpecialKind::outer) continue;
            const auto cr = center_radius(p.specials[i]);
            const double cx = to_double(cr->cx), cy = to_double(cr->cy), r = to_double(cr->radius);
            box = {cx - r, cy - r, cx + r, cy + r};
            have = true;
        }
        if (!have && p.is_strip()) {
            const double L = to_double(p.period);
            box = {0, 0, L, L};
            have = true;
        }
        if (!have) {
            box = {1e300, 1e300, -1e300, -1e300};
            for (const auto& c : p.circles) {
                const auto cr = center_radius(c);
                const double cx = to_double(cr->cx), cy = to_double(cr->cy), r = to_double(cr->radius);
                box.x0 = std::min(box.x0, cx - r);
                box.y0 = std::min(box.y0, cy - r);
                box.x1 = std::max(box.x1, cx + r);
                box.y1 = std::max(box.y1, cy + r);
            }
        }
        const double pad = 0.02 * std::max(box.x1 - box.x0, box.y1 - box.y0);
        box = {box.x0 - pad, box.y0 - pad, box.x1 + pad, box.y1 + pad};
    }
    const double w = box.x1 - box.x0, h = box.y1 - box.y0;
    const double stroke = options.stroke_width > 0 ? options.stroke_width : w / options.size_px;

    // y is negated so the packing keeps its mathematical orientation.
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(options.size_px)
        << "\" height=\"" << num(options.size_px * h / w) << "\" viewBox=\"" << num(box.x0) << " "
        << num(-box.y1) << " " << num(w) << " " << num(h) << "\">\n";
    svg << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << num(stroke) << "\">\n";

    auto emit_circle = [&](const InversiveCircle<S>& c) {
        if (c.is_line()) {
            // clip the line to the viewport box
            const double nx = to_double(c.mx), ny = to_double(c.my), off = to_double(c.cocurv) / 2;
            if (std::fabs(ny) > std::fabs(nx)) {
                const double y = off / ny;
                svg << "<line x1=\"" << num(box.x0) << "\" y1=\"" << num(-y) << "\" x2=\"" << num(box.x1)
                    << "\" y2=\"" << num(-y) << "\"/>\n";
            } else {
                const double x = off / nx;
                svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(-box.y1) << "\" x2=\"" << num(x)
                    << "\" y2=\"" << num(-box.y0) << "\"/>\n";
            }
            return;
        }
        const auto cr = center_radius(c);
        svg << "<circle cx=\"" << num(to_double(cr->cx)) << "\" cy=\"" << num(-to_double(cr->cy))
            << "\" r=\"" << num(to_double(cr->radius)) << "\"/>\n";
    };

    for (const auto& c : p.specials) emit_circle(c);
    for (const auto& c : p.circles) emit_circle(c);
    svg << "</g>\n";

    if (options.labels) {
        svg << "<g fill=\"black\" font-family=\"sans-serif\" text-anchor=\"middle\">\n";
        for (const auto& c : p.circles) {
            const auto cr = center_radius(c);
            const double r = to_double(cr->radius);
            const std::string label = scalar_traits<S>::format(c.curv);
            const double font = 1.2 * r / static_cast<double>(label.size());
            if (font < 2.5 * stroke) continue;  // unreadably small
            svg << "<text x=\"" << num(to_double(cr->cx)) << "\" y=\""
                << num(-(to_double(cr->cy) - font * 0.35)) << "\" font-size=\"" << num(font) << "\">"
                << label << "</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::string render_svg(const AnyPacking& p, const RenderOptions& options) {
    return std::visit([&](const auto& pk) { return render(pk, options); }, p);
}

}  // namespace circlepack
