#pragma once

// SVG rendering of packings: one <circle> per circle, integer curvature
// labels, viewport fitted to the outer circle or the period window.

#include <optional>
#include <string>

#include "circlepack/apollonian.hpp"
#include "circlepack/packing_io.hpp"

namespace circlepack {

struct RenderOptions {
    bool labels = true;
    double stroke_width = 0;  // 0: scaled from the viewport
    double size_px = 800;     // width of the output image
    struct Box {
        double x0, y0, x1, y1;
    };
    std::optional<Box> viewport;  // overrides the fitted viewport
};

std::string render_svg(const AnyPacking& p, const RenderOptions& options = {});

}  // namespace circlepack
