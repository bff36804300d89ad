#pragma once

#include <string>
#include <vector>

#include "mfeit/geometry.hpp"

namespace mfeit {

/// Two closed polylines (target dashed, reconstruction solid) on a shared
/// axis-equal viewport, with the domain boundary for context when given.
void write_overlay_svg(const std::string& path, const Curve& target, const Curve& reconstruction,
                       const Curve* domain = nullptr);

/// Single polyline chart with framed axes and min/max tick labels.
void write_chart_svg(const std::string& path, const std::vector<double>& x,
                     const std::vector<double>& y, const std::string& x_label,
                     const std::string& y_label, const std::string& title);

}  // namespace mfeit
