#pragma once

#include <string>
#include <vector>

#include "obl/geom.hpp"
#include "obl/table.hpp"

namespace obl {

/// Minimal SVG 1.1 writer. Coordinates are world units; the viewport is fit
/// to the drawn content with a margin and the y-axis flipped to point up.
class SvgCanvas {
 public:
  void polyline(const std::vector<Vec2>& points, const std::string& color,
                double width = 0.01, bool closed = false);
  void circle(Vec2 center, double radius, const std::string& color,
              double width = 0.01, bool filled = false);
  void dot(Vec2 center, double radius, const std::string& color);
  void table_outline(const ConvexTable& table, const std::string& color,
                     int samples = 512, double width = 0.01);

  void write(const std::string& path, double margin = 0.1) const;

 private:
  struct Shape {
    std::string kind;  // "polyline" | "circle"
    std::vector<Vec2> pts;
    double radius = 0;
    std::string color;
    double width = 0;
    bool filled = false;
    bool closed = false;
  };
  std::vector<Shape> shapes_;
  void extend_bounds(Vec2 p, double pad, double& x0, double& y0, double& x1,
                     double& y1) const;
};

}  // namespace obl
