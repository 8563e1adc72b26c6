#include "obl/svg.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace obl {

void SvgCanvas::polyline(const std::vector<Vec2>& points, const std::string& color,
                         double width, bool closed) {
  if (points.empty()) return;
  shapes_.push_back({"polyline", points, 0, color, width, false, closed});
}

void SvgCanvas::circle(Vec2 center, double radius, const std::string& color,
                       double width, bool filled) {
  shapes_.push_back({"circle", {center}, radius, color, width, filled, false});
}

void SvgCanvas::dot(Vec2 center, double radius, const std::string& color) {
  circle(center, radius, color, 0, true);
}

void SvgCanvas::table_outline(const ConvexTable& table, const std::string& color,
                              int samples, double width) {
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    pts.push_back(table.boundary_point(2.0 * std::numbers::pi * i / samples));
  polyline(pts, color, width, true);
}

void SvgCanvas::extend_bounds(Vec2 p, double pad, double& x0, double& y0,
                              double& x1, double& y1) const {
  x0 = std::min(x0, p.x - pad);
  y0 = std::min(y0, p.y - pad);
  x1 = std::max(x1, p.x + pad);
  y1 = std::max(y1, p.y + pad);
}

void SvgCanvas::write(const std::string& path, double margin) const {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  for (const auto& s : shapes_)
    for (const Vec2& p : s.pts) extend_bounds(p, s.radius, x0, y0, x1, y1);
  if (!(x0 < x1)) {
    x0 = y0 = -1;
    x1 = y1 = 1;
  }
  double w = x1 - x0, h = y1 - y0;
  x0 -= margin * w;
  x1 += margin * w;
  y0 -= margin * h;
  y1 += margin * h;
  w = x1 - x0;
  h = y1 - y0;

  // Flip y so that the mathematical y-axis points up in the image.
  auto X = [&](double x) { return x; };
  auto Y = [&](double y) { return y0 + y1 - y; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"800\" height=\"" << 800.0 * h / w << "\" viewBox=\"" << x0
      << " " << y0 << " " << w << " " << h << "\">\n";
  for (const auto& s : shapes_) {
    if (s.kind == "circle") {
      out << "  <circle cx=\"" << X(s.pts[0].x) << "\" cy=\"" << Y(s.pts[0].y)
          << "\" r=\"" << s.radius << "\"";
      if (s.filled)
        out << " fill=\"" << s.color << "\"";
      else
        out << " fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
            << s.width << "\"";
      out << "/>\n";
    } else {
      out << (s.closed ? "  <polygon points=\"" : "  <polyline points=\"");
      for (const Vec2& p : s.pts) out << X(p.x) << "," << Y(p.y) << " ";
      out << "\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
          << s.width << "\"/>\n";
    }
  }
  out << "</svg>\n";

  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << out.str();
}

}  // namespace obl
