#pragma once

// Static SVG figures of planar bodies and point sets. The viewBox is the
// data bounding box plus a 5% margin and the y axis points up, so output
// depends only on the inputs.

#include <string>
#include <vector>

#include "ballkit/arcgon.hpp"
#include "ballkit/geom_core.hpp"

namespace ballkit {

class SvgScene {
 public:
  /// Empty bodies are skipped. Colors are any SVG paint ("#1f77b4", "none").
  void add_body(const ArcGon& body, std::string stroke, std::string fill = "none");
  /// Planar points drawn as small dots.
  void add_points(const PointSet& points, std::string color);

  std::string render(double width_px = 640.0) const;

 private:
  struct Body {
    ArcGon body;
    std::string stroke;
    std::string fill;
  };
  struct Dots {
    std::vector<Vec2> points;
    std::string color;
  };
  std::vector<Body> bodies_;
  std::vector<Dots> dots_;
};

}  // namespace ballkit
