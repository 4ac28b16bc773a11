#include "ballkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "ballkit/errors.hpp"

namespace ballkit {

void SvgScene::add_body(const ArcGon& body, std::string stroke, std::string fill) {
  if (body.is_empty()) return;
  bodies_.push_back({body, std::move(stroke), std::move(fill)});
}

void SvgScene::add_points(const PointSet& points, std::string color) {
  if (points.dim() != 2) throw DomainError("SVG rendering needs planar points");
  Dots d;
  for (const Point& p : points) d.points.push_back(to_vec2(p));
  d.color = std::move(color);
  dots_.push_back(std::move(d));
}

namespace {

std::string num(double v) { return fmt::format("{:.9g}", v); }

// Screen coordinates flip y.
std::string xy(Vec2 p) { return num(p.x) + " " + num(-p.y); }

std::string path_of(const ArcGon& k) {
  if (k.kind() == ArcGon::Kind::FullDisk) {
    const Disk& d = k.disk();
    const Vec2 a = d.center + Vec2{d.radius, 0.0};
    const Vec2 b = d.center - Vec2{d.radius, 0.0};
    const std::string r = num(d.radius);
    return "M " + xy(a) + " A " + r + " " + r + " 0 0 0 " + xy(b) + " A " + r + " " + r +
           " 0 0 0 " + xy(a) + " Z";
  }
  std::string out = "M " + xy(k.arcs().front().start());
  for (const Arc& a : k.arcs()) {
    // Counterclockwise in the plane is the negative-angle sweep on screen.
    const std::string r = num(a.radius);
    out += " A " + r + " " + r + " 0 " + (a.sweep() > std::numbers::pi ? "1" : "0") + " 0 " +
           xy(a.end());
  }
  return out + " Z";
}

}  // namespace

std::string SvgScene::render(double width_px) const {
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  auto grow = [&](Vec2 lo, Vec2 hi) {
    lo_x = std::min(lo_x, lo.x);
    lo_y = std::min(lo_y, lo.y);
    hi_x = std::max(hi_x, hi.x);
    hi_y = std::max(hi_y, hi.y);
  };
  for (const Body& b : bodies_) {
    const auto [lo, hi] = b.body.bounds();
    grow(lo, hi);
  }
  for (const Dots& d : dots_) {
    for (Vec2 p : d.points) grow(p, p);
  }
  if (!(lo_x <= hi_x)) {
    lo_x = lo_y = 0.0;
    hi_x = hi_y = 1.0;
  }
  double w = hi_x - lo_x;
  double h = hi_y - lo_y;
  const double extent = std::max({w, h, 1e-12});
  const double margin = 0.05 * extent;
  w += 2.0 * margin;
  h += 2.0 * margin;
  const double min_x = lo_x - margin;
  const double min_y = -(hi_y + margin);
  const double stroke = 0.004 * extent;
  const double dot = 0.008 * extent;

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n",
      num(width_px), num(width_px * h / w), num(min_x), num(min_y), num(w), num(h));
  for (const Body& b : bodies_) {
    if (b.body.kind() == ArcGon::Kind::SinglePoint) {
      const Vec2 p = b.body.point();
      out += fmt::format("  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n", num(p.x),
                         num(-p.y), num(dot), b.stroke);
      continue;
    }
    out += fmt::format("  <path d=\"{}\" fill=\"{}\" fill-opacity=\"0.25\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                       path_of(b.body), b.fill, b.stroke, num(stroke));
  }
  for (const Dots& d : dots_) {
    for (Vec2 p : d.points) {
      out += fmt::format("  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n", num(p.x),
                         num(-p.y), num(dot), d.color);
    }
  }
  return out + "</svg>\n";
}

}  // namespace ballkit
