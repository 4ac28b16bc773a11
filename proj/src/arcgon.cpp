#include "ballkit/arcgon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "ballkit/errors.hpp"
#include "ballkit/rng.hpp"

namespace ballkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinSweep = 1e-12;

// Area between a chord and its arc, rho^2 (s - sin s) / 2, with a series
// near s = 0 where the subtraction cancels.
double segment_area(double rho, double s) {
  double f;
  if (s < 1e-2) {
    const double s2 = s * s;
    f = s * s2 * (1.0 / 6.0 - s2 * (1.0 / 120.0 - s2 / 5040.0));
  } else {
    f = s - std::sin(s);
  }
  return 0.5 * rho * rho * f;
}

// Sorted, disjoint closed sub-intervals of [0, 2*pi].
class AngleSet {
 public:
  AngleSet() : pieces_{{0.0, kTwoPi}} {}

  bool empty() const { return pieces_.empty(); }
  void clear() { pieces_.clear(); }

  // Intersects with the circular interval [lo, lo + width], 0 < width < 2*pi.
  void intersect(double lo, double width) {
    lo = canonical_angle(lo);
    const double hi = lo + width;
    std::vector<std::pair<double, double>> cut;
    if (hi <= kTwoPi) {
      cut = {{lo, hi}};
    } else {
      cut = {{0.0, hi - kTwoPi}, {lo, kTwoPi}};
    }
    std::vector<std::pair<double, double>> out;
    std::size_t i = 0, j = 0;
    while (i < pieces_.size() && j < cut.size()) {
      const double a = std::max(pieces_[i].first, cut[j].first);
      const double b = std::min(pieces_[i].second, cut[j].second);
      if (b > a) out.emplace_back(a, b);
      if (pieces_[i].second < cut[j].second) {
        ++i;
      } else {
        ++j;
      }
    }
    pieces_ = std::move(out);
  }

  // Pieces touching 0 and 2*pi are merged into one wrapping interval;
  // returned as (start, sweep) with start in [0, 2*pi).
  std::vector<std::pair<double, double>> arcs() const {
    std::vector<std::pair<double, double>> out;
    if (pieces_.empty()) return out;
    auto ps = pieces_;
    if (ps.size() > 1 && ps.front().first == 0.0 && ps.back().second == kTwoPi) {
      const double start = ps.back().first;
      const double sweep = (kTwoPi - start) + ps.front().second;
      ps.pop_back();
      ps.erase(ps.begin());
      out.emplace_back(start, sweep);
    }
    for (const auto& [a, b] : ps) out.emplace_back(a, b - a);
    std::erase_if(out, [](const auto& p) { return p.second <= kMinSweep; });
    return out;
  }

 private:
  std::vector<std::pair<double, double>> pieces_;
};

Arc make_arc(Vec2 center, double radius, double start, double sweep) {
  return Arc{center, radius, canonical_angle(start), canonical_angle(start + sweep)};
}

bool inside_all(Vec2 p, std::span<const Vec2> centers, std::span<const double> radii,
                double tol) {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (norm(p - centers[i]) > radii[i] + tol) return false;
  }
  return true;
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

Vec2 to_vec2(const Point& p) {
  if (p.dim() != 2) throw DomainError("expected a planar point");
  return {p[0], p[1]};
}

Point to_point(Vec2 v) { return Point{v.x, v.y}; }

double canonical_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double Arc::sweep() const {
  double s = end_angle - start_angle;
  if (s <= 0.0) s += kTwoPi;
  return s;
}

bool Arc::covers(double angle) const {
  return canonical_angle(angle - start_angle) <= sweep();
}

ArcGon ArcGon::single_point(Vec2 p) {
  ArcGon k;
  k.data_ = p;
  return k;
}

ArcGon ArcGon::full_disk(Disk d) {
  ArcGon k;
  k.data_ = d;
  return k;
}

ArcGon ArcGon::chain(std::vector<Arc> arcs) {
  if (arcs.size() < 2) throw InternalError("an arc chain needs at least two arcs");
  ArcGon k;
  k.data_ = std::move(arcs);
  return k;
}

ArcGon::Kind ArcGon::kind() const {
  switch (data_.index()) {
    case 0:
      return Kind::Empty;
    case 1:
      return Kind::SinglePoint;
    case 2:
      return Kind::FullDisk;
    default:
      return Kind::Chain;
  }
}

Vec2 ArcGon::point() const { return std::get<Vec2>(data_); }
const Disk& ArcGon::disk() const { return std::get<Disk>(data_); }
const std::vector<Arc>& ArcGon::arcs() const { return std::get<std::vector<Arc>>(data_); }

std::vector<Vec2> ArcGon::vertices() const {
  switch (kind()) {
    case Kind::SinglePoint:
      return {point()};
    case Kind::Chain: {
      std::vector<Vec2> out;
      out.reserve(arcs().size());
      for (const Arc& a : arcs()) out.push_back(a.start());
      return out;
    }
    default:
      return {};
  }
}

double ArcGon::max_radius() const {
  switch (kind()) {
    case Kind::FullDisk:
      return disk().radius;
    case Kind::Chain: {
      double m = 0.0;
      for (const Arc& a : arcs()) m = std::max(m, a.radius);
      return m;
    }
    default:
      return 0.0;
  }
}

bool ArcGon::contains(Vec2 p, double tol) const {
  switch (kind()) {
    case Kind::Empty:
      return false;
    case Kind::SinglePoint:
      return norm(p - point()) <= tol;
    case Kind::FullDisk:
      return norm(p - disk().center) <= disk().radius + tol;
    case Kind::Chain:
      break;
  }
  // The region is the vertex polygon plus one circular segment per arc; the
  // segments are disjoint, so a point beyond chord k is inside iff it lies
  // in disk k.
  for (const Arc& a : arcs()) {
    const Vec2 s = a.start();
    const Vec2 e = a.end();
    const Vec2 chord = e - s;
    const double len = norm(chord);
    if (len == 0.0) continue;
    if (cross(chord, p - s) / len < 0.0) return norm(p - a.center) <= a.radius + tol;
  }
  return true;
}

std::vector<Vec2> ArcGon::boundary_points(std::size_t n) const {
  std::vector<Vec2> out;
  switch (kind()) {
    case Kind::Empty:
      return out;
    case Kind::SinglePoint:
      return {point()};
    case Kind::FullDisk:
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(disk().center + disk().radius * unit_vector(kTwoPi * i / n));
      }
      return out;
    case Kind::Chain:
      break;
  }
  double total = 0.0;
  for (const Arc& a : arcs()) total += a.length();
  for (const Arc& a : arcs()) {
    const auto m = static_cast<std::size_t>(std::ceil(n * a.length() / total));
    const double sw = a.sweep();
    for (std::size_t i = 0; i < std::max<std::size_t>(m, 1); ++i) {
      out.push_back(a.point_at(a.start_angle + sw * i / std::max<std::size_t>(m, 1)));
    }
  }
  return out;
}

std::pair<Vec2, Vec2> ArcGon::bounds() const {
  switch (kind()) {
    case Kind::Empty:
      throw DomainError("bounds of an empty region");
    case Kind::SinglePoint:
      return {point(), point()};
    case Kind::FullDisk: {
      const Disk& d = disk();
      return {{d.center.x - d.radius, d.center.y - d.radius},
              {d.center.x + d.radius, d.center.y + d.radius}};
    }
    case Kind::Chain:
      break;
  }
  const double lo_x = -support(*this, {-1.0, 0.0});
  const double lo_y = -support(*this, {0.0, -1.0});
  return {{lo_x, lo_y}, {support(*this, {1.0, 0.0}), support(*this, {0.0, 1.0})}};
}

ArcGon disk_intersection(std::span<const Vec2> centers, std::span<const double> radii) {
  if (centers.size() != radii.size()) {
    throw DomainError("disk_intersection: centers and radii differ in length");
  }
  if (centers.empty()) throw DomainError("disk_intersection: no disks");
  double max_r = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw DomainError("disk_intersection: radii must be finite and positive");
    }
    if (!std::isfinite(centers[i].x) || !std::isfinite(centers[i].y)) {
      throw DomainError("disk_intersection: centers must be finite");
    }
    max_r = std::max(max_r, radii[i]);
  }
  const double tol = kGeomTol * max_r;

  // Drop repeated disks so a circle never contributes the same arc twice.
  std::vector<Vec2> c;
  std::vector<double> rho;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    bool repeated = false;
    for (std::size_t j = 0; j < c.size() && !repeated; ++j) {
      repeated = norm(centers[i] - c[j]) <= tol && std::abs(radii[i] - rho[j]) <= tol;
    }
    if (!repeated) {
      c.push_back(centers[i]);
      rho.push_back(radii[i]);
    }
  }
  const std::size_t n = c.size();
  if (n == 1) return ArcGon::full_disk({c[0], rho[0]});

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norm(c[i] - c[j]) > rho[i] + rho[j] + tol) return ArcGon::empty();
    }
  }
  // Externally tangent pair: the intersection is at most the touching point.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norm(c[i] - c[j]) >= rho[i] + rho[j] - tol) {
        const Vec2 touch = c[i] + (rho[i] / (rho[i] + rho[j])) * (c[j] - c[i]);
        return inside_all(touch, c, rho, 2.0 * tol) ? ArcGon::single_point(touch)
                                                     : ArcGon::empty();
      }
    }
  }

  struct Piece {
    std::size_t circle;
    double start;
    double sweep;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < n; ++i) {
    AngleSet set;
    bool constrained = false;
    for (std::size_t j = 0; j < n && !set.empty(); ++j) {
      if (j == i) continue;
      const Vec2 diff = c[j] - c[i];
      const double delta = norm(diff);
      if (delta + rho[i] <= rho[j] + tol) continue;  // circle i inside disk j
      constrained = true;
      if (delta + rho[j] <= rho[i] + tol) {  // disk j inside disk i
        set.clear();
        break;
      }
      const double a = (delta * delta + rho[i] * rho[i] - rho[j] * rho[j]) / (2.0 * delta);
      const double h = std::sqrt(std::max(0.0, rho[i] * rho[i] - a * a));
      const double half = std::atan2(h, a);
      const double phi = std::atan2(diff.y, diff.x);
      set.intersect(phi - half, 2.0 * half);
    }
    if (!constrained) return ArcGon::full_disk({c[i], rho[i]});
    for (const auto& [start, sweep] : set.arcs()) pieces.push_back({i, start, sweep});
  }

  if (pieces.empty()) {
    // Every surviving arc collapsed: the region is a single point or empty.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Vec2 diff = c[j] - c[i];
        const double delta = norm(diff);
        if (delta <= std::abs(rho[i] - rho[j]) || delta >= rho[i] + rho[j]) continue;
        const double a = (delta * delta + rho[i] * rho[i] - rho[j] * rho[j]) / (2.0 * delta);
        const double h = std::sqrt(std::max(0.0, rho[i] * rho[i] - a * a));
        const Vec2 base = c[i] + (a / delta) * diff;
        const Vec2 off{-diff.y * h / delta, diff.x * h / delta};
        for (Vec2 cand : {base + off, base - off}) {
          if (inside_all(cand, c, rho, 10.0 * tol)) return ArcGon::single_point(cand);
        }
      }
    }
    return ArcGon::empty();
  }

  // The outward normal at angle t of a circle is unit_vector(t), so sorting
  // by start angle is the counterclockwise traversal of a convex region.
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.start < b.start; });
  std::vector<Arc> arcs;
  arcs.reserve(pieces.size());
  for (const Piece& p : pieces) arcs.push_back(make_arc(c[p.circle], rho[p.circle], p.start, p.sweep));

  if (arcs.size() == 1) {
    if (arcs[0].sweep() >= kTwoPi - 1e-9) return ArcGon::full_disk({arcs[0].center, arcs[0].radius});
    throw InternalError("disk_intersection: a single open arc cannot bound a region");
  }
  const double stitch_tol = kGeomTol * max_r;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& cur = arcs[k];
    const Arc& next = arcs[(k + 1) % arcs.size()];
    const double gap = norm(cur.end() - next.start());
    if (gap > stitch_tol) {
      throw InternalError("disk_intersection: arcs " + std::to_string(k) + " and " +
                          std::to_string((k + 1) % arcs.size()) + " leave a gap of " +
                          std::to_string(gap) + " (tolerance " + std::to_string(stitch_tol) + ")");
    }
  }
  return ArcGon::chain(std::move(arcs));
}

ArcGon disk_intersection(const PointSet& centers, std::span<const double> radii) {
  if (centers.dim() != 2) throw DomainError("disk_intersection: centers must be planar");
  std::vector<Vec2> c;
  c.reserve(centers.size());
  for (const Point& p : centers) c.push_back(to_vec2(p));
  return disk_intersection(c, radii);
}

ArcGon r_dual(const PointSet& a, double r) {
  if (a.dim() != 2) throw DomainError("r_dual: the planar kernel needs d = 2");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r_dual: r must be positive");
  const Ball meb = min_enclosing_ball(a);
  if (meb.radius > r * (1.0 + kGeomTol)) return ArcGon::empty();
  // cr(A) = r leaves exactly the circumcenter.
  if (meb.radius >= r * (1.0 - kGeomTol)) return ArcGon::single_point(to_vec2(meb.center));
  const std::vector<double> radii(a.size(), r);
  return disk_intersection(a, radii);
}

IntrinsicVolumes measures(const ArcGon& k) {
  IntrinsicVolumes v = IntrinsicVolumes::zeros(2);
  switch (k.kind()) {
    case ArcGon::Kind::Empty:
      return v;
    case ArcGon::Kind::SinglePoint:
      v.values[0] = 1.0;
      return v;
    case ArcGon::Kind::FullDisk: {
      const double rho = k.disk().radius;
      v.values = {1.0, std::numbers::pi * rho, std::numbers::pi * rho * rho};
      return v;
    }
    case ArcGon::Kind::Chain:
      break;
  }
  double half_perimeter = 0.0;
  double area = 0.0;
  const auto& arcs = k.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    const double sw = a.sweep();
    half_perimeter += 0.5 * a.radius * sw;
    area += segment_area(a.radius, sw);
    area += 0.5 * cross(a.start(), arcs[(i + 1) % arcs.size()].start());
  }
  v.values = {1.0, half_perimeter, area};
  return v;
}

double support(const ArcGon& k, Vec2 u) {
  if (std::abs(norm(u) - 1.0) > 1e-12) throw DomainError("support: direction must be a unit vector");
  switch (k.kind()) {
    case ArcGon::Kind::Empty:
      throw DomainError("support of an empty region");
    case ArcGon::Kind::SinglePoint:
      return dot(k.point(), u);
    case ArcGon::Kind::FullDisk:
      return dot(k.disk().center, u) + k.disk().radius;
    case ArcGon::Kind::Chain:
      break;
  }
  const double theta = std::atan2(u.y, u.x);
  double best = -std::numeric_limits<double>::infinity();
  for (const Arc& a : k.arcs()) {
    if (a.covers(theta)) {
      best = std::max(best, dot(a.center, u) + a.radius);
    } else {
      best = std::max({best, dot(a.start(), u), dot(a.end(), u)});
    }
  }
  return best;
}

double farthest_distance(const ArcGon& k, Vec2 v) {
  switch (k.kind()) {
    case ArcGon::Kind::Empty:
      throw DomainError("farthest_distance from an empty region");
    case ArcGon::Kind::SinglePoint:
      return norm(k.point() - v);
    case ArcGon::Kind::FullDisk:
      return norm(k.disk().center - v) + k.disk().radius;
    case ArcGon::Kind::Chain:
      break;
  }
  double best = 0.0;
  for (const Arc& a : k.arcs()) {
    const Vec2 away = a.center - v;
    const double dist = norm(away);
    // The farthest point of the full circle lies in direction (c - v).
    if (dist == 0.0 || a.covers(std::atan2(away.y, away.x))) {
      best = std::max(best, dist + a.radius);
    } else {
      best = std::max({best, norm(a.start() - v), norm(a.end() - v)});
    }
  }
  return best;
}

double support_distance(const ArcGon& a, const ArcGon& b, std::size_t n_dirs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_dirs; ++i) {
    const Vec2 u = unit_vector(kTwoPi * i / n_dirs);
    worst = std::max(worst, std::abs(support(a, u) - support(b, u)));
  }
  return worst;
}

namespace {

// Boundary of K^s traced by outward normal: a point x of K with normal n
// maps to x - s n. Vertices of K become radius-s arcs, arcs (c, rho) of K
// become radius (s - rho) arcs around c, and radius-0 pieces become corners.
std::optional<ArcGon> normal_construction(const ArcGon& k, double s) {
  const auto& arcs = k.arcs();
  const double tol = kGeomTol * s;
  std::vector<Arc> out;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& prev = arcs[(i + arcs.size() - 1) % arcs.size()];
    const Arc& cur = arcs[i];
    const double turn = canonical_angle(cur.start_angle - prev.end_angle);
    if (turn > kMinSweep && turn < std::numbers::pi * 2 - kMinSweep) {
      out.push_back(make_arc(cur.start(), s, prev.end_angle + std::numbers::pi, turn));
    }
    const double inner = s - cur.radius;
    if (inner < -tol) return std::nullopt;
    if (inner > tol) out.push_back(make_arc(cur.center, inner, cur.start_angle + std::numbers::pi, cur.sweep()));
  }
  if (out.size() < 2) return std::nullopt;
  return ArcGon::chain(std::move(out));
}

bool validate_dual(const ArcGon& k, const ArcGon& candidate, double s, const DualOptions& opts) {
  const auto& arcs = candidate.arcs();
  double total = 0.0;
  for (const Arc& a : arcs) total += a.length();
  Engine eng = substream(opts.seed, Stream::Validation, 0);
  std::uniform_real_distribution<double> pick(0.0, total);
  const std::size_t n = std::max<std::size_t>(opts.validation_samples, 256);
  for (std::size_t i = 0; i < n; ++i) {
    double t = pick(eng);
    std::size_t j = 0;
    while (j + 1 < arcs.size() && t > arcs[j].length()) t -= arcs[j++].length();
    const Arc& a = arcs[j];
    const Vec2 v = a.point_at(a.start_angle + std::min(t / a.radius, a.sweep()));
    if (std::abs(farthest_distance(k, v) - s) > 1e-8 * s) return false;
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (norm(arcs[i].end() - arcs[(i + 1) % arcs.size()].start()) > kGeomTol * s) return false;
  }
  return true;
}

ArcGonResult ray_bisection(const ArcGon& k, double s, const DualOptions& opts) {
  std::vector<Point> samples;
  for (Vec2 p : k.boundary_points(2048)) samples.push_back(to_point(p));
  for (Vec2 p : k.vertices()) samples.push_back(to_point(p));
  const Vec2 origin = to_vec2(min_enclosing_ball(PointSet(std::move(samples)), opts.seed).center);
  const double tol = kGeomTol * s;
  const double f0 = farthest_distance(k, origin);
  if (f0 > s + tol) return {ArcGon::empty(), ConstructionPath::RayBisection};
  if (f0 >= s - tol) return {ArcGon::single_point(origin), ConstructionPath::RayBisection};

  const std::size_t m = std::max<std::size_t>(opts.rays, 4096);
  std::vector<Vec2> hits(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 u = unit_vector(kTwoPi * i / m);
    // The origin lies in K^s, whose diameter is at most 2s.
    double lo = 0.0;
    double hi = 2.0 * s;
    while (hi - lo > 1e-10 * s) {
      const double mid = 0.5 * (lo + hi);
      if (farthest_distance(k, origin + mid * u) <= s) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    hits[i] = origin + lo * u;
  }
  // Radius-s arcs through consecutive hits stay inside the s-convex K^s.
  std::vector<Arc> arcs;
  arcs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 p = hits[i];
    const Vec2 q = hits[(i + 1) % m];
    const Vec2 chord = q - p;
    const double len = norm(chord);
    if (len <= 1e-14 * s) continue;
    const Vec2 outward{chord.y / len, -chord.x / len};
    const double h = std::sqrt(std::max(0.0, s * s - 0.25 * len * len));
    const Vec2 center = 0.5 * (p + q) - h * outward;
    const Vec2 dp = p - center;
    const Vec2 dq = q - center;
    arcs.push_back(Arc{center, s, canonical_angle(std::atan2(dp.y, dp.x)),
                       canonical_angle(std::atan2(dq.y, dq.x))});
  }
  return {ArcGon::chain(std::move(arcs)), ConstructionPath::RayBisection};
}

}  // namespace

ArcGonResult s_dual(const ArcGon& k, double s, const DualOptions& opts) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("s_dual: s must be positive");
  const double tol = kGeomTol * std::max(s, k.max_radius());
  switch (k.kind()) {
    case ArcGon::Kind::Empty:
      throw DomainError("s_dual of an empty region");
    case ArcGon::Kind::SinglePoint:
      return {ArcGon::full_disk({k.point(), s})};
    case ArcGon::Kind::FullDisk: {
      const Disk& d = k.disk();
      if (s > d.radius + tol) return {ArcGon::full_disk({d.center, s - d.radius})};
      if (s >= d.radius - tol) return {ArcGon::single_point(d.center)};
      return {ArcGon::empty()};
    }
    case ArcGon::Kind::Chain:
      break;
  }
  if (!opts.force_ray_bisection) {
    if (auto built = normal_construction(k, s); built && validate_dual(k, *built, s, opts)) {
      return {*std::move(built), ConstructionPath::Exact};
    }
  }
  return ray_bisection(k, s, opts);
}

ArcGonResult r_hull(const PointSet& a, double r, std::uint64_t seed) {
  if (a.dim() != 2) throw DomainError("r_hull: the planar kernel needs d = 2");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r_hull: r must be positive");
  if (circumradius(a) > r * (1.0 + kGeomTol)) {
    throw HullUndefinedError("r_hull: circumradius exceeds r, conv_r(A) is undefined");
  }
  const ArcGon dual = r_dual(a, r);
  switch (dual.kind()) {
    case ArcGon::Kind::Empty:
      throw HullUndefinedError("r_hull: A^r is empty");
    case ArcGon::Kind::FullDisk:
      return {ArcGon::single_point(dual.disk().center)};
    case ArcGon::Kind::SinglePoint:
      return {ArcGon::full_disk({dual.point(), r})};
    case ArcGon::Kind::Chain:
      break;
  }
  const std::vector<Vec2> verts = dual.vertices();
  const std::vector<double> radii(verts.size(), r);
  ArcGon hull = disk_intersection(verts, radii);
  bool valid = !hull.is_empty();
  for (int i = 0; valid && i < 360; ++i) {
    const Vec2 u = unit_vector(kTwoPi * i / 360.0);
    valid = std::abs(support(dual, u) + support(hull, {-u.x, -u.y}) - r) <= 1e-7 * r;
  }
  if (valid) return {std::move(hull), ConstructionPath::Exact};
  DualOptions opts;
  opts.seed = seed;
  opts.force_ray_bisection = true;
  return s_dual(dual, r, opts);
}

}  // namespace ballkit
