#include "ballkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ballkit/errors.hpp"

namespace ballkit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw DomainError(std::string(what) + " must be a number");
  return j.get<double>();
}

double number_field(const json& j, const char* key) { return number(field(j, key), key); }

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const json& v : j) out.push_back(number(v, what));
  return out;
}

}  // namespace

PointSet parse_point_set(std::string_view text) {
  const json j = parse(text);
  const json& dim = field(j, "dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw DomainError("'dim' must be a positive integer");
  }
  const auto d = dim.get<std::size_t>();
  const json& rows = field(j, "points");
  if (!rows.is_array() || rows.empty()) throw DomainError("'points' must be a nonempty array");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> c = numbers(rows[i], "point coordinate");
    if (c.size() != d) {
      throw DomainError("point " + std::to_string(i) + " has " + std::to_string(c.size()) +
                        " coordinates, expected " + std::to_string(d));
    }
    pts.emplace_back(std::move(c));
  }
  return PointSet(d, std::move(pts));
}

PointSet read_point_set(const std::string& path) { return parse_point_set(read_text(path)); }

std::string to_json(const PointSet& s) {
  ordered_json j;
  j["dim"] = s.dim();
  j["points"] = json::array();
  for (const Point& p : s) j["points"].push_back(p.vec());
  return j.dump();
}

ArcGon parse_arcgon(std::string_view text) {
  const json j = parse(text);
  const json& variant = field(j, "variant");
  if (!variant.is_string()) throw DomainError("'variant' must be a string");
  const auto v = variant.get<std::string>();
  if (v == "empty") return ArcGon::empty();
  if (v == "point") return ArcGon::single_point({number_field(j, "x"), number_field(j, "y")});
  if (v == "disk") {
    const Disk d{{number_field(j, "cx"), number_field(j, "cy")}, number_field(j, "r")};
    if (!(d.radius > 0.0)) throw DomainError("disk radius must be positive");
    return ArcGon::full_disk(d);
  }
  if (v == "chain") {
    const json& arcs = field(j, "arcs");
    if (!arcs.is_array() || arcs.size() < 2) throw DomainError("'arcs' needs at least two arcs");
    std::vector<Arc> out;
    double max_r = 0.0;
    for (const json& a : arcs) {
      out.push_back({{number_field(a, "cx"), number_field(a, "cy")}, number_field(a, "r"),
                     canonical_angle(number_field(a, "a0")), canonical_angle(number_field(a, "a1"))});
      if (!(out.back().radius > 0.0)) throw DomainError("arc radii must be positive");
      max_r = std::max(max_r, out.back().radius);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Arc& next = out[(i + 1) % out.size()];
      if (norm(out[i].end() - next.start()) > 1e-9 * max_r) {
        throw DomainError("arc " + std::to_string(i) + " does not end where the next arc starts");
      }
    }
    return ArcGon::chain(std::move(out));
  }
  throw DomainError("unknown ArcGon variant '" + v + "'");
}

std::string to_json(const ArcGon& k) {
  ordered_json j;
  switch (k.kind()) {
    case ArcGon::Kind::Empty:
      j["variant"] = "empty";
      break;
    case ArcGon::Kind::SinglePoint:
      j["variant"] = "point";
      j["x"] = k.point().x;
      j["y"] = k.point().y;
      break;
    case ArcGon::Kind::FullDisk:
      j["variant"] = "disk";
      j["cx"] = k.disk().center.x;
      j["cy"] = k.disk().center.y;
      j["r"] = k.disk().radius;
      break;
    case ArcGon::Kind::Chain:
      j["variant"] = "chain";
      j["arcs"] = json::array();
      for (const Arc& a : k.arcs()) {
        ordered_json arc;
        arc["cx"] = a.center.x;
        arc["cy"] = a.center.y;
        arc["r"] = a.radius;
        arc["a0"] = a.start_angle;
        arc["a1"] = a.end_angle;
        j["arcs"].push_back(arc);
      }
      break;
  }
  return j.dump();
}

IntrinsicVolumes parse_volumes(std::string_view text) {
  const json j = parse(text);
  const json& dim = field(j, "dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 0) {
    throw DomainError("'dim' must be a nonnegative integer");
  }
  IntrinsicVolumes v;
  v.dim = dim.get<std::size_t>();
  v.values = numbers(field(j, "values"), "values");
  v.std_errors = numbers(field(j, "stderr"), "stderr");
  if (v.values.size() != v.dim + 1 || v.std_errors.size() != v.dim + 1) {
    throw DomainError("'values' and 'stderr' need dim + 1 entries");
  }
  return v;
}

std::string to_json(const IntrinsicVolumes& v) {
  ordered_json j;
  j["dim"] = v.dim;
  j["values"] = v.values;
  j["stderr"] = v.std_errors;
  return j.dump();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
  if (!out) throw DomainError("failed while writing '" + path + "'");
}

}  // namespace ballkit
