#pragma once

// JSON interchange.
//   PointSet:         {"dim": 2, "points": [[x, y], ...]}
//   ArcGon:           {"variant": "chain", "arcs": [{"cx", "cy", "r", "a0", "a1"}, ...]}
//                     {"variant": "empty"} | {"variant": "point", "x", "y"}
//                     {"variant": "disk", "cx", "cy", "r"}
//   IntrinsicVolumes: {"dim": d, "values": [...], "stderr": [...]}
// Parsing is strict; any malformed input raises DomainError.

#include <string>
#include <string_view>

#include "ballkit/arcgon.hpp"
#include "ballkit/geom_core.hpp"

namespace ballkit {

PointSet parse_point_set(std::string_view text);
PointSet read_point_set(const std::string& path);
std::string to_json(const PointSet& s);

ArcGon parse_arcgon(std::string_view text);
std::string to_json(const ArcGon& k);

IntrinsicVolumes parse_volumes(std::string_view text);
std::string to_json(const IntrinsicVolumes& v);

/// Whole file as a string; DomainError when it cannot be read.
std::string read_text(const std::string& path);
/// Writes (or replaces) the file; DomainError when it cannot be written.
void write_text(const std::string& path, std::string_view text);

}  // namespace ballkit
