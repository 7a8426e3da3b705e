// Copyright 2026 The pdspace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdspace/json_io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "pdspace/errors.h"

namespace pdspace::json_io {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json coordinate(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  return x;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string("expected an object with field \"") + key + "\", got " +
                          j.dump());
  }
  return j.at(key);
}

std::uint64_t multiplicity(const Json& entry) {
  if (!entry.contains("mult")) return 1;
  const Json& m = entry.at("mult");
  if (!m.is_number_integer() ||
      (m.is_number_integer() && !m.is_number_unsigned() && m.get<std::int64_t>() < 0)) {
    throw InvalidArgument("multiplicity must be a non-negative integer, got " + m.dump());
  }
  return m.get<std::uint64_t>();
}

Json side_to_json(const MetricPair& space, const PointOrA& side) {
  return side ? point_to_json(space, *side) : Json("A");
}

PointOrA side_from_json(const MetricPair& space, const Json& j) {
  if (j.is_string() && j.get<std::string>() == "A") return std::nullopt;
  return point_from_json(space, j);
}

}  // namespace

Json parse(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is one past the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
    }
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::ostringstream msg;
    msg << source << ":" << line << ":" << (offset - line_start + 1) << ": malformed JSON ("
        << e.what() << ")\n  " << text.substr(line_start, line_end - line_start);
    throw InvalidArgument(msg.str());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

Json scalar(double x) {
  if (std::isnan(x)) throw InvalidArgument("NaN has no JSON form");
  if (std::isinf(x)) return coordinate(x);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json scalar(ExtReal x) { return scalar(x.value()); }

double to_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw InvalidArgument("expected a number or \"inf\", got " + j.dump());
}

Json p_to_json(PNorm p) { return p.is_infinite() ? Json("inf") : Json(p.exponent()); }

PNorm p_from_json(const Json& j) {
  const double p = to_double(j);
  return std::isinf(p) && p > 0 ? PNorm::infinity() : PNorm::finite(p);
}

Json point_to_json(const MetricPair& space, const Point& x) {
  if (space.point_format() == PointFormat::kArcAngle) {
    return Json{{"arc", static_cast<std::int64_t>(x[0])}, {"theta", coordinate(x[1])}};
  }
  Json out = Json::array();
  for (double c : x.coords()) out.push_back(coordinate(c));
  return out;
}

Point point_from_json(const MetricPair& space, const Json& j) {
  if (space.point_format() == PointFormat::kArcAngle) {
    const Json& arc = field(j, "arc");
    if (!arc.is_number_integer()) throw InvalidArgument("\"arc\" must be an integer");
    return space.canonicalize(Point({arc.get<double>(), to_double(field(j, "theta"))}));
  }
  if (!j.is_array()) throw InvalidArgument("expected a coordinate array, got " + j.dump());
  std::vector<double> coords;
  for (const auto& c : j) coords.push_back(to_double(c));
  return space.canonicalize(Point(std::move(coords)));
}

Json diagram_to_json(const Diagram& d) { return diagram_to_json(TruncatedDiagram::exact(d)); }

Json diagram_to_json(const TruncatedDiagram& d) {
  const MetricPair& space = *d.head.space();
  Json points = Json::array();
  for (const auto& e : d.head.entries()) {
    points.push_back(Json{{"pt", point_to_json(space, e.point)}, {"mult", e.mult}});
  }
  Json out{{"space", space.id()}, {"points", std::move(points)}};
  if (d.tail_bound > ExtReal()) {
    out["tail"] =
        Json{{"p", p_to_json(d.tail_exponent)}, {"bound", coordinate(d.tail_bound.value())}};
  }
  return out;
}

std::optional<std::string> space_of(const Json& j) {
  if (j.is_object() && j.contains("space")) {
    if (!j.at("space").is_string()) throw InvalidArgument("\"space\" must be a string");
    return j.at("space").get<std::string>();
  }
  return std::nullopt;
}

TruncatedDiagram diagram_from_json(const Json& j, std::optional<std::string_view> space_spec) {
  const std::optional<std::string> own = space_of(j);
  if (!own && !space_spec) throw InvalidArgument("diagram names no space; pass --space");
  const SpaceHandle space = make_space(space_spec ? *space_spec : std::string_view(*own));
  if (own && space_spec && make_space(*own)->id() != space->id()) {
    throw InvalidArgument("diagram is over " + *own + ", not " + space->id());
  }
  const Json& points = field(j, "points");
  if (!points.is_array()) throw InvalidArgument("\"points\" must be an array");
  std::vector<DiagramEntry> entries;
  for (const auto& e : points) {
    entries.push_back({point_from_json(*space, field(e, "pt")), multiplicity(e)});
  }
  TruncatedDiagram out = TruncatedDiagram::exact(Diagram(space, std::move(entries)));
  if (j.contains("tail")) {
    const Json& tail = j.at("tail");
    const double bound = to_double(field(tail, "bound"));
    if (!(bound >= 0.0)) throw InvalidArgument("tail bound must be non-negative");
    out.tail_bound = ExtReal(bound);
    out.tail_exponent = p_from_json(field(tail, "p"));
  }
  return out;
}

Json matching_to_json(const Matching& sigma) {
  const MetricPair& space = *sigma.space();
  Json out = Json::array();
  for (const auto& pair : sigma.pairs()) {
    out.push_back(Json{{"a", side_to_json(space, pair.a)},
                       {"b", side_to_json(space, pair.b)},
                       {"mult", pair.mult}});
  }
  return out;
}

Matching matching_from_json(const Json& j, const SpaceHandle& space) {
  const Json& list = j.is_object() ? field(j, "matching") : j;
  if (!list.is_array()) throw InvalidArgument("a matching is a list of pairs");
  std::vector<MatchedPair> pairs;
  for (const auto& e : list) {
    pairs.push_back({side_from_json(*space, field(e, "a")), side_from_json(*space, field(e, "b")),
                     multiplicity(e)});
  }
  return Matching(space, std::move(pairs));
}

Json result_to_json(const WassersteinResult& r, bool with_matching) {
  Json out{
      {"value", scalar(r.value)}, {"error_bound", scalar(r.error_bound)}, {"optimal", r.optimal}};
  if (with_matching && r.matching) {
    out["space"] = r.matching->space()->id();
    out["matching"] = matching_to_json(*r.matching);
  }
  return out;
}

Json report_to_json(const DiagnosticsReport& report, const MetricPair& space) {
  Json scales = Json::array();
  for (const auto& s : report.scales) {
    Json centers = Json::array();
    for (const auto& c : s.net_centers) centers.push_back(point_to_json(space, c));
    scales.push_back(Json{{"eps", scalar(s.eps)},
                          {"upper_count", s.upper_count},
                          {"upper_count_certified", s.upper_count_certified},
                          {"net_radius", scalar(s.net_radius)},
                          {"net_covering", scalar(s.net_covering)},
                          {"net_centers", std::move(centers)},
                          {"delta", s.delta ? scalar(*s.delta) : Json(nullptr)}});
  }
  Json schedule = Json::array();
  for (double e : report.eps_schedule) schedule.push_back(scalar(e));
  const bool totally_bounded = report.uniformly_upper_finite && report.upper_totally_bounded &&
                               report.uniformly_lower_vanishing;
  return Json{{"p", p_to_json(report.p)},
              {"eps_schedule", std::move(schedule)},
              {"scales", std::move(scales)},
              {"verdict",
               Json{{"uniformly_upper_finite", report.uniformly_upper_finite},
                    {"upper_totally_bounded", report.upper_totally_bounded},
                    {"uniformly_lower_vanishing", report.uniformly_lower_vanishing},
                    {"totally_bounded_at_scales", totally_bounded},
                    {"space_complete", report.space_complete},
                    {"relatively_compact_at_scales", totally_bounded && report.space_complete}}}};
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace pdspace::json_io
