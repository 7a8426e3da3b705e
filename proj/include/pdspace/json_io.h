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

// JSON forms of points, diagrams, matchings and reports.
//
// Point payloads are written at full precision so that they round-trip
// exactly. Computed scalars (distances, bounds) are rounded to 12
// significant digits. The string "inf" stands for +infinity everywhere.

#ifndef PDSPACE_JSON_IO_H_
#define PDSPACE_JSON_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pdspace/analysis.h"
#include "pdspace/diagram.h"
#include "pdspace/matching.h"

namespace pdspace::json_io {

using Json = nlohmann::ordered_json;

// Parses text; syntax errors become InvalidArgument naming source, line and
// column, followed by the offending line.
Json parse(std::string_view text, std::string_view source = "<input>");
Json read_file(const std::string& path);

// x rounded to 12 significant digits, or "inf".
Json scalar(double x);
Json scalar(ExtReal x);
double to_double(const Json& j);  // accepts numbers, "inf" and "-inf"

Json p_to_json(PNorm p);
PNorm p_from_json(const Json& j);

Json point_to_json(const MetricPair& space, const Point& x);
Point point_from_json(const MetricPair& space, const Json& j);

Json diagram_to_json(const Diagram& d);
Json diagram_to_json(const TruncatedDiagram& d);

// The space comes from `space_spec` when given, else from the "space"
// field. Both present and different is an InvalidArgument.
TruncatedDiagram diagram_from_json(const Json& j,
                                   std::optional<std::string_view> space_spec = std::nullopt);
// The "space" field of j, if any.
std::optional<std::string> space_of(const Json& j);

Json matching_to_json(const Matching& sigma);
// Accepts the bare pair list or an object holding it under "matching".
Matching matching_from_json(const Json& j, const SpaceHandle& space);

Json result_to_json(const WassersteinResult& r, bool with_matching);
Json report_to_json(const DiagnosticsReport& report, const MetricPair& space);

// One line, no trailing newline.
std::string dump(const Json& j);

}  // namespace pdspace::json_io

#endif  // PDSPACE_JSON_IO_H_
