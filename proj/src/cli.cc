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

#include "pdspace/cli.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pdspace/analysis.h"
#include "pdspace/errors.h"
#include "pdspace/geodesic.h"
#include "pdspace/json_io.h"
#include "pdspace/matching.h"

namespace pdspace::cli {
namespace {

using json_io::Json;

struct Common {
  std::string space;
  std::string p = "2";
  std::string out;
  std::vector<std::string> files;

  std::optional<std::string_view> space_override() const {
    if (space.empty()) return std::nullopt;
    return space;
  }
};

void add_common(CLI::App* cmd, Common& c, std::size_t min_files, std::size_t max_files) {
  cmd->add_option("--space", c.space, "space spec; defaults to the one named in the input");
  cmd->add_option("--p", c.p, "Wasserstein exponent, a real >= 1 or inf")->capture_default_str();
  cmd->add_option("--out", c.out, "write the result here instead of stdout");
  if (max_files > 0) {
    cmd->add_option("files", c.files, "input JSON files")
        ->expected(static_cast<int>(min_files), static_cast<int>(max_files))
        ->required(min_files > 0);
  }
}

TruncatedDiagram load_diagram(const Common& c, const std::string& path) {
  return json_io::diagram_from_json(json_io::read_file(path), c.space_override());
}

std::vector<TruncatedDiagram> load_all(const Common& c) {
  std::vector<TruncatedDiagram> out;
  for (const auto& f : c.files) out.push_back(load_diagram(c, f));
  for (const auto& d : out) require_same_space(d.head, out.front().head);
  return out;
}

bool exact(const TruncatedDiagram& d) { return d.tail_bound == ExtReal(); }

std::string cmd_dist(const Common& c, bool with_matching) {
  const auto ds = load_all(c);
  const PNorm p = PNorm::parse(c.p);
  WassersteinResult r = exact(ds[0]) && exact(ds[1]) ? wasserstein(ds[0].head, ds[1].head, p)
                                                     : wasserstein_truncated(ds[0], ds[1], p);
  return json_io::dump(json_io::result_to_json(r, with_matching));
}

std::string cmd_cost(const Common& c) {
  const Json j = json_io::read_file(c.files[0]);
  std::optional<std::string> spec = c.space.empty() ? json_io::space_of(j) : c.space;
  if (!spec) throw InvalidArgument("matching names no space; pass --space");
  const std::optional<std::string> own = json_io::space_of(j);
  const SpaceHandle space = make_space(*spec);
  if (own && make_space(*own)->id() != space->id()) {
    throw InvalidArgument("matching is over " + *own + ", not " + space->id());
  }
  const Matching sigma = json_io::matching_from_json(j, space);
  return json_io::dump(Json{{"value", json_io::scalar(cost_p(sigma, PNorm::parse(c.p)))}});
}

std::string cmd_geodesic(const Common& c, const std::vector<double>& grid) {
  const auto ds = load_all(c);
  if (!exact(ds[0]) || !exact(ds[1])) {
    throw InvalidArgument("geodesics are computed between finite diagrams only");
  }
  const GeodesicPath path = geodesic(ds[0].head, ds[1].head, PNorm::parse(c.p));
  std::string lines;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) lines += '\n';
    lines += json_io::dump(Json{{"t", json_io::scalar(grid[i])},
                                {"diagram", json_io::diagram_to_json(path.eval(grid[i]))}});
  }
  return lines;
}

std::string cmd_diagnose(const Common& c, const std::vector<double>& schedule, double factor) {
  const auto ds = load_all(c);
  const DiagnosticsReport report =
      diagnose_set(std::span<const TruncatedDiagram>(ds), PNorm::parse(c.p), schedule, factor);
  return json_io::dump(json_io::report_to_json(report, *ds.front().head.space()));
}

std::string cmd_gallery(const Common& c, const std::string& name, std::optional<int> n,
                        double eps) {
  const PNorm p = PNorm::parse(c.p);
  if (name == "wedge_intervals") {
    Json rows = Json::array();
    for (const auto& [k, cost] : infimum_gap_demo(n.value_or(10))) {
      rows.push_back(Json::array({k, json_io::scalar(cost)}));
    }
    return json_io::dump(rows);
  }
  if (name == "circles") {
    const SeriesBracket b = circles_partial(n.value_or(100), p);
    const double limit = std::pow(std::numbers::pi, 3) / 6.0;
    return json_io::dump(
        Json{{"n", n.value_or(100)},
             {"partial", json_io::scalar(b.partial)},
             {"tail_bound", json_io::scalar(b.tail_bound)},
             {"limit", json_io::scalar(limit)},
             {"brackets", b.partial <= limit && limit <= b.partial + b.tail_bound}});
  }
  if (name == "non_length_space") {
    const auto [alpha, beta] = non_length_space_instance(n.value_or(3));
    const WassersteinResult r = wasserstein(alpha, beta, p);
    const double expected =
        p.is_infinite() ? 1.0
                        : std::pow(static_cast<double>(n.value_or(3) + 1), 1.0 / p.exponent());
    return json_io::dump(Json{{"n", n.value_or(3)},
                              {"p", json_io::p_to_json(p)},
                              {"alpha", json_io::diagram_to_json(alpha)},
                              {"beta", json_io::diagram_to_json(beta)},
                              {"value", json_io::scalar(r.value)},
                              {"expected", json_io::scalar(expected)}});
  }
  // local_noncompactness
  const SpaceHandle space = make_space(c.space.empty() ? "halfplane:linf" : c.space);
  const Diagram zero(space);
  const auto betas =
      local_noncompactness_witnesses(zero, eps, p, static_cast<std::size_t>(n.value_or(20)));
  Json witnesses = Json::array();
  for (const auto& b : betas) {
    witnesses.push_back(
        Json{{"diagram", json_io::diagram_to_json(b)},
             {"distance_to_alpha", json_io::scalar(wasserstein(b, zero, p).value)}});
  }
  return json_io::dump(Json{{"space", space->id()},
                            {"eps", json_io::scalar(eps)},
                            {"p", json_io::p_to_json(p)},
                            {"witnesses", std::move(witnesses)}});
}

std::string cmd_embed(const Common& c, int n) {
  if (n < 0) throw InvalidArgument("--n must be non-negative");
  const auto ds = load_all(c);
  for (const auto& d : ds) {
    if (!exact(d)) throw InvalidArgument("only finite diagrams embed in a symmetric product");
  }
  const SpaceHandle& space = ds[0].head.space();
  const SymmetricTuple u = embed_symmetric(ds[0].head, static_cast<std::size_t>(n));
  Json slots = Json::array();
  for (const auto& x : u.slots) slots.push_back(json_io::point_to_json(*space, x));
  Json out{{"space", space->id()}, {"n", n}, {"slots", std::move(slots)}};
  if (ds.size() == 2) {
    const PNorm p = PNorm::parse(c.p);
    const SymmetricTuple v = embed_symmetric(ds[1].head, static_cast<std::size_t>(n));
    out["distance"] = json_io::scalar(symmetric_dist(u, v, p));
    out["wasserstein"] = json_io::scalar(wasserstein(ds[0].head, ds[1].head, p).value);
  }
  return json_io::dump(out);
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidArgument(std::string(flag) + " expects comma separated numbers, got \"" + text +
                            "\"");
    }
  }
  return values;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write " + path);
  file << text << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wasserstein distances, matchings and geodesics of persistence diagrams"};
  app.name("pdspace");
  app.require_subcommand(1);

  Common dist_c, match_c, cost_c, geo_c, diag_c, gal_c, embed_c;
  gal_c.p = "1";
  std::string t_grid = "0,0.25,0.5,0.75,1";
  std::string schedule;
  double net_factor = 1.0;
  std::string gallery_name;
  std::optional<int> gallery_n;
  double gallery_eps = 0.5;
  int embed_n = 0;

  auto* dist = app.add_subcommand("dist", "W_p between two diagrams");
  add_common(dist, dist_c, 2, 2);
  auto* match = app.add_subcommand("match", "W_p with an optimal matching");
  add_common(match, match_c, 2, 2);
  auto* cost = app.add_subcommand("cost", "cost_p of a matching");
  add_common(cost, cost_c, 1, 1);
  auto* geo = app.add_subcommand("geodesic", "sample a geodesic as JSON lines");
  add_common(geo, geo_c, 2, 2);
  geo->add_option("--t-grid", t_grid, "comma separated times in [0, 1]")->capture_default_str();
  auto* diag = app.add_subcommand("diagnose", "compactness witnesses for a family");
  add_common(diag, diag_c, 1, 1 << 20);
  diag->add_option("--eps-schedule", schedule, "comma separated, strictly decreasing")->required();
  diag->add_option("--net-factor", net_factor, "net radius as a multiple of eps");
  auto* gal = app.add_subcommand("gallery", "example constructions");
  add_common(gal, gal_c, 0, 0);
  gal->add_option("--name", gallery_name)
      ->required()
      ->check(CLI::IsMember(
          {"wedge_intervals", "circles", "non_length_space", "local_noncompactness"}));
  gal->add_option("--n", gallery_n, "size parameter");
  gal->add_option("--eps", gallery_eps, "ball radius for local_noncompactness");
  auto* embed = app.add_subcommand("embed", "symmetric product embedding");
  add_common(embed, embed_c, 1, 2);
  embed->add_option("--n", embed_n, "half the tuple length")->required();

  std::vector<std::string> argv_storage{"pdspace"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    std::string text;
    const Common* c = nullptr;
    if (*dist) {
      c = &dist_c;
      text = cmd_dist(dist_c, false);
    } else if (*match) {
      c = &match_c;
      text = cmd_dist(match_c, true);
    } else if (*cost) {
      c = &cost_c;
      text = cmd_cost(cost_c);
    } else if (*geo) {
      c = &geo_c;
      text = cmd_geodesic(geo_c, parse_list(t_grid, "--t-grid"));
    } else if (*diag) {
      c = &diag_c;
      text = cmd_diagnose(diag_c, parse_list(schedule, "--eps-schedule"), net_factor);
    } else if (*gal) {
      c = &gal_c;
      text = cmd_gallery(gal_c, gallery_name, gallery_n, gallery_eps);
    } else {
      c = &embed_c;
      text = cmd_embed(embed_c, embed_n);
    }
    emit(text, c->out, out);
    return kExitOk;
  } catch (const CapabilityError& e) {
    err << "capability error: " << e.what() << '\n';
    return kExitCapability;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace pdspace::cli
