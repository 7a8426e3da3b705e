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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "pdspace/analysis.h"
#include "pdspace/cli.h"
#include "pdspace/diagram.h"
#include "pdspace/errors.h"
#include "pdspace/geodesic.h"
#include "pdspace/json_io.h"
#include "pdspace/matching.h"
#include "pdspace/metric_pair.h"

namespace py = pybind11;

namespace pdspace {
namespace {

using PArg = std::variant<double, std::string>;

PNorm to_p(const PArg& p) {
  if (const auto* s = std::get_if<std::string>(&p)) return PNorm::parse(*s);
  const double v = std::get<double>(p);
  return std::isinf(v) ? PNorm::infinity() : PNorm::finite(v);
}

double ext(ExtReal x) { return x.value(); }

Diagram make_diagram(const SpaceHandle& space, const std::vector<std::vector<double>>& points,
                     const std::vector<std::uint64_t>& mults) {
  if (!mults.empty() && mults.size() != points.size()) {
    throw InvalidArgument("mults must match points in length");
  }
  std::vector<DiagramEntry> entries;
  for (std::size_t i = 0; i < points.size(); ++i) {
    entries.push_back({Point(points[i]), mults.empty() ? 1 : mults[i]});
  }
  return Diagram(space, std::move(entries));
}

std::vector<std::pair<std::vector<double>, std::uint64_t>> entries_of(const Diagram& d) {
  std::vector<std::pair<std::vector<double>, std::uint64_t>> out;
  for (const auto& e : d.entries()) {
    out.emplace_back(std::vector<double>(e.point.coords().begin(), e.point.coords().end()), e.mult);
  }
  return out;
}

py::object side(const PointOrA& s) {
  if (!s) return py::str("A");
  return py::cast(std::vector<double>(s->coords().begin(), s->coords().end()));
}

py::list pairs_of(const Matching& sigma) {
  py::list out;
  for (const auto& pair : sigma.pairs())
    out.append(py::make_tuple(side(pair.a), side(pair.b), pair.mult));
  return out;
}

}  // namespace
}  // namespace pdspace

PYBIND11_MODULE(pdspace, m) {
  using namespace pdspace;
  m.doc() = "Wasserstein distances and geodesics of persistence diagrams over metric pairs";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<CapabilityError>(m, "CapabilityError", error.ptr());

  py::class_<MetricPair, std::shared_ptr<MetricPair>>(m, "Space")
      .def_property_readonly("id", &MetricPair::id)
      .def("dist",
           [](const MetricPair& s, const std::vector<double>& x, const std::vector<double>& y) {
             return ext(s.dist(s.canonicalize(Point(x)), s.canonicalize(Point(y))));
           })
      .def("dist_to_A",
           [](const MetricPair& s, const std::vector<double>& x) {
             return ext(s.dist_to_A(s.canonicalize(Point(x))));
           })
      .def("in_A", [](const MetricPair& s,
                      const std::vector<double>& x) { return s.in_A(s.canonicalize(Point(x))); })
      .def("capabilities",
           [](const MetricPair& s) {
             const Capabilities c = s.capabilities();
             py::dict d;
             d["distance_minimizing"] = c.distance_minimizing;
             d["geodesic"] = c.geodesic;
             d["length_space"] = c.length_space;
             d["nonneg_curvature"] = c.nonneg_curvature;
             d["complete"] = c.complete;
             return d;
           })
      .def("__repr__", [](const MetricPair& s) { return "<Space " + s.id() + ">"; });

  m.def(
      "make_space",
      [](const std::string& spec) { return std::const_pointer_cast<MetricPair>(make_space(spec)); },
      py::arg("spec"));

  m.def(
      "quotient_dist",
      [](const std::shared_ptr<MetricPair>& s, const std::vector<double>& x,
         const std::vector<double>& y, const PArg& p) {
        return ext(
            quotient_dist(*s, to_p(p), s->canonicalize(Point(x)), s->canonicalize(Point(y))));
      },
      py::arg("space"), py::arg("x"), py::arg("y"), py::arg("p"));

  py::class_<Diagram>(m, "Diagram")
      .def(py::init([](const std::shared_ptr<MetricPair>& s,
                       const std::vector<std::vector<double>>& points,
                       const std::vector<std::uint64_t>& mults) {
             return make_diagram(s, points, mults);
           }),
           py::arg("space"), py::arg("points") = std::vector<std::vector<double>>{},
           py::arg("mults") = std::vector<std::uint64_t>{})
      .def_property_readonly("space_id", [](const Diagram& d) { return d.space()->id(); })
      .def_property_readonly("cardinality", &Diagram::cardinality)
      .def("entries", &entries_of)
      .def("to_json", [](const Diagram& d) { return json_io::dump(json_io::diagram_to_json(d)); })
      .def("__add__", [](const Diagram& a, const Diagram& b) { return add(a, b); })
      .def("__eq__", [](const Diagram& a, const Diagram& b) { return a == b; })
      .def("__len__", [](const Diagram& d) { return d.cardinality(); });

  m.def("persistence_norm",
        [](const Diagram& d, const PArg& p) { return ext(persistence_norm(d, to_p(p))); });

  m.def(
      "wasserstein",
      [](const Diagram& a, const Diagram& b, const PArg& p) {
        const WassersteinResult r = wasserstein(a, b, to_p(p));
        py::dict out;
        out["value"] = ext(r.value);
        out["optimal"] = r.optimal;
        out["matching"] = pairs_of(*r.matching);
        return out;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("p"));
  m.def("wasserstein_bruteforce", [](const Diagram& a, const Diagram& b, const PArg& p) {
    return ext(wasserstein_bruteforce(a, b, to_p(p)).value);
  });

  py::class_<GeodesicPath>(m, "GeodesicPath")
      .def("eval", &GeodesicPath::eval, py::arg("t"))
      .def_property_readonly("length", [](const GeodesicPath& g) { return ext(g.cost()); });
  m.def("geodesic",
        [](const Diagram& a, const Diagram& b, const PArg& p) { return geodesic(a, b, to_p(p)); });
  m.def("path_length", [](const GeodesicPath& g, int n) { return path_length(g, n); });
  m.def("alexandrov_residual", [](const Diagram& a, const Diagram& b, const Diagram& xi, double t) {
    return alexandrov_residual(a, b, xi, t);
  });

  m.def("embed_symmetric", [](const Diagram& a, std::size_t n) {
    std::vector<std::vector<double>> slots;
    for (const auto& x : embed_symmetric(a, n).slots) {
      slots.emplace_back(x.coords().begin(), x.coords().end());
    }
    return slots;
  });
  m.def("symmetric_dist", [](const Diagram& a, const Diagram& b, std::size_t n, const PArg& p) {
    return ext(symmetric_dist(embed_symmetric(a, n), embed_symmetric(b, n), to_p(p)));
  });
  m.def("local_noncompactness_witnesses",
        [](const Diagram& a, double eps, const PArg& p, std::size_t count) {
          return local_noncompactness_witnesses(a, eps, to_p(p), count);
        });
  m.def("circles_partial", [](int n) {
    const SeriesBracket b = circles_partial(n);
    return std::make_pair(b.partial, b.tail_bound);
  });
  m.def("non_length_space_instance", &non_length_space_instance);
  m.def("infimum_gap_demo", &infimum_gap_demo);
  m.def(
      "diagnose",
      [](const std::vector<Diagram>& family, const PArg& p, const std::vector<double>& schedule,
         double factor) {
        const DiagnosticsReport r =
            diagnose_set(std::span<const Diagram>(family), to_p(p), schedule, factor);
        return json_io::dump(json_io::report_to_json(r, *family.front().space()));
      },
      py::arg("family"), py::arg("p"), py::arg("eps_schedule"), py::arg("net_factor") = 1.0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_tuple(code, out.str(), err.str());
  });
}
