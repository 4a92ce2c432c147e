// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "micp/decompose.hpp"
#include "micp/fixtures.hpp"
#include "micp/io.hpp"
#include "micp/lattice.hpp"
#include "micp/lower_bounds.hpp"
#include "micp/slices.hpp"

namespace py = pybind11;
using namespace micp;

namespace {

// Rationals cross the boundary as strings: ints, Fractions and "p/q" all work.
Rational to_rational(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

Integer to_integer(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

RationalVector to_rvec(const py::sequence& s) {
  RationalVector out;
  for (const auto& h : s) out.push_back(to_rational(h));
  return out;
}

IntegerMatrix to_imatrix(const std::vector<std::vector<py::int_>>& rows) {
  if (rows.empty()) throw Error("empty matrix");
  IntegerMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw Error("ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = to_integer(rows[i][j]);
  }
  return m;
}

py::list imatrix_list(const IntegerMatrix& m) {
  py::list out;
  py::object int_ = py::module_::import("builtins").attr("int");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(int_(to_string(m(i, j))));
    out.append(row);
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact MICP formulation tools";
  py::register_exception<Error>(m, "MicpError", PyExc_ValueError);

  m.def("hermite_normal_form", [](const std::vector<std::vector<py::int_>>& a) {
    auto d = hermite_normal_form(to_imatrix(a));
    return py::make_tuple(imatrix_list(d.h), imatrix_list(d.u));
  });
  m.def(
      "unimodular_completion",
      [](const std::vector<py::int_>& r, const std::string& position) {
        IntegerVector v;
        for (const auto& x : r) v.push_back(to_integer(x));
        if (position != "first" && position != "last") throw Error("position must be first or last");
        return imatrix_list(unimodular_completion(v, position == "first" ? ColumnPosition::first : ColumnPosition::last));
      },
      py::arg("r"), py::arg("position") = "last");

  m.def(
      "strongest_witness",
      [](const std::vector<py::sequence>& points, bool exact) {
        std::vector<RationalVector> pts;
        for (const auto& p : points) pts.push_back(to_rvec(p));
        auto w = strongest_witness(pts, exact ? CliqueMode::Exact : CliqueMode::Greedy);
        Json pj = Json::array();
        for (const auto& p : w.points) pj.push_back(vector_json(p));
        return dump(Json{{"w", w.w}, {"bound", w.bound}, {"witness", pj}});
      },
      py::arg("points"), py::arg("exact") = true);
  m.def("even_parity_points", [](std::size_t n) {
    std::vector<std::vector<int>> out;
    for (const auto& p : even_parity_points(n)) {
      std::vector<int> row;
      for (const auto& v : p) row.push_back(static_cast<int>(v.get_num().get_si()));
      out.push_back(row);
    }
    return out;
  });

  m.def(
      "detect_periodicity",
      [](const std::vector<Natural>& members, Natural bound, Natural max_period) {
        auto r = detect_periodicity(oracle_from_list(members, bound), max_period);
        Json j{{"periodic", r.periodic}};
        if (r.periodic) {
          j["set"] = to_json(r.set);
          j["threshold"] = r.threshold;
        }
        return dump(j);
      },
      py::arg("members"), py::arg("bound"), py::arg("max_period"));
  m.def("s_epsilon_member", [](const py::object& eps, Natural x) { return s_epsilon_member(to_rational(eps), x); });
  m.def(
      "nat_compile",
      [](std::vector<Natural> offsets, Natural period, std::vector<Natural> exceptional) {
        PeriodicNaturalSet s;
        std::sort(offsets.begin(), offsets.end());
        std::sort(exceptional.begin(), exceptional.end());
        s.offsets = offsets;
        s.exceptional = exceptional;
        s.period = period;
        PeriodicNaturalSet c = canonicalize(s);
        return dump(Json{{"canonical", to_json(c)}, {"formulation", to_json(to_milp(c))}});
      },
      py::arg("offsets"), py::arg("period"), py::arg("exceptional") = std::vector<Natural>{});

  m.def("pwl_decompose", [](const py::sequence& prefix, const py::sequence& slopes) {
    PwlFunction f;
    f.prefix_values = to_rvec(prefix);
    f.repeating_slopes = to_rvec(slopes);
    f.validate();
    auto d = pwl_decompose(f);
    Json head = Json::array();
    for (const auto& s : d.head) head.push_back(Json{{"i", s.i}, {"x", rational_json(s.x)}, {"c", rational_json(s.c)}});
    return dump(Json{{"threshold", d.period.threshold}, {"period", d.period.t}, {"head", head},
                     {"formulation", to_json(d.formulation)}});
  });

  m.def(
      "fixture",
      [](const std::string& name, const std::map<std::string, std::string>& params) {
        FixtureParams p;
        for (const auto& [k, v] : params) p[k] = parse_rational(v);
        FixtureArtifact a = fixture(name, p);
        Json j{{"fixture", name}};
        if (auto* f = std::get_if<MicpFormulation>(&a)) j["formulation"] = to_json(*f);
        if (auto* s = std::get_if<ConicSet>(&a)) j["conic_set"] = to_json(*s);
        if (auto* f = std::get_if<PwlFunction>(&a)) j["pwl"] = to_json(*f);
        if (auto* f = std::get_if<IndexedFamily>(&a)) j["family"] = to_json(*f);
        if (auto* o = std::get_if<NaturalOracle>(&a)) {
          j["certified_bound"] = o->certified_bound();
          Json mem = Json::array();
          for (Natural x = 0; x <= std::min<Natural>(o->certified_bound(), 1000); ++x)
            if (o->contains(x)) mem.push_back(x);
          j["members"] = mem;
        }
        return dump(j);
      },
      py::arg("name"), py::arg("params") = std::map<std::string, std::string>{});

  m.def("emit_lp", [](const std::string& formulation_json) {
    return emit_lp(formulation_from_json(Json::parse(formulation_json)));
  });
  m.def("parse_lp", [](const std::string& text) { return dump(to_json(parse_lp(text))); });
  m.def(
      "slice_union",
      [](const std::string& formulation_json, std::optional<std::vector<std::pair<long, long>>> window) {
        MicpFormulation f = formulation_from_json(Json::parse(formulation_json));
        SliceOptions o;
        if (window) {
          IntegerBox box;
          for (const auto& [lo, hi] : *window) {
            box.lo.push_back(Integer(lo));
            box.hi.push_back(Integer(hi));
          }
          o.window = box;
        }
        Json out = Json::array();
        for (const auto& p : slice_union(f, o)) {
          Json pj{{"x_set", to_json(p)}};
          if (f.n == 1) pj["interval"] = to_json(to_interval(p));
          out.push_back(pj);
        }
        return dump(out);
      },
      py::arg("formulation"), py::arg("window") = py::none());
  m.def("check_ideal", [](const std::string& formulation_json) {
    auto r = check_ideal(formulation_from_json(Json::parse(formulation_json)));
    const char* names[] = {"ideal", "not_ideal", "indeterminate"};
    return dump(Json{{"verdict", names[static_cast<int>(r.verdict)]}, {"witness", vector_json(r.witness)}, {"detail", r.detail}});
  });

  m.def("brunn_minkowski_gap", [](const std::vector<py::sequence>& p, const std::vector<py::sequence>& q) {
    PolyhedronV a, b;
    for (const auto& v : p) a.vertices.push_back(to_rvec(v));
    for (const auto& v : q) b.vertices.push_back(to_rvec(v));
    auto g = brunn_minkowski_gap(a, b);
    return dump(Json{{"sign", g.sign}, {"surrogate", rational_json(g.surrogate)}, {"exact", g.exact},
                     {"mixed_volume", rational_json(g.mixed_volume)}});
  });
  m.def("classify_family", [](const std::string& family_json) {
    auto r = classify_family(family_from_json(Json::parse(family_json)));
    Json vols = Json::array();
    for (const auto& v : r.volumes) vols.push_back(rational_json(v));
    return dump(Json{{"verdict", family_verdict_name(r.verdict)},
                     {"volumes", vols},
                     {"parity_classes", r.parity_classes},
                     {"representatives", r.representatives},
                     {"homothety_classes", r.homothety_classes},
                     {"detail", r.detail}});
  });
}
