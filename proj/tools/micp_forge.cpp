// SPDX-License-Identifier: Apache-2.0
// micp-forge: command-line front end for the micp library.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "micp/decompose.hpp"
#include "micp/fixtures.hpp"
#include "micp/io.hpp"
#include "micp/lattice.hpp"
#include "micp/lower_bounds.hpp"
#include "micp/slices.hpp"

using namespace micp;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

struct Globals {
  unsigned long seed = 0;
  std::string window;
  std::string format = "json";
  std::string out;
};

struct Outcome {
  Outcome(Json r, int c = kOk, std::string t = {}) : report(std::move(r)), code(c), text(std::move(t)) {}
  Json report;
  int code;
  std::string text;  // optional custom text rendering
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

RationalVector parse_list(const std::string& s) {
  RationalVector out;
  for (const auto& t : split(s, ',')) out.push_back(parse_rational(t));
  return out;
}

std::vector<Natural> parse_naturals(const std::string& s) {
  std::vector<Natural> out;
  for (const auto& q : parse_list(s)) {
    if (!is_integer(q) || q < 0) throw Error("expected natural numbers: " + s);
    out.push_back(q.get_num().get_si());
  }
  return out;
}

// "lo:hi,lo:hi"
IntegerBox parse_box(const std::string& s) {
  IntegerBox box;
  for (const auto& part : split(s, ',')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) throw Error("window entries look like lo:hi, got '" + part + "'");
    Rational lo = parse_rational(part.substr(0, colon));
    Rational hi = parse_rational(part.substr(colon + 1));
    if (!is_integer(lo) || !is_integer(hi)) throw Error("window bounds must be integers");
    box.lo.push_back(lo.get_num());
    box.hi.push_back(hi.get_num());
  }
  return box;
}

PolyhedronH parse_region(const std::string& s) {
  RationalVector lo, hi;
  for (const auto& part : split(s, ',')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) throw Error("box entries look like lo:hi, got '" + part + "'");
    lo.push_back(parse_rational(part.substr(0, colon)));
    hi.push_back(parse_rational(part.substr(colon + 1)));
  }
  return PolyhedronH::box(lo, hi);
}

ConicSet read_set(const std::string& path) {
  Json j = read_json_file(path);
  if (j.contains("ambient_dim")) return conic_set_from_json(j);
  if (j.contains("dim")) return from_polyhedron(polyhedron_from_json(j));
  if (j.contains("set")) return conic_set_from_json(j.at("set"));
  throw Error(path + ": expected conic_set.v1 or polyhedron_h.v1");
}

void maybe_write_lp(const MicpFormulation& f, const std::string& path) {
  if (!path.empty()) write_text_file(path, emit_lp(f));
}

std::string render_text(const Json& j, const std::string& indent = "") {
  std::string out;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_structured()) {
        out += indent + it.key() + ":\n" + render_text(it.value(), indent + "  ");
      } else {
        out += indent + it.key() + ": " + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) + "\n";
      }
    }
  } else if (j.is_array()) {
    bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
    if (flat) {
      std::string line;
      for (const auto& e : j) line += (line.empty() ? "" : " ") + (e.is_string() ? e.get<std::string>() : e.dump());
      out += indent + "[" + line + "]\n";
    } else {
      for (const auto& e : j) out += indent + "-\n" + render_text(e, indent + "  ");
    }
  } else {
    out += indent + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
  return out;
}

Json slice_json(const PolyhedronH& p, std::size_t n) {
  Json s;
  s["x_set"] = to_json(p);
  if (n == 1) s["interval"] = to_json(to_interval(p));
  return s;
}

// ---- subcommands ---------------------------------------------------------

Outcome cmd_build_union(const std::vector<std::string>& files, const std::string& method, long n_opt, const std::string& lp) {
  if (files.size() < 2) throw Error("build-union needs at least two sets");
  MicpFormulation f;
  if (method == "rational") {
    if (files.size() != 2) throw Error("the rational union takes exactly two formulations");
    f = union_rational(formulation_from_json(read_json_file(files[0])), formulation_from_json(read_json_file(files[1])));
  } else {
    std::vector<ConicSet> sets;
    for (const auto& p : files) sets.push_back(read_set(p));
    const std::size_t n = n_opt >= 0 ? static_cast<std::size_t>(n_opt) : sets[0].ambient_dim();
    if (method == "basic") {
      f = union_basic(sets, n);
    } else if (method == "projected") {
      f = union_projected(sets, n);
    } else if (method == "ideal") {
      f = union_ideal(sets, n);
    } else {
      throw Error("unknown union method '" + method + "' (basic, projected, ideal, rational)");
    }
  }
  maybe_write_lp(f, lp);
  return {to_json(f)};
}

Outcome cmd_check_ideal(const std::string& file) {
  MicpFormulation f = formulation_from_json(read_json_file(file));
  IdealReport r = check_ideal(f);
  Json j;
  const char* names[] = {"ideal", "not_ideal", "indeterminate"};
  j["verdict"] = names[static_cast<int>(r.verdict)];
  j["witness"] = vector_json(r.witness);
  j["detail"] = r.detail;
  return {j, r.verdict == IdealVerdict::NotIdeal ? kNegative : kOk};
}

Outcome cmd_lower_bound(const std::string& points_file, const std::string& fix, long n, long bound, bool exact, bool greedy,
                        long target) {
  std::vector<RationalVector> cand;
  MembershipOracle oracle;
  std::set<RationalVector> members;
  if (!points_file.empty()) {
    Json j = read_json_file(points_file);
    const Json& arr = j.is_object() ? j.at("points") : j;
    for (const auto& p : arr) cand.push_back(rational_vector_from_json(p));
    members.insert(cand.begin(), cand.end());
    oracle = [&members](const RationalVector& v) { return members.count(v) > 0; };
  } else if (fix == "parity_cube") {
    cand = even_parity_points(static_cast<std::size_t>(n));
    members.insert(cand.begin(), cand.end());
    oracle = [&members](const RationalVector& v) { return members.count(v) > 0; };
  } else if (fix == "primes") {
    for (long v = 0; v <= bound; ++v)
      if (is_prime(Integer(v))) cand.push_back({Rational(v)});
    oracle = [](const RationalVector& v) { return is_integer(v[0]) && is_prime(v[0].get_num()); };
  } else {
    throw Error("lower-bound needs --points or --fixture parity_cube|primes");
  }
  CliqueMode mode = CliqueMode::Exact;
  if (greedy || (!exact && cand.size() > kExactCliqueLimit)) mode = CliqueMode::Greedy;
  std::optional<std::size_t> tgt;
  if (target > 0) tgt = static_cast<std::size_t>(target);
  MidpointWitness w = strongest_witness(cand, oracle, mode, tgt);
  Json j;
  j["w"] = w.w;
  j["bound"] = w.bound;
  Json pts = Json::array();
  for (const auto& p : w.points) pts.push_back(vector_json(p));
  j["witness"] = pts;
  j["mode"] = mode == CliqueMode::Exact ? "exact" : "greedy";
  return {j};
}

Outcome cmd_nat_detect(const std::string& oracle_name, const std::string& eps, long bound, long max_period,
                       const std::string& list_file, long window_factor) {
  std::optional<NaturalOracle> oracle;
  if (oracle_name == "s_epsilon") {
    oracle = fixture_s_epsilon(parse_rational(eps), bound);
  } else if (oracle_name == "primes") {
    oracle = primes_oracle(bound);
  } else if (oracle_name == "list") {
    std::ifstream in(list_file);
    if (!in) throw Error("cannot open " + list_file);
    std::vector<Natural> members;
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      Rational q = parse_rational(line);
      if (!is_integer(q) || q < 0) throw Error("not a natural number: " + line);
      members.push_back(q.get_num().get_si());
    }
    oracle = oracle_from_list(members, bound);
  } else {
    throw Error("unknown oracle '" + oracle_name + "' (s_epsilon, primes, list)");
  }
  PeriodicityOptions opts;
  opts.window_factor = window_factor;
  PeriodicityResult r = detect_periodicity(*oracle, max_period, opts);
  Json j;
  if (r.periodic) {
    j["result"] = "Periodic";
    j["set"] = to_json(r.set);
    j["threshold"] = std::to_string(r.threshold);
    return {j};
  }
  j["result"] = "NotPeriodicUpTo";
  j["max_period"] = std::to_string(max_period);
  j["certified_bound"] = std::to_string(bound);
  return {j, kNegative};
}

Outcome cmd_nat_compile(const std::string& offsets, long period, const std::string& exceptional, const std::string& lp) {
  PeriodicNaturalSet s;
  s.offsets = parse_naturals(offsets);
  s.exceptional = parse_naturals(exceptional);
  s.period = period;
  std::sort(s.offsets.begin(), s.offsets.end());
  std::sort(s.exceptional.begin(), s.exceptional.end());
  PeriodicNaturalSet c = canonicalize(s);
  MicpFormulation f = to_milp(c);
  maybe_write_lp(f, lp);
  Json j;
  j["canonical"] = to_json(c);
  j["formulation"] = to_json(f);
  return {j};
}

Outcome cmd_pwl_compile(const std::string& prefix, const std::string& slopes, const std::string& mode, const std::string& lp) {
  PwlFunction f{parse_list(prefix), parse_list(slopes)};
  f.validate();
  Json j;
  std::ostringstream text;
  if (mode == "global") {
    PwlPeriod per = detect_pwl_period(f, PwlMode::Global);
    if (!per.periodic) {
      j["result"] = "NotPeriodic";
      j["eventual_threshold"] = std::to_string(per.threshold);
      j["eventual_period"] = std::to_string(per.t);
      text << "not globally periodic; the slope word becomes periodic at index " << per.threshold << " with period "
           << per.t << "\nrerun with --mode eventual to split off the head\n";
      return {j, kNegative, text.str()};
    }
    MicpFormulation m = pwl_to_milp(f);
    maybe_write_lp(m, lp);
    j["result"] = "Periodic";
    j["threshold"] = "0";
    j["period"] = std::to_string(per.t);
    j["formulation"] = to_json(m);
    text << "globally periodic with period " << per.t << "\nray r = (" << per.t << ", "
         << to_string(f.value(per.t) - f.value(0)) << ")\n";
    return {j, kOk, text.str()};
  }
  if (mode != "eventual") throw Error("mode must be global or eventual");
  PwlDecomposition d = pwl_decompose(f);
  maybe_write_lp(d.formulation, lp);
  j["result"] = "Decomposed";
  j["threshold"] = std::to_string(d.period.threshold);
  j["period"] = std::to_string(d.period.t);
  Json head = Json::array();
  for (const auto& s : d.head) head.push_back(Json{{"i", std::to_string(s.i)}, {"x", rational_json(s.x)}, {"c", rational_json(s.c)}});
  j["head"] = head;
  j["formulation"] = to_json(d.formulation);
  text << "head: " << d.head.size() << " segment(s)\n";
  for (const auto& s : d.head)
    text << "  [" << s.i << ", " << s.i + 1 << "]: " << to_string(s.x) << " -> " << to_string(s.x + s.c) << "\n";
  const Natural th = d.period.threshold;
  text << "tail: from index " << th << ", period " << d.period.t << ", ray r = (" << d.period.t << ", "
       << to_string(f.value(th + d.period.t) - f.value(th)) << ")\n";
  text << "formulation: n=" << d.formulation.n << " p=" << d.formulation.p << " d=" << d.formulation.d << "\n";
  return {j, kOk, text.str()};
}

std::string family_svg(const IndexedFamily& f) {
  Rational lo_x, hi_x, lo_y, hi_y;
  bool first = true;
  for (const auto& m : f.members)
    for (const auto& v : m.vertices) {
      if (first) {
        lo_x = hi_x = v[0];
        lo_y = hi_y = v[1];
        first = false;
      }
      lo_x = std::min(lo_x, v[0]);
      hi_x = std::max(hi_x, v[0]);
      lo_y = std::min(lo_y, v[1]);
      hi_y = std::max(hi_y, v[1]);
    }
  const double w = std::max(Rational(hi_x - lo_x).get_d(), 1e-9);
  const double h = std::max(Rational(hi_y - lo_y).get_d(), 1e-9);
  const double scale = 400.0 / std::max(w, h);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << static_cast<int>(w * scale) + 20 << "\" height=\""
      << static_cast<int>(h * scale) + 20 << "\">\n";
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    auto verts = hull_vertices(f.members[i].vertices);
    // Angular order around the centroid for drawing.
    double cx = 0, cy = 0;
    for (const auto& v : verts) {
      cx += v[0].get_d();
      cy += v[1].get_d();
    }
    cx /= static_cast<double>(verts.size());
    cy /= static_cast<double>(verts.size());
    std::sort(verts.begin(), verts.end(), [&](const RationalVector& a, const RationalVector& b) {
      return std::atan2(a[1].get_d() - cy, a[0].get_d() - cx) < std::atan2(b[1].get_d() - cy, b[0].get_d() - cx);
    });
    svg << "  <polygon fill=\"none\" stroke=\"black\" points=\"";
    for (const auto& v : verts)
      svg << 10 + Rational(v[0] - lo_x).get_d() * scale << "," << 10 + Rational(hi_y - v[1]).get_d() * scale << " ";
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

Outcome cmd_shape_check(const std::string& file, const std::string& fix, long count, const std::string& svg) {
  IndexedFamily f;
  if (!file.empty()) {
    f = family_from_json(read_json_file(file));
  } else if (fix == "concave_balls") {
    f = concave_ball_squares(static_cast<std::size_t>(count));
  } else {
    throw Error("shape-check needs --family or --fixture concave_balls");
  }
  FamilyReport r = classify_family(f);
  Json j;
  j["verdict"] = family_verdict_name(r.verdict);
  Json vols = Json::array();
  for (const auto& v : r.volumes) vols.push_back(rational_json(v));
  j["volumes"] = vols;
  j["parity_classes"] = r.parity_classes;
  j["representatives"] = r.representatives;
  j["homothety_classes"] = r.homothety_classes;
  j["violation"] = r.violation ? Json(*r.violation) : Json(nullptr);
  j["counterexample"] = r.counterexample ? Json{r.counterexample->first, r.counterexample->second} : Json(nullptr);
  j["detail"] = r.detail;
  if (!svg.empty()) {
    if (f.members[0].vertices.at(0).size() != 2) throw Error("SVG output is only available for 2D families");
    write_text_file(svg, family_svg(f));
  }
  int code = kOk;
  if (r.verdict == FamilyVerdict::HypothesisViolated || r.verdict == FamilyVerdict::VolumesDiffer) code = kNegative;
  if (r.verdict == FamilyVerdict::CounterexampleCandidate) {
    std::cerr << "counterexample candidate between members " << r.counterexample->first << " and "
              << r.counterexample->second << "; this indicates a defect, please report it\n";
    code = kError;
  }
  return {j, code};
}

IntegerMatrix read_integer_matrix(const std::string& file) {
  Json j = read_json_file(file);
  const Json& rows = j.is_object() ? j.at("matrix") : j;
  std::vector<IntegerVector> data;
  for (const auto& r : rows) data.push_back(integer_vector_from_json(r));
  if (data.empty()) throw Error("empty matrix");
  IntegerMatrix m(0, data[0].size());
  for (const auto& r : data) {
    if (r.size() != m.cols()) throw Error("ragged matrix");
    m.append_row(r);
  }
  return m;
}

Json integer_matrix_json(const IntegerMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

Outcome cmd_hnf(const std::string& file) {
  HermiteDecomposition d = hermite_normal_form(read_integer_matrix(file));
  Json j;
  j["H"] = integer_matrix_json(d.h);
  j["U"] = integer_matrix_json(d.u);
  j["det_U"] = integer_json(determinant(d.u));
  return {j};
}

Outcome cmd_unimodular(const std::string& vec, const std::string& position) {
  IntegerVector r;
  for (const auto& q : parse_list(vec)) {
    if (!is_integer(q)) throw Error("vector entries must be integers");
    r.push_back(q.get_num());
  }
  ColumnPosition pos = position == "first" ? ColumnPosition::first : ColumnPosition::last;
  if (position != "first" && position != "last") throw Error("position must be first or last");
  IntegerMatrix u = unimodular_completion(r, pos);
  Json j;
  j["U"] = integer_matrix_json(u);
  j["det_U"] = integer_json(determinant(u));
  return {j};
}

Outcome cmd_decompose(const std::string& file) {
  Json in = read_json_file(file);
  BoundedInput m;
  m.n = static_cast<std::size_t>(in.at("n").get<long>());
  m.p = static_cast<std::size_t>(in.value("p", 0L));
  m.d = static_cast<std::size_t>(in.at("d").get<long>());
  for (const auto& p : in.at("points")) m.points.push_back(rational_vector_from_json(p));
  for (const auto& r : in.value("rays", Json::array())) m.rays.push_back(integer_vector_from_json(r));
  Decomposition d = decompose_bounded(m);
  Json pieces = Json::array();
  for (const auto& piece : d.pieces) {
    Json pj = slice_json(piece.x_set, m.n);
    pj["z"] = vector_json(piece.z);
    pieces.push_back(pj);
  }
  Json rx = Json::array();
  for (const auto& r : d.rays_x) rx.push_back(vector_json(r));
  Json rays = Json::array();
  for (const auto& r : d.rays) rays.push_back(vector_json(r));
  Json j;
  j["pieces"] = pieces;
  j["rays_x"] = rx;
  j["rays"] = rays;
  return {j};
}

Outcome cmd_fixture(const std::string& name, const std::vector<std::string>& params, long members_limit,
                    const std::string& lp) {
  FixtureParams p;
  for (const auto& kv : params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error("parameters look like key=value, got '" + kv + "'");
    p[kv.substr(0, eq)] = parse_rational(kv.substr(eq + 1));
  }
  FixtureArtifact a = fixture(name, p);
  Json j;
  j["fixture"] = name;
  if (auto* s = std::get_if<ConicSet>(&a)) j["conic_set"] = to_json(*s);
  if (auto* f = std::get_if<MicpFormulation>(&a)) {
    j["formulation"] = to_json(*f);
    maybe_write_lp(*f, lp);
  } else if (!lp.empty()) {
    throw Error("fixture " + name + " is not a formulation; no LP to write");
  }
  if (auto* f = std::get_if<PwlFunction>(&a)) j["pwl"] = to_json(*f);
  if (auto* f = std::get_if<IndexedFamily>(&a)) j["family"] = to_json(*f);
  if (auto* o = std::get_if<NaturalOracle>(&a)) {
    Json mem = Json::array();
    const Natural top = std::min<Natural>(o->certified_bound(), members_limit);
    for (Natural x = 0; x <= top; ++x)
      if (o->contains(x)) mem.push_back(std::to_string(x));
    j["certified_bound"] = std::to_string(o->certified_bound());
    j["members_up_to"] = std::to_string(top);
    j["members"] = mem;
  }
  return {j};
}

Outcome cmd_slice_enum(const std::string& file, const Globals& g, const std::string& x_box, bool union_mode) {
  MicpFormulation f = formulation_from_json(read_json_file(file));
  SliceOptions opts;
  if (!g.window.empty()) opts.window = parse_box(g.window);
  if (!x_box.empty()) opts.x_region = parse_region(x_box);
  Json j;
  if (union_mode) {
    Json parts = Json::array();
    for (const auto& p : slice_union(f, opts)) parts.push_back(slice_json(p, f.n));
    j["union"] = parts;
    return {j};
  }
  SliceFamily fam = enumerate_slices(f, opts);
  Json slices = Json::array();
  for (const auto& s : fam.slices) {
    Json sj;
    sj["z"] = vector_json(s.z);
    if (s.x_set) {
      Json body = slice_json(*s.x_set, f.n);
      for (auto it = body.begin(); it != body.end(); ++it) sj[it.key()] = it.value();
    } else {
      sj["conic"] = to_json(*s.conic);
    }
    slices.push_back(sj);
  }
  j["slices"] = slices;
  return {j};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"micp-forge: exact MICP formulation tools"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized steps")->default_val(0);
  app.add_option("--window", g.window, "Integer box for z, as lo:hi,lo:hi");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}))->default_val("json");
  app.add_option("--out", g.out, "Write the report to this file instead of stdout");

  std::function<Outcome()> run;

  std::vector<std::string> union_sets;
  std::string union_method = "basic", lp_path;
  long union_n = -1;
  auto* bu = app.add_subcommand("build-union", "Union formulation of convex sets");
  bu->add_option("--sets", union_sets, "conic_set.v1 / polyhedron_h.v1 files (micp_formulation.v1 for rational)")->required();
  bu->add_option("--method", union_method, "basic, projected, ideal or rational");
  bu->add_option("--n", union_n, "Output dimension (default: ambient dimension of the first set)");
  bu->add_option("--lp", lp_path, "Also write an LP file");
  bu->callback([&] { run = [&] { return cmd_build_union(union_sets, union_method, union_n, lp_path); }; });

  std::string formulation_file;
  auto* ci = app.add_subcommand("check-ideal", "Idealness of a polyhedral formulation");
  ci->add_option("--formulation", formulation_file, "micp_formulation.v1 file")->required();
  ci->callback([&] { run = [&] { return cmd_check_ideal(formulation_file); }; });

  std::string points_file, fixture_name;
  long lb_n = 4, lb_bound = 50, lb_target = 0;
  bool lb_exact = false, lb_greedy = false;
  auto* lb = app.add_subcommand("lower-bound", "Midpoint lower bound on the MICP dimension");
  lb->add_option("--points", points_file, "JSON list of points");
  lb->add_option("--fixture", fixture_name, "parity_cube or primes");
  lb->add_option("--n", lb_n, "Dimension for parity_cube");
  lb->add_option("--bound", lb_bound, "Largest candidate for primes");
  lb->add_flag("--exact", lb_exact, "Exact maximum clique");
  lb->add_flag("--greedy", lb_greedy, "Greedy clique");
  lb->add_option("--target", lb_target, "Stop at this witness size");
  lb->callback([&] { run = [&] { return cmd_lower_bound(points_file, fixture_name, lb_n, lb_bound, lb_exact, lb_greedy, lb_target); }; });

  std::string nd_oracle = "s_epsilon", nd_eps = "2/5", nd_list;
  long nd_bound = 100000, nd_max = 500, nd_factor = 4;
  auto* nd = app.add_subcommand("nat-detect", "Periodicity of a subset of N");
  nd->add_option("--oracle", nd_oracle, "s_epsilon, primes or list");
  nd->add_option("--eps", nd_eps, "Epsilon for s_epsilon");
  nd->add_option("--bound", nd_bound, "Certified window bound");
  nd->add_option("--max-period", nd_max, "Largest period searched");
  nd->add_option("--list", nd_list, "Newline-delimited members for --oracle list");
  nd->add_option("--window-factor", nd_factor, "Minimum bound as a multiple of max-period");
  nd->callback([&] { run = [&] { return cmd_nat_detect(nd_oracle, nd_eps, nd_bound, nd_max, nd_list, nd_factor); }; });

  std::string nc_offsets, nc_exc;
  long nc_period = 1;
  auto* nc = app.add_subcommand("nat-compile", "MILP formulation of a periodic subset of N");
  nc->add_option("--offsets", nc_offsets, "Comma separated offsets");
  nc->add_option("--period", nc_period, "Period");
  nc->add_option("--exceptional", nc_exc, "Comma separated exceptional points");
  nc->add_option("--lp", lp_path, "Also write an LP file");
  nc->callback([&] { run = [&] { return cmd_nat_compile(nc_offsets, nc_period, nc_exc, lp_path); }; });

  std::string pw_prefix, pw_slopes, pw_mode = "eventual";
  auto* pw = app.add_subcommand("pwl-compile", "Formulation of a PWL graph");
  pw->add_option("--prefix", pw_prefix, "P(0),...,P(m)")->required();
  pw->add_option("--block-slopes", pw_slopes, "Repeating slope block")->required();
  pw->add_option("--mode", pw_mode, "global or eventual");
  pw->add_option("--lp", lp_path, "Also write an LP file");
  pw->callback([&] { run = [&] { return cmd_pwl_compile(pw_prefix, pw_slopes, pw_mode, lp_path); }; });

  std::string family_file, svg_path;
  long sc_count = 6;
  auto* sc = app.add_subcommand("shape-check", "Classify an indexed family of polytopes");
  sc->add_option("--family", family_file, "indexed_family.v1 file");
  sc->add_option("--fixture", fixture_name, "concave_balls");
  sc->add_option("--count", sc_count, "Members for the fixture");
  sc->add_option("--svg", svg_path, "Write an SVG drawing (2D only)");
  sc->callback([&] { run = [&] { return cmd_shape_check(family_file, fixture_name, sc_count, svg_path); }; });

  std::string matrix_file;
  auto* hn = app.add_subcommand("hnf", "Hermite normal form A U = H");
  hn->add_option("--matrix", matrix_file, "JSON integer matrix")->required();
  hn->callback([&] { run = [&] { return cmd_hnf(matrix_file); }; });

  std::string uc_vector, uc_position = "last";
  auto* uc = app.add_subcommand("unimodular-complete", "Unimodular matrix with a given column");
  uc->add_option("--vector", uc_vector, "Primitive integer vector")->required();
  uc->add_option("--position", uc_position, "first or last");
  uc->callback([&] { run = [&] { return cmd_unimodular(uc_vector, uc_position); }; });

  std::string dec_file;
  auto* db = app.add_subcommand("decompose-bounded", "Pieces plus integer rays of conv(V) + cone(R)");
  db->add_option("--input", dec_file, "JSON with n, p, d, points, rays")->required();
  db->callback([&] { run = [&] { return cmd_decompose(dec_file); }; });

  std::vector<std::string> fx_params;
  long fx_limit = 1000;
  auto* fx = app.add_subcommand("fixture", "Emit a registered example");
  fx->add_option("--name", fixture_name, "Fixture name")->required();
  fx->add_option("--param", fx_params, "key=value");
  fx->add_option("--members-limit", fx_limit, "Largest member listed for set oracles");
  fx->add_option("--lp", lp_path, "Also write an LP file (formulations only)");
  fx->callback([&] { run = [&] { return cmd_fixture(fixture_name, fx_params, fx_limit, lp_path); }; });

  std::string se_box;
  bool se_union = false;
  auto* se = app.add_subcommand("slice-enum", "Enumerate integer slices");
  se->add_option("--formulation", formulation_file, "micp_formulation.v1 file")->required();
  se->add_option("--x-box", se_box, "Clip x to lo:hi,lo:hi");
  se->add_flag("--union", se_union, "Report the union of x-projections only");
  se->callback([&] { run = [&] { return cmd_slice_enum(formulation_file, g, se_box, se_union); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    Outcome o = run();
    std::string body = g.format == "json" ? o.report.dump(2) + "\n" : (o.text.empty() ? render_text(o.report) : o.text);
    if (g.out.empty()) {
      std::cout << body;
    } else {
      write_text_file(g.out, body);
    }
    return o.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
