// SPDX-License-Identifier: Apache-2.0
#include "micp/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace micp {

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>()), 10));
  throw Error("expected a rational string");
}

Json integer_json(const Integer& v) { return to_string(v); }

Integer integer_from_json(const Json& j) {
  Rational q = rational_from_json(j);
  if (!is_integer(q)) throw Error("expected an integer");
  return q.get_num();
}

Json vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

RationalVector rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an array");
  RationalVector out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json vector_json(const IntegerVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(integer_json(q));
  return out;
}

IntegerVector integer_vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an array");
  IntegerVector out;
  for (const auto& e : j) out.push_back(integer_from_json(e));
  return out;
}

namespace {

Json matrix_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

RationalMatrix matrix_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) throw Error("expected a matrix");
  RationalMatrix m(0, cols);
  for (const auto& row : j) {
    auto v = rational_vector_from_json(row);
    if (v.size() != cols) throw Error("matrix row has wrong length");
    m.append_row(v);
  }
  return m;
}

std::size_t count_from_json(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_number_unsigned() || v.is_number_integer()) {
    auto n = v.get<long long>();
    if (n < 0) throw Error(std::string("negative count '") + key + "'");
    return static_cast<std::size_t>(n);
  }
  return static_cast<std::size_t>(integer_from_json(v).get_ui());
}

}  // namespace

Json to_json(const ConicSet& s) {
  Json out;
  out["ambient_dim"] = s.ambient_dim();
  out["A"] = matrix_json(s.a());
  out["b"] = vector_json(s.b());
  Json cones = Json::array();
  for (const auto& c : s.cones()) cones.push_back(Json{{"kind", cone_kind_name(c.kind)}, {"dim", c.dim}});
  out["cones"] = cones;
  return out;
}

ConicSet conic_set_from_json(const Json& j) {
  const std::size_t n = count_from_json(j, "ambient_dim");
  RationalMatrix a = matrix_from_json(j.at("A"), n);
  RationalVector b = rational_vector_from_json(j.at("b"));
  std::vector<ElementaryCone> cones;
  for (const auto& c : j.at("cones")) cones.push_back({parse_cone_kind(c.at("kind").get<std::string>()), count_from_json(c, "dim")});
  return ConicSet(std::move(a), std::move(b), std::move(cones));
}

Json to_json(const PolyhedronH& p) {
  Json out;
  out["dim"] = p.dim();
  out["A"] = matrix_json(p.a());
  out["b"] = vector_json(p.b());
  out["E"] = matrix_json(p.e());
  out["f"] = vector_json(p.f());
  return out;
}

PolyhedronH polyhedron_from_json(const Json& j) {
  const std::size_t n = count_from_json(j, "dim");
  PolyhedronH p(n);
  auto a = matrix_from_json(j.value("A", Json::array()), n);
  auto b = rational_vector_from_json(j.value("b", Json::array()));
  if (a.rows() != b.size()) throw Error("A and b differ in length");
  for (std::size_t r = 0; r < a.rows(); ++r) p.add_inequality(a.row(r), b[r]);
  auto e = matrix_from_json(j.value("E", Json::array()), n);
  auto f = rational_vector_from_json(j.value("f", Json::array()));
  if (e.rows() != f.size()) throw Error("E and f differ in length");
  for (std::size_t r = 0; r < e.rows(); ++r) p.add_equality(e.row(r), f[r]);
  return p;
}

Json to_json(const PolyhedronV& p) {
  Json out;
  Json v = Json::array(), r = Json::array(), l = Json::array();
  for (const auto& x : p.vertices) v.push_back(vector_json(x));
  for (const auto& x : p.rays) r.push_back(vector_json(x));
  for (const auto& x : p.lines) l.push_back(vector_json(x));
  out["vertices"] = v;
  out["rays"] = r;
  out["lines"] = l;
  return out;
}

PolyhedronV polyhedron_v_from_json(const Json& j) {
  PolyhedronV p;
  for (const auto& x : j.at("vertices")) p.vertices.push_back(rational_vector_from_json(x));
  for (const auto& x : j.value("rays", Json::array())) p.rays.push_back(rational_vector_from_json(x));
  for (const auto& x : j.value("lines", Json::array())) p.lines.push_back(rational_vector_from_json(x));
  return p;
}

Json to_json(const MicpFormulation& f) {
  Json out;
  out["n"] = f.n;
  out["p"] = f.p;
  out["d"] = f.d;
  out["set"] = to_json(f.set);
  out["provenance"] = f.provenance;
  return out;
}

MicpFormulation formulation_from_json(const Json& j) {
  MicpFormulation f{conic_set_from_json(j.at("set")), count_from_json(j, "n"), count_from_json(j, "p"),
                    count_from_json(j, "d"), j.value("provenance", std::string())};
  f.validate();
  return f;
}

Json to_json(const IndexedFamily& f) {
  Json members = Json::array();
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    Json m;
    m["z"] = vector_json(f.index_points[i]);
    Json verts = Json::array();
    for (const auto& v : f.members[i].vertices) verts.push_back(vector_json(v));
    m["vertices"] = verts;
    members.push_back(m);
  }
  Json out;
  out["members"] = members;
  return out;
}

IndexedFamily family_from_json(const Json& j) {
  IndexedFamily f;
  for (const auto& m : j.at("members")) {
    f.index_points.push_back(integer_vector_from_json(m.at("z")));
    PolyhedronV p;
    for (const auto& v : m.at("vertices")) p.vertices.push_back(rational_vector_from_json(v));
    f.members.push_back(std::move(p));
  }
  return f;
}

Json to_json(const PeriodicNaturalSet& s) {
  Json out;
  Json e = Json::array(), o = Json::array();
  for (auto v : s.exceptional) e.push_back(std::to_string(v));
  for (auto v : s.offsets) o.push_back(std::to_string(v));
  out["exceptional"] = e;
  out["offsets"] = o;
  out["period"] = std::to_string(s.period);
  out["window_certified"] = s.window_certified;
  return out;
}

Json to_json(const PwlFunction& f) {
  Json out;
  out["prefix_values"] = vector_json(f.prefix_values);
  out["repeating_slopes"] = vector_json(f.repeating_slopes);
  return out;
}

Json to_json(const Interval& iv) {
  Json out;
  out["empty"] = iv.empty;
  out["lo"] = iv.lo ? rational_json(*iv.lo) : Json("-inf");
  out["hi"] = iv.hi ? rational_json(*iv.hi) : Json("inf");
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

std::string variable_name(const MicpFormulation& f, std::size_t column) {
  if (column < f.n) return "x" + std::to_string(column);
  if (column < f.n + f.p) return "y" + std::to_string(column - f.n);
  return "z" + std::to_string(column - f.n - f.p);
}

namespace {

std::string format_number(const Rational& q) {
  std::string s;
  if (to_decimal(q, s)) return s;
  return to_string(q);
}

// One LP row: coefficients and right-hand side, printed with decimal
// coefficients when every entry has a finite decimal expansion.
std::string lp_row(const MicpFormulation& f, const std::string& name, RationalVector coeffs, Rational rhs, const char* sense) {
  std::string comment;
  bool decimal = true;
  std::string scratch;
  for (const auto& c : coeffs) decimal = decimal && to_decimal(c, scratch);
  decimal = decimal && to_decimal(rhs, scratch);
  auto render = [&](const RationalVector& cs, const Rational& r) {
    std::string line;
    bool first = true;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (cs[j] == 0) continue;
      Rational mag = abs(cs[j]);
      std::string term = mag == 1 ? variable_name(f, j) : format_number(mag) + " " + variable_name(f, j);
      line += cs[j] < 0 ? " - " + term : (first ? " " + term : " + " + term);
      first = false;
    }
    if (first) line += " 0 " + variable_name(f, 0);
    return line + " " + sense + " " + format_number(r);
  };
  if (!decimal) {
    Integer l = rhs.get_den();
    for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    comment = "\\ " + name + " scaled by " + to_string(l) + " from:" + render(coeffs, rhs) + "\n";
    for (auto& c : coeffs) c *= l;
    rhs *= l;
  }
  return comment + " " + name + ":" + render(coeffs, rhs) + "\n";
}

}  // namespace

std::string emit_lp(const MicpFormulation& f) {
  f.validate();
  if (!f.set.is_polyhedral()) throw Error("LP export requires polyhedral formulation");
  if (f.set.ambient_dim() == 0) throw Error("LP export needs at least one variable");
  std::ostringstream out;
  out << "\\ " << (f.provenance.empty() ? std::string("formulation") : f.provenance) << "\n";
  out << "\\ n=" << f.n << " p=" << f.p << " d=" << f.d << "\n";
  out << "Minimize\n obj: 0\nSubject To\n";
  std::size_t r = 0;
  std::size_t row_id = 0;
  for (const auto& c : f.set.cones())
    for (std::size_t k = 0; k < c.dim; ++k, ++r) {
      const char* sense = c.kind == ConeKind::Zero ? "=" : ">=";
      out << lp_row(f, "c" + std::to_string(row_id++), f.set.a().row(r), -f.set.b()[r], sense);
    }
  out << "Bounds\n";
  for (std::size_t j = 0; j < f.set.ambient_dim(); ++j) out << " " << variable_name(f, j) << " free\n";
  if (f.d > 0) {
    out << "General\n";
    for (std::size_t k = 0; k < f.d; ++k) out << " " << variable_name(f, f.z_begin() + k) << "\n";
  }
  out << "End\n";
  return out.str();
}

namespace {

struct LinearExpr {
  std::map<std::string, Rational> terms;
  Rational constant = 0;
};

std::vector<std::string> lp_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      if (i + 1 < s.size() && s[i + 1] == '=') {
        op += '=';
        ++i;
      }
      if (op == "=<") op = "<=";
      if (op == "=>") op = ">=";
      out.push_back(op);
      ++i;
    } else if (c == '+' || c == '-') {
      out.emplace_back(1, c);
      ++i;
    } else {
      // A word; a sign right after an exponent marker stays in the number.
      std::size_t j = i;
      const bool numeric = std::isdigit(static_cast<unsigned char>(c)) || c == '.';
      while (j < s.size()) {
        char d = s[j];
        if (std::isspace(static_cast<unsigned char>(d)) || d == '<' || d == '>' || d == '=') break;
        if ((d == '+' || d == '-') && !(numeric && j > i && (s[j - 1] == 'e' || s[j - 1] == 'E'))) break;
        ++j;
      }
      out.emplace_back(s.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

bool is_number_token(const std::string& t) {
  return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.');
}

LinearExpr parse_expr(const std::vector<std::string>& toks, std::size_t from, std::size_t to) {
  LinearExpr e;
  Rational sign = 1;
  std::optional<Rational> coef;
  for (std::size_t i = from; i < to; ++i) {
    const auto& t = toks[i];
    if (t == "+") continue;
    if (t == "-") {
      sign = -sign;
      continue;
    }
    if (is_number_token(t)) {
      if (coef) {
        e.constant += sign * *coef;
        sign = 1;
      }
      coef = parse_rational(t);
      continue;
    }
    e.terms[t] += sign * coef.value_or(Rational(1));
    coef.reset();
    sign = 1;
  }
  if (coef) e.constant += sign * *coef;
  return e;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct ParsedRow {
  LinearExpr lhs;
  std::string sense;
  Rational rhs;
};

}  // namespace

MicpFormulation parse_lp(std::string_view text) {
  enum class Section { None, Objective, Constraints, Bounds, General, Binary, End };
  Section sec = Section::None;
  std::vector<ParsedRow> rows;
  std::map<std::string, std::pair<std::optional<Rational>, std::optional<Rational>>> bounds;
  std::vector<std::string> general, binary;
  std::vector<std::string> declared;
  std::string pending;

  auto flush_constraint = [&](const std::string& body) {
    std::string s = body;
    if (auto colon = s.find(':'); colon != std::string::npos) s = s.substr(colon + 1);
    auto toks = lp_tokens(s);
    std::size_t op = toks.size();
    for (std::size_t i = 0; i < toks.size(); ++i)
      if (toks[i] == "<=" || toks[i] == ">=" || toks[i] == "=" || toks[i] == "<" || toks[i] == ">") op = i;
    if (op == toks.size()) throw Error("LP row without comparison: " + body);
    ParsedRow row;
    row.lhs = parse_expr(toks, 0, op);
    LinearExpr r = parse_expr(toks, op + 1, toks.size());
    if (!r.terms.empty()) throw Error("variables on the right-hand side are not supported");
    row.sense = toks[op] == "<" ? "<=" : (toks[op] == ">" ? ">=" : toks[op]);
    row.rhs = r.constant - row.lhs.constant;
    row.lhs.constant = 0;
    rows.push_back(std::move(row));
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    if (auto bs = raw.find('\\'); bs != std::string::npos) raw = raw.substr(0, bs);
    std::string line = raw;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    line = line.substr(start);
    if (line.empty()) continue;
    std::string head = lower(line);
    std::string first_word = head.substr(0, head.find(' '));
    if (first_word == "minimize" || first_word == "maximize" || first_word == "min" || first_word == "max") {
      sec = Section::Objective;
      continue;
    }
    if (head == "subject to" || head == "such that" || head == "st" || head == "s.t.") {
      sec = Section::Constraints;
      continue;
    }
    if (head == "bounds" || head == "bound") {
      sec = Section::Bounds;
      continue;
    }
    if (head == "general" || head == "generals" || head == "gen" || head == "integer" || head == "integers") {
      sec = Section::General;
      continue;
    }
    if (head == "binary" || head == "binaries" || head == "bin") {
      sec = Section::Binary;
      continue;
    }
    if (head == "end") {
      sec = Section::End;
      continue;
    }
    switch (sec) {
      case Section::Constraints: {
        pending += " " + line;
        auto toks = lp_tokens(pending.substr(pending.find(':') == std::string::npos ? 0 : pending.find(':') + 1));
        bool has_op = false;
        std::size_t op = 0;
        for (std::size_t i = 0; i < toks.size(); ++i)
          if (toks[i] == "<=" || toks[i] == ">=" || toks[i] == "=" || toks[i] == "<" || toks[i] == ">") {
            has_op = true;
            op = i;
          }
        if (has_op && op + 1 < toks.size()) {
          flush_constraint(pending);
          pending.clear();
        }
        break;
      }
      case Section::Bounds: {
        auto toks = lp_tokens(line);
        if (toks.size() == 2 && lower(toks[1]) == "free") {
          bounds[toks[0]];
          break;
        }
        // Merge a leading sign into the number that follows it.
        std::vector<std::string> t;
        for (std::size_t i = 0; i < toks.size(); ++i) {
          if ((toks[i] == "-" || toks[i] == "+") && i + 1 < toks.size()) {
            t.push_back((toks[i] == "-" ? "-" : "") + toks[i + 1]);
            ++i;
          } else {
            t.push_back(toks[i]);
          }
        }
        auto num = [](const std::string& s) -> std::optional<Rational> {
          std::string l = lower(s);
          if (l == "-inf" || l == "-infinity" || l == "inf" || l == "+inf" || l == "infinity") return std::nullopt;
          return parse_rational(s);
        };
        if (t.size() == 5 && t[1] == "<=" && t[3] == "<=") {
          bounds[t[2]] = {num(t[0]), num(t[4])};
        } else if (t.size() == 3 && (t[1] == ">=" || t[1] == "<=" || t[1] == "=")) {
          auto& b = bounds[t[0]];
          if (t[1] == ">=") b.first = num(t[2]);
          if (t[1] == "<=") b.second = num(t[2]);
          if (t[1] == "=") b = {num(t[2]), num(t[2])};
        } else {
          throw Error("unsupported bound line: " + line);
        }
        break;
      }
      case Section::General: {
        std::istringstream ws(line);
        std::string w;
        while (ws >> w) general.push_back(w);
        break;
      }
      case Section::Binary: {
        std::istringstream ws(line);
        std::string w;
        while (ws >> w) binary.push_back(w);
        break;
      }
      default:
        break;
    }
  }
  if (!pending.empty()) throw Error("unterminated LP row");

  // Layout from variable names.
  std::size_t nx = 0, ny = 0, nz = 0;
  auto note = [&](const std::string& name) {
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y' && name[0] != 'z') ||
        !std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error("unsupported variable name: " + name);
    std::size_t idx = std::stoul(name.substr(1)) + 1;
    if (name[0] == 'x') nx = std::max(nx, idx);
    if (name[0] == 'y') ny = std::max(ny, idx);
    if (name[0] == 'z') nz = std::max(nz, idx);
  };
  for (const auto& r : rows)
    for (const auto& [name, c] : r.lhs.terms) note(name);
  for (const auto& [name, b] : bounds) note(name);
  for (const auto& name : general) note(name);
  for (const auto& name : binary) note(name);
  for (const auto& name : general)
    if (name[0] != 'z') throw Error("integer variable " + name + " is not in the z block");
  for (const auto& name : binary)
    if (name[0] != 'z') throw Error("integer variable " + name + " is not in the z block");

  MicpFormulation f;
  f.n = nx;
  f.p = ny;
  f.d = nz;
  const std::size_t total = nx + ny + nz;
  f.set = ConicSet(total);
  auto column = [&](const std::string& name) {
    std::size_t idx = std::stoul(name.substr(1));
    if (name[0] == 'x') return idx;
    if (name[0] == 'y') return nx + idx;
    return nx + ny + idx;
  };
  for (const auto& r : rows) {
    RationalVector coeffs(total);
    for (const auto& [name, c] : r.lhs.terms) coeffs[column(name)] += c;
    if (r.sense == "=") {
      f.set.add_equality(coeffs, r.rhs);
    } else if (r.sense == "<=") {
      f.set.add_inequality(coeffs, r.rhs);
    } else {
      RationalVector neg(total);
      for (std::size_t j = 0; j < total; ++j) neg[j] = -coeffs[j];
      f.set.add_inequality(neg, -r.rhs);
    }
  }
  // Variables absent from Bounds keep the LP default [0, inf).
  for (std::size_t j = 0; j < total; ++j) {
    std::string name = variable_name(f, j);
    auto it = bounds.find(name);
    if (it == bounds.end()) {
      f.set.add_lower_bound(j, 0);
      continue;
    }
    if (it->second.first) f.set.add_lower_bound(j, *it->second.first);
    if (it->second.second) f.set.add_upper_bound(j, *it->second.second);
  }
  for (const auto& name : binary) {
    f.set.add_lower_bound(column(name), 0);
    f.set.add_upper_bound(column(name), 1);
  }
  std::vector<bool> is_int(nz, false);
  for (const auto& name : general) is_int[column(name) - nx - ny] = true;
  for (const auto& name : binary) is_int[column(name) - nx - ny] = true;
  for (std::size_t k = 0; k < nz; ++k)
    if (!is_int[k]) throw Error("z" + std::to_string(k) + " is not declared integer");
  f.provenance = "parsed LP";
  return f;
}

namespace {

std::vector<std::pair<int, RationalVector>> normalized_rows(const MicpFormulation& f) {
  std::vector<std::pair<int, RationalVector>> out;
  std::size_t r = 0;
  for (const auto& c : f.set.cones())
    for (std::size_t k = 0; k < c.dim; ++k, ++r) {
      RationalVector row = f.set.a().row(r);
      row.push_back(f.set.b()[r]);
      Rational lead = 0;
      for (const auto& v : row)
        if (v != 0) {
          lead = v;
          break;
        }
      if (lead != 0) {
        Rational s = c.kind == ConeKind::Zero ? lead : abs(lead);
        for (auto& v : row) v /= s;
      }
      out.emplace_back(static_cast<int>(c.kind), std::move(row));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool same_rows_up_to_order(const MicpFormulation& a, const MicpFormulation& b) {
  if (a.n != b.n || a.p != b.p || a.d != b.d) return false;
  return normalized_rows(a) == normalized_rows(b);
}

}  // namespace micp
