#pragma once

// JSON conversions for the command-line front end. Needs nlohmann/json
// (the single header "json.hpp" on the include path).

#include "../jumpkit.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace jumpkit::io {

using json = nlohmann::ordered_json;

// Machine integers stay numbers; anything larger becomes a decimal string.
inline json to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

inline json to_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntMatrix& M) {
  json a = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) a.push_back(to_json(M.row(i)));
  return a;
}

inline json to_json(const RationalSubspace& s) {
  return {{"dimension", s.dimension()}, {"normals", to_json(s.normals())}};
}

inline json to_json(const SubspaceArrangement& a) {
  json out = json::array();
  for (const auto& s : a) out.push_back(to_json(s));
  return out;
}

inline json poly_json(const LaurentPoly& f, const std::vector<std::string>& names) {
  json j = {{"text", f.to_string(names)}};
  if (!f.is_zero()) {
    const NewtonPolytope np = newton_polytope(f);
    json vs = json::array();
    for (const auto& v : np.vertices) vs.push_back(v);
    j["newton_vertices"] = vs;
    j["segment"] = np.is_segment;
  }
  return j;
}

inline json to_json(const CoordinateLocusSet& s, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& w : s.as_lists()) {
    json a = json::array();
    for (auto i : w) a.push_back(i < names.size() ? names[i] : std::to_string(i + 1));
    out.push_back(a);
  }
  return out;
}

inline json one_based(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (auto i : v) a.push_back(i + 1);
  return a;
}

inline json one_based(const std::vector<std::vector<std::size_t>>& vv) {
  json a = json::array();
  for (const auto& v : vv) a.push_back(one_based(v));
  return a;
}

// ---- parsing ------------------------------------------------------------------

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("bad JSON: ") + e.what());
  }
}

// Inline JSON, or "@path" to read a file.
inline json read_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw input_error("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
  }
  return parse_json_text(arg);
}

inline std::string read_text_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw input_error("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

template <class T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw input_error(std::string("bad value for ") + what);
  }
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const Rational r = parse_rational(s);
    if (denominator(r) != 1) throw input_error("expected an integer, got " + s);
    return numerator(r);
  }
  throw input_error("expected an integer");
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw input_error("rational numbers must be integers or strings such as \"-3/4\"");
}

// "x1=3,x2=1" or {"x1": 3, "x2": 1}: one value per generator name.
inline std::vector<std::int64_t> values_by_name(const GroupPresentation& p, const json& obj) {
  if (!obj.is_object()) throw input_error("values must map generator names to integers");
  std::vector<std::int64_t> out(p.q(), 0);
  std::vector<char> set(p.q(), 0);
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::size_t g = p.generator_index(it.key());
    out[g] = get_as<std::int64_t>(it.value(), "generator value");
    set[g] = 1;
  }
  for (std::size_t g = 0; g < p.q(); ++g)
    if (!set[g]) throw input_error("no value given for generator '" + p.generators[g] + "'");
  return out;
}

inline json parse_assignments(const std::string& text) {
  json obj = json::object();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw input_error("expected name=value in '" + item + "'");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
    try {
      std::size_t used = 0;
      const long long v = std::stoll(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      obj[key] = v;
    } catch (const std::exception&) {
      throw input_error("bad integer '" + val + "'");
    }
  }
  return obj;
}

inline Character character_from_json(const GroupPresentation& p, const json& j) {
  if (!j.is_object() || !j.contains("prime") || !j.contains("values"))
    throw input_error("character needs \"prime\" and \"values\"");
  Character c;
  c.prime = get_as<fp::elem>(j["prime"], "prime");
  for (auto v : values_by_name(p, j["values"])) {
    if (v <= 0) throw input_error("character values must be positive residues");
    c.values.push_back(static_cast<fp::elem>(v));
  }
  validate_character(p, c);
  return c;
}

inline CyclicEpimorphism epimorphism_from_json(const GroupPresentation& p, const json& j) {
  if (!j.is_object() || !j.contains("modulus") || !j.contains("values"))
    throw input_error("epimorphism needs \"modulus\" and \"values\"");
  CyclicEpimorphism e;
  e.modulus = get_as<std::uint64_t>(j["modulus"], "modulus");
  if (e.modulus == 0) throw input_error("modulus must be positive");
  for (auto v : values_by_name(p, j["values"])) {
    const auto m = static_cast<std::int64_t>(e.modulus);
    e.values.push_back(static_cast<std::uint64_t>(((v % m) + m) % m));
  }
  validate_epimorphism(p, e);
  return e;
}

inline CupStructure cup_from_json(const json& j) {
  if (!j.is_object() || !j.contains("b1") || !j.contains("b2")) throw input_error("cup structure needs b1 and b2");
  CupStructure c(get_as<std::size_t>(j["b1"], "b1"), get_as<std::size_t>(j["b2"], "b2"));
  if (j.contains("mu"))
    for (const auto& e : j["mu"]) {
      if (!e.is_array() || e.size() != 4) throw input_error("mu entries are [i, j, k, value], one-based");
      const auto i = get_as<std::size_t>(e[0], "mu index"), jj = get_as<std::size_t>(e[1], "mu index"),
                 k = get_as<std::size_t>(e[2], "mu index");
      if (i == 0 || jj == 0 || k == 0) throw input_error("mu indices are one-based");
      c.set(i - 1, jj - 1, k - 1, integer_from_json(e[3]));
    }
  return c;
}

inline std::vector<std::string> names_from_json(const json& j, std::size_t& n) {
  std::vector<std::string> names;
  if (j.is_number_integer()) {
    n = get_as<std::size_t>(j, "vertex count");
    return names;
  }
  if (!j.is_array()) throw input_error("vertices must be a count or a list of names");
  for (const auto& v : j) names.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  n = names.size();
  return names;
}

inline std::size_t vertex_index(const std::vector<std::string>& names, std::size_t n, const json& v) {
  if (!names.empty()) {
    const std::string key = v.is_string() ? v.get<std::string>() : v.dump();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == key) return i;
    throw input_error("unknown vertex " + key);
  }
  const auto k = get_as<std::size_t>(v, "vertex");
  if (k == 0 || k > n) throw input_error("vertex numbers run from 1 to " + std::to_string(n));
  return k - 1;
}

// {"vertices": [...] or n, "edges": [[a, b], ...]}
inline Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices")) throw input_error("graph needs \"vertices\"");
  std::size_t n = 0;
  auto names = names_from_json(j["vertices"], n);
  Graph g(n, names);
  if (j.contains("edges"))
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw input_error("edges are pairs");
      g.add_edge(vertex_index(names, n, e[0]), vertex_index(names, n, e[1]));
    }
  return g;
}

// {"vertices": [...] or n, "facets": [[...], ...]}
inline SimplicialComplex complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices")) throw input_error("complex needs \"vertices\"");
  std::size_t n = 0;
  auto names = names_from_json(j["vertices"], n);
  std::vector<VertexSet> facets;
  if (j.contains("facets"))
    for (const auto& f : j["facets"]) {
      VertexSet s = 0;
      for (const auto& v : f) s |= VertexSet(1) << vertex_index(names, n, v);
      facets.push_back(s);
    }
  return SimplicialComplex(n, facets, names);
}

inline std::vector<std::vector<std::size_t>> index_lists(const json& j, std::size_t n, const char* what) {
  std::vector<std::vector<std::size_t>> out;
  if (!j.is_array()) throw input_error(std::string(what) + " must be a list of lists");
  for (const auto& s : j) {
    out.emplace_back();
    for (const auto& v : s) {
      const auto k = get_as<std::size_t>(v, what);
      if (k == 0 || k > n) throw input_error(std::string(what) + ": line numbers run from 1 to " + std::to_string(n));
      out.back().push_back(k - 1);
    }
  }
  return out;
}

// {"lines": [[a,b,c], ...], "projective": bool} or
// {"combinatorics": {"n": 6, "multiple_points": [[1,2,4], ...], "parallel_classes": [[...]]}}
inline IntersectionLattice lattice_from_json(const json& j) {
  if (!j.is_object()) throw input_error("arrangement must be a JSON object");
  const bool projective = j.contains("projective") && get_as<bool>(j["projective"], "projective");
  if (j.contains("lines")) {
    LineArrangement a;
    a.projective = projective;
    for (const auto& l : j["lines"]) {
      if (!l.is_array() || l.size() != 3) throw input_error("each line is [a, b, c]");
      a.lines.push_back({rational_from_json(l[0]), rational_from_json(l[1]), rational_from_json(l[2])});
    }
    return intersection_lattice(a);
  }
  if (j.contains("combinatorics")) {
    const json& c = j["combinatorics"];
    if (!c.contains("n")) throw input_error("combinatorics needs \"n\"");
    const auto n = get_as<std::size_t>(c["n"], "n");
    const bool proj = projective || (c.contains("projective") && get_as<bool>(c["projective"], "projective"));
    auto pts = c.contains("multiple_points") ? index_lists(c["multiple_points"], n, "multiple_points")
                                             : std::vector<std::vector<std::size_t>>{};
    auto par = c.contains("parallel_classes") ? index_lists(c["parallel_classes"], n, "parallel_classes")
                                              : std::vector<std::vector<std::size_t>>{};
    return lattice_from_combinatorics(n, pts, par, proj);
  }
  throw input_error("arrangement needs \"lines\" or \"combinatorics\"");
}

inline json to_json(const IntersectionLattice& L) {
  json j = {{"lines", L.n}, {"projective", L.projective}, {"points", one_based(L.points)}};
  if (!L.projective) j["parallel_classes"] = one_based(L.parallel_classes);
  return j;
}

}  // namespace jumpkit::io
