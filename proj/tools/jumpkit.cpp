// jumpkit: command-line front end.
//
// Every subcommand writes one JSON document to stdout (or a flattened
// "key: value" listing with --format text). Exit status: 0 success, 1 when
// `cover-betti --method both` finds a disagreement, 2 bad input, 3 a cap was hit.

#include <jumpkit.hpp>
#include <jumpkit/io.hpp>

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace jumpkit;
using io::json;

namespace {

struct Options {
  std::string format = "json";
  std::optional<std::size_t> max_minors, max_support, max_characters, max_vertices;

  std::string pres, poly_text, values, cup, point, graph, complex, arr, extra, nu, meridians, exponents, degrees;
  std::vector<std::string> polys;
  std::string method = "both", kind = "subtorus";
  std::uint64_t prime = 0, second_prime = 0, modulus = 0, trials = 40, seed = 1;
  std::size_t depth = 1, degree = 1, q = 1;
  bool witnesses = false, append_relator = false;
};

Caps caps_from(const Options& o) {
  Caps c = Caps::from_env();
  if (o.max_minors) c.minors = *o.max_minors;
  if (o.max_support) c.support = *o.max_support;
  if (o.max_characters) c.characters = *o.max_characters;
  if (o.max_vertices) c.vertices = *o.max_vertices;
  return c;
}

GroupPresentation need_pres(const Options& o) {
  if (o.pres.empty()) throw input_error("--pres is required");
  return parse_presentation(io::read_text_arg(o.pres));
}

fp::elem need_prime(const Options& o) {
  if (o.prime == 0) throw input_error("--prime is required");
  if (!fp::is_prime(o.prime)) throw input_error(std::to_string(o.prime) + " is not prime");
  return static_cast<fp::elem>(o.prime);
}

// "1,0,-2" -> integers
std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw input_error("empty entry in list '" + s + "'");
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

std::vector<Integer> integer_list(const std::string& s) {
  std::vector<Integer> out;
  for (const auto& x : split_list(s)) {
    const Rational r = parse_rational(x);
    if (denominator(r) != 1) throw input_error("expected an integer, got " + x);
    out.push_back(numerator(r));
  }
  return out;
}

std::vector<std::uint64_t> positive_list(const std::string& s, const char* what) {
  std::vector<std::uint64_t> out;
  for (const auto& x : integer_list(s)) {
    if (x <= 0) throw input_error(std::string(what) + " must be positive");
    out.push_back(x.convert_to<std::uint64_t>());
  }
  return out;
}

json values_arg(const std::string& text) {
  if (text.empty()) throw input_error("--values is required");
  const auto t = text.find_first_not_of(" \t");
  if (t != std::string::npos && (text[t] == '{' || text[t] == '@')) return io::read_json_arg(text);
  return io::parse_assignments(text);
}

std::vector<std::string> var_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

json linear_forms_json(const LinearFormMatrix& T) {
  json rows = json::array();
  for (std::size_t k = 0; k < T.rows(); ++k) {
    json r = json::array();
    for (std::size_t j = 0; j < T.cols(); ++j) r.push_back(T.entry_string(k, j));
    rows.push_back(r);
  }
  return rows;
}

// ---- subcommands ---------------------------------------------------------------

json cmd_alex_poly(const Options& o) {
  const auto p = need_pres(o);
  const auto d = alexander_polynomial(p, caps_from(o));
  const auto seg = newton_segment_report(d.poly, d.nvars());
  return {{"b1", d.nvars()},
          {"variables", d.variables},
          {"delta", io::poly_json(d.poly, d.variables)},
          {"kahler_obstructed", seg.kahler_obstructed},
          {"quasikahler_obstructed", seg.quasikahler_obstructed}};
}

json cmd_depth(const Options& o) {
  const auto p = need_pres(o);
  const json c = {{"prime", need_prime(o)}, {"values", values_arg(o.values)}};
  const Character rho = io::character_from_json(p, c);
  const auto d = depth(p, rho);
  return {{"prime", rho.prime}, {"values", rho.values}, {"trivial", rho.is_trivial()}, {"depth", d.depth}};
}

json cmd_codim1(const Options& o) {
  const auto p = need_pres(o);
  const auto r = codim1_stratum(p, caps_from(o));
  json j = {{"b1", r.b1}, {"kind", to_string(r.kind)}, {"isolated_identity", r.isolated_identity}};
  if (r.b1 > 0) j["delta"] = io::poly_json(r.delta.poly, r.delta.variables);
  return j;
}

struct CoverResult {
  json report;
  bool agree = true;
};

CoverResult cmd_cover_betti(const Options& o) {
  const auto p = need_pres(o);
  if (o.modulus == 0) throw input_error("--mod is required");
  const json e = {{"modulus", o.modulus}, {"values", values_arg(o.values)}};
  const CyclicEpimorphism lam = io::epimorphism_from_json(p, e);
  if (o.method != "depth" && o.method != "snf" && o.method != "both")
    throw input_error("--method must be depth, snf or both");
  CoverResult out;
  json& j = out.report;
  j = {{"modulus", lam.modulus}, {"method", o.method}};
  std::optional<std::size_t> by_depth, by_snf;
  if (o.method != "snf") {
    by_depth = cover_betti_depth(p, lam, need_prime(o));
    j["prime"] = o.prime;
    j["b1_depth"] = *by_depth;
  }
  if (o.method != "depth") {
    const AbelianGroup h = cover_h1_snf(p, lam);
    j["h1"] = {{"rank", h.rank}, {"torsion", io::to_json(h.torsion)}};
    if (o.prime) {
      by_snf = h.betti_mod(need_prime(o));
      j["b1_snf"] = *by_snf;
    } else if (o.method == "snf") {
      by_snf = h.rank;
    }
  }
  if (by_depth && by_snf) {
    out.agree = *by_depth == *by_snf;
    j["agreement"] = out.agree;
  }
  j["b1"] = by_depth ? *by_depth : *by_snf;
  return out;
}

json cmd_congruence(const Options& o) {
  const auto p = need_pres(o);
  if (o.modulus == 0) throw input_error("--mod is required");
  std::optional<fp::elem> second;
  if (o.second_prime) second = static_cast<fp::elem>(o.second_prime);
  json res = json::array();
  for (const auto& r : congruence_b1(p, o.modulus, need_prime(o), second, caps_from(o)))
    res.push_back({{"prime", r.prime}, {"b1", r.value}});
  return {{"modulus", o.modulus}, {"results", res}};
}

json cmd_tau1(const Options& o) {
  std::vector<std::string> texts = o.polys;
  if (texts.empty()) throw input_error("--poly is required");
  std::size_t n = 0;
  for (const auto& t : texts) n = std::max(n, parse_laurent(io::read_text_arg(t)).nvars());
  std::vector<LaurentPoly> fs;
  for (const auto& t : texts) fs.push_back(parse_laurent(io::read_text_arg(t), n));
  const Caps caps = caps_from(o);
  json j = {{"nvars", n}, {"subspaces", io::to_json(tau1_of_system(fs, n, caps))}};
  if (o.witnesses) {
    json all = json::array();
    for (const auto& f : fs) {
      json ws = json::array();
      for (const auto& w : tau1_witnesses(f, caps)) {
        json blocks = json::array();
        for (const auto& b : w.blocks) blocks.push_back(b);
        ws.push_back({{"blocks", blocks}, {"sums", io::to_json(w.sums)}});
      }
      all.push_back(ws);
    }
    j["witnesses"] = all;
  }
  return j;
}

json cmd_bns(const Options& o) {
  const auto p = need_pres(o);
  const auto b = bns_upper_bound(p, caps_from(o));
  return {{"b1", b.ambient()}, {"tau1_union_origin", io::to_json(b)}};
}

json cmd_dwyer_fried(const Options& o) {
  const auto p = need_pres(o);
  if (o.nu.empty()) throw input_error("--nu is required");
  const auto nu = integer_list(o.nu);
  const bool finite = dwyer_fried_rank1(p, nu, caps_from(o));
  return {{"nu", io::to_json(nu)}, {"finite_b1", finite}};
}

LinearFormMatrix theta_from_options(const Options& o) {
  if (!o.cup.empty()) return io::cup_from_json(io::read_json_arg(o.cup)).theta();
  return linearized_alexander_matrix(need_pres(o));
}

json cmd_res_membership(const Options& o) {
  const LinearFormMatrix theta = theta_from_options(o);
  if (o.point.empty()) throw input_error("--point is required");
  ResonanceMembership m;
  json j;
  if (o.prime) {
    const auto pr = need_prime(o);
    std::vector<fp::elem> a;
    for (const auto& x : integer_list(o.point)) a.push_back(fp::reduce(x, pr));
    m = resonance_membership_mod_p(theta, a, pr, o.depth);
    j["prime"] = pr;
  } else {
    std::vector<Rational> a;
    for (const auto& x : split_list(o.point)) a.push_back(parse_rational(x));
    m = resonance_membership(theta, a, o.depth);
  }
  j["depth"] = o.depth;
  j["member"] = m.member;
  j["rank"] = m.rank;
  j["aomoto_betti"] = m.aomoto_betti;
  return j;
}

json cmd_res_linearize(const Options& o) {
  const LinearFormMatrix theta = theta_from_options(o);
  return {{"rows", theta.rows()},
          {"cols", theta.cols()},
          {"zero", theta.is_zero()},
          {"skew_symmetric", theta.is_skew_symmetric()},
          {"matrix", linear_forms_json(theta)}};
}

json cmd_res_germ(const Options& o) {
  const auto p = need_pres(o);
  const auto g = germ_comparison_sample(p, o.trials, need_prime(o), o.seed);
  return {{"trials", g.trials},
          {"agreements", g.agreements},
          {"resonance_only", g.resonance_only},
          {"variety_only", g.variety_only},
          {"non_formality_signal", g.non_formality_signal}};
}

Graph need_graph(const Options& o) {
  if (o.graph.empty()) throw input_error("--graph is required");
  return io::graph_from_json(io::read_json_arg(o.graph));
}

json cmd_toric_loci(const Options& o) {
  SimplicialComplex L;
  if (!o.complex.empty()) L = io::complex_from_json(io::read_json_arg(o.complex));
  else if (!o.graph.empty()) L = need_graph(o).flag_complex();
  else throw input_error("--complex or --graph is required");
  if (o.kind != "subtorus" && o.kind != "subspace") throw input_error("--kind must be subtorus or subspace");
  const LocusKind k = o.kind == "subtorus" ? LocusKind::subtorus : LocusKind::subspace;
  const auto loci = toric_jump_loci(L, o.degree, o.depth, k, 0, caps_from(o));
  return {{"degree", o.degree}, {"depth", o.depth}, {"kind", o.kind}, {"loci", io::to_json(loci, L.names())}};
}

json cmd_toric_classify(const Options& o) {
  const Graph g = need_graph(o);
  const auto c = raag_classify(g);
  json parts = json::array();
  for (const auto& part : c.parts) {
    json a = json::array();
    for (auto v : part) a.push_back(g.names()[v]);
    parts.push_back(a);
  }
  return {{"quasi_kahler", c.quasi_kahler}, {"kahler", c.kahler}, {"parts", parts}, {"part_sizes", c.part_sizes}};
}

json cmd_toric_sigma(const Options& o) {
  const Graph g = need_graph(o);
  const auto s = raag_sigma_complement(g, o.q, caps_from(o));
  json j = {{"q", o.q}, {"resonance_union", io::to_json(s.locus, g.names())}, {"torsion_condition", s.torsion_condition}};
  if (!s.torsion_condition) {
    CoordinateLocusSet a(g.vertex_count()), b(g.vertex_count());
    a.insert(s.bad_sigma);
    b.insert(s.bad_w);
    j["obstruction"] = {{"sigma", io::to_json(a, g.names())}, {"w", io::to_json(b, g.names())}, {"degree", s.bad_degree}};
  }
  return j;
}

json cmd_toric_delta(const Options& o) {
  const Graph g = need_graph(o);
  const auto s = raag_delta_status(g, caps_from(o));
  return {{"connectivity", s.connectivity},
          {"delta", io::poly_json(s.delta.poly, s.delta.variables)},
          {"delta_nonconstant", s.delta_nonconstant},
          {"predicted_nonconstant", s.delta_nonconstant_predicted},
          {"agree", s.agree}};
}

IntersectionLattice need_lattice(const Options& o) {
  if (o.arr.empty()) throw input_error("--arr is required");
  return io::lattice_from_json(io::read_json_arg(o.arr));
}

json cmd_arr_lattice(const Options& o) { return io::to_json(need_lattice(o)); }

json cmd_arr_resonance(const Options& o) {
  const auto L = need_lattice(o);
  std::vector<RationalSubspace> extra;
  if (!o.extra.empty()) {
    const json e = io::read_json_arg(o.extra);
    if (!e.is_array()) throw input_error("--extra is a list of subspaces, each a list of normal vectors");
    for (const auto& s : e) {
      std::vector<std::vector<Integer>> rows;
      for (const auto& r : s) {
        rows.emplace_back();
        for (const auto& x : r) rows.back().push_back(io::integer_from_json(x));
        if (rows.back().size() != L.n) throw input_error("normal vectors need one entry per line");
      }
      extra.push_back(RationalSubspace::from_normals(L.n, rows));
    }
  }
  const auto comps = resonance_components(L, extra, o.seed);
  json cs = json::array();
  bool all = true;
  for (const auto& c : comps) {
    all = all && c.verified;
    cs.push_back({{"origin", c.origin},
                  {"lines", io::one_based(c.lines)},
                  {"subspace", io::to_json(c.subspace)},
                  {"sample", io::to_json(c.sample)},
                  {"aomoto_betti", c.aomoto_betti},
                  {"verified", c.verified}});
  }
  const auto cup = os2_structure(L);
  return {{"b1", cup.b1()},
          {"b2", cup.b2()},
          {"components", cs},
          {"all_verified", all},
          {"pairwise_meet_at_origin", pairwise_meet_at_origin(comps)}};
}

json cmd_arr_classify(const Options& o) {
  const auto L = need_lattice(o);
  const auto c = arr_classify(L);
  json edges = json::array();
  for (auto [a, b] : c.multiplicity.edges) edges.push_back({a, b});
  json j = {{"type_Am", c.type_Am}};
  if (c.type_Am) j["m"] = c.m;
  j["free_group"] = c.free_group;
  j["kahler_group"] = c.kahler_group;
  j["raag"] = c.raag;
  j["multiplicity_graph"] = {
      {"vertices", io::one_based(c.multiplicity.vertices)}, {"edges", edges}, {"forest", c.multiplicity.forest}};
  return j;
}

json cmd_arr_alex(const Options& o) {
  const auto L = need_lattice(o);
  const auto d = arr_alex_poly(L, caps_from(o));
  json j = {{"kind", to_string(d.kind)}};
  if (d.delta) j["delta"] = io::poly_json(*d.delta, var_names(L.n));
  if (d.transverse_line) j["transverse_line"] = *d.transverse_line + 1;
  j["cross_checked"] = d.cross_checked;
  return j;
}

json cmd_arr_milnor(const Options& o) {
  GroupPresentation p = need_pres(o);
  MilnorData d;
  if (o.meridians.empty()) {
    for (std::size_t i = 0; i < p.q(); ++i) d.meridians.push_back(i);
  } else {
    for (const auto& name : split_list(o.meridians)) d.meridians.push_back(p.generator_index(name));
  }
  const std::size_t s = d.meridians.size();
  d.exponents = o.exponents.empty() ? std::vector<std::uint64_t>(s, 1) : positive_list(o.exponents, "exponents");
  d.degrees = o.degrees.empty() ? std::vector<std::uint64_t>(s, 1) : positive_list(o.degrees, "degrees");
  if (o.append_relator) p = append_meridian_relator(p, d.meridians, d.degrees);
  const fp::elem pr = need_prime(o);
  return {{"degree", milnor_degree(d)}, {"prime", pr}, {"b1", milnor_b1(p, d, pr)}};
}

json cmd_arr_boundary(const Options& o) {
  const auto L = need_lattice(o);
  const auto r = boundary_invariants(L);
  json verts = json::array();
  for (const auto& v : r.graph.vertices)
    verts.push_back({{"lines", io::one_based(v.lines)}, {"exceptional", v.exceptional}, {"degree", v.degree}});
  json edges = json::array();
  for (auto [a, b] : r.graph.edges) edges.push_back({a, b});
  // Line n + 1 is the line at infinity when the input was affine.
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= r.lines; ++i) names.push_back("t" + std::to_string(i));
  json j = {{"lines", r.lines}, {"graph", {{"vertices", verts}, {"edges", edges}}}, {"essential", r.essential}};
  if (r.essential) {
    json fs = json::array();
    for (const auto& f : r.delta_factors) fs.push_back({{"lines", io::one_based(f.lines)}, {"exponent", f.exponent}});
    j["delta_factors"] = fs;
    if (r.delta) j["delta"] = io::poly_json(*r.delta, names);
  }
  j["v1"] = io::one_based(r.v1);
  j["r1"] = r.r1_tag;
  j["manifold"] = r.manifold_tag;
  return j;
}

// ---- output ------------------------------------------------------------------

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "text") flatten(j, "", std::cout);
  else std::cout << j.dump(2) << "\n";
}

int fail(const std::string& kind, const std::string& msg, int code, const std::string& format) {
  emit({{"error", {{"kind", kind}, {"message", msg}}}}, format);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alexander invariants and cohomology jump loci, computed exactly"};
  app.require_subcommand(1);
  // global flags may also follow the subcommand
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-minors", o.max_minors, "Cap on minors enumerated");
  app.add_option("--max-support", o.max_support, "Cap on polynomial support size for tau1");
  app.add_option("--max-characters", o.max_characters, "Cap on characters enumerated");
  app.add_option("--max-vertices", o.max_vertices, "Cap on vertex count for toric computations");

  json result;
  int status = 0;
  std::function<void()> action;
  auto on = [&](CLI::App* sub, auto fn) {
    sub->callback([&, fn] { action = [&, fn] { result = fn(o); }; });
  };
  auto pres = [&](CLI::App* s) { return s->add_option("--pres", o.pres, "Presentation <gens | relators> or @file"); };
  auto prime = [&](CLI::App* s) { return s->add_option("--prime", o.prime, "Prime p"); };

  auto* alex = app.add_subcommand("alex-poly", "Alexander polynomial and Newton polytope");
  pres(alex)->required();
  on(alex, cmd_alex_poly);

  auto* dep = app.add_subcommand("depth", "Depth of a character in F_p");
  pres(dep)->required();
  prime(dep)->required();
  dep->add_option("--values", o.values, "x1=v1,x2=v2,... residues mod p")->required();
  on(dep, cmd_depth);

  auto* c1 = app.add_subcommand("codim1", "Codimension-one part of V_1");
  pres(c1)->required();
  on(c1, cmd_codim1);

  auto* cov = app.add_subcommand("cover-betti", "b1 of a finite cyclic cover");
  pres(cov)->required();
  cov->add_option("--mod", o.modulus, "Order n of the cyclic quotient")->required();
  cov->add_option("--values", o.values, "x1=a1,... images in Z_n")->required();
  prime(cov);
  cov->add_option("--method", o.method, "depth, snf or both")->check(CLI::IsMember({"depth", "snf", "both"}));
  auto* cov_sub = cov;
  cov_sub->callback([&] {
    action = [&] {
      auto r = cmd_cover_betti(o);
      result = r.report;
      if (!r.agree) status = 1;
    };
  });

  auto* cong = app.add_subcommand("congruence-b1", "b1 of the congruence cover for H1 -> H1 (x) Z_n");
  pres(cong)->required();
  cong->add_option("--mod", o.modulus, "n")->required();
  prime(cong)->required();
  cong->add_option("--second-prime", o.second_prime, "Repeat the count over a second prime");
  on(cong, cmd_congruence);

  auto* tau = app.add_subcommand("tau1", "Exponential tangent cone of V(f1, ..., fk)");
  tau->add_option("--poly", o.polys, "Laurent polynomial in t1..tn; repeat for a system")->required();
  tau->add_flag("--witnesses", o.witnesses, "List the zero-sum support partitions");
  on(tau, cmd_tau1);

  auto* bns = app.add_subcommand("bns-bound", "tau1(V_1) together with the origin");
  pres(bns)->required();
  on(bns, cmd_bns);

  auto* df = app.add_subcommand("dwyer-fried", "Finiteness of b1 for the infinite cyclic cover of a covector");
  pres(df)->required();
  df->add_option("--nu", o.nu, "Primitive integer covector, comma separated")->required();
  on(df, cmd_dwyer_fried);

  auto* res = app.add_subcommand("resonance", "Resonance variety tools");
  res->require_subcommand(1);
  auto* mem = res->add_subcommand("membership", "Test a point for membership in R_d");
  pres(mem);
  mem->add_option("--cup", o.cup, "Cup product JSON {b1, b2, mu} or @file");
  mem->add_option("--point", o.point, "Coordinates, comma separated rationals")->required();
  mem->add_option("--depth", o.depth, "d");
  prime(mem);
  on(mem, cmd_res_membership);
  auto* lin = res->add_subcommand("linearize", "Linearized Alexander matrix");
  pres(lin);
  lin->add_option("--cup", o.cup, "Cup product JSON or @file");
  on(lin, cmd_res_linearize);
  auto* germ = res->add_subcommand("germ", "Sampled comparison of R_1 with V_1 near 1");
  pres(germ)->required();
  prime(germ)->required();
  germ->add_option("--trials", o.trials, "Number of sampled directions");
  germ->add_option("--seed", o.seed, "Random seed");
  on(germ, cmd_res_germ);

  auto* tor = app.add_subcommand("toric", "Toric complexes and right-angled Artin groups");
  tor->require_subcommand(1);
  auto* loci = tor->add_subcommand("loci", "Jump loci of a toric complex");
  loci->add_option("--complex", o.complex, "Simplicial complex JSON or @file");
  loci->add_option("--graph", o.graph, "Graph JSON (uses its flag complex) or @file");
  loci->add_option("--degree", o.degree, "Homological degree i");
  loci->add_option("--depth", o.depth, "Depth d");
  loci->add_option("--kind", o.kind, "subtorus or subspace");
  on(loci, cmd_toric_loci);
  auto* cls = tor->add_subcommand("classify", "Quasi-Kahler and Kahler tests for a RAAG");
  cls->add_option("--graph", o.graph, "Graph JSON or @file")->required();
  on(cls, cmd_toric_classify);
  auto* sig = tor->add_subcommand("sigma", "Resonance union bounding the BNS-type invariants");
  sig->add_option("--graph", o.graph, "Graph JSON or @file")->required();
  sig->add_option("--q", o.q, "Degree bound q");
  on(sig, cmd_toric_sigma);
  auto* ds = tor->add_subcommand("delta-status", "Alexander polynomial of a RAAG against connectivity");
  ds->add_option("--graph", o.graph, "Graph JSON or @file")->required();
  on(ds, cmd_toric_delta);

  auto* arr = app.add_subcommand("arr", "Line arrangements");
  arr->require_subcommand(1);
  auto arr_opt = [&](CLI::App* s) { s->add_option("--arr", o.arr, "Arrangement JSON or @file")->required(); };
  auto* al = arr->add_subcommand("lattice", "Intersection lattice");
  arr_opt(al);
  on(al, cmd_arr_lattice);
  auto* ar = arr->add_subcommand("resonance", "Local and supplied resonance components");
  arr_opt(ar);
  ar->add_option("--extra", o.extra, "Extra subspaces: [[normal, ...], ...] or @file");
  ar->add_option("--seed", o.seed, "Random seed for sample points");
  on(ar, cmd_arr_resonance);
  auto* ac = arr->add_subcommand("classify", "Type A(m), free, Kahler and RAAG tests");
  arr_opt(ac);
  on(ac, cmd_arr_classify);
  auto* aa = arr->add_subcommand("alex", "Alexander polynomial from the lattice");
  arr_opt(aa);
  on(aa, cmd_arr_alex);
  auto* am = arr->add_subcommand("milnor-b1", "b1 of the Milnor fiber");
  pres(am)->required();
  prime(am)->required();
  am->add_option("--meridians", o.meridians, "Meridian generators in order (default: all)");
  am->add_option("--exponents", o.exponents, "Exponents a_i (default: all 1)");
  am->add_option("--degrees", o.degrees, "Degrees n_i (default: all 1)");
  am->add_flag("--append-relator", o.append_relator, "Add the product of the meridians as a relator first");
  on(am, cmd_arr_milnor);
  auto* ab = arr->add_subcommand("boundary", "Boundary manifold invariants");
  arr_opt(ab);
  on(ab, cmd_arr_boundary);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2, o.format);
  }
  try {
    action();
  } catch (const input_error& e) {
    return fail("input_error", e.what(), 2, o.format);
  } catch (const cap_exceeded& e) {
    return fail("cap_exceeded", e.what(), 3, o.format);
  }
  emit(result, o.format);
  return status;
}
