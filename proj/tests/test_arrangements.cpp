#include <catch2/catch_amalgamated.hpp>

#include <jumpkit/io.hpp>

#include "support.hpp"

using namespace jumpkit;
using testing::fixture_presentation;
using testing::poly;
using testing::read_fixture;
using Rows = std::vector<std::vector<Integer>>;

namespace {

IntersectionLattice arrangement(const std::string& name) {
  return io::lattice_from_json(io::parse_json_text(read_fixture("arrangements/" + name + ".json")));
}

std::vector<RationalSubspace> extra_subspaces(const std::string& name, std::size_t n) {
  std::vector<RationalSubspace> out;
  for (const auto& m : io::parse_json_text(read_fixture("arrangements/" + name + ".json"))) {
    Rows rows;
    for (const auto& r : m) {
      rows.emplace_back();
      for (const auto& x : r) rows.back().push_back(Integer(x.get<long long>()));
    }
    out.push_back(RationalSubspace::from_normals(n, rows));
  }
  return out;
}

const std::vector<std::string> kCorpus = {"parallel3", "parallel4", "pencil3",  "pencil4",  "near_pencil3",
                                          "near_pencil4", "generic3", "generic4", "generic5", "generic6",
                                          "ceva6",     "five_lines"};

LineArrangement lines(std::initializer_list<std::array<int, 3>> ls) {
  LineArrangement a;
  for (const auto& l : ls) a.lines.push_back({Rational(l[0]), Rational(l[1]), Rational(l[2])});
  return a;
}

}  // namespace

TEST_CASE("intersection_lattice", "[arrangements]") {
  auto g3 = arrangement("generic3");
  CHECK(g3.n == 3);
  CHECK(g3.points.size() == 3);
  CHECK(g3.only_double_points());
  CHECK_FALSE(g3.has_parallels());
  for (std::size_t n : {3, 4}) {
    auto p = arrangement("pencil" + std::to_string(n));
    REQUIRE(p.points.size() == 1);
    CHECK(p.points[0].size() == n);
    CHECK(p.is_pencil());
  }
  // z1^5 = z2^5 over the reals: five lines through the origin
  auto five = intersection_lattice(lines({{1, -1, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}, {1, 2, 0}}));
  CHECK(five.is_pencil());
  CHECK(five.multiple_points().size() == 1);
  auto ceva = arrangement("ceva6");
  CHECK(ceva.multiple_points() == std::vector<std::vector<std::size_t>>{{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}});
  CHECK(ceva.points.size() == 7);
  auto par = arrangement("parallel3");
  CHECK(par.points.empty());
  CHECK(par.all_parallel());
  CHECK_NOTHROW(ceva.validate());
}

TEST_CASE("intersection_lattice: exact rational input", "[arrangements]") {
  // three lines through (1/3, 2/7), found only with exact arithmetic
  LineArrangement a;
  a.lines.push_back({Rational(1), Rational(0), Rational(-1, 3)});
  a.lines.push_back({Rational(0), Rational(1), Rational(-2, 7)});
  a.lines.push_back({Rational(3), Rational(7), Rational(-3)});
  auto L = intersection_lattice(a);
  CHECK(L.is_pencil());
  CHECK(parse_rational("-2/5") == Rational(-2, 5));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), input_error);
  CHECK_THROWS_AS(parse_rational("abc"), input_error);
}

TEST_CASE("intersection_lattice: errors", "[arrangements]") {
  CHECK_THROWS_AS(intersection_lattice(lines({{1, 0, 0}, {2, 0, 0}})), input_error);
  CHECK_THROWS_AS(intersection_lattice(lines({{0, 0, 1}})), input_error);
  CHECK_THROWS_AS(intersection_lattice(LineArrangement{}), input_error);
  CHECK_THROWS_AS(lattice_from_combinatorics(3, {{0, 1, 2}, {0, 1}}), input_error);
  CHECK_THROWS_AS(lattice_from_combinatorics(3, {{0, 1}}, {{0, 1}}), input_error);
  CHECK_THROWS_AS(lattice_from_combinatorics(3, {{0, 5}}), input_error);
}

TEST_CASE("projective_closure", "[arrangements]") {
  auto P = projective_closure(arrangement("parallel3"));
  CHECK(P.n == 4);
  CHECK(P.is_pencil());
  auto Q = projective_closure(arrangement("pencil3"));
  CHECK(Q.multiple_points().size() == 1);
  CHECK(Q.points.size() == 1 + 3);
  // the five-line example closes up to the braid arrangement
  auto B = projective_closure(arrangement("five_lines"));
  CHECK(B.n == 6);
  CHECK(B.multiple_points().size() == 4);
  CHECK(B.points.size() == 7);
}

TEST_CASE("os2_structure", "[arrangements]") {
  auto two = intersection_lattice(lines({{1, 0, 0}, {0, 1, 0}}));
  auto c2 = os2_structure(two);
  CHECK(c2.b2() == 1);
  CHECK(c2.mu(0, 1, 0) == 1);
  CHECK(os2_structure(arrangement("pencil3")).b2() == 2);
  CHECK(os2_structure(arrangement("parallel4")).b2() == 0);
  // b2 = Σ_p (mult(p) - 1) for every affine line arrangement
  for (const auto& name : kCorpus) {
    auto L = arrangement(name);
    std::size_t expect = 0;
    for (const auto& p : L.points) expect += p.size() - 1;
    INFO(name);
    CHECK(os2_structure(L).b2() == expect);
  }
  CHECK_THROWS_AS(os2_structure(projective_closure(arrangement("generic3"))), input_error);
}

TEST_CASE("os2_structure agrees with the Fox linearization on pencils", "[arrangements]") {
  // resonance of the affine pencil from either side
  for (std::size_t n = 3; n <= 4; ++n) {
    auto fromOS = os2_structure(arrangement("pencil" + std::to_string(n))).theta();
    auto fromFox = linearized_alexander_matrix(pencil_group(n));
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Integer> a(n);
      for (auto& x : a) x = c(rng);
      if (trial % 3 == 0) {
        // force a point of the local component Σ x = 0
        Integer s = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) s += a[i];
        a[n - 1] = -s;
      }
      for (std::size_t d = 1; d <= 2; ++d)
        CHECK(resonance_membership(fromOS, a, d).member == resonance_membership(fromFox, a, d).member);
    }
  }
}

TEST_CASE("resonance_components: the braid arrangement", "[arrangements]") {
  auto L = arrangement("ceva6");
  auto cs = resonance_components(L, extra_subspaces("ceva6_extra", 6));
  REQUIRE(cs.size() == 5);
  for (const auto& c : cs) {
    INFO(c.origin);
    CHECK(c.verified);
    CHECK(c.subspace.dimension() == 2);
    // depth exactly one: not in R_2
    CHECK_FALSE(resonance_membership(os2_structure(L).theta(), c.sample, 2).member);
  }
  CHECK(cs.back().origin == "supplied");
  CHECK(pairwise_meet_at_origin(cs));
}

TEST_CASE("resonance_components: the five-line example", "[arrangements]") {
  auto L = arrangement("five_lines");
  auto cs = resonance_components(L, extra_subspaces("five_lines_extra", 5));
  std::size_t local = 0, parallel = 0, supplied = 0;
  for (const auto& c : cs) {
    INFO(c.origin);
    CHECK(c.verified);
    CHECK(c.subspace.dimension() == 2);
    local += c.origin == "local";
    parallel += c.origin == "parallel";
    supplied += c.origin == "supplied";
  }
  CHECK(local == 2);
  CHECK(parallel == 2);
  CHECK(supplied == 1);
  CHECK(pairwise_meet_at_origin(cs));
  // a generic plane is rejected, not dropped
  auto bad = resonance_components(L, {RationalSubspace::from_normals(5, Rows{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0},
                                                                             {0, 0, 1, 1, 1}})});
  CHECK_FALSE(bad.back().verified);
  CHECK(bad.back().origin == "supplied");
}

TEST_CASE("resonance_components: corpus properties", "[arrangements]") {
  for (const auto& name : kCorpus) {
    auto L = arrangement(name);
    auto cs = resonance_components(L);
    INFO(name);
    for (const auto& c : cs) {
      CHECK(c.verified);
      if (c.origin != "local") continue;
      CHECK(c.subspace.dimension() == c.lines.size() - 1);
      for (const auto& b : c.subspace.basis()) {
        Integer s = 0;
        for (const auto& x : b) s += x;
        CHECK(s == 0);
      }
    }
    CHECK(pairwise_meet_at_origin(cs));
  }
  CHECK(resonance_components(arrangement("generic3")).empty());
}

TEST_CASE("arr_classify", "[arrangements]") {
  for (const char* name : {"parallel3", "parallel4"}) CHECK(arr_classify(arrangement(name)).free_group);
  auto g4 = arr_classify(arrangement("generic4"));
  CHECK(g4.kahler_group);
  CHECK(g4.type_Am);
  CHECK(g4.m == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK_FALSE(g4.free_group);
  CHECK_FALSE(arr_classify(arrangement("generic3")).kahler_group);
  CHECK(arr_classify(arrangement("generic6")).kahler_group);
  auto ceva = arr_classify(arrangement("ceva6"));
  CHECK_FALSE(ceva.raag);
  CHECK(ceva.multiplicity.vertices.size() == 4);
  CHECK_FALSE(ceva.type_Am);
  CHECK(arr_classify(arrangement("pencil4")).raag);
  CHECK(arr_classify(arrangement("near_pencil4")).raag);
  CHECK_FALSE(arr_classify(arrangement("five_lines")).raag);
  // parallel lines and a transversal: type A(3, 1)
  auto np = arr_classify(arrangement("near_pencil4"));
  CHECK(np.type_Am);
  CHECK(np.m == std::vector<std::size_t>{3, 1});
}

TEST_CASE("arr_classify: free group iff R_1 is everything", "[arrangements]") {
  std::mt19937_64 rng(82);
  std::uniform_int_distribution<int> c(-6, 6);
  for (const auto& name : kCorpus) {
    auto L = arrangement(name);
    auto theta = os2_structure(L).theta();
    bool everywhere = true;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Integer> a(L.n);
      for (auto& x : a) x = c(rng);
      everywhere = everywhere && resonance_membership(theta, a, 1).member;
    }
    INFO(name);
    CHECK(everywhere == arr_classify(L).free_group);
  }
}

TEST_CASE("arr_alex_poly", "[arrangements]") {
  auto p4 = arr_alex_poly(arrangement("pencil4"));
  CHECK(p4.kind == ArrangementDeltaKind::pencil);
  REQUIRE(p4.delta);
  CHECK(*p4.delta == poly("(t1*t2*t3*t4 - 1)^2", 4));
  CHECK(p4.cross_checked);
  auto p3 = arr_alex_poly(arrangement("pencil3"));
  CHECK(*p3.delta == poly("t1*t2*t3 - 1", 3));
  CHECK(p3.cross_checked);
  auto n4 = arr_alex_poly(arrangement("near_pencil4"));
  CHECK(n4.kind == ArrangementDeltaKind::near_pencil);
  REQUIRE(n4.transverse_line);
  CHECK(*n4.transverse_line == 3);
  CHECK(*n4.delta == poly("(t4 - 1)^2", 4));
  CHECK(n4.cross_checked);
  auto n3 = arr_alex_poly(arrangement("near_pencil3"));
  CHECK(*n3.delta == poly("t3 - 1", 3));
  CHECK(n3.cross_checked);
  auto ceva = arr_alex_poly(arrangement("ceva6"));
  CHECK(ceva.kind == ArrangementDeltaKind::constant);
  CHECK(std::string(to_string(ceva.kind)) == "constant");
  CHECK(arr_alex_poly(arrangement("generic4")).delta->is_constant());
  CHECK(arr_alex_poly(arrangement("parallel3")).delta->is_zero());
}

TEST_CASE("milnor_b1", "[arrangements]") {
  // two lines: U = C^*, F = {z0 z1 = 1}
  auto two = append_meridian_relator(free_abelian_group(2), {0, 1});
  CHECK(milnor_b1(two, reduced_milnor_data(2), 5) == 1);
  // three concurrent lines: a thrice-punctured torus
  auto pencil = append_meridian_relator(pencil_group(3), {0, 1, 2});
  CHECK(milnor_b1(pencil, reduced_milnor_data(3), 7) == 4);
  CHECK(milnor_b1(pencil, reduced_milnor_data(3), 13) == 4);
  // errors
  CHECK_THROWS_AS(milnor_b1(pencil, reduced_milnor_data(3), 5), input_error);
  CHECK_THROWS_AS(milnor_b1(pencil, reduced_milnor_data(2), 7), input_error);
  MilnorData bad = reduced_milnor_data(3);
  bad.exponents = {2, 2, 2};
  CHECK_THROWS_AS(milnor_b1(pencil, bad, 7), input_error);
}

TEST_CASE("milnor_b1: pencils match the cyclic cover", "[arrangements]") {
  for (std::size_t n = 3; n <= 6; ++n) {
    auto pU = append_meridian_relator(pencil_group(n), reduced_milnor_data(n).meridians);
    CyclicEpimorphism lam{n, std::vector<std::uint64_t>(n, 1)};
    // the pencil Milnor fiber is the curve x^n = y^n + 1 minus n points
    const std::size_t closed = (n - 1) * (n - 2);
    for (std::uint64_t k = 1, found = 0; found < 2; ++k) {
      const fp::elem p = k * n + 1;
      if (!fp::is_prime(p)) continue;
      ++found;
      INFO("n=" << n << " p=" << p);
      const auto b = milnor_b1(pU, reduced_milnor_data(n), p);
      CHECK(b == cover_betti_depth(pU, lam, p));
      CHECK(b == closed + n - 1);
    }
  }
}

TEST_CASE("milnor_b1: braid arrangement slice", "[arrangements]") {
  auto pU = fixture_presentation("braid_slice_u");
  CHECK(abelianize(pU).rank == 5);
  for (fp::elem p : {7, 13}) CHECK(milnor_b1(pU, reduced_milnor_data(6), p) == 7);
  auto h = cover_h1_snf(pU, {6, std::vector<std::uint64_t>(6, 1)});
  CHECK(h.rank == 7);
}

TEST_CASE("boundary_invariants: tags", "[arrangements]") {
  for (std::size_t k : {3, 4}) {
    auto r = boundary_invariants(arrangement("parallel" + std::to_string(k)));
    CHECK(r.lines == k + 1);
    CHECK(r.manifold_tag == "#^" + std::to_string(k) + " S1xS2");
    CHECK(r.r1_tag == "C^" + std::to_string(k));
    CHECK_FALSE(r.essential);
    CHECK_FALSE(r.delta);
  }
  // affine pencils close up to near-pencils
  auto np = boundary_invariants(arrangement("pencil3"));
  CHECK(np.manifold_tag == "S1xSigma_2");
  CHECK(np.r1_tag == "C^4");
  auto np4 = boundary_invariants(arrangement("near_pencil4"));
  CHECK(np4.manifold_tag == "S1xSigma_3");
  CHECK(np4.r1_tag == "C^6");
  CHECK(boundary_invariants(arrangement("ceva6")).manifold_tag == "graph_manifold");
}

TEST_CASE("boundary_invariants: four generic lines", "[arrangements]") {
  auto r = boundary_invariants(arrangement("generic3"));
  CHECK(r.lines == 4);
  CHECK(r.graph.vertices.size() == 4);
  for (const auto& v : r.graph.vertices) CHECK(v.degree == 3);
  REQUIRE(r.delta);
  CHECK(*r.delta == poly("(t1 - 1)*(t2 - 1)*(t3 - 1)*(t4 - 1)", 4));
  CHECK(r.v1.size() == 4);
  CHECK(r.r1_tag == "H1");
}

TEST_CASE("boundary_invariants: structure on the corpus", "[arrangements]") {
  for (const auto& name : kCorpus) {
    auto L = arrangement(name);
    auto r = boundary_invariants(L);
    auto P = projective_closure(L);
    INFO(name);
    // degrees equal incident edge counts and each v_i sees one edge per point on line i
    std::vector<std::size_t> deg(r.graph.vertices.size(), 0);
    for (auto [a, b] : r.graph.edges) ++deg[a], ++deg[b];
    for (std::size_t v = 0; v < deg.size(); ++v) CHECK(deg[v] == r.graph.vertices[v].degree);
    for (std::size_t i = 0; i < P.n; ++i) {
      std::size_t on = 0;
      for (const auto& p : P.points) on += std::binary_search(p.begin(), p.end(), i);
      CHECK(r.graph.vertices[i].degree == on);
    }
    std::size_t exceptional = 0;
    for (const auto& v : r.graph.vertices)
      if (v.exceptional) {
        ++exceptional;
        CHECK(v.degree == v.lines.size());
      }
    CHECK(exceptional == P.multiple_points().size());
    if (!r.essential) continue;
    bool high = false;
    for (const auto& v : r.graph.vertices) high = high || v.degree >= 3;
    // large products stay factored
    if (r.delta && high) CHECK(r.delta->value_at_one() == 0);
    double terms = 1;
    for (const auto& f : r.delta_factors) terms *= static_cast<double>(std::max<std::int64_t>(f.exponent, 0) + 1);
    CHECK(static_cast<bool>(r.delta) == (terms <= 20000));
    CHECK(r.delta_factors.size() == r.graph.vertices.size());
    for (std::size_t v = 0; v < r.delta_factors.size(); ++v)
      CHECK(r.delta_factors[v].exponent == static_cast<std::int64_t>(r.graph.vertices[v].degree) - 2);
  }
}
