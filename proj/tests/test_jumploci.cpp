#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace jumpkit;
using testing::fixture_presentation;

namespace {

Character chi(fp::elem p, std::vector<fp::elem> v) { return {p, std::move(v)}; }

// All valid epimorphisms onto Z_n; brute force over residue vectors.
std::vector<CyclicEpimorphism> epimorphisms(const GroupPresentation& g, std::uint64_t n) {
  std::vector<CyclicEpimorphism> out;
  std::vector<std::uint64_t> v(g.q(), 0);
  for (;;) {
    CyclicEpimorphism lam{n, v};
    try {
      validate_epimorphism(g, lam);
      out.push_back(lam);
    } catch (const input_error&) {
    }
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == n) v[i++] = 0;
    if (i == v.size()) break;
  }
  return out;
}

// Two primes p with n | p-1.
std::vector<fp::elem> primes_for(std::uint64_t n) {
  std::vector<fp::elem> ps;
  for (std::uint64_t k = 1; ps.size() < 2; ++k)
    if (fp::is_prime(k * n + 1)) ps.push_back(k * n + 1);
  return ps;
}

void cross_check(const GroupPresentation& g, std::uint64_t n, std::size_t& checked) {
  for (const auto& lam : epimorphisms(g, n)) {
    const AbelianGroup h = cover_h1_snf(g, lam);
    for (auto p : primes_for(n)) {
      INFO(g.to_string() << " n=" << n << " p=" << p);
      CHECK(cover_betti_depth(g, lam, p) == h.betti_mod(p));
      ++checked;
    }
  }
}

}  // namespace

TEST_CASE("depth: golden values", "[jumploci]") {
  auto f2 = free_group(2);
  for (fp::elem a = 1; a < 5; ++a)
    for (fp::elem b = 1; b < 5; ++b) {
      if (a == 1 && b == 1) continue;
      CHECK(depth(f2, chi(5, {a, b})).depth == 1);
    }
  CHECK(depth(free_abelian_group(2), chi(7, {2, 3})).depth == 0);
  CHECK(depth(fixture_presentation("p3_raag"), chi(5, {2, 1, 3})).depth == 1);
  // off the torus t2 = 1 the RAAG character is not in V_1
  CHECK(depth(fixture_presentation("p3_raag"), chi(5, {2, 2, 3})).depth == 0);
}

TEST_CASE("depth: trivial character gives untwisted homology", "[jumploci]") {
  CHECK(depth(free_group(3), trivial_character(free_group(3), 5)).depth == 3);
  CHECK(depth(free_abelian_group(3), trivial_character(free_abelian_group(3), 5)).depth == 3);
  auto bs = fixture_presentation("baumslag_solitar");
  // H_1 = Z: b1 mod p is 1 for every p
  for (fp::elem p : {2, 3, 5, 7}) CHECK(depth(bs, trivial_character(bs, p)).depth == 1);
  auto z3 = parse_presentation("<x | x^3>");
  CHECK(depth(z3, trivial_character(z3, 3)).depth == 1);
  CHECK(depth(z3, trivial_character(z3, 7)).depth == 0);
}

TEST_CASE("depth: invalid characters are rejected", "[jumploci]") {
  auto z3 = parse_presentation("<x | x^3>");
  CHECK_THROWS_AS(depth(z3, chi(7, {3})), input_error);  // 3 has order 6 mod 7
  CHECK_NOTHROW(depth(z3, chi(7, {2})));                 // 2 has order 3
  CHECK_THROWS_AS(depth(free_group(2), chi(7, {2})), input_error);
  CHECK_THROWS_AS(depth(free_group(2), chi(7, {0, 1})), input_error);
  CHECK_THROWS_AS(depth(free_group(2), chi(8, {3, 1})), input_error);
}

TEST_CASE("depth: membership is nested in d", "[jumploci]") {
  std::vector<GroupPresentation> gs = {free_group(3), fixture_presentation("pencil4"),
                                       fixture_presentation("p3_raag"), fixture_presentation("near_pencil4")};
  for (const auto& g : gs)
    for (const auto& rho : enumerate_characters(g, 5)) {
      for (std::size_t d = 0; d <= g.q(); ++d)
        if (in_characteristic_variety(g, rho, d + 1)) CHECK(in_characteristic_variety(g, rho, d));
      CHECK(in_characteristic_variety(g, rho, 0));
    }
}

TEST_CASE("depth: +-1 characters agree across prime fields", "[jumploci]") {
  std::vector<GroupPresentation> gs = {free_group(2), free_abelian_group(3), fixture_presentation("p3_raag"),
                                       fixture_presentation("pencil3")};
  for (const auto& g : gs) {
    std::vector<int> s(g.q(), 0);
    for (;;) {
      std::vector<std::size_t> ds;
      for (fp::elem p : {3, 5, 7, 11}) {
        Character c{p, {}};
        for (int e : s) c.values.push_back(e ? p - 1 : 1);
        ds.push_back(depth(g, c).depth);
      }
      CHECK(std::adjacent_find(ds.begin(), ds.end(), std::not_equal_to<>()) == ds.end());
      std::size_t i = 0;
      while (i < s.size() && ++s[i] == 2) s[i++] = 0;
      if (i == s.size()) break;
    }
  }
}

TEST_CASE("depth: direct products obey the union rule", "[jumploci]") {
  auto g1 = free_group(2);
  auto g2 = fixture_presentation("p3_raag");
  auto g = direct_product(g1, g2);
  REQUIRE(g.q() == 5);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<fp::elem> unit(1, 6);
  std::uniform_int_distribution<int> coin(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<fp::elem> a(2, 1), b(3, 1);
    // bias toward characters that are trivial on one factor
    int mode = coin(rng);
    if (mode != 1)
      for (auto& v : a) v = unit(rng);
    if (mode != 0)
      for (auto& v : b) v = unit(rng);
    Character r1 = chi(7, a), r2 = chi(7, b);
    std::vector<fp::elem> all = a;
    all.insert(all.end(), b.begin(), b.end());
    Character r = chi(7, all);
    if (r.is_trivial()) continue;
    bool expect = (r2.is_trivial() && depth(g1, r1).depth >= 1) || (r1.is_trivial() && depth(g2, r2).depth >= 1);
    INFO("trial " << trial);
    CHECK(in_characteristic_variety(g, r, 1) == expect);
  }
}

TEST_CASE("enumerate_characters", "[jumploci]") {
  auto f2 = free_group(2);
  auto c = enumerate_characters(f2, 3, 2);
  REQUIRE(c.size() == 3);
  for (const auto& r : c) {
    CHECK_FALSE(r.is_trivial());
    for (auto v : r.values) CHECK((v == 1 || v == 2));
  }
  CHECK(std::is_sorted(c.begin(), c.end()));
  CHECK(enumerate_characters(parse_presentation("<x | x^3>"), 7, 3).size() == 2);
  CHECK_THROWS_AS(enumerate_characters(f2, 7, 5), input_error);
  CHECK_THROWS_AS(enumerate_characters(f2, 9, 2), input_error);
  // all characters of Z_3 into F_7^x: three of them
  CHECK(enumerate_characters(parse_presentation("<x | x^3>"), 7).size() == 3);
  CHECK(enumerate_characters(f2, 7).size() == 36);
  // torsion coprime to p-1 has no nontrivial characters
  CHECK(enumerate_characters(parse_presentation("<x | x^5>"), 7).size() == 1);
  // every enumerated character is valid, and distinct
  auto bs = fixture_presentation("baumslag_solitar");
  auto all = enumerate_characters(bs, 13);
  CHECK(all.size() == 12);
  for (const auto& r : all) CHECK_NOTHROW(validate_character(bs, r));
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("enumerate_characters: cap", "[jumploci]") {
  Caps caps;
  caps.characters = 100;
  CHECK_THROWS_AS(enumerate_characters(free_group(3), 7, std::nullopt, caps), cap_exceeded);
  CHECK(enumerate_characters(free_group(2), 7, std::nullopt, caps).size() == 36);
}

TEST_CASE("codim1_stratum", "[jumploci]") {
  auto f2 = codim1_stratum(free_group(2));
  CHECK(f2.kind == Codim1Kind::full_component);
  CHECK(f2.b1 == 2);
  auto p3 = codim1_stratum(fixture_presentation("p3_raag"));
  CHECK(p3.kind == Codim1Kind::hypersurface);
  CHECK(p3.delta.to_string() == "t2 - 1");
  CHECK_FALSE(p3.isolated_identity);
  CHECK(codim1_stratum(free_abelian_group(3)).kind == Codim1Kind::empty);
  auto bs = codim1_stratum(fixture_presentation("baumslag_solitar"));
  CHECK(bs.kind == Codim1Kind::hypersurface);
  CHECK(bs.isolated_identity);
  CHECK(codim1_stratum(parse_presentation("<x | x^3>")).kind == Codim1Kind::not_applicable);
  CHECK(std::string(to_string(Codim1Kind::empty)) == "empty");
}

TEST_CASE("cover_betti_depth: golden values", "[jumploci]") {
  CHECK(cover_betti_depth(free_group(2), {2, {1, 0}}, 5) == 3);
  CHECK(cover_betti_depth(free_abelian_group(2), {2, {1, 0}}, 5) == 2);
  // pencil of three lines: the projective complement has b1(F) = 4 for the
  // Milnor fiber F; the affine group sees F x C^* instead
  auto pencil = fixture_presentation("pencil3");
  CHECK(cover_betti_depth(pencil, {3, {1, 1, 1}}, 7) == 5);
  pencil.relators.push_back(parse_word("x1 x2 x3", pencil.generators));
  CHECK(cover_betti_depth(pencil, {3, {1, 1, 1}}, 7) == 4);
  // Baumslag-Solitar: 2 is a cube root of unity mod 7, 4 is not a root of t - 2
  auto bs = fixture_presentation("baumslag_solitar");
  CHECK(depth(bs, chi(7, {2, 1})).depth == 1);
  CHECK(depth(bs, chi(7, {4, 1})).depth == 0);
  CHECK(cover_betti_depth(bs, {3, {1, 0}}, 7) == 2);
  CHECK(cover_betti_depth(bs, {3, {2, 0}}, 7) == 2);
  CHECK(cover_betti_depth(bs, {3, {1, 0}}, 13) == 1);
  // free group of rank q: index-n subgroup has rank n(q-1)+1
  for (std::size_t q = 1; q <= 3; ++q)
    for (std::uint64_t n : {2, 3, 4, 5, 6}) {
      auto lam = CyclicEpimorphism{n, std::vector<std::uint64_t>(q, 1)};
      CHECK(cover_betti_depth(free_group(q), lam, fp::smallest_prime_for(n)) == n * (q - 1) + 1);
    }
}

TEST_CASE("cover_betti_depth: preconditions", "[jumploci]") {
  CHECK_THROWS_AS(cover_betti_depth(free_group(2), {3, {1, 0}}, 5), input_error);  // 3 does not divide 4
  CHECK_THROWS_AS(cover_betti_depth(free_group(2), {2, {0, 0}}, 5), input_error);  // not onto
  CHECK_THROWS_AS(cover_betti_depth(free_group(2), {2, {1}}, 5), input_error);
  // relator x^3 has nonzero image in Z_2 when x -> 1
  CHECK_THROWS_AS(cover_betti_depth(parse_presentation("<x | x^3>"), {2, {1}}, 5), input_error);
}

TEST_CASE("cover_h1_snf: golden values", "[jumploci]") {
  CHECK(cover_h1_snf(free_group(2), {2, {1, 0}}) == AbelianGroup{3, {}});
  CHECK(cover_h1_snf(free_abelian_group(2), {2, {1, 0}}) == AbelianGroup{2, {}});
  CHECK(cover_h1_snf(free_abelian_group(2), {2, {1, 1}}) == AbelianGroup{2, {}});
  auto h = cover_h1_snf(fixture_presentation("baumslag_solitar"), {2, {1, 0}});
  CHECK(h.rank == 1);
  REQUIRE(h.torsion.size() == 1);
  CHECK(h.torsion[0] == 3);
  // the mod-p count sees the 3-torsion only at p = 3
  CHECK(h.betti_mod(3) == 2);
  CHECK(h.betti_mod(5) == 1);
}

TEST_CASE("cover homology: two algorithms agree on fixtures", "[jumploci]") {
  std::size_t checked = 0;
  for (const char* name : {"free2", "z2", "p3_raag", "pencil3", "pencil4", "near_pencil4", "baumslag_solitar",
                           "heisenberg", "isotropic4"}) {
    auto g = fixture_presentation(name);
    for (std::uint64_t n : {2, 3, 4}) cross_check(g, n, checked);
  }
  CHECK(checked > 100);
}

TEST_CASE("cover homology: two algorithms agree on random presentations", "[jumploci]") {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<std::size_t> qd(1, 3), md(0, 3), ld(1, 8);
  std::size_t groups = 0, checked = 0;
  while (groups < 30) {
    GroupPresentation g{numbered_generators(qd(rng)), {}};
    const std::size_t m = md(rng);
    for (std::size_t i = 0; i < m; ++i) g.relators.push_back(testing::random_word(rng, g.q(), ld(rng)));
    std::size_t before = checked;
    for (std::uint64_t n : {2, 3, 4, 6}) cross_check(g, n, checked);
    if (checked > before) ++groups;
  }
  CHECK(checked >= 40);
}

TEST_CASE("congruence_b1", "[jumploci]") {
  auto value = [](const GroupPresentation& g, std::uint64_t n, fp::elem p) {
    return congruence_b1(g, n, p).front().value;
  };
  CHECK(value(free_group(2), 2, 5) == 5);
  CHECK(value(free_abelian_group(2), 2, 5) == 2);
  CHECK(value(free_group(1), 3, 7) == 1);
  // composite n: the Z_4^2 cover of a wedge of two circles has chi = -16
  CHECK(value(free_group(2), 4, 5) == 17);
  CHECK(value(free_abelian_group(2), 4, 5) == 2);
  auto both = congruence_b1(free_group(2), 2, 5, 7);
  REQUIRE(both.size() == 2);
  CHECK(both[0].prime == 5);
  CHECK(both[1].prime == 7);
  CHECK(both[1].value == 5);
  CHECK_THROWS_AS(congruence_b1(free_group(2), 3, 5), input_error);
  CHECK_THROWS_AS(congruence_b1(free_group(2), 2, 6), input_error);
}

TEST_CASE("congruence_b1 agrees with the abelian cover for cyclic H_1", "[jumploci]") {
  // when H_1 = Z the congruence cover is the n-fold cyclic cover
  auto bs = fixture_presentation("baumslag_solitar");
  for (std::uint64_t n : {2, 3, 4, 6}) {
    fp::elem p = fp::smallest_prime_for(n);
    if (n % p == 0) continue;
    auto lam = CyclicEpimorphism{n, {1, 0}};
    CHECK(congruence_b1(bs, n, p).front().value == cover_betti_depth(bs, lam, p));
  }
}
