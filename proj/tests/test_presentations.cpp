#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace jumpkit;
using testing::poly;

namespace {

GroupRingElement x(std::size_t g, std::int64_t e = 1) { return GroupRingElement::of(Word::letter(g, e)); }
GroupRingElement w(std::initializer_list<std::pair<std::size_t, std::int64_t>> letters) {
  Word u;
  for (auto [g, e] : letters) u.push(g, e);
  return GroupRingElement::of(u);
}
const GroupRingElement one = GroupRingElement::one();

}  // namespace

TEST_CASE("parse: commutator sugar and round trip", "[presentations]") {
  auto p = parse_presentation("<x1,x2 | [x1,x2]>");
  CHECK(p.q() == 2);
  REQUIRE(p.m() == 1);
  CHECK(p.relators[0].length() == 4);
  CHECK(p.relators[0] == commutator(Word::letter(0), Word::letter(1)));
  CHECK(parse_presentation(p.to_string()) == p);

  auto p3 = parse_presentation("<x1,x2,x3 | [x1,x2], [x2,x3]>");
  CHECK(p3.m() == 2);
  CHECK(p3 == testing::fixture_presentation("p3_raag"));
}

TEST_CASE("parse: errors", "[presentations]") {
  CHECK_THROWS_AS(parse_presentation("<x | x^0>"), input_error);
  CHECK_THROWS_AS(parse_presentation("< | >"), input_error);
  CHECK_THROWS_AS(parse_presentation("<x1 | x2>"), input_error);
  CHECK_THROWS_AS(parse_presentation("<x1, x1 | >"), input_error);
  CHECK_THROWS_AS(parse_presentation("<x1 | x1 $>"), input_error);
  CHECK_THROWS_AS(parse_presentation("<x1 | x1> junk"), input_error);
}

TEST_CASE("parse: juxtaposition, groups and exponents", "[presentations]") {
  auto p = parse_presentation("<a, b | (ab)^2 a^-1, [a^2, b]b^-3>");
  Word ab = Word::letter(0) * Word::letter(1);
  CHECK(p.relators[0] == ab * ab * Word::letter(0, -1));
  CHECK(p.relators[1] == commutator(Word::letter(0, 2), Word::letter(1)) * Word::letter(1, -3));
  // '^' binds to the nearest generator inside a run of letters
  auto q = parse_presentation("<x1,x2 | x1x2^2>");
  CHECK(q.relators[0] == Word::letter(0) * Word::letter(1, 2));
}

TEST_CASE("Word reduction", "[presentations]") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Word a = testing::random_word(rng, 3, 12), b = testing::random_word(rng, 3, 12), c = testing::random_word(rng, 3, 12);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a.inverse()).is_identity());
    for (std::size_t i = 0; i + 1 < a.syllables().size(); ++i) CHECK(a.syllables()[i].gen != a.syllables()[i + 1].gen);
  }
}

TEST_CASE("fox_derivative: worked examples", "[presentations]") {
  CHECK(fox_derivative(Word::letter(0) * Word::letter(1), 0) == one);
  CHECK(fox_derivative(Word::letter(0, -1), 0) == GroupRingElement() - x(0, -1));
  const Word c = commutator(Word::letter(0), Word::letter(1));
  CHECK(fox_derivative(c, 0) == one - w({{0, 1}, {1, 1}, {0, -1}}));
  CHECK(fox_derivative(c, 1) == x(0) - w({{0, 1}, {1, 1}, {0, -1}, {1, -1}}));
  CHECK(fox_derivative(Word(), 0).is_zero());
}

TEST_CASE("fox_derivative: fundamental identity and product rule", "[presentations][property]") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 150; ++t) {
    const std::size_t q = 1 + t % 4;
    Word u = testing::random_word(rng, q, 30), v = testing::random_word(rng, q, 30);
    GroupRingElement sum;
    for (std::size_t j = 0; j < q; ++j) sum += fox_derivative(u, j) * (x(j) - one);
    CHECK(sum == GroupRingElement::of(u) - one);
    for (std::size_t j = 0; j < q; ++j)
      CHECK(fox_derivative(u * v, j) == fox_derivative(u, j) + GroupRingElement::of(u) * fox_derivative(v, j));
  }
}

TEST_CASE("fox_jacobian", "[presentations]") {
  auto J = fox_jacobian(parse_presentation("<x1,x2 | [x1,x2]>"));
  REQUIRE(J.rows == 1);
  CHECK(J(0, 0) == one - w({{0, 1}, {1, 1}, {0, -1}}));
  CHECK(J(0, 1) == x(0) - w({{0, 1}, {1, 1}, {0, -1}, {1, -1}}));

  auto F = fox_jacobian(free_group(2));
  CHECK(F.rows == 0);
  CHECK(F.cols == 2);

  auto P = fox_jacobian(testing::fixture_presentation("p3_raag"));
  REQUIRE(P.rows == 2);
  REQUIRE(P.cols == 3);
  CHECK(P(0, 2).is_zero());
  CHECK(P(1, 0).is_zero());
  CHECK_FALSE(P(0, 0).is_zero());
}

TEST_CASE("abelianize", "[presentations]") {
  auto z2 = abelianize(testing::fixture_presentation("z2"));
  CHECK(z2.rank == 2);
  CHECK(z2.torsion.empty());
  CHECK(z2.generator_images == std::vector<std::vector<Integer>>{{1, 0}, {0, 1}});

  auto bs = abelianize(testing::fixture_presentation("baumslag_solitar"));
  CHECK(bs.rank == 1);
  CHECK(bs.torsion.empty());
  CHECK(bs.generator_images == std::vector<std::vector<Integer>>{{1}, {0}});

  auto z3 = abelianize(parse_presentation("<x | x^3>"));
  CHECK(z3.rank == 0);
  CHECK(z3.torsion == std::vector<Integer>{3});

  auto mixed = abelianize(parse_presentation("<a,b,c | a^2 b^4, a^6 b^-2 c^2>"));
  // rank + nontrivial invariant factors = q - rank_Q(E)
  CHECK(mixed.rank + mixed.torsion.size() <= 3);
  CHECK(mixed.rank == 3 - rank_over_q(mixed.exponent_matrix));
  CHECK(mixed.exponent_matrix == IntMatrix::from_rows(3, {{2, 4, 0}, {6, -2, 2}}));
}

TEST_CASE("abelianize: commutator-relators groups keep the standard basis", "[presentations]") {
  for (const char* name : {"p3_raag", "pencil4", "near_pencil4", "heisenberg", "isotropic4"}) {
    auto p = testing::fixture_presentation(name);
    REQUIRE(p.commutator_relators());
    auto ab = abelianize(p);
    REQUIRE(ab.rank == p.q());
    for (std::size_t j = 0; j < p.q(); ++j)
      for (std::size_t k = 0; k < p.q(); ++k) CHECK(ab.generator_images[j][k] == (j == k ? 1 : 0));
  }
}

TEST_CASE("alexander_matrix", "[presentations]") {
  auto M = alexander_matrix(testing::fixture_presentation("z2"));
  REQUIRE(M.rows() == 1);
  CHECK(M(0, 0) == poly("1 - t2", 2));
  CHECK(M(0, 1) == poly("t1 - 1", 2));

  auto P = alexander_matrix(testing::fixture_presentation("p3_raag"));
  CHECK(P(0, 0) == poly("1 - t2", 3));
  CHECK(P(0, 1) == poly("t1 - 1", 3));
  CHECK(P(0, 2).is_zero());
  CHECK(P(1, 0).is_zero());
  CHECK(P(1, 1) == poly("1 - t3", 3));
  CHECK(P(1, 2) == poly("t2 - 1", 3));

  auto B = alexander_matrix(testing::fixture_presentation("baumslag_solitar"));
  REQUIRE(B.nvars() == 1);
  CHECK(B(0, 0).is_zero());
  CHECK(B(0, 1) == poly("t1 - 2", 1));
}

TEST_CASE("alexander_matrix vanishes at 1 for commutator relators", "[presentations][property]") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    GroupPresentation p{numbered_generators(3), {}};
    for (int r = 0; r < 2; ++r)
      p.relators.push_back(commutator(testing::random_word(rng, 3, 4), testing::random_word(rng, 3, 4)));
    auto M = alexander_matrix(p);
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j) CHECK(M(i, j).value_at_one() == 0);
  }
}

TEST_CASE("permutation_lift", "[presentations]") {
  auto F = permutation_lift(free_group(2), CyclicEpimorphism{2, {1, 1}});
  CHECK(F.rows() == 0);
  CHECK(F.cols() == 4);
  auto s = smith_normal_form(F);
  CHECK(s.cokernel_rank() == 4);

  auto Z = permutation_lift(testing::fixture_presentation("z2"), CyclicEpimorphism{2, {1, 0}});
  CHECK(Z.rows() == 2);
  CHECK(Z.cols() == 4);
  auto sz = smith_normal_form(Z);
  CHECK(sz.cokernel_rank() == 3);
  CHECK(sz.torsion().empty());

  CHECK_THROWS_AS(permutation_lift(parse_presentation("<x | x^3>"), CyclicEpimorphism{2, {1}}), input_error);
  CHECK_THROWS_AS(permutation_lift(free_group(2), CyclicEpimorphism{4, {2, 2}}), input_error);
}
