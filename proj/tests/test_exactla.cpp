#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace jumpkit;

namespace {

using Rows = std::vector<std::vector<Integer>>;

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int span) {
  std::uniform_int_distribution<int> d(-span, span);
  IntMatrix M(r, c, Integer(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = d(rng);
  return M;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> d(-3, 3);
  IntMatrix U = IntMatrix::identity(n);
  if (n < 2) return U;
  for (int k = 0; k < 3 * static_cast<int>(n); ++k) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    IntMatrix E = IntMatrix::identity(n);
    E(a, b) = d(rng);
    U = U * E;
  }
  return U;
}

}  // namespace

TEST_CASE("smith_normal_form: worked examples", "[exactla]") {
  auto a = smith_normal_form(IntMatrix::from_rows(2, {{2, 0}, {0, 3}}));
  CHECK(a.factors == std::vector<Integer>{1, 6});
  auto z = smith_normal_form(IntMatrix(2, 3, Integer(0)));
  CHECK(z.rank == 0);
  CHECK(z.cokernel_rank() == 3);
  auto i = smith_normal_form(IntMatrix::identity(3));
  CHECK(i.factors == std::vector<Integer>{1, 1, 1});
  auto b = smith_normal_form(IntMatrix::from_rows(3, {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  CHECK(b.factors == std::vector<Integer>{2, 6, 12});
}

TEST_CASE("smith_normal_form: transforms", "[exactla]") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    IntMatrix M = random_matrix(rng, 3 + t % 3, 4, 9);
    auto s = smith_normal_form(M, true);
    REQUIRE(s.U);
    REQUIRE(s.V);
    IntMatrix D = *s.U * M * *s.V;
    for (std::size_t i = 0; i < D.rows(); ++i)
      for (std::size_t j = 0; j < D.cols(); ++j)
        CHECK(D(i, j) == (i == j && i < s.rank ? s.factors[i] : Integer(0)));
    CHECK(abs(determinant(*s.U)) == 1);
    CHECK(abs(determinant(*s.V)) == 1);
  }
}

TEST_CASE("smith_normal_form: invariance and divisibility", "[exactla][property]") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t r = 2 + t % 4, c = 2 + (t / 4) % 4;
    IntMatrix M = random_matrix(rng, r, c, 12);
    auto s = smith_normal_form(M);
    for (std::size_t k = 0; k + 1 < s.factors.size(); ++k) CHECK(s.factors[k + 1] % s.factors[k] == 0);
    CHECK(s.rank == s.factors.size());
    CHECK(s.rank == rank_over_q(M));
    auto s2 = smith_normal_form(random_unimodular(rng, r) * M * random_unimodular(rng, c));
    CHECK(s2.factors == s.factors);
  }
}

TEST_CASE("smith_normal_form: no blow-up on a large lift", "[exactla]") {
  // 120 x 120 banded matrix with entries in the thousands
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(-3000, 3000);
  IntMatrix M(120, 120, Integer(0));
  for (std::size_t i = 0; i < 120; ++i)
    for (std::size_t j = i; j < std::min<std::size_t>(120, i + 4); ++j) M(i, j) = d(rng);
  auto s = smith_normal_form(M);
  CHECK(s.rank == rank_over_q(M));
}

TEST_CASE("rank_mod_p", "[exactla]") {
  for (fp::elem a : {2u, 3u, 4u})
    for (fp::elem b : {2u, 3u, 4u}) {
      FpMatrix M = FpMatrix::from_rows(3, {{0, (a + 4) % 5, 0}, {0, (1 + 5 - b) % 5, 0}});
      CHECK(rank_mod_p(M, 5) == 1);
    }
  CHECK(rank_mod_p(FpMatrix(3, 4, 0), 7) == 0);
  CHECK(rank_mod_p(FpMatrix::identity(4), 7) == 4);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    IntMatrix M = random_matrix(rng, 4, 5, 6);
    for (fp::elem p : {2u, 3u, 5u, 7u}) CHECK(rank_mod_p(reduce_mod_p(M, p), p) <= rank_over_q(M));
  }
  // 2 I has rank 0 mod 2
  CHECK(rank_mod_p(reduce_mod_p(IntMatrix::from_rows(2, {{2, 0}, {0, 2}}), 2), 2) == 0);
}

TEST_CASE("RationalSubspace", "[exactla]") {
  auto a = RationalSubspace::from_normals(2, Rows{{1, 1}});
  auto b = RationalSubspace::from_normals(2, Rows{{1, 0}});
  CHECK(a.intersect(b) == RationalSubspace::zero(2));
  CHECK(a.intersect(b).dimension() == 0);

  auto zero = RationalSubspace::zero(3);
  auto line = RationalSubspace::from_normals(3, Rows{{1, 0, 0}, {0, 1, -1}});
  CHECK(zero.subset_of(line));
  CHECK(zero.subset_of(zero));
  CHECK_FALSE(line.subset_of(zero));

  // canonical form ignores scaling and redundant rows
  auto c1 = RationalSubspace::from_normals(3, Rows{{2, 4, 6}, {0, 3, 3}});
  auto c2 = RationalSubspace::from_normals(3, Rows{{1, 2, 3}, {0, -1, -1}, {1, 3, 4}});
  CHECK(c1 == c2);
  CHECK(c1.normals() == c2.normals());
  CHECK(c1.dimension() == 1);
  CHECK(c1.contains_point(std::vector<Integer>{1, 1, -1}));

  CHECK_THROWS_AS(a.intersect(line), input_error);
}

TEST_CASE("SubspaceArrangement algebra", "[exactla][property]") {
  std::mt19937_64 rng(6);
  auto rand_sub = [&](std::size_t n) {
    std::uniform_int_distribution<int> rows(0, 2), d(-1, 1);
    std::vector<std::vector<Integer>> r(rows(rng), std::vector<Integer>(n));
    for (auto& v : r)
      for (auto& x : v) x = d(rng);
    return RationalSubspace::from_normals(n, r);
  };
  auto rand_arr = [&](std::size_t n) {
    SubspaceArrangement s(n);
    for (int k = 0; k < 3; ++k) s.insert(rand_sub(n));
    return s;
  };
  for (int t = 0; t < 40; ++t) {
    auto A = rand_arr(3), B = rand_arr(3), C = rand_arr(3);
    CHECK(A.united(B) == B.united(A));
    CHECK(A.united(B).united(C) == A.united(B.united(C)));
    CHECK(A.united(A) == A);
    CHECK(A.intersected(B) == B.intersected(A));
    CHECK(A.intersected(B).intersected(C) == A.intersected(B.intersected(C)));
    CHECK(A.intersected(A) == A);
    for (const auto& x : A)
      for (const auto& y : A)
        if (&x != &y) CHECK_FALSE(x.subset_of(y));
  }
}
