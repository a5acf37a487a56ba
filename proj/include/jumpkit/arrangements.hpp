#pragma once

#include "resonance.hpp"
#include "tcone.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace jumpkit {

// ---- input ------------------------------------------------------------------

// Lines a z1 + b z2 + c = 0 in C^2, or [a : b : c] in CP^2 when projective.
struct LineArrangement {
  std::vector<std::array<Rational, 3>> lines;
  bool projective = false;
};

// Accepts "3", "-2/5" and "0.25".
inline Rational parse_rational(std::string_view s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw input_error("empty rational number");
  auto digits = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  bool neg = false;
  std::string_view body(t);
  if (body[0] == '-' || body[0] == '+') {
    neg = body[0] == '-';
    body.remove_prefix(1);
  }
  Rational r;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw input_error("bad rational '" + t + "'");
    const Integer d{std::string(den)};
    if (d == 0) throw input_error("zero denominator in '" + t + "'");
    r = Rational(Integer{std::string(num)}, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto ip = body.substr(0, dot), fpart = body.substr(dot + 1);
    if ((!ip.empty() && !digits(ip)) || (!fpart.empty() && !digits(fpart)) || (ip.empty() && fpart.empty()))
      throw input_error("bad rational '" + t + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) scale *= 10;
    const Integer whole = ip.empty() ? Integer(0) : Integer{std::string(ip)};
    const Integer frac = fpart.empty() ? Integer(0) : Integer{std::string(fpart)};
    r = Rational(whole * scale + frac, scale);
  } else {
    if (!digits(body)) throw input_error("bad rational '" + t + "'");
    r = Rational(Integer{std::string(body)});
  }
  return neg ? Rational(-r) : r;
}

// ---- intersection lattice ----------------------------------------------------

// Rank-2 combinatorics: every intersection point with its incident lines
// (zero-based, sorted) and, for affine input, the parallel classes.
struct IntersectionLattice {
  std::size_t n = 0;
  bool projective = false;
  std::vector<std::vector<std::size_t>> points;
  std::vector<std::vector<std::size_t>> parallel_classes;

  std::vector<std::vector<std::size_t>> multiple_points(std::size_t min_mult = 3) const {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& p : points)
      if (p.size() >= min_mult) out.push_back(p);
    return out;
  }
  bool only_double_points() const { return multiple_points().empty(); }
  bool has_parallels() const {
    return std::any_of(parallel_classes.begin(), parallel_classes.end(), [](const auto& c) { return c.size() > 1; });
  }
  bool general_position() const { return only_double_points() && !has_parallels(); }
  bool all_parallel() const { return !projective && parallel_classes.size() == 1; }
  // Some point lies on every line.
  bool is_pencil() const {
    return std::any_of(points.begin(), points.end(), [&](const auto& p) { return p.size() == n; });
  }

  // Every pair of lines meets in exactly one listed point, unless parallel.
  void validate() const {
    if (n == 0) throw input_error("arrangement has no lines");
    std::vector<int> cls(n, -1);
    for (std::size_t c = 0; c < parallel_classes.size(); ++c)
      for (auto i : parallel_classes[c]) {
        if (i >= n) throw input_error("line index out of range");
        if (cls[i] != -1) throw input_error("line in two parallel classes");
        cls[i] = static_cast<int>(c);
      }
    if (projective && has_parallels()) throw input_error("projective lines are never parallel");
    std::vector<int> seen(n * n, 0);
    for (const auto& p : points) {
      if (p.size() < 2) throw input_error("an intersection point needs two lines");
      for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] >= n) throw input_error("line index out of range");
        for (std::size_t b = a + 1; b < p.size(); ++b) {
          if (p[a] == p[b]) throw input_error("repeated line in a point");
          if (!projective && cls[p[a]] != -1 && cls[p[a]] == cls[p[b]])
            throw input_error("parallel lines cannot meet");
          const auto lo = std::min(p[a], p[b]), hi = std::max(p[a], p[b]);
          if (seen[lo * n + hi]++) throw input_error("two lines meet in more than one point");
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool par = !projective && cls[i] != -1 && cls[i] == cls[j];
        if (!par && !seen[i * n + j]) throw input_error("lines " + std::to_string(i + 1) + " and " +
                                                        std::to_string(j + 1) + " do not meet");
      }
  }
};

namespace detail {

inline void canonicalize(IntersectionLattice& L) {
  for (auto& p : L.points) std::sort(p.begin(), p.end());
  std::sort(L.points.begin(), L.points.end());
  if (!L.projective) {
    std::vector<char> in(L.n, 0);
    for (auto& c : L.parallel_classes) {
      std::sort(c.begin(), c.end());
      for (auto i : c) if (i < L.n) in[i] = 1;
    }
    for (std::size_t i = 0; i < L.n; ++i)
      if (!in[i]) L.parallel_classes.push_back({i});
    std::sort(L.parallel_classes.begin(), L.parallel_classes.end());
  } else {
    L.parallel_classes.clear();
  }
}

inline std::vector<Integer> primitive_triple(const std::array<Rational, 3>& v) {
  std::vector<Rational> r(v.begin(), v.end());
  auto p = primitive_integer_vector(r);
  for (const auto& x : p)
    if (x != 0) {
      if (x < 0)
        for (auto& y : p) y = -y;
      break;
    }
  return p;
}

}  // namespace detail

// Builds the lattice from explicit lines, exactly.
inline IntersectionLattice intersection_lattice(const LineArrangement& arr) {
  IntersectionLattice L;
  L.n = arr.lines.size();
  L.projective = arr.projective;
  if (L.n == 0) throw input_error("arrangement has no lines");
  std::vector<std::vector<Integer>> eq;
  for (std::size_t i = 0; i < L.n; ++i) {
    auto v = detail::primitive_triple(arr.lines[i]);
    if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; }))
      throw input_error("line " + std::to_string(i + 1) + " has all coefficients zero");
    if (!arr.projective && v[0] == 0 && v[1] == 0)
      throw input_error("line " + std::to_string(i + 1) + " is not an affine line");
    for (std::size_t j = 0; j < i; ++j)
      if (eq[j] == v) throw input_error("lines " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
    eq.push_back(std::move(v));
  }

  std::map<std::vector<Rational>, std::set<std::size_t>> pts;
  std::map<std::vector<Integer>, std::vector<std::size_t>> directions;
  for (std::size_t i = 0; i < L.n; ++i) {
    const auto& a = eq[i];
    if (!arr.projective) {
      std::vector<Rational> d{Rational(a[0]), Rational(a[1])};
      auto key = primitive_integer_vector(d);
      if (key[0] < 0 || (key[0] == 0 && key[1] < 0))
        for (auto& x : key) x = -x;
      directions[key].push_back(i);
    }
    for (std::size_t j = i + 1; j < L.n; ++j) {
      const auto& b = eq[j];
      std::vector<Rational> key;
      if (arr.projective) {
        std::array<Rational, 3> x{Rational(a[1] * b[2] - a[2] * b[1]), Rational(a[2] * b[0] - a[0] * b[2]),
                                  Rational(a[0] * b[1] - a[1] * b[0])};
        auto pk = detail::primitive_triple(x);
        key.assign(pk.begin(), pk.end());
      } else {
        const Integer det = a[0] * b[1] - a[1] * b[0];
        if (det == 0) continue;
        key = {Rational(a[1] * b[2] - b[1] * a[2], det), Rational(a[2] * b[0] - b[2] * a[0], det)};
      }
      pts[key].insert(i);
      pts[key].insert(j);
    }
  }
  for (const auto& [k, s] : pts) L.points.emplace_back(s.begin(), s.end());
  for (const auto& [k, c] : directions) L.parallel_classes.push_back(c);
  detail::canonicalize(L);
  return L;
}

// Lattice from combinatorial data; pairs not covered by a listed point or a
// parallel class meet in a double point. Indices are zero-based.
inline IntersectionLattice lattice_from_combinatorics(std::size_t n,
                                                      const std::vector<std::vector<std::size_t>>& multiple_points,
                                                      const std::vector<std::vector<std::size_t>>& parallel_classes = {},
                                                      bool projective = false) {
  IntersectionLattice L;
  L.n = n;
  L.projective = projective;
  if (n == 0) throw input_error("arrangement has no lines");
  L.points = multiple_points;
  L.parallel_classes = parallel_classes;
  if (projective && L.has_parallels()) throw input_error("projective lines are never parallel");
  std::vector<char> covered(n * n, 0);
  std::vector<int> cls(n, -1);
  for (std::size_t c = 0; c < parallel_classes.size(); ++c)
    for (auto i : parallel_classes[c]) {
      if (i >= n) throw input_error("line index out of range");
      if (cls[i] != -1) throw input_error("line in two parallel classes");
      cls[i] = static_cast<int>(c);
    }
  for (const auto& p : multiple_points)
    for (auto a : p)
      for (auto b : p) {
        if (a >= n || b >= n) throw input_error("line index out of range");
        covered[a * n + b] = 1;
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!covered[i * n + j] && !(cls[i] != -1 && cls[i] == cls[j])) L.points.push_back({i, j});
  detail::canonicalize(L);
  L.validate();
  return L;
}

// Adds the line at infinity (index n). A parallel class becomes a point at
// infinity of multiplicity one more than its size.
inline IntersectionLattice projective_closure(const IntersectionLattice& L) {
  if (L.projective) return L;
  IntersectionLattice P;
  P.n = L.n + 1;
  P.projective = true;
  P.points = L.points;
  for (auto c : L.parallel_classes) {
    c.push_back(L.n);
    P.points.push_back(c);
  }
  detail::canonicalize(P);
  return P;
}

// ---- Orlik–Solomon algebra in degrees <= 2 -------------------------------------

struct OSBasis {
  CupStructure cup;
  std::vector<std::pair<std::size_t, std::size_t>> basis;  // pairs e_i e_j spanning A^2
};

// A^2 = Λ^2 modulo e_i e_j for parallel pairs and (e_i - e_k)(e_j - e_k) for
// concurrent triples. The basis keeps the lexicographically first pairs that
// stay independent modulo the relations.
inline OSBasis os2_basis(const IntersectionLattice& L) {
  if (L.projective) throw input_error("the Orlik–Solomon truncation here needs an affine arrangement");
  const std::size_t n = L.n;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      pair_index[{i, j}] = pairs.size();
      pairs.push_back({i, j});
    }
  const std::size_t N = pairs.size();
  Matrix<Rational> rel(0, N);
  for (const auto& c : L.parallel_classes)
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) {
        std::vector<Rational> r(N, Rational(0));
        r[pair_index.at({c[a], c[b]})] = 1;
        rel.append_row(r);
      }
  for (const auto& p : L.multiple_points())
    for (std::size_t x = 0; x < p.size(); ++x)
      for (std::size_t y = x + 1; y < p.size(); ++y)
        for (std::size_t z = y + 1; z < p.size(); ++z) {
          // e_i e_j - e_i e_k + e_j e_k
          std::vector<Rational> r(N, Rational(0));
          r[pair_index.at({p[x], p[y]})] += 1;
          r[pair_index.at({p[x], p[z]})] -= 1;
          r[pair_index.at({p[y], p[z]})] += 1;
          rel.append_row(r);
        }

  // Greedy lex basis of the quotient.
  Matrix<Rational> span = rel;
  std::size_t rank = span.rows() ? rref(span).size() : 0;
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < N; ++k) {
    Matrix<Rational> trial(0, N);
    for (std::size_t i = 0; i < rank; ++i) trial.append_row(span.row(i));
    std::vector<Rational> e(N, Rational(0));
    e[k] = 1;
    trial.append_row(e);
    const std::size_t r2 = rref(trial).size();
    if (r2 > rank) {
      chosen.push_back(k);
      span = trial;
      rank = r2;
    }
  }

  // Express each pair modulo the relations in the chosen basis: solve
  // e_ij = Σ c_b e_b + Σ d_r rel_r.
  const std::size_t b2 = chosen.size();
  const std::size_t R = rel.rows();
  OSBasis out{CupStructure(n, b2), {}};
  for (auto k : chosen) out.basis.push_back(pairs[k]);
  for (std::size_t k = 0; k < N; ++k) {
    // Columns: chosen basis vectors, then relation rows; augmented by e_k.
    Matrix<Rational> A(N, b2 + R + 1);
    for (std::size_t b = 0; b < b2; ++b) A(chosen[b], b) = 1;
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t t = 0; t < N; ++t) A(t, b2 + r) = rel(r, t);
    A(k, b2 + R) = 1;
    auto piv = rref(A);
    if (!piv.empty() && piv.back() == b2 + R) throw std::logic_error("internal: pair outside the span");
    // Basis columns come first and are independent modulo the relations, so
    // their coefficients are pinned down.
    for (std::size_t row = 0; row < piv.size(); ++row) {
      const std::size_t c = piv[row];
      if (c >= b2) continue;
      const Rational& v = A(row, b2 + R);
      if (v == 0) continue;
      if (denominator(v) != 1) throw std::logic_error("internal: non-integral Orlik–Solomon coefficient");
      out.cup.set(pairs[k].first, pairs[k].second, c, numerator(v));
    }
  }
  return out;
}

inline CupStructure os2_structure(const IntersectionLattice& L) { return os2_basis(L).cup; }

// ---- resonance components ----------------------------------------------------

struct ResonanceComponent {
  RationalSubspace subspace;
  std::string origin;                // "local", "parallel" or "supplied"
  std::vector<std::size_t> lines;    // the point or class it comes from
  bool verified = false;
  std::size_t aomoto_betti = 0;      // at the sample point
  std::vector<Integer> sample;
};

// L_J = {Σ_{j∈J} x_j = 0, x_i = 0 off J}.
inline RationalSubspace local_component(std::size_t n, const std::vector<std::size_t>& J) {
  std::vector<std::vector<Integer>> rows;
  std::vector<Integer> s(n, Integer(0));
  for (auto j : J) s[j] = 1;
  rows.push_back(s);
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(J.begin(), J.end(), i)) {
      std::vector<Integer> e(n, Integer(0));
      e[i] = 1;
      rows.push_back(e);
    }
  return RationalSubspace::from_normals(n, rows);
}

// The coordinate subspace on a parallel class.
inline RationalSubspace parallel_component(std::size_t n, const std::vector<std::size_t>& J) {
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(J.begin(), J.end(), i)) {
      std::vector<Integer> e(n, Integer(0));
      e[i] = 1;
      rows.push_back(e);
    }
  return rows.empty() ? RationalSubspace::full(n) : RationalSubspace::from_normals(n, rows);
}

// A pseudo-random nonzero integer point of S.
inline std::vector<Integer> sample_point(const RationalSubspace& S, std::mt19937_64& rng) {
  const auto B = S.basis();
  std::vector<Integer> x(S.ambient(), Integer(0));
  if (B.empty()) return x;
  std::uniform_int_distribution<int> coef(1, 9);
  std::bernoulli_distribution sign(0.5);
  for (const auto& b : B) {
    const int c = sign(rng) ? coef(rng) : -coef(rng);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * b[i];
  }
  return x;
}

// Candidate components of R_1 from the lattice, plus `extra`, each tested
// at a sample point against the Orlik–Solomon cup product.
inline std::vector<ResonanceComponent> resonance_components(const IntersectionLattice& L,
                                                            const std::vector<RationalSubspace>& extra = {},
                                                            std::uint64_t seed = 1) {
  const CupStructure cup = os2_structure(L);
  const LinearFormMatrix theta = cup.theta();
  std::mt19937_64 rng(seed);
  std::vector<ResonanceComponent> out;
  auto check = [&](RationalSubspace S, const char* origin, std::vector<std::size_t> lines) {
    ResonanceComponent c;
    c.subspace = std::move(S);
    c.origin = origin;
    c.lines = std::move(lines);
    if (c.subspace.ambient() != L.n) throw input_error("component has the wrong ambient dimension");
    c.sample = sample_point(c.subspace, rng);
    const auto m = resonance_membership(theta, c.sample, 1);
    c.verified = c.subspace.dimension() > 0 && m.member;
    c.aomoto_betti = m.aomoto_betti;
    out.push_back(std::move(c));
  };
  for (const auto& J : L.multiple_points()) check(local_component(L.n, J), "local", J);
  for (const auto& J : L.parallel_classes)
    if (J.size() >= 2) check(parallel_component(L.n, J), "parallel", J);
  for (const auto& S : extra) check(S, "supplied", {});
  return out;
}

// Whether every two of the subspaces meet only at 0.
inline bool pairwise_meet_at_origin(const std::vector<ResonanceComponent>& cs) {
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (!cs[i].subspace.intersect(cs[j].subspace).is_zero()) return false;
  return true;
}

// ---- classifiers ---------------------------------------------------------------

struct MultiplicityGraph {
  std::vector<std::vector<std::size_t>> vertices;  // points of multiplicity >= 3
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool forest = true;
};

// Built on the projective closure, so parallel classes of size >= 2 count as
// multiple points at infinity. Along each line consecutive multiple points are
// joined; the position order on the line does not affect forest-ness, so
// points are taken in index order.
inline MultiplicityGraph multiplicity_graph(const IntersectionLattice& L) {
  const IntersectionLattice P = projective_closure(L);
  MultiplicityGraph g;
  g.vertices = P.multiple_points();
  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t line = 0; line < P.n; ++line) {
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (std::binary_search(g.vertices[v].begin(), g.vertices[v].end(), line)) on.push_back(v);
    for (std::size_t k = 0; k + 1 < on.size(); ++k) {
      g.edges.push_back({on[k], on[k + 1]});
      const auto a = find(on[k]), b = find(on[k + 1]);
      if (a == b) g.forest = false;
      else parent[a] = b;
    }
  }
  return g;
}

struct ArrangementClassification {
  bool type_Am = false;
  std::vector<std::size_t> m;  // parallel class sizes, descending
  bool free_group = false;
  bool kahler_group = false;
  bool raag = false;
  MultiplicityGraph multiplicity;
};

inline ArrangementClassification arr_classify(const IntersectionLattice& L) {
  if (L.projective) throw input_error("classifiers apply to affine arrangements");
  ArrangementClassification c;
  c.type_Am = L.only_double_points();
  if (c.type_Am) {
    for (const auto& cl : L.parallel_classes) c.m.push_back(cl.size());
    std::sort(c.m.rbegin(), c.m.rend());
  }
  c.free_group = L.all_parallel();
  c.kahler_group = L.general_position() && L.n % 2 == 0;
  c.multiplicity = multiplicity_graph(L);
  c.raag = c.multiplicity.forest;
  return c;
}

// ---- Alexander polynomial of an arrangement --------------------------------------

enum class ArrangementDeltaKind { pencil, near_pencil, constant };

inline const char* to_string(ArrangementDeltaKind k) {
  switch (k) {
    case ArrangementDeltaKind::pencil: return "pencil";
    case ArrangementDeltaKind::near_pencil: return "near_pencil";
    default: return "constant";
  }
}

struct ArrangementDelta {
  ArrangementDeltaKind kind = ArrangementDeltaKind::constant;
  std::optional<LaurentPoly> delta;  // absent when only "a constant" is known
  std::optional<std::size_t> transverse_line;
  bool cross_checked = false;
};

// n-1 parallel lines plus one line meeting each of them, n >= 3.
inline std::optional<std::size_t> near_pencil_transverse(const IntersectionLattice& L) {
  if (L.projective || L.n < 3 || !L.only_double_points() || L.parallel_classes.size() != 2) return std::nullopt;
  const auto& a = L.parallel_classes[0];
  const auto& b = L.parallel_classes[1];
  if (a.size() == 1) return a[0];
  if (b.size() == 1) return b[0];
  return std::nullopt;
}

inline ArrangementDelta arr_alex_poly(const IntersectionLattice& L, const Caps& caps = {}) {
  if (L.projective) throw input_error("arrangement Alexander polynomials are defined for affine arrangements");
  const std::size_t n = L.n;
  ArrangementDelta r;
  if (n >= 3 && L.is_pencil()) {
    r.kind = ArrangementDeltaKind::pencil;
    LaurentPoly prod = LaurentPoly::monomial(n, Exponent(n, 1)) - LaurentPoly::constant(n, 1);
    r.delta = prod.pow(static_cast<unsigned>(n - 2)).normalized();
    r.cross_checked = alexander_polynomial(pencil_group(n), caps).poly == *r.delta;
  } else if (auto t = near_pencil_transverse(L)) {
    r.kind = ArrangementDeltaKind::near_pencil;
    r.transverse_line = *t;
    LaurentPoly f = LaurentPoly::variable(n, *t) - LaurentPoly::constant(n, 1);
    r.delta = f.pow(static_cast<unsigned>(n - 2)).normalized();
    // The built-in presentation has the transverse line last.
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < n; ++i)
      if (i != *t) perm.push_back(i);
    perm.push_back(*t);
    const LaurentPoly g = alexander_polynomial(near_pencil_group(n), caps).poly;
    LaurentPoly h(n);
    for (const auto& [e, c] : g.terms()) {
      Exponent e2(n, 0);
      for (std::size_t k = 0; k < n; ++k) e2[perm[k]] = e[k];
      h += LaurentPoly::monomial(n, e2, c);
    }
    r.cross_checked = h.normalized() == *r.delta;
  } else {
    r.kind = ArrangementDeltaKind::constant;
    if (L.all_parallel()) r.delta = alexander_polynomial(free_group(n), caps).poly;
    else if (L.general_position()) r.delta = LaurentPoly::constant(n, 1);
  }
  return r;
}

// ---- Milnor fiber ----------------------------------------------------------------

// pX plus the relator γ_1^{n_1} ... γ_s^{n_s}, meridians in the given order.
inline GroupPresentation append_meridian_relator(const GroupPresentation& pX, const std::vector<std::size_t>& meridians,
                                                 const std::vector<std::uint64_t>& degrees = {}) {
  pX.validate();
  if (!degrees.empty() && degrees.size() != meridians.size())
    throw input_error("need one degree per meridian");
  GroupPresentation p = pX;
  Word w;
  for (std::size_t i = 0; i < meridians.size(); ++i) {
    if (meridians[i] >= p.q()) throw input_error("meridian index out of range");
    w.push(meridians[i], degrees.empty() ? 1 : static_cast<std::int64_t>(degrees[i]));
  }
  p.relators.push_back(w);
  return p;
}

struct MilnorData {
  std::vector<std::size_t> meridians;   // generator index of γ_i
  std::vector<std::uint64_t> exponents; // a_i
  std::vector<std::uint64_t> degrees;   // n_i
};

inline std::uint64_t milnor_degree(const MilnorData& d) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < d.exponents.size(); ++i) n += d.exponents[i] * d.degrees[i];
  return n;
}

// The character γ_i -> ζ^{a_i} on a presentation of π_1(U) whose generators
// are exactly the marked meridians.
inline Character milnor_character(const GroupPresentation& pU, const MilnorData& d, fp::elem prime) {
  pU.validate();
  const std::size_t s = d.meridians.size();
  if (s == 0) throw input_error("no meridians");
  if (d.exponents.size() != s || d.degrees.size() != s) throw input_error("need one exponent and degree per meridian");
  std::uint64_t g = 0;
  for (auto a : d.exponents) {
    if (a == 0) throw input_error("exponents must be positive");
    g = std::gcd(g, a);
  }
  for (auto k : d.degrees)
    if (k == 0) throw input_error("degrees must be positive");
  if (g != 1) throw input_error("exponents must have gcd 1");
  std::vector<int> seen(pU.q(), 0);
  for (auto m : d.meridians) {
    if (m >= pU.q()) throw input_error("meridian index out of range");
    if (seen[m]++) throw input_error("meridian listed twice");
  }
  if (s != pU.q()) throw input_error("every generator must be a marked meridian");
  const std::uint64_t n = milnor_degree(d);
  check_cover_prime(n, prime);
  if (n % prime == 0) throw input_error("prime divides the degree");
  const fp::elem zeta = fp::root_of_unity(n, prime);
  Character rho{prime, std::vector<fp::elem>(pU.q(), 1)};
  for (std::size_t i = 0; i < s; ++i) rho.values[d.meridians[i]] = fp::pow(zeta, d.exponents[i] % n, prime);
  validate_character(pU, rho);
  return rho;
}

// dim H_1(F, F_p) for the Milnor fiber F -> U, an n-fold cyclic cover.
inline std::size_t milnor_b1(const GroupPresentation& pU, const MilnorData& d, fp::elem prime) {
  const Character rho = milnor_character(pU, d, prime);
  const std::uint64_t n = milnor_degree(d);
  return d.meridians.size() - 1 + twisted_power_sum(pU, rho, n);
}

// Reduced arrangement: all a_i = n_i = 1, meridians x_1..x_s in order.
inline MilnorData reduced_milnor_data(std::size_t s) {
  MilnorData d;
  for (std::size_t i = 0; i < s; ++i) {
    d.meridians.push_back(i);
    d.exponents.push_back(1);
    d.degrees.push_back(1);
  }
  return d;
}

// ---- boundary manifolds ------------------------------------------------------------

struct BoundaryVertex {
  std::vector<std::size_t> lines;  // {i} for v_i, J for v_J
  bool exceptional = false;        // v_J
  std::size_t degree = 0;
};

struct BoundaryGraph {
  std::vector<BoundaryVertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct BoundaryFactor {
  std::vector<std::size_t> lines;  // t_v = Π t_i over these
  std::int64_t exponent = 0;       // m_v - 2
};

struct BoundaryReport {
  std::size_t lines = 0;  // n + 1
  BoundaryGraph graph;
  bool essential = true;
  std::vector<BoundaryFactor> delta_factors;  // only when essential
  std::optional<LaurentPoly> delta;           // expanded when small enough
  std::vector<std::vector<std::size_t>> v1;   // {t_v = 1} for m_v >= 3
  std::string r1_tag;
  std::string manifold_tag;
};

// The graph of the blown-up arrangement and the invariants read off it.
// Affine input is first closed up with the line at infinity.
inline BoundaryReport boundary_invariants(const IntersectionLattice& lattice, std::size_t expand_limit = 20000) {
  const IntersectionLattice P = projective_closure(lattice);
  P.validate();
  const std::size_t N = P.n;
  BoundaryReport r;
  r.lines = N;
  BoundaryGraph& G = r.graph;
  for (std::size_t i = 0; i < N; ++i) G.vertices.push_back({{i}, false, 0});
  for (const auto& p : P.points) {
    if (p.size() == 2) {
      G.edges.push_back({p[0], p[1]});
    } else {
      const std::size_t v = G.vertices.size();
      G.vertices.push_back({p, true, 0});
      for (auto i : p) G.edges.push_back({v, i});
    }
  }
  for (const auto& [a, b] : G.edges) {
    ++G.vertices[a].degree;
    ++G.vertices[b].degree;
  }

  const bool pencil = P.is_pencil();
  const bool near =
      !pencil && N >= 3 && std::any_of(P.points.begin(), P.points.end(), [&](const auto& p) { return p.size() == N - 1; });
  r.essential = !pencil;
  if (pencil) {
    r.manifold_tag = "#^" + std::to_string(N - 1) + " S1xS2";
    r.r1_tag = "C^" + std::to_string(N - 1);
  } else if (near) {
    r.manifold_tag = "S1xSigma_" + std::to_string(N - 2);
    r.r1_tag = "C^" + std::to_string(2 * (N - 2));
  } else {
    r.manifold_tag = "graph_manifold";
    r.r1_tag = "H1";
  }
  for (const auto& v : G.vertices)
    if (v.degree >= 3) r.v1.push_back(v.lines);

  if (r.essential) {
    double terms = 1;
    for (const auto& v : G.vertices) {
      const auto e = static_cast<std::int64_t>(v.degree) - 2;
      r.delta_factors.push_back({v.lines, e});
      terms *= static_cast<double>(std::max<std::int64_t>(e, 0) + 1);
    }
    if (terms <= static_cast<double>(expand_limit)) {
      LaurentPoly d = LaurentPoly::constant(N, 1);
      for (const auto& f : r.delta_factors) {
        if (f.exponent <= 0) continue;
        Exponent e(N, 0);
        for (auto i : f.lines) e[i] = 1;
        const LaurentPoly base = LaurentPoly::monomial(N, e) - LaurentPoly::constant(N, 1);
        d = d * base.pow(static_cast<unsigned>(f.exponent));
      }
      r.delta = d.normalized();
    }
  }
  return r;
}

}  // namespace jumpkit
