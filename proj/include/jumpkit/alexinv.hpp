#pragma once

#include "presentations.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace jumpkit {

struct AlexanderPolynomial {
  LaurentPoly poly;
  std::vector<std::string> variables;

  std::size_t nvars() const { return variables.size(); }
  std::string to_string() const { return poly.to_string(variables); }
};

// Normalized gcd of the k-minors of M. Conventions: k <= 0 gives 1,
// k > rows gives 0 (no minors, the zero ideal).
inline LaurentPoly minor_gcd(const LaurentMatrix& M, std::ptrdiff_t k, const Caps& caps = {}) {
  const std::size_t n = M.nvars();
  if (k <= 0) return LaurentPoly::constant(n, 1);
  const auto ku = static_cast<std::size_t>(k);
  if (ku > M.rows() || ku > M.cols()) return LaurentPoly(n);
  Integer count = binomial(M.rows(), ku) * binomial(M.cols(), ku);
  if (count > caps.minors)
    throw cap_exceeded("minor count " + count.str() + " exceeds cap " + std::to_string(caps.minors));
  LaurentPoly acc(n);
  bool done = false;
  for_each_combination(M.cols(), ku, [&](const std::vector<std::size_t>& cs) {
    for_each_combination(M.rows(), ku, [&](const std::vector<std::size_t>& rs) {
      LaurentPoly d = M.minor(rs, cs);
      if (!d.is_zero()) acc = laurent_gcd({acc, d});
      done = acc.is_unit();
      return !done;
    });
    return !done;
  });
  return acc.normalized();
}

// All nonzero k-minors, deduplicated up to units, in canonical order.
inline std::vector<LaurentPoly> distinct_minors(const LaurentMatrix& M, std::size_t k,
                                                const Caps& caps = {}) {
  std::vector<LaurentPoly> out;
  if (k > M.rows() || k > M.cols()) return out;
  Integer count = binomial(M.rows(), k) * binomial(M.cols(), k);
  if (count > caps.minors)
    throw cap_exceeded("minor count " + count.str() + " exceeds cap " + std::to_string(caps.minors));
  std::set<LaurentPoly> seen;
  for_each_combination(M.cols(), k, [&](const std::vector<std::size_t>& cs) {
    for_each_combination(M.rows(), k, [&](const std::vector<std::size_t>& rs) {
      LaurentPoly d = M.minor(rs, cs);
      if (!d.is_zero()) seen.insert(d.normalized());
      return true;
    });
    return true;
  });
  return {seen.begin(), seen.end()};
}

inline AlexanderPolynomial alexander_polynomial(const GroupPresentation& p, const Caps& caps = {}) {
  p.validate();
  Abelianization ab = abelianize(p);
  AlexanderPolynomial d;
  d.variables = default_variable_names(ab.rank);
  // E_1 is generated by the (q-1)-minors; q = 1 gives the unit ideal.
  d.poly = minor_gcd(alexander_matrix(p, ab), static_cast<std::ptrdiff_t>(p.q()) - 1, caps);
  return d;
}

// Width of the Newton polytope in direction phi.
inline Integer alexander_norm(const LaurentPoly& delta, const std::vector<Integer>& phi) {
  if (delta.is_zero()) throw input_error("Alexander norm of the zero polynomial");
  if (phi.size() != delta.nvars()) throw input_error("covector length mismatch");
  Integer lo, hi;
  bool first = true;
  for (const auto& [e, c] : delta.terms()) {
    Integer v = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) v += phi[i] * e[i];
    if (first || v < lo) lo = v;
    if (first || v > hi) hi = v;
    first = false;
  }
  return hi - lo;
}

struct NewtonSegmentReport {
  bool kahler_obstructed = false;
  bool quasikahler_obstructed = false;
  bool is_segment = true;
  std::vector<Exponent> vertices;
};

inline NewtonSegmentReport newton_segment_report(const LaurentPoly& delta, std::size_t b1) {
  NewtonSegmentReport r;
  r.kahler_obstructed = !delta.is_constant_up_to_units();
  if (!delta.is_zero()) {
    NewtonPolytope np = newton_polytope(delta);
    r.is_segment = np.is_segment;
    r.vertices = np.vertices;
  }
  r.quasikahler_obstructed = b1 != 2 && !delta.is_zero() && !r.is_segment;
  return r;
}

}  // namespace jumpkit
