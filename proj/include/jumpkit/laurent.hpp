#pragma once

#include "exactla.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace jumpkit {

using Exponent = std::vector<std::int64_t>;

// Element of Z[t1^±1, ..., tn^±1]; terms keyed by exponent vector in
// lexicographic order, no zero coefficients stored.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Integer>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : n_(nvars) {}

  static LaurentPoly constant(std::size_t n, const Integer& c) {
    LaurentPoly f(n);
    f.add_term(Exponent(n, 0), c);
    return f;
  }
  static LaurentPoly monomial(std::size_t n, const Exponent& e, const Integer& c = 1) {
    if (e.size() != n) throw input_error("exponent length mismatch");
    LaurentPoly f(n);
    f.add_term(e, c);
    return f;
  }
  // t_i (zero-based i)
  static LaurentPoly variable(std::size_t n, std::size_t i) {
    Exponent e(n, 0);
    e.at(i) = 1;
    return monomial(n, e);
  }

  std::size_t nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                              terms_.begin()->first.end(),
                                              [](std::int64_t x) { return x == 0; }));
  }
  bool is_monomial() const { return terms_.size() == 1; }
  // ± t^v
  bool is_unit() const { return is_monomial() && abs(terms_.begin()->second) == 1; }
  // Associate of a constant: zero or c·t^v.
  bool is_constant_up_to_units() const { return terms_.size() <= 1; }

  Integer coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }
  Integer constant_term() const { return coefficient(Exponent(n_, 0)); }

  void add_term(const Exponent& e, const Integer& c) {
    if (e.size() != n_) throw input_error("exponent length mismatch");
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check(b);
    LaurentPoly r(a.n_);
    Exponent e(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = checked_add(ea[i], eb[i]);
        r.add_term(e, ca * cb);
      }
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend LaurentPoly operator*(const Integer& k, LaurentPoly f) {
    if (k == 0) return LaurentPoly(f.n_);
    for (auto& [e, c] : f.terms_) c *= k;
    return f;
  }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly r = constant(n_, 1), b = *this;
    while (k) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  // Multiply by t^v.
  LaurentPoly shifted(const Exponent& v) const {
    if (v.size() != n_) throw input_error("exponent length mismatch");
    LaurentPoly r(n_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < n_; ++i) f[i] = checked_add(f[i], v[i]);
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  Exponent min_exponents() const {
    Exponent m(n_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < n_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
      first = false;
    }
    return m;
  }
  Exponent max_exponents() const {
    Exponent m(n_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < n_; ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
      first = false;
    }
    return m;
  }

  // Divide out the monomial t^{min} so every exponent is >= 0 and each
  // variable attains exponent 0.
  LaurentPoly to_polynomial() const {
    Exponent m = min_exponents();
    for (auto& x : m) x = -x;
    return shifted(m);
  }

  // Canonical associate: monomial shift to min exponent 0 per variable,
  // lexicographically leading coefficient positive.
  LaurentPoly normalized() const {
    if (is_zero()) return *this;
    LaurentPoly r = to_polynomial();
    if (r.terms_.rbegin()->second < 0) r = -r;
    return r;
  }

  Integer content() const {
    Integer g = 0;
    for (const auto& [e, c] : terms_) g = gcd(g, c);
    return g;
  }

  Integer value_at_one() const {
    Integer s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  fp::elem eval(const std::vector<fp::elem>& vals, fp::elem p) const {
    if (vals.size() != n_) throw input_error("evaluation point has wrong length");
    fp::elem s = 0;
    for (const auto& [e, c] : terms_) {
      fp::elem m = fp::reduce(c, p);
      for (std::size_t i = 0; i < n_ && m; ++i)
        if (e[i]) m = fp::mul(m, fp::pow_signed(vals[i], e[i], p), p);
      s = (s + m) % p;
    }
    return s;
  }

  Integer leading_coefficient() const {
    return terms_.empty() ? Integer(0) : terms_.rbegin()->second;
  }
  const Exponent& leading_exponent() const { return terms_.rbegin()->first; }

  std::vector<Exponent> support() const {
    std::vector<Exponent> s;
    for (const auto& [e, c] : terms_) s.push_back(e);
    return s;
  }

  bool operator==(const LaurentPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
  bool operator<(const LaurentPoly& o) const {
    return std::tie(n_, terms_) < std::tie(o.n_, o.terms_);
  }

  // Descending lexicographic order, e.g. "t1*t2*t3 - 1".
  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Integer a = abs(c);
      if (first) os << (c < 0 ? "-" : "");
      else os << (c < 0 ? " - " : " + ");
      first = false;
      std::vector<std::string> factors;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!e[i]) continue;
        std::string v = i < names.size() ? names[i] : "t" + std::to_string(i + 1);
        if (e[i] != 1) v += "^" + std::to_string(e[i]);
        factors.push_back(v);
      }
      if (factors.empty() || a != 1) factors.insert(factors.begin(), a.str());
      for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
    }
    return os.str();
  }

 private:
  void check(const LaurentPoly& o) const {
    if (o.n_ != n_) throw input_error("variable count mismatch");
  }
  std::size_t n_ = 0;
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << f.to_string(); }

// ---- exact division and gcd --------------------------------------------

// a / b when b divides a in the Laurent ring, else nullopt.
inline std::optional<LaurentPoly> exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  const std::size_t n = a.nvars();
  if (b.nvars() != n) throw input_error("variable count mismatch");
  LaurentPoly q(n);
  if (a.is_zero()) return q;
  // Newton polytopes add, so every quotient exponent lies in this box.
  Exponent lo = a.min_exponents(), hi = a.max_exponents();
  Exponent blo = b.min_exponents(), bhi = b.max_exponents();
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] -= blo[i];
    hi[i] -= bhi[i];
    if (lo[i] > hi[i]) return std::nullopt;
  }
  const Exponent& lb = b.leading_exponent();
  const Integer lc = b.leading_coefficient();
  LaurentPoly r = a;
  Exponent e(n);
  while (!r.is_zero()) {
    const Exponent& lr = r.leading_exponent();
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = lr[i] - lb[i];
      if (e[i] < lo[i] || e[i] > hi[i]) return std::nullopt;
    }
    Integer c = r.leading_coefficient();
    if (c % lc != 0) return std::nullopt;
    LaurentPoly t = LaurentPoly::monomial(n, e, c / lc);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace detail {

inline std::int64_t degree_in(const LaurentPoly& f, std::size_t v) {
  std::int64_t d = -1;
  for (const auto& [e, c] : f.terms()) d = std::max(d, e[v]);
  return d;
}

// Coefficients of f viewed as a polynomial in t_v.
inline std::map<std::int64_t, LaurentPoly> split_in(const LaurentPoly& f, std::size_t v) {
  std::map<std::int64_t, LaurentPoly> out;
  for (const auto& [e, c] : f.terms()) {
    Exponent g = e;
    g[v] = 0;
    auto it = out.try_emplace(e[v], LaurentPoly(f.nvars())).first;
    it->second.add_term(g, c);
  }
  return out;
}

inline LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

inline LaurentPoly content_in(const LaurentPoly& f, std::size_t v) {
  LaurentPoly g(f.nvars());
  for (const auto& [d, coef] : split_in(f, v)) {
    g = g.is_zero() ? coef.normalized() : poly_gcd(g, coef);
    if (g.is_unit()) break;
  }
  return g;
}

inline LaurentPoly divide_or_die(const LaurentPoly& a, const LaurentPoly& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("internal: inexact polynomial division");
  return *q;
}

inline LaurentPoly primitive_in(const LaurentPoly& f, std::size_t v) {
  return divide_or_die(f, content_in(f, v));
}

// Pseudo-remainder of a by b in the variable t_v.
inline LaurentPoly pseudo_remainder(LaurentPoly a, const LaurentPoly& b, std::size_t v) {
  const std::int64_t db = degree_in(b, v);
  const LaurentPoly lcb = split_in(b, v).rbegin()->second;
  const std::size_t n = a.nvars();
  while (!a.is_zero()) {
    std::int64_t da = degree_in(a, v);
    if (da < db) break;
    LaurentPoly lca = split_in(a, v).rbegin()->second;
    Exponent shift(n, 0);
    shift[v] = da - db;
    a = lcb * a - lca * b.shifted(shift);
  }
  return a;
}

// gcd in Z[t1..tn] of polynomials with nonnegative exponents, normalized.
inline LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  const std::size_t n = a.nvars();
  if (a.is_constant() || b.is_constant()) {
    const LaurentPoly& c = a.is_constant() ? a : b;
    const LaurentPoly& o = a.is_constant() ? b : a;
    return LaurentPoly::constant(n, gcd(abs(c.constant_term()), o.content()));
  }
  if (auto q = exact_divide(a, b)) return b.normalized();
  if (auto q = exact_divide(b, a)) return a.normalized();
  // main variable: the one of least degree among those that occur
  std::size_t v = n;
  std::int64_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t d = std::max(degree_in(a, i), degree_in(b, i));
    if (d > 0 && (v == n || d < best)) v = i, best = d;
  }

  LaurentPoly ca = content_in(a, v), cb = content_in(b, v);
  LaurentPoly c = poly_gcd(ca, cb);
  LaurentPoly A = divide_or_die(a, ca), B = divide_or_die(b, cb);
  if (degree_in(A, v) < degree_in(B, v)) std::swap(A, B);
  LaurentPoly g(n);
  for (;;) {
    if (degree_in(B, v) == 0) { g = LaurentPoly::constant(n, 1); break; }
    LaurentPoly R = pseudo_remainder(A, B, v);
    if (R.is_zero()) { g = B; break; }
    A = std::move(B);
    B = primitive_in(R, v);
  }
  return (c * g).normalized();
}

}  // namespace detail

// gcd of a list in the Laurent ring, unit-normalized; gcd of zeros is 0.
inline LaurentPoly laurent_gcd(const std::vector<LaurentPoly>& fs) {
  if (fs.empty()) throw input_error("gcd of an empty list");
  const std::size_t n = fs.front().nvars();
  for (const auto& f : fs)
    if (f.nvars() != n) throw input_error("variable count mismatch");
  LaurentPoly acc(n);
  for (const auto& f : fs) {
    if (f.is_zero()) continue;
    LaurentPoly p = f.to_polynomial();
    if (acc.is_zero()) acc = p.normalized();
    else if (acc.is_constant())
      acc = LaurentPoly::constant(n, gcd(acc.constant_term(), p.content()));
    else if (!exact_divide(p, acc))
      acc = detail::poly_gcd(acc, p);
    if (acc.is_unit()) return LaurentPoly::constant(n, 1);
  }
  return acc.normalized();
}

inline LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) { return laurent_gcd({a, b}); }

// f and g differ by a unit ± t^v.
inline bool associates(const LaurentPoly& f, const LaurentPoly& g) {
  return f.normalized() == g.normalized();
}

// t^u -> t^{U u}; U must be unimodular.
inline LaurentPoly monomial_substitute(const LaurentPoly& f, const IntMatrix& U) {
  const std::size_t n = f.nvars();
  if (U.rows() != n || U.cols() != n) throw input_error("substitution matrix has wrong size");
  if (abs(determinant(U)) != 1) throw input_error("substitution matrix is not unimodular");
  LaurentPoly r(n);
  for (const auto& [e, c] : f.terms()) {
    Exponent g(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j) s += U(i, j) * e[j];
      if (s > std::numeric_limits<std::int64_t>::max() || s < std::numeric_limits<std::int64_t>::min())
        throw cap_exceeded("exponent overflow");
      g[i] = s.convert_to<std::int64_t>();
    }
    r.add_term(g, c);
  }
  return r;
}

// ---- matrices over the Laurent ring ------------------------------------

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(std::size_t r, std::size_t c, std::size_t nvars)
      : rows_(r), cols_(c), n_(nvars), data_(r * c, LaurentPoly(nvars)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return n_; }
  LaurentPoly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  bool operator==(const LaurentMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && n_ == o.n_ && data_ == o.data_;
  }
  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const LaurentPoly& f) { return f.is_zero(); });
  }

  // Determinant of the submatrix on the given rows and columns.
  LaurentPoly minor(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    const std::size_t k = rs.size();
    if (cs.size() != k) throw input_error("minor needs a square selection");
    if (k == 0) return LaurentPoly::constant(n_, 1);
    if (k > 20) throw cap_exceeded("minor size too large");
    // Expansion along rows, memoized on the set of used columns.
    std::vector<LaurentPoly> dp(std::size_t(1) << k, LaurentPoly(n_));
    std::vector<bool> live(dp.size(), false);
    dp[0] = LaurentPoly::constant(n_, 1);
    live[0] = true;
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (!live[mask] || dp[mask].is_zero()) continue;
      std::size_t r = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (r == k) continue;
      for (std::size_t c = 0; c < k; ++c) {
        if (mask >> c & 1) continue;
        const LaurentPoly& e = (*this)(rs[r], cs[c]);
        if (e.is_zero()) continue;
        int above = __builtin_popcountll(mask >> (c + 1));
        LaurentPoly term = dp[mask] * e;
        std::size_t nm = mask | (std::size_t(1) << c);
        if (above & 1) dp[nm] -= term;
        else dp[nm] += term;
        live[nm] = true;
      }
    }
    return dp.back();
  }

  FpMatrix eval(const std::vector<fp::elem>& vals, fp::elem p) const {
    FpMatrix m(rows_, cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(vals, p);
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, n_ = 0;
  std::vector<LaurentPoly> data_;
};

inline FpMatrix eval_matrix(const LaurentMatrix& M, const std::vector<fp::elem>& vals, fp::elem p) {
  return M.eval(vals, p);
}

// ---- Newton polytopes ---------------------------------------------------

namespace detail {

// Is b in the convex hull of pts?  Phase-one simplex over Q with Bland's rule.
inline bool in_convex_hull(const std::vector<Exponent>& pts, const Exponent& b) {
  if (pts.empty()) return false;
  const std::size_t d = b.size(), k = pts.size(), m = d + 1;
  // Constraints: sum_j lambda_j pts_j = b, sum_j lambda_j = 1, lambda >= 0.
  // Columns: k lambdas then m artificials; last column is the rhs.
  const std::size_t W = k + m + 1;
  std::vector<std::vector<Rational>> T(m + 1, std::vector<Rational>(W, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) T[i][j] = i < d ? Rational(pts[j][i]) : Rational(1);
    T[i][W - 1] = i < d ? Rational(b[i]) : Rational(1);
    if (T[i][W - 1] < 0)
      for (std::size_t j = 0; j < W; ++j) T[i][j] = -T[i][j];
    T[i][k + i] = 1;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;
  // Objective row: minimize sum of artificials, written as reduced costs.
  for (std::size_t j = 0; j < W; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += T[i][j];
    T[m][j] = (j >= k && j < k + m) ? Rational(0) : s;
  }
  for (;;) {
    std::size_t enter = W;
    for (std::size_t j = 0; j + 1 < W; ++j)
      if (T[m][j] > 0) { enter = j; break; }
    if (enter == W) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rational ratio = T[i][W - 1] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) break;  // unbounded cannot happen in phase one
    Rational piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rational f = T[i][enter];
      for (std::size_t j = 0; j < W; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  return T[m][W - 1] == 0;
}

}  // namespace detail

struct NewtonPolytope {
  std::vector<Exponent> vertices;  // lexicographic
  bool is_segment = false;
  std::size_t dimension = 0;
};

inline std::size_t affine_dimension(const std::vector<Exponent>& pts) {
  if (pts.size() <= 1) return 0;
  const std::size_t n = pts[0].size();
  IntMatrix D(0, n);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Integer> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = Integer(pts[i][j]) - pts[0][j];
    D.append_row(r);
  }
  return rank_over_q(D);
}

inline NewtonPolytope newton_polytope(const LaurentPoly& f) {
  if (f.is_zero()) throw input_error("Newton polytope of the zero polynomial");
  auto pts = f.support();  // already lexicographic and distinct
  NewtonPolytope np;
  np.dimension = affine_dimension(pts);
  np.is_segment = np.dimension <= 1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i == 0 || i + 1 == pts.size()) {  // lex extremes are always vertices
      np.vertices.push_back(pts[i]);
      continue;
    }
    std::vector<Exponent> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (!detail::in_convex_hull(others, pts[i])) np.vertices.push_back(pts[i]);
  }
  return np;
}

// ---- text form ----------------------------------------------------------

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view s, std::size_t n, const std::vector<std::string>& names)
      : s_(s), n_(n), names_(names) {}

  LaurentPoly parse() {
    LaurentPoly f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw input_error("polynomial parse error at position " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  LaurentPoly expr() {
    LaurentPoly f(n_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    LaurentPoly t = term();
    f = neg ? -t : t;
    for (;;) {
      if (eat('+')) f += term();
      else if (eat('-')) f -= term();
      else break;
    }
    return f;
  }

  LaurentPoly term() {
    LaurentPoly f = factor();
    for (;;) {
      char c = peek();
      if (c == '*') { ++pos_; f *= factor(); }
      else if (c == '(' || std::isalnum(static_cast<unsigned char>(c))) f *= factor();
      else break;
    }
    return f;
  }

  std::int64_t signed_int() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    std::int64_t v = 0;
    for (std::size_t i = start; i < pos_; ++i) v = checked_add(checked_mul(v, 10), s_[i] - '0');
    return neg ? -v : v;
  }

  LaurentPoly factor() {
    LaurentPoly a = atom();
    if (!eat('^')) return a;
    std::int64_t e = signed_int();
    if (e >= 0) return a.pow(static_cast<unsigned>(e));
    if (!a.is_unit()) fail("negative power of a non-unit");
    const auto& [ex, c] = *a.terms().begin();
    Exponent g = ex;
    for (auto& x : g) x = checked_mul(x, e);
    Integer s = (c < 0 && (e % 2 != 0)) ? Integer(-1) : Integer(1);
    return LaurentPoly::monomial(n_, g, s);
  }

  LaurentPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly f = expr();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return LaurentPoly::constant(n_, Integer(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string id(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == id) return LaurentPoly::variable(n_, i);
      pos_ = start;
      fail("unknown variable '" + id + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t n_;
  const std::vector<std::string>& names_;
};

}  // namespace detail

inline std::vector<std::string> default_variable_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("t" + std::to_string(i + 1));
  return v;
}

// Parse with explicit variable names.
inline LaurentPoly parse_laurent(std::string_view text, const std::vector<std::string>& names) {
  return detail::PolyParser(text, names.size(), names).parse();
}

// Parse over t1..tn; when n is 0 the count is the largest index mentioned.
inline LaurentPoly parse_laurent(std::string_view text, std::size_t n = 0) {
  if (n == 0) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != 't' || (i && std::isalnum(static_cast<unsigned char>(text[i - 1])))) continue;
      std::size_t j = i + 1, v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        v = v * 10 + static_cast<std::size_t>(text[j++] - '0');
      if (j > i + 1) n = std::max(n, v);
    }
  }
  return parse_laurent(text, default_variable_names(n));
}

}  // namespace jumpkit
