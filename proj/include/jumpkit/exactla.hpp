#pragma once

#include "core.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <ostream>
#include <tuple>
#include <utility>
#include <vector>

namespace jumpkit {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill = T{})
      : rows_(r), cols_(c), data_(r * c, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& r : init) {
      if (r.size() != cols_) throw input_error("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(std::size_t cols, const std::vector<std::vector<T>>& rs) {
    Matrix m(0, cols);
    for (const auto& r : rs) m.append_row(r);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  void append_row(const std::vector<T>& r) {
    if (r.size() != cols_) throw input_error("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw input_error("matrix product shape mismatch");
    Matrix r(rows_, o.cols_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator<(const Matrix& o) const {
    return std::tie(rows_, cols_, data_) < std::tie(o.rows_, o.cols_, o.data_);
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using FpMatrix = Matrix<fp::elem>;

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

// ---- Smith normal form --------------------------------------------------

struct SNFResult {
  std::vector<Integer> factors;  // nonzero diagonal, d1 | d2 | ...
  std::size_t rank = 0;
  std::size_t rows = 0, cols = 0;
  std::optional<IntMatrix> U, V;  // U * M * V = diag(factors)

  // Cokernel of the row map Z^rows -> Z^cols.
  std::size_t cokernel_rank() const { return cols - rank; }
  std::vector<Integer> torsion() const {
    std::vector<Integer> t;
    for (const auto& d : factors)
      if (d > 1) t.push_back(d);
    return t;
  }
};

namespace detail {

inline void row_axpy(IntMatrix& A, std::size_t dst, const Integer& q, std::size_t src,
                     std::size_t from = 0) {
  for (std::size_t j = from; j < A.cols(); ++j)
    if (A(src, j) != 0) A(dst, j) -= q * A(src, j);
}

inline void col_axpy(IntMatrix& A, std::size_t dst, const Integer& q, std::size_t src,
                     std::size_t from = 0) {
  for (std::size_t i = from; i < A.rows(); ++i)
    if (A(i, src) != 0) A(i, dst) -= q * A(i, src);
}

}  // namespace detail

inline SNFResult smith_normal_form(IntMatrix A, bool with_transforms = false) {
  const std::size_t m = A.rows(), n = A.cols();
  SNFResult res;
  res.rows = m;
  res.cols = n;
  IntMatrix U, V;
  if (with_transforms) {
    U = IntMatrix::identity(m);
    V = IntMatrix::identity(n);
  }
  auto swap_r = [&](std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    if (with_transforms) U.swap_rows(a, b);
  };
  auto swap_c = [&](std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    if (with_transforms) V.swap_cols(a, b);
  };
  auto sub_row = [&](std::size_t dst, const Integer& q, std::size_t src, std::size_t from) {
    detail::row_axpy(A, dst, q, src, from);
    if (with_transforms) detail::row_axpy(U, dst, q, src);
  };
  auto sub_col = [&](std::size_t dst, const Integer& q, std::size_t src, std::size_t from) {
    detail::col_axpy(A, dst, q, src, from);
    if (with_transforms) detail::col_axpy(V, dst, q, src);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block as pivot
    std::size_t pi = m, pj = n;
    Integer best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (A(i, j) != 0 && (pi == m || abs(A(i, j)) < best)) {
          best = abs(A(i, j));
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    swap_r(t, pi);
    swap_c(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i)
        if (A(i, t) != 0) sub_row(i, A(i, t) / A(t, t), t, t);
      for (std::size_t i = t + 1; i < m; ++i)
        if (A(i, t) != 0 && abs(A(i, t)) < abs(A(t, t))) {
          swap_r(t, i);
          dirty = true;
        }
      if (dirty) continue;
      for (std::size_t i = t + 1; i < m; ++i)
        if (A(i, t) != 0) { dirty = true; break; }
      if (dirty) continue;

      for (std::size_t j = t + 1; j < n; ++j)
        if (A(t, j) != 0) sub_col(j, A(t, j) / A(t, t), t, t);
      for (std::size_t j = t + 1; j < n; ++j)
        if (A(t, j) != 0 && abs(A(t, j)) < abs(A(t, t))) {
          swap_c(t, j);
          dirty = true;
        }
      if (dirty) continue;
      for (std::size_t j = t + 1; j < n; ++j)
        if (A(t, j) != 0) { dirty = true; break; }
      if (dirty) continue;

      // enforce the divisibility chain
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) { bad = i; break; }
      if (bad == m) break;
      sub_row(t, Integer(-1), bad, t);
    }
    if (A(t, t) < 0) {
      for (std::size_t j = t; j < n; ++j) A(t, j) = -A(t, j);
      if (with_transforms)
        for (std::size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
    }
    res.factors.push_back(A(t, t));
  }
  res.rank = res.factors.size();
  if (with_transforms) {
    res.U = std::move(U);
    res.V = std::move(V);
  }
  return res;
}

// ---- Hermite normal form ------------------------------------------------

// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<Integer, Integer, Integer> xgcd(const Integer& a, const Integer& b) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, Integer(r0 - q * r1));
    std::tie(s0, s1) = std::make_tuple(s1, Integer(s0 - q * s1));
    std::tie(t0, t1) = std::make_tuple(t1, Integer(t0 - q * t1));
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  return {r0, s0, t0};
}

// Row-style Hermite normal form: returns the nonzero rows, pivots positive,
// entries above each pivot reduced into [0, pivot).
inline IntMatrix hermite_normal_form(IntMatrix A) {
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (A(i, c) == 0) continue;
      if (A(r, c) == 0) { A.swap_rows(r, i); continue; }
      auto [g, s, t] = xgcd(A(r, c), A(i, c));
      Integer a = A(r, c) / g, b = A(i, c) / g;
      for (std::size_t j = c; j < n; ++j) {
        Integer x = A(r, j), y = A(i, j);
        A(r, j) = s * x + t * y;
        A(i, j) = a * y - b * x;
      }
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0)
      for (std::size_t j = c; j < n; ++j) A(r, j) = -A(r, j);
    for (std::size_t k = 0; k < r; ++k)
      if (A(k, c) != 0) {
        Integer q = floor_div(A(k, c), A(r, c));
        if (q != 0) detail::row_axpy(A, k, q, r, c);
      }
    ++r;
  }
  IntMatrix H(0, n);
  for (std::size_t i = 0; i < r; ++i) H.append_row(A.row(i));
  return H;
}

// ---- ranks --------------------------------------------------------------

inline std::size_t rank_mod_p(FpMatrix A, fp::elem p) {
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = m;
    for (std::size_t i = r; i < m; ++i)
      if (A(i, c) % p) { piv = i; break; }
    if (piv == m) continue;
    A.swap_rows(r, piv);
    fp::elem inv = fp::inv(A(r, c) % p, p);
    for (std::size_t i = r + 1; i < m; ++i) {
      fp::elem f = fp::mul(A(i, c) % p, inv, p);
      if (!f) continue;
      for (std::size_t j = c; j < n; ++j)
        A(i, j) = (A(i, j) % p + p - fp::mul(f, A(r, j) % p, p)) % p;
    }
    ++r;
  }
  return r;
}

inline FpMatrix reduce_mod_p(const IntMatrix& M, fp::elem p) {
  FpMatrix R(M.rows(), M.cols(), 0);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) R(i, j) = fp::reduce(M(i, j), p);
  return R;
}

// Rank over Q by fraction-free (Bareiss) elimination.
inline std::size_t rank_over_q(IntMatrix A) {
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = m;
    for (std::size_t i = r; i < m; ++i)
      if (A(i, c) != 0) { piv = i; break; }
    if (piv == m) continue;
    A.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j)
        A(i, j) = (A(r, c) * A(i, j) - A(i, c) * A(r, j)) / prev;
      A(i, c) = 0;
    }
    prev = A(r, c);
    ++r;
  }
  return r;
}

// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix<Rational>& A) {
  const std::size_t m = A.rows(), n = A.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = m;
    for (std::size_t i = r; i < m; ++i)
      if (A(i, c) != 0) { piv = i; break; }
    if (piv == m) continue;
    A.swap_rows(r, piv);
    Rational inv = 1 / A(r, c);
    for (std::size_t j = c; j < n; ++j) A(r, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || A(i, c) == 0) continue;
      Rational f = A(i, c);
      for (std::size_t j = c; j < n; ++j) A(i, j) -= f * A(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline Matrix<Rational> to_rational(const IntMatrix& M) {
  Matrix<Rational> R(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) R(i, j) = Rational(M(i, j));
  return R;
}

// Scale a rational vector to a primitive integer vector (same direction).
inline std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) {
    Integer d = boost::multiprecision::denominator(x);
    l = l / gcd(l, d) * d;
  }
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& x : v) {
    Integer y = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
    out.push_back(y);
    g = gcd(g, y);
  }
  if (g > 1)
    for (auto& y : out) y /= g;
  return out;
}

// Integer basis (columns as returned rows) of the right kernel {x : M x = 0}.
inline std::vector<std::vector<Integer>> kernel_basis(const IntMatrix& M) {
  Matrix<Rational> R = to_rational(M);
  auto piv = rref(R);
  const std::size_t n = M.cols();
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<Integer>> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -R(k, f);
    out.push_back(primitive_integer_vector(v));
  }
  return out;
}

// Hermite basis of the integer lattice {v in Z^n : v . k = 0 for all k in ks}.
inline IntMatrix integer_annihilator(std::size_t n, const std::vector<std::vector<Integer>>& ks) {
  const std::size_t k = ks.size();
  IntMatrix aug(n, k + n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = ks[j][i];
    aug(i, k + i) = 1;
  }
  IntMatrix H = hermite_normal_form(aug);
  IntMatrix out(0, n);
  for (std::size_t i = 0; i < H.rows(); ++i) {
    bool zero_head = true;
    for (std::size_t j = 0; j < k; ++j)
      if (H(i, j) != 0) { zero_head = false; break; }
    if (!zero_head) continue;
    const std::vector<Integer> full = H.row(i);
    std::vector<Integer> r(full.begin() + static_cast<std::ptrdiff_t>(k), full.end());
    out.append_row(r);
  }
  return hermite_normal_form(out);
}

// ---- rational subspaces -------------------------------------------------

// A linear subspace of Q^n, stored as the Hermite basis of the saturated
// lattice of integer normals. Equal subspaces compare equal bytewise.
class RationalSubspace {
 public:
  RationalSubspace() = default;

  static RationalSubspace full(std::size_t n) {
    RationalSubspace s;
    s.n_ = n;
    s.normals_ = IntMatrix(0, n);
    return s;
  }
  static RationalSubspace zero(std::size_t n) {
    RationalSubspace s;
    s.n_ = n;
    s.normals_ = IntMatrix::identity(n);
    return s;
  }

  static RationalSubspace from_normals(std::size_t n, const IntMatrix& N) {
    if (N.cols() != n) throw input_error("normal vector length differs from ambient dimension");
    RationalSubspace s;
    s.n_ = n;
    auto ker = kernel_basis(N);
    if (ker.empty()) s.normals_ = IntMatrix::identity(n);
    else s.normals_ = integer_annihilator(n, ker);
    return s;
  }
  static RationalSubspace from_normals(std::size_t n, const std::vector<std::vector<Integer>>& rows) {
    return from_normals(n, IntMatrix::from_rows(n, rows));
  }
  static RationalSubspace span(std::size_t n, const std::vector<std::vector<Integer>>& vecs) {
    for (const auto& v : vecs)
      if (v.size() != n) throw input_error("spanning vector length differs from ambient dimension");
    RationalSubspace s;
    s.n_ = n;
    s.normals_ = vecs.empty() ? IntMatrix::identity(n) : integer_annihilator(n, vecs);
    if (s.normals_.rows() == 0) s.normals_ = IntMatrix(0, n);
    return s;
  }

  std::size_t ambient() const { return n_; }
  std::size_t codim() const { return normals_.rows(); }
  std::size_t dimension() const { return n_ - normals_.rows(); }
  const IntMatrix& normals() const { return normals_; }
  bool is_zero() const { return codim() == n_; }
  bool is_full() const { return codim() == 0; }

  // Integer vectors spanning the subspace.
  std::vector<std::vector<Integer>> basis() const {
    if (is_full()) {
      std::vector<std::vector<Integer>> b;
      for (std::size_t i = 0; i < n_; ++i) {
        std::vector<Integer> e(n_, Integer(0));
        e[i] = 1;
        b.push_back(e);
      }
      return b;
    }
    return kernel_basis(normals_);
  }

  template <class V>
  bool contains_point(const V& x) const {
    if (x.size() != n_) throw input_error("point dimension mismatch");
    for (std::size_t i = 0; i < normals_.rows(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n_; ++j) s += Rational(normals_(i, j)) * Rational(x[j]);
      if (s != 0) return false;
    }
    return true;
  }

  // this ⊆ other
  bool subset_of(const RationalSubspace& other) const {
    check(other);
    if (other.codim() > codim()) return false;
    IntMatrix stacked = normals_;
    for (std::size_t i = 0; i < other.normals_.rows(); ++i) stacked.append_row(other.normals_.row(i));
    return rank_over_q(stacked) == codim();
  }

  RationalSubspace intersect(const RationalSubspace& other) const {
    check(other);
    IntMatrix stacked = normals_;
    for (std::size_t i = 0; i < other.normals_.rows(); ++i) stacked.append_row(other.normals_.row(i));
    return from_normals(n_, stacked);
  }

  bool operator==(const RationalSubspace& o) const { return n_ == o.n_ && normals_ == o.normals_; }
  bool operator!=(const RationalSubspace& o) const { return !(*this == o); }
  // Larger subspaces first, then lexicographic on the canonical normals.
  bool operator<(const RationalSubspace& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    if (codim() != o.codim()) return codim() < o.codim();
    return normals_.data() < o.normals_.data();
  }

 private:
  void check(const RationalSubspace& o) const {
    if (o.n_ != n_) throw input_error("subspace dimension mismatch");
  }
  std::size_t n_ = 0;
  IntMatrix normals_;
};

// Irredundant finite union of rational subspaces of Q^n.
class SubspaceArrangement {
 public:
  SubspaceArrangement() = default;
  explicit SubspaceArrangement(std::size_t n) : n_(n) {}

  static SubspaceArrangement whole(std::size_t n) {
    SubspaceArrangement a(n);
    a.insert(RationalSubspace::full(n));
    return a;
  }
  static SubspaceArrangement origin(std::size_t n) {
    SubspaceArrangement a(n);
    a.insert(RationalSubspace::zero(n));
    return a;
  }

  std::size_t ambient() const { return n_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  const std::vector<RationalSubspace>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  void insert(const RationalSubspace& s) {
    if (s.ambient() != n_) throw input_error("subspace dimension mismatch");
    for (const auto& m : members_)
      if (s.subset_of(m)) return;
    std::erase_if(members_, [&](const RationalSubspace& m) { return m.subset_of(s); });
    members_.insert(std::upper_bound(members_.begin(), members_.end(), s), s);
  }

  SubspaceArrangement united(const SubspaceArrangement& o) const {
    SubspaceArrangement r = *this;
    for (const auto& s : o.members_) r.insert(s);
    return r;
  }

  SubspaceArrangement intersected(const SubspaceArrangement& o) const {
    if (o.n_ != n_) throw input_error("arrangement dimension mismatch");
    SubspaceArrangement r(n_);
    for (const auto& a : members_)
      for (const auto& b : o.members_) r.insert(a.intersect(b));
    return r;
  }

  template <class V>
  bool contains_point(const V& x) const {
    return std::any_of(members_.begin(), members_.end(),
                       [&](const RationalSubspace& s) { return s.contains_point(x); });
  }

  bool operator==(const SubspaceArrangement& o) const {
    return n_ == o.n_ && members_ == o.members_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<RationalSubspace> members_;
};

}  // namespace jumpkit

namespace jumpkit {

// Exact determinant by Bareiss elimination.
inline Integer determinant(IntMatrix A) {
  if (A.rows() != A.cols()) throw input_error("determinant of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return Integer(1);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t piv = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (A(i, k) != 0) { piv = i; break; }
      if (piv == n) return Integer(0);
      A.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        A(i, j) = (A(k, k) * A(i, j) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

}  // namespace jumpkit
