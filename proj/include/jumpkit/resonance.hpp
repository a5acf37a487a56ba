#pragma once

#include "jumploci.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace jumpkit {

// Matrix whose entries are integer linear forms in x_1..x_b1; entry (k, j)
// is stored as its coefficient vector.
class LinearFormMatrix {
 public:
  LinearFormMatrix() = default;
  LinearFormMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
      : rows_(rows), cols_(cols), n_(nvars), data_(rows * cols, std::vector<Integer>(nvars, Integer(0))) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return n_; }
  std::vector<Integer>& operator()(std::size_t k, std::size_t j) { return data_[k * cols_ + j]; }
  const std::vector<Integer>& operator()(std::size_t k, std::size_t j) const { return data_[k * cols_ + j]; }

  bool is_zero() const {
    for (const auto& f : data_)
      for (const auto& c : f)
        if (c != 0) return false;
    return true;
  }

  IntMatrix eval(const std::vector<Integer>& a) const {
    if (a.size() != n_) throw input_error("point has dimension " + std::to_string(a.size()) + ", expected " +
                                          std::to_string(n_));
    IntMatrix M(rows_, cols_, Integer(0));
    for (std::size_t k = 0; k < rows_; ++k)
      for (std::size_t j = 0; j < cols_; ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < n_; ++i) s += (*this)(k, j)[i] * a[i];
        M(k, j) = s;
      }
    return M;
  }

  FpMatrix eval(const std::vector<fp::elem>& a, fp::elem p) const {
    if (a.size() != n_) throw input_error("point dimension mismatch");
    FpMatrix M(rows_, cols_, 0);
    for (std::size_t k = 0; k < rows_; ++k)
      for (std::size_t j = 0; j < cols_; ++j) {
        fp::elem s = 0;
        for (std::size_t i = 0; i < n_; ++i) s = (s + fp::mul(fp::reduce((*this)(k, j)[i], p), a[i] % p, p)) % p;
        M(k, j) = s;
      }
    return M;
  }

  bool is_skew_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t k = 0; k < rows_; ++k)
      for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < n_; ++i)
          if ((*this)(k, j)[i] != -(*this)(j, k)[i]) return false;
    return true;
  }

  std::string entry_string(std::size_t k, std::size_t j) const {
    std::string s;
    for (std::size_t i = 0; i < n_; ++i) {
      const Integer& c = (*this)(k, j)[i];
      if (c == 0) continue;
      std::string mag = abs(c) == 1 ? "" : abs(c).str() + "*";
      if (s.empty()) s = (c < 0 ? "-" : "") + mag + "x" + std::to_string(i + 1);
      else s += (c < 0 ? " - " : " + ") + mag + "x" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
  }

  bool operator==(const LinearFormMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, n_ = 0;
  std::vector<std::vector<Integer>> data_;
};

// Degree-two structure constants of H^*: e_i ∪ e_j = Σ_k mu(i,j,k) f_k.
class CupStructure {
 public:
  CupStructure() = default;
  CupStructure(std::size_t b1, std::size_t b2) : b1_(b1), b2_(b2), mu_(b1 * b1 * b2, Integer(0)) {}

  std::size_t b1() const { return b1_; }
  std::size_t b2() const { return b2_; }
  const Integer& mu(std::size_t i, std::size_t j, std::size_t k) const { return mu_[(i * b1_ + j) * b2_ + k]; }

  // Sets mu(i,j,k) and mu(j,i,k) = -value; conflicting entries are rejected.
  void set(std::size_t i, std::size_t j, std::size_t k, const Integer& value) {
    if (i >= b1_ || j >= b1_ || k >= b2_) throw input_error("cup index out of range");
    if (i == j && value != 0) throw input_error("e_i ∪ e_i must vanish");
    auto& a = at(i, j, k);
    auto& b = at(j, i, k);
    if ((a != 0 && a != value) || (b != 0 && b != -value))
      throw input_error("inconsistent cup product entries");
    a = value;
    b = -value;
  }

  // Theta_kj = Σ_i mu(i,j,k) x_i, a b2 × b1 matrix.
  LinearFormMatrix theta() const {
    LinearFormMatrix T(b2_, b1_, b1_);
    for (std::size_t k = 0; k < b2_; ++k)
      for (std::size_t j = 0; j < b1_; ++j)
        for (std::size_t i = 0; i < b1_; ++i) T(k, j)[i] = mu(i, j, k);
    return T;
  }

  // Inverse of theta(); fails unless the reconstructed constants are antisymmetric.
  static CupStructure from_theta(const LinearFormMatrix& T) {
    if (T.cols() != T.nvars()) throw input_error("theta must have b1 columns and b1 variables");
    CupStructure c(T.cols(), T.rows());
    for (std::size_t k = 0; k < T.rows(); ++k)
      for (std::size_t j = 0; j < T.cols(); ++j)
        for (std::size_t i = 0; i < T.nvars(); ++i) c.at(i, j, k) = T(k, j)[i];
    for (std::size_t i = 0; i < c.b1_; ++i)
      for (std::size_t j = 0; j < c.b1_; ++j)
        for (std::size_t k = 0; k < c.b2_; ++k)
          if (c.mu(i, j, k) != -c.mu(j, i, k)) throw input_error("theta does not come from an antisymmetric product");
    return c;
  }

  // μ(u, v) for degree-one classes u, v.
  std::vector<Rational> product(const std::vector<Rational>& u, const std::vector<Rational>& v) const {
    std::vector<Rational> out(b2_, Rational(0));
    for (std::size_t i = 0; i < b1_; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < b1_; ++j) {
        if (v[j] == 0) continue;
        for (std::size_t k = 0; k < b2_; ++k) out[k] += u[i] * v[j] * mu(i, j, k);
      }
    }
    return out;
  }

  bool operator==(const CupStructure&) const = default;

 private:
  Integer& at(std::size_t i, std::size_t j, std::size_t k) { return mu_[(i * b1_ + j) * b2_ + k]; }

  std::size_t b1_ = 0, b2_ = 0;
  std::vector<Integer> mu_;
};

// Degree-one part of the Alexander matrix under t_i = 1 + x_i.
inline LinearFormMatrix linearized_alexander_matrix(const GroupPresentation& p) {
  p.validate();
  if (!p.commutator_relators()) throw input_error("presentation is not a commutator-relators presentation");
  const Abelianization ab = abelianize(p);
  const LaurentMatrix M = alexander_matrix(p, ab);
  const std::size_t n = ab.rank;
  LinearFormMatrix T(p.m(), p.q(), n);
  for (std::size_t k = 0; k < p.m(); ++k)
    for (std::size_t j = 0; j < p.q(); ++j) {
      const LaurentPoly& f = M(k, j);
      if (f.value_at_one() != 0) throw std::logic_error("internal: Alexander matrix does not vanish at 1");
      for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < n; ++i) T(k, j)[i] += c * e[i];
    }
  return T;
}

struct ResonanceMembership {
  bool member = false;
  std::size_t rank = 0;
  std::size_t aomoto_betti = 0;  // beta_1(A, a)
};

inline ResonanceMembership resonance_membership(const LinearFormMatrix& theta, const std::vector<Rational>& a,
                                                std::size_t d) {
  const std::size_t b1 = theta.nvars();
  if (a.size() != b1) throw input_error("point has dimension " + std::to_string(a.size()) + ", expected " +
                                        std::to_string(b1));
  const bool zero = std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
  ResonanceMembership r;
  r.rank = zero ? 0 : rank_over_q(theta.eval(primitive_integer_vector(a)));
  r.member = r.rank + d < b1;
  r.aomoto_betti = zero ? b1 : (r.rank + 1 >= b1 ? 0 : b1 - 1 - r.rank);
  return r;
}

inline ResonanceMembership resonance_membership(const LinearFormMatrix& theta, const std::vector<Integer>& a,
                                                std::size_t d) {
  std::vector<Rational> q(a.begin(), a.end());
  return resonance_membership(theta, q, d);
}

// Same test with the point in F_p^b1.
inline ResonanceMembership resonance_membership_mod_p(const LinearFormMatrix& theta, const std::vector<fp::elem>& a,
                                                      fp::elem p, std::size_t d) {
  const std::size_t b1 = theta.nvars();
  const bool zero = std::all_of(a.begin(), a.end(), [p](fp::elem x) { return x % p == 0; });
  ResonanceMembership r;
  r.rank = zero ? 0 : rank_mod_p(theta.eval(a, p), p);
  r.member = r.rank + d < b1;
  r.aomoto_betti = zero ? b1 : (r.rank + 1 >= b1 ? 0 : b1 - 1 - r.rank);
  return r;
}

inline ResonanceMembership resonance_membership(const CupStructure& cup, const std::vector<Rational>& a,
                                                std::size_t d) {
  return resonance_membership(cup.theta(), a, d);
}

// Rank of the cup product restricted to Λ^2 L, L spanned by `span`.
inline std::size_t isotropy_rank(const CupStructure& cup, const std::vector<std::vector<Rational>>& span) {
  for (const auto& v : span)
    if (v.size() != cup.b1()) throw input_error("spanning vector has the wrong dimension");
  if (span.empty() || cup.b2() == 0) return 0;
  Matrix<Rational> S(span.size(), cup.b1());
  for (std::size_t i = 0; i < span.size(); ++i)
    for (std::size_t j = 0; j < cup.b1(); ++j) S(i, j) = span[i][j];
  const std::size_t dim = rref(S).size();
  std::vector<std::vector<Rational>> basis;
  for (std::size_t i = 0; i < dim; ++i) basis.push_back(S.row(i));
  Matrix<Rational> img(0, cup.b2());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) img.append_row(cup.product(basis[i], basis[j]));
  return img.rows() ? rref(img).size() : 0;
}

// An alternating 3-form on Q^n as a dense n^3 tensor, indexed [(i*n+j)*n+k].
struct ThreeForm {
  std::size_t n = 0;
  std::vector<Integer> eta;

  const Integer& operator()(std::size_t i, std::size_t j, std::size_t k) const { return eta[(i * n + j) * n + k]; }

  // From entries (i, j, k, value) with i, j, k distinct, completed by
  // antisymmetry; conflicting entries are rejected.
  static ThreeForm from_entries(std::size_t n, const std::vector<std::array<std::int64_t, 4>>& entries) {
    ThreeForm f{n, std::vector<Integer>(n * n * n, Integer(0))};
    for (const auto& [i, j, k, v] : entries) {
      if (i < 0 || j < 0 || k < 0 || std::size_t(i) >= n || std::size_t(j) >= n || std::size_t(k) >= n)
        throw input_error("3-form index out of range");
      const std::size_t idx[3] = {std::size_t(i), std::size_t(j), std::size_t(k)};
      if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2]) {
        if (v != 0) throw input_error("alternating form must vanish on repeated indices");
        continue;
      }
      static const int perms[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                                      {1, 0, 2, -1}, {0, 2, 1, -1}, {2, 1, 0, -1}};
      for (const auto& pm : perms) {
        Integer& slot = f.eta[(idx[pm[0]] * n + idx[pm[1]]) * n + idx[pm[2]]];
        Integer val = Integer(v) * pm[3];
        if (slot != 0 && slot != val) throw input_error("inconsistent 3-form entries");
        slot = val;
      }
    }
    return f;
  }

  bool is_alternating() const {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Integer& v = (*this)(i, j, k);
          if (v != -(*this)(j, i, k) || v != -(*this)(i, k, j)) return false;
        }
    return true;
  }
};

// Theta_kj = Σ_i eta(e_i, e_j, e_k) x_i; skew-symmetric by construction.
inline LinearFormMatrix theta_from_3form(const ThreeForm& eta) {
  if (eta.eta.size() != eta.n * eta.n * eta.n) throw input_error("3-form has the wrong size");
  if (!eta.is_alternating()) throw input_error("3-form is not alternating");
  LinearFormMatrix T(eta.n, eta.n, eta.n);
  for (std::size_t k = 0; k < eta.n; ++k)
    for (std::size_t j = 0; j < eta.n; ++j)
      for (std::size_t i = 0; i < eta.n; ++i) T(k, j)[i] = eta(i, j, k);
  return T;
}

struct GermComparison {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::size_t resonance_only = 0;  // a ∈ R_1 but exp(a) ∉ V_1
  std::size_t variety_only = 0;    // exp(a) ∈ V_1 but a ∉ R_1
  bool non_formality_signal = false;
};

// Samples directions a and the characters rho_i = g^{a_i} (g a primitive
// root mod p), comparing R_1 membership of a with V_1 membership of rho.
inline GermComparison germ_comparison_sample(const GroupPresentation& p, std::size_t trials, fp::elem prime,
                                             std::uint64_t seed = 1) {
  const LinearFormMatrix theta = linearized_alexander_matrix(p);
  if (!fp::is_prime(prime) || prime < 3) throw input_error("need an odd prime");
  const std::size_t b1 = theta.nvars();
  const fp::elem g = fp::primitive_root(prime);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-3, 3);
  GermComparison out;
  if (b1 == 0) return out;
  while (out.trials < trials) {
    std::vector<Integer> a(b1);
    Character rho{prime, std::vector<fp::elem>(p.q(), 1)};
    for (std::size_t i = 0; i < b1; ++i) a[i] = coord(rng);
    // Generators of a commutator-relators group are the standard basis.
    for (std::size_t j = 0; j < p.q(); ++j) rho.values[j] = fp::pow_signed(g, a[j].convert_to<std::int64_t>(), prime);
    if (rho.is_trivial()) continue;
    ++out.trials;
    const bool r1 = resonance_membership(theta, a, 1).member;
    const bool v1 = depth(p, rho).depth >= 1;
    if (r1 == v1) ++out.agreements;
    else if (r1) ++out.resonance_only;
    else ++out.variety_only;
  }
  out.non_formality_signal = out.resonance_only > 0;
  return out;
}

}  // namespace jumpkit
