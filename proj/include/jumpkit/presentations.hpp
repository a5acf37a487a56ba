#pragma once

#include "laurent.hpp"

#include <cctype>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace jumpkit {

struct Syllable {
  std::size_t gen = 0;
  std::int64_t exp = 0;
  auto operator<=>(const Syllable&) const = default;
};

// Freely reduced word in a free group: a run of syllables x_g^e with e != 0
// and no two neighbours on the same generator.
class Word {
 public:
  Word() = default;
  static Word letter(std::size_t g, std::int64_t e = 1) {
    Word w;
    w.push(g, e);
    return w;
  }

  const std::vector<Syllable>& syllables() const { return s_; }
  bool is_identity() const { return s_.empty(); }
  std::size_t length() const {
    std::size_t n = 0;
    for (const auto& x : s_) n += static_cast<std::size_t>(x.exp < 0 ? -x.exp : x.exp);
    return n;
  }

  void push(std::size_t g, std::int64_t e) {
    if (e == 0) return;
    if (!s_.empty() && s_.back().gen == g) {
      s_.back().exp = checked_add(s_.back().exp, e);
      if (s_.back().exp == 0) s_.pop_back();
    } else {
      s_.push_back({g, e});
    }
  }

  Word& operator*=(const Word& o) {
    for (const auto& x : o.s_) push(x.gen, x.exp);
    return *this;
  }
  friend Word operator*(Word a, const Word& b) { return a *= b; }

  Word inverse() const {
    Word w;
    for (auto it = s_.rbegin(); it != s_.rend(); ++it) w.push(it->gen, -it->exp);
    return w;
  }

  Word pow(std::int64_t k) const {
    Word base = k < 0 ? inverse() : *this, r;
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) r *= base;
    return r;
  }

  std::vector<std::int64_t> exponent_sums(std::size_t q) const {
    std::vector<std::int64_t> v(q, 0);
    for (const auto& x : s_) v.at(x.gen) = checked_add(v[x.gen], x.exp);
    return v;
  }

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Syllable> s_;
};

inline Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

// Element of the integral group ring of a free group.
class GroupRingElement {
 public:
  using TermMap = std::map<Word, Integer>;
  GroupRingElement() = default;
  static GroupRingElement of(const Word& w, const Integer& c = 1) {
    GroupRingElement r;
    r.add(w, c);
    return r;
  }
  static GroupRingElement one() { return of(Word()); }

  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const Word& w, const Integer& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }
  GroupRingElement& operator+=(const GroupRingElement& o) {
    for (const auto& [w, c] : o.t_) add(w, c);
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    for (const auto& [w, c] : o.t_) add(w, -c);
    return *this;
  }
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement r;
    for (const auto& [u, c] : a.t_)
      for (const auto& [v, d] : b.t_) r.add(u * v, c * d);
    return r;
  }
  bool operator==(const GroupRingElement& o) const { return t_ == o.t_; }

  // Augmentation: sum of coefficients.
  Integer augmentation() const {
    Integer s = 0;
    for (const auto& [w, c] : t_) s += c;
    return s;
  }

 private:
  TermMap t_;
};

// ∂_j(x_g^e): 1 + x + ... + x^{e-1} for e > 0, -(x^{-1} + ... + x^{e}) for e < 0.
// Calls f(i, c) for each term x_g^i with coefficient c.
template <class F>
void syllable_derivative(std::int64_t e, F&& f) {
  if (e > 0)
    for (std::int64_t i = 0; i < e; ++i) f(i, 1);
  else
    for (std::int64_t i = 1; i <= -e; ++i) f(-i, -1);
}

inline GroupRingElement fox_derivative(const Word& w, std::size_t j) {
  GroupRingElement r;
  Word prefix;
  for (const auto& x : w.syllables()) {
    if (x.gen == j)
      syllable_derivative(x.exp, [&](std::int64_t i, int c) {
        r.add(prefix * Word::letter(j, i), Integer(c));
      });
    prefix.push(x.gen, x.exp);
  }
  return r;
}

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::size_t q() const { return generators.size(); }
  std::size_t m() const { return relators.size(); }

  void validate() const {
    if (generators.empty()) throw input_error("presentation has no generators");
    std::set<std::string> seen;
    for (const auto& g : generators)
      if (!seen.insert(g).second) throw input_error("duplicate generator name '" + g + "'");
    for (const auto& r : relators)
      for (const auto& x : r.syllables())
        if (x.gen >= q()) throw input_error("relator uses a generator index out of range");
  }

  // m×q matrix of exponent sums.
  IntMatrix exponent_matrix() const {
    IntMatrix E(m(), q(), Integer(0));
    for (std::size_t i = 0; i < m(); ++i) {
      auto v = relators[i].exponent_sums(q());
      for (std::size_t j = 0; j < q(); ++j) E(i, j) = v[j];
    }
    return E;
  }

  bool commutator_relators() const {
    for (const auto& r : relators)
      for (auto e : r.exponent_sums(q()))
        if (e != 0) return false;
    return true;
  }

  std::size_t generator_index(std::string_view name) const {
    for (std::size_t i = 0; i < q(); ++i)
      if (generators[i] == name) return i;
    throw input_error("unknown generator '" + std::string(name) + "'");
  }

  std::string word_to_string(const Word& w) const {
    if (w.is_identity()) return "1";
    std::string s;
    for (const auto& x : w.syllables()) {
      if (!s.empty()) s += ' ';
      s += generators.at(x.gen);
      if (x.exp != 1) s += "^" + std::to_string(x.exp);
    }
    return s;
  }

  // Canonical text form; parse_presentation(to_string()) reproduces *this.
  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < q(); ++i) s += (i ? ", " : "") + generators[i];
    s += " | ";
    for (std::size_t i = 0; i < m(); ++i) s += (i ? ", " : "") + word_to_string(relators[i]);
    return s + ">";
  }

  bool operator==(const GroupPresentation&) const = default;
};

// ---- parser -------------------------------------------------------------

namespace detail {

class PresentationParser {
 public:
  explicit PresentationParser(std::string_view s) : s_(s) {}

  GroupPresentation parse() {
    GroupPresentation p;
    expect('<');
    if (peek() == '|') fail("empty generator list");
    for (;;) {
      p.generators.push_back(ident());
      if (eat(',')) continue;
      break;
    }
    expect('|');
    p.validate();
    gens_ = &p.generators;
    if (peek() != '>') {
      for (;;) {
        p.relators.push_back(word());
        if (eat(',')) continue;
        break;
      }
    }
    expect('>');
    skip();
    if (pos_ != s_.size()) fail("trailing characters after '>'");
    return p;
  }

  // A bare word over a known generator list.
  Word parse_word(const std::vector<std::string>& gens) {
    gens_ = &gens;
    Word w = word();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw input_error("presentation parse error at position " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) { ++pos_; return true; }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string ident() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
      fail("expected an identifier");
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  static bool starts_factor(char c) {
    return c == '(' || c == '[' || std::isalpha(static_cast<unsigned char>(c));
  }

  Word word() {
    if (!starts_factor(peek())) fail("expected a word");
    Word w;
    while (starts_factor(peek())) w *= term();
    return w;
  }

  // Factors parsed from a run of letters may be several generators
  // written without separators; only the last takes the exponent.
  Word term() {
    std::vector<Word> parts = factor();
    if (eat('^')) {
      std::int64_t e = signed_int();
      if (e == 0) fail("exponent 0 is not allowed");
      parts.back() = parts.back().pow(e);
    }
    Word w;
    for (const auto& p : parts) w *= p;
    return w;
  }

  std::int64_t signed_int() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    std::int64_t v = 0;
    for (std::size_t i = start; i < pos_; ++i) v = checked_add(checked_mul(v, 10), s_[i] - '0');
    return neg ? -v : v;
  }

  std::vector<Word> factor() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return {w};
    }
    if (c == '[') {
      ++pos_;
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      return {commutator(u, v)};
    }
    std::size_t start = pos_;
    std::string run = ident();
    std::vector<std::size_t> seg;
    if (!segment(run, 0, seg)) {
      pos_ = start;
      fail("unknown generator in '" + run + "'");
    }
    std::vector<Word> out;
    for (auto g : seg) out.push_back(Word::letter(g));
    return out;
  }

  // Split a letter run into generator names, longest match first.
  bool segment(const std::string& run, std::size_t at, std::vector<std::size_t>& out) const {
    if (at == run.size()) return true;
    std::vector<std::pair<std::size_t, std::size_t>> cands;  // (length, index)
    for (std::size_t g = 0; g < gens_->size(); ++g) {
      const auto& name = (*gens_)[g];
      if (run.compare(at, name.size(), name) == 0) cands.emplace_back(name.size(), g);
    }
    std::sort(cands.rbegin(), cands.rend());
    for (auto [len, g] : cands) {
      out.push_back(g);
      if (segment(run, at + len, out)) return true;
      out.pop_back();
    }
    return false;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const std::vector<std::string>* gens_ = nullptr;
};

}  // namespace detail

inline GroupPresentation parse_presentation(std::string_view text) {
  return detail::PresentationParser(text).parse();
}

inline Word parse_word(std::string_view text, const std::vector<std::string>& gens) {
  return detail::PresentationParser(text).parse_word(gens);
}

// ---- Fox calculus -------------------------------------------------------

struct FoxJacobian {
  std::size_t rows = 0, cols = 0;
  std::vector<GroupRingElement> entries;
  const GroupRingElement& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

inline FoxJacobian fox_jacobian(const GroupPresentation& p) {
  FoxJacobian J{p.m(), p.q(), {}};
  for (const auto& r : p.relators)
    for (std::size_t j = 0; j < p.q(); ++j) J.entries.push_back(fox_derivative(r, j));
  return J;
}

// Visit every term of ∂_j(r) for all j without materializing words:
// f(j, prefix_value, i, c) where the term is prefix · x_j^i with coefficient c,
// and prefix_value is the running image of the prefix under a homomorphism
// described by (identity, mult, gen_power).
template <class Value, class Mult, class GenPow, class F>
void walk_fox_terms(const Word& r, const Value& identity, Mult&& mult, GenPow&& gen_pow, F&& f) {
  Value prefix = identity;
  for (const auto& x : r.syllables()) {
    syllable_derivative(x.exp, [&](std::int64_t i, int c) { f(x.gen, prefix, i, c); });
    prefix = mult(prefix, gen_pow(x.gen, x.exp));
  }
}

// ---- abelianization -----------------------------------------------------

struct Abelianization {
  std::size_t rank = 0;                               // b1
  std::vector<Integer> torsion;                       // invariant factors > 1
  std::vector<std::vector<Integer>> generator_images; // q vectors in Z^rank
  IntMatrix exponent_matrix;
  // SNF data: H1 = ⊕_k Z/orders[k] (0 meaning Z); generator j has
  // coordinates row j of coords.
  std::vector<Integer> orders;
  IntMatrix coords;
};

inline Abelianization abelianize(const GroupPresentation& p) {
  const std::size_t q = p.q();
  Abelianization ab;
  ab.exponent_matrix = p.exponent_matrix();
  SNFResult snf = smith_normal_form(ab.exponent_matrix, true);
  const IntMatrix& V = *snf.V;
  const std::size_t r = snf.rank;
  ab.rank = q - r;
  ab.torsion = snf.torsion();
  ab.orders.assign(q, Integer(0));
  for (std::size_t k = 0; k < r; ++k) ab.orders[k] = snf.factors[k];
  ab.coords = V;

  // Free part, re-based canonically by the Hermite form of its transpose so
  // the result depends only on the map G -> H.
  IntMatrix Bt(ab.rank, q, Integer(0));
  for (std::size_t k = 0; k < ab.rank; ++k)
    for (std::size_t j = 0; j < q; ++j) Bt(k, j) = V(j, r + k);
  IntMatrix H = ab.rank ? hermite_normal_form(Bt) : Bt;
  ab.generator_images.assign(q, std::vector<Integer>(ab.rank, Integer(0)));
  for (std::size_t k = 0; k < ab.rank; ++k)
    for (std::size_t j = 0; j < q; ++j) ab.generator_images[j][k] = H(k, j);
  return ab;
}

namespace detail {

inline std::vector<Exponent> image_exponents(const Abelianization& ab) {
  std::vector<Exponent> out;
  for (const auto& v : ab.generator_images) {
    Exponent e;
    for (const auto& x : v) e.push_back(x.convert_to<std::int64_t>());
    out.push_back(e);
  }
  return out;
}

}  // namespace detail

// Abelianized Fox Jacobian in the variables of H.
inline LaurentMatrix alexander_matrix(const GroupPresentation& p, const Abelianization& ab) {
  const std::size_t n = ab.rank;
  const auto img = detail::image_exponents(ab);
  LaurentMatrix M(p.m(), p.q(), n);
  for (std::size_t i = 0; i < p.m(); ++i) {
    walk_fox_terms(
        p.relators[i], Exponent(n, 0),
        [&](const Exponent& a, const Exponent& b) {
          Exponent c = a;
          for (std::size_t k = 0; k < n; ++k) c[k] = checked_add(c[k], b[k]);
          return c;
        },
        [&](std::size_t g, std::int64_t e) {
          Exponent c = img[g];
          for (auto& x : c) x = checked_mul(x, e);
          return c;
        },
        [&](std::size_t j, const Exponent& prefix, std::int64_t i_, int c) {
          Exponent e = prefix;
          for (std::size_t k = 0; k < n; ++k) e[k] = checked_add(e[k], checked_mul(img[j][k], i_));
          M(i, j).add_term(e, Integer(c));
        });
  }
  return M;
}

inline LaurentMatrix alexander_matrix(const GroupPresentation& p) {
  return alexander_matrix(p, abelianize(p));
}

// Fox Jacobian evaluated at generator values in F_p (units).
inline FpMatrix evaluated_jacobian(const GroupPresentation& p, const std::vector<fp::elem>& vals,
                                   fp::elem prime) {
  FpMatrix M(p.m(), p.q(), 0);
  for (std::size_t i = 0; i < p.m(); ++i) {
    walk_fox_terms(
        p.relators[i], fp::elem(1), [&](fp::elem a, fp::elem b) { return fp::mul(a, b, prime); },
        [&](std::size_t g, std::int64_t e) { return fp::pow_signed(vals[g], e, prime); },
        [&](std::size_t j, fp::elem prefix, std::int64_t i_, int c) {
          fp::elem t = fp::mul(prefix, fp::pow_signed(vals[j], i_, prime), prime);
          M(i, j) = c > 0 ? (M(i, j) + t) % prime : (M(i, j) + prime - t) % prime;
        });
  }
  return M;
}

// ---- cyclic covers ------------------------------------------------------

struct CyclicEpimorphism {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> values;  // residue per generator
};

inline void validate_epimorphism(const GroupPresentation& p, const CyclicEpimorphism& lam) {
  const std::uint64_t n = lam.modulus;
  if (n == 0) throw input_error("modulus must be positive");
  if (lam.values.size() != p.q()) throw input_error("epimorphism needs one residue per generator");
  std::uint64_t g = n;
  for (auto v : lam.values) g = std::gcd(g, v % n);
  if (g != 1) throw input_error("residues do not generate Z_" + std::to_string(n));
  for (std::size_t i = 0; i < p.m(); ++i) {
    auto e = p.relators[i].exponent_sums(p.q());
    Integer s = 0;
    for (std::size_t j = 0; j < p.q(); ++j) s += Integer(e[j]) * lam.values[j];
    if (s % n != 0) throw input_error("relator " + std::to_string(i + 1) + " has nonzero image in Z_" +
                                      std::to_string(n));
  }
}

// Replace each Fox entry Σ c_g g by Σ c_g P(λ(g)), P(k) the cyclic shift by k.
inline IntMatrix permutation_lift(const GroupPresentation& p, const CyclicEpimorphism& lam) {
  validate_epimorphism(p, lam);
  const std::uint64_t n = lam.modulus;
  const auto N = static_cast<std::int64_t>(n);
  auto mod = [N](std::int64_t x) { return ((x % N) + N) % N; };
  IntMatrix L(p.m() * n, p.q() * n, Integer(0));
  for (std::size_t i = 0; i < p.m(); ++i) {
    std::vector<std::vector<Integer>> blocks(p.q(), std::vector<Integer>(n, Integer(0)));
    walk_fox_terms(
        p.relators[i], std::int64_t(0), [&](std::int64_t a, std::int64_t b) { return mod(a + b); },
        [&](std::size_t g, std::int64_t e) {
          return mod(mod(e) * static_cast<std::int64_t>(lam.values[g] % n));
        },
        [&](std::size_t j, std::int64_t prefix, std::int64_t i_, int c) {
          std::int64_t k = mod(prefix + mod(i_) * static_cast<std::int64_t>(lam.values[j] % n));
          blocks[j][static_cast<std::size_t>(k)] += c;
        });
    for (std::size_t j = 0; j < p.q(); ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (blocks[j][k] == 0) continue;
        for (std::size_t a = 0; a < n; ++a) L(i * n + a, j * n + (a + k) % n) += blocks[j][k];
      }
  }
  return L;
}

// ---- standard constructions ---------------------------------------------

inline std::vector<std::string> numbered_generators(std::size_t q, const std::string& stem = "x") {
  std::vector<std::string> g;
  for (std::size_t i = 0; i < q; ++i) g.push_back(stem + std::to_string(i + 1));
  return g;
}

inline GroupPresentation free_group(std::size_t q) { return {numbered_generators(q), {}}; }

inline GroupPresentation free_abelian_group(std::size_t q) {
  GroupPresentation p{numbered_generators(q), {}};
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j)
      p.relators.push_back(commutator(Word::letter(i), Word::letter(j)));
  return p;
}

// Complement of n concurrent lines: x1...xn central.
inline GroupPresentation pencil_group(std::size_t n) {
  GroupPresentation p{numbered_generators(n), {}};
  Word all;
  for (std::size_t i = 0; i < n; ++i) all.push(i, 1);
  for (std::size_t i = 0; i + 1 < n; ++i) p.relators.push_back(commutator(Word::letter(i), all));
  return p;
}

// n-1 parallel lines and one transverse line: x_n central.
inline GroupPresentation near_pencil_group(std::size_t n) {
  GroupPresentation p{numbered_generators(n), {}};
  for (std::size_t i = 0; i + 1 < n; ++i)
    p.relators.push_back(commutator(Word::letter(i), Word::letter(n - 1)));
  return p;
}

// G1 × G2: disjoint generators plus every cross commutator.
inline GroupPresentation direct_product(const GroupPresentation& a, const GroupPresentation& b) {
  GroupPresentation p;
  for (const auto& g : a.generators) p.generators.push_back(g);
  for (const auto& g : b.generators) {
    std::string name = g;
    while (std::find(p.generators.begin(), p.generators.end(), name) != p.generators.end()) name += "_";
    p.generators.push_back(name);
  }
  p.relators = a.relators;
  for (const auto& r : b.relators) {
    Word w;
    for (const auto& x : r.syllables()) w.push(x.gen + a.q(), x.exp);
    p.relators.push_back(w);
  }
  for (std::size_t i = 0; i < a.q(); ++i)
    for (std::size_t j = 0; j < b.q(); ++j)
      p.relators.push_back(commutator(Word::letter(i), Word::letter(a.q() + j)));
  return p;
}

}  // namespace jumpkit
