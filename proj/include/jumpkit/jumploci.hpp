#pragma once

#include "alexinv.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace jumpkit {

// A homomorphism from the group into the units of F_p, given by its values
// on the generators.
struct Character {
  fp::elem prime = 2;
  std::vector<fp::elem> values;

  bool is_trivial() const {
    return std::all_of(values.begin(), values.end(), [](fp::elem v) { return v == 1; });
  }
  Character pow(std::uint64_t k) const {
    Character c{prime, values};
    for (auto& v : c.values) v = fp::pow(v, k, prime);
    return c;
  }
  // Order in the character group.
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (auto v : values) o = std::lcm(o, fp::order(v, prime));
    return o;
  }
  bool operator==(const Character&) const = default;
  auto operator<=>(const Character&) const = default;
};

inline Character trivial_character(const GroupPresentation& p, fp::elem prime) {
  return {prime, std::vector<fp::elem>(p.q(), 1)};
}

// Throws unless rho is a well-defined character of p.
inline void validate_character(const GroupPresentation& p, const Character& rho) {
  if (!fp::is_prime(rho.prime)) throw input_error(std::to_string(rho.prime) + " is not prime");
  if (rho.values.size() != p.q()) throw input_error("character needs one value per generator");
  for (auto v : rho.values)
    if (v == 0 || v >= rho.prime) throw input_error("character value is not a unit of F_p");
  for (std::size_t i = 0; i < p.m(); ++i) {
    auto e = p.relators[i].exponent_sums(p.q());
    fp::elem acc = 1;
    for (std::size_t j = 0; j < p.q(); ++j)
      acc = fp::mul(acc, fp::pow_signed(rho.values[j], e[j], rho.prime), rho.prime);
    if (acc != 1) throw input_error("relator " + std::to_string(i + 1) + " does not map to 1");
  }
}

struct DepthProfile {
  Character character;
  std::size_t depth = 0;
};

// dim H_1(G; F_p twisted by rho), from the presentation 2-complex. At the
// trivial character this is the untwisted dim H_1(G, F_p).
inline DepthProfile depth(const GroupPresentation& p, const Character& rho) {
  p.validate();
  validate_character(p, rho);
  const std::size_t r = rank_mod_p(evaluated_jacobian(p, rho.values, rho.prime), rho.prime);
  const std::size_t cycles = p.q() - (rho.is_trivial() ? 0 : 1);
  return {rho, cycles - r};
}

inline bool in_characteristic_variety(const GroupPresentation& p, const Character& rho, std::size_t d) {
  return depth(p, rho).depth >= d;
}

namespace detail {

// Characters with rho^exponent = 1, optionally only those of exact order.
inline std::vector<Character> characters_dividing(const GroupPresentation& p, fp::elem prime,
                                                  std::optional<std::uint64_t> order, bool exact,
                                                  const Caps& caps) {
  p.validate();
  if (!fp::is_prime(prime)) throw input_error(std::to_string(prime) + " is not prime");
  const std::uint64_t exponent = order.value_or(prime - 1);
  if (exponent == 0 || (prime - 1) % exponent != 0)
    throw input_error("order " + std::to_string(exponent) + " does not divide " + std::to_string(prime) +
                      " - 1");
  const Abelianization ab = abelianize(p);
  const fp::elem g = fp::primitive_root(prime);

  // Each cyclic summand Z/d takes values in mu_gcd(d, exponent).
  struct Axis {
    std::size_t k;
    std::uint64_t size;
    fp::elem root;
  };
  std::vector<Axis> axes;
  Integer total = 1;
  for (std::size_t k = 0; k < ab.orders.size(); ++k) {
    const Integer& d = ab.orders[k];
    if (d == 1) continue;
    const std::uint64_t s = d == 0 ? exponent : std::gcd(exponent, fp::reduce(d, exponent));
    if (s <= 1) continue;
    axes.push_back({k, s, fp::pow(g, (prime - 1) / s, prime)});
    total *= s;
  }
  if (total > caps.characters)
    throw cap_exceeded("character count " + total.str() + " exceeds cap " + std::to_string(caps.characters));

  // Generator exponents per axis, reduced mod p-1.
  std::vector<std::vector<std::uint64_t>> ex(p.q());
  for (std::size_t j = 0; j < p.q(); ++j)
    for (const auto& a : axes) ex[j].push_back(fp::reduce(ab.coords(j, a.k), prime - 1));

  std::vector<Character> out;
  std::vector<std::uint64_t> idx(axes.size(), 0);
  for (;;) {
    Character c{prime, std::vector<fp::elem>(p.q(), 1)};
    for (std::size_t a = 0; a < axes.size(); ++a) {
      fp::elem base = fp::pow(axes[a].root, idx[a], prime);
      for (std::size_t j = 0; j < p.q(); ++j)
        c.values[j] = fp::mul(c.values[j], fp::pow(base, ex[j][a], prime), prime);
    }
    if (!exact || !order || c.order() == *order) out.push_back(std::move(c));
    std::size_t a = 0;
    while (a < axes.size() && ++idx[a] == axes[a].size) idx[a++] = 0;
    if (a == axes.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Characters of H_1(G) with values in F_p. With `order` set, only those of
// exactly that order; otherwise all of them. Sorted by value tuple.
inline std::vector<Character> enumerate_characters(const GroupPresentation& p, fp::elem prime,
                                                   std::optional<std::uint64_t> order = std::nullopt,
                                                   const Caps& caps = {}) {
  return detail::characters_dividing(p, prime, order, true, caps);
}

// All characters with rho^n = 1.
inline std::vector<Character> characters_of_exponent(const GroupPresentation& p, fp::elem prime, std::uint64_t n,
                                                     const Caps& caps = {}) {
  return detail::characters_dividing(p, prime, n, false, caps);
}

// ---- codimension-one part of V_1 ------------------------------------------

enum class Codim1Kind {
  full_component,  // Delta = 0: the identity component lies in V_1
  hypersurface,    // V(Delta), plus the isolated identity when b1 = 1
  empty,           // b1 >= 2 and Delta a unit times a constant
  not_applicable,  // b1 = 0
};

inline const char* to_string(Codim1Kind k) {
  switch (k) {
    case Codim1Kind::full_component: return "full_component";
    case Codim1Kind::hypersurface: return "hypersurface";
    case Codim1Kind::empty: return "empty";
    default: return "not_applicable";
  }
}

struct Codim1Report {
  AlexanderPolynomial delta;
  std::size_t b1 = 0;
  Codim1Kind kind = Codim1Kind::not_applicable;
  bool isolated_identity = false;  // the disjoint {1} when b1 = 1
};

inline Codim1Report codim1_stratum(const GroupPresentation& p, const Caps& caps = {}) {
  Codim1Report r;
  r.delta = alexander_polynomial(p, caps);
  r.b1 = r.delta.nvars();
  if (r.b1 == 0) return r;
  const LaurentPoly& d = r.delta.poly;
  if (d.is_zero()) r.kind = Codim1Kind::full_component;
  else if (r.b1 >= 2 && d.is_constant_up_to_units()) r.kind = Codim1Kind::empty;
  else {
    r.kind = Codim1Kind::hypersurface;
    r.isolated_identity = r.b1 == 1;
  }
  return r;
}

// ---- finite cyclic covers ---------------------------------------------------

inline void check_cover_prime(std::uint64_t n, fp::elem prime) {
  if (!fp::is_prime(prime)) throw input_error(std::to_string(prime) + " is not prime");
  if (n == 0 || (prime - 1) % n != 0)
    throw input_error("modulus " + std::to_string(n) + " does not divide " + std::to_string(prime) + " - 1");
}

// The character g -> zeta^lambda(g) for a fixed primitive n-th root zeta.
inline Character cover_character(const GroupPresentation& p, const CyclicEpimorphism& lam, fp::elem prime) {
  check_cover_prime(lam.modulus, prime);
  const fp::elem zeta = fp::root_of_unity(lam.modulus, prime);
  Character c{prime, {}};
  for (std::size_t j = 0; j < p.q(); ++j) c.values.push_back(fp::pow(zeta, lam.values[j] % lam.modulus, prime));
  return c;
}

// Sum of depth(rho^k) over 1 <= k < n. Over C this collapses to
// sum_{1 != e | n} phi(e) depth(rho^(n/e)) since powers of equal order are
// Galois conjugate. Inside F_p they are not, so every power is visited.
inline std::size_t twisted_power_sum(const GroupPresentation& p, const Character& rho, std::uint64_t n) {
  std::size_t b = 0;
  for (std::uint64_t k = 1; k < n; ++k) b += depth(p, rho.pow(k)).depth;
  return b;
}

// dim H_1(Y, F_p) for the n-fold cyclic cover Y defined by lambda, summed
// over the characters of Z_n.
inline std::size_t cover_betti_depth(const GroupPresentation& p, const CyclicEpimorphism& lam, fp::elem prime) {
  p.validate();
  validate_epimorphism(p, lam);
  const Character rho = cover_character(p, lam, prime);
  return depth(p, trivial_character(p, prime)).depth + twisted_power_sum(p, rho, lam.modulus);
}

struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1

  // dim of (this ⊗ F_p) = rank + number of factors divisible by p.
  std::size_t betti_mod(fp::elem p) const {
    std::size_t b = rank;
    for (const auto& d : torsion)
      if (d % p == 0) ++b;
    return b;
  }
  bool operator==(const AbelianGroup&) const = default;
};

// H_1(K; Z) for K = ker(G -> Z_n), from the Smith form of the lifted Jacobian.
inline AbelianGroup cover_h1_snf(const GroupPresentation& p, const CyclicEpimorphism& lam) {
  p.validate();
  const IntMatrix L = permutation_lift(p, lam);
  const SNFResult s = smith_normal_form(L);
  AbelianGroup h;
  h.rank = s.cokernel_rank() - (lam.modulus - 1);
  h.torsion = s.torsion();
  return h;
}

struct CongruenceB1 {
  fp::elem prime;
  std::size_t value;
};

// b1 of the congruence cover X_n (the cover for H_1 -> H_1 ⊗ Z_n), realized
// mod p. A second prime, when given, is evaluated too.
inline std::vector<CongruenceB1> congruence_b1(const GroupPresentation& p, std::uint64_t n, fp::elem prime,
                                               std::optional<fp::elem> second = std::nullopt,
                                               const Caps& caps = {}) {
  std::vector<CongruenceB1> out;
  auto one = [&](fp::elem pr) {
    check_cover_prime(n, pr);
    if (n % pr == 0) throw input_error("prime divides the modulus");
    std::size_t b = depth(p, trivial_character(p, pr)).depth;
    for (const auto& rho : characters_of_exponent(p, pr, n, caps))
      if (!rho.is_trivial()) b += depth(p, rho).depth;
    out.push_back({pr, b});
  };
  one(prime);
  if (second) one(*second);
  return out;
}

}  // namespace jumpkit
