#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace jumpkit {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// Malformed or inconsistent input (CLI exit status 2).
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured enumeration limit was hit (CLI exit status 3).
struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Caps {
  std::size_t minors = 1'000'000;
  std::size_t support = 10;
  std::size_t characters = 1'000'000;
  std::size_t vertices = 16;

  // Defaults, overridden by JUMPKIT_MAX_MINORS, JUMPKIT_MAX_SUPPORT,
  // JUMPKIT_MAX_CHARACTERS and JUMPKIT_MAX_VERTICES when set.
  static Caps from_env() {
    Caps c;
    auto read = [](const char* name, std::size_t& slot) {
      if (const char* v = std::getenv(name); v && *v) {
        char* end = nullptr;
        unsigned long long x = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && x > 0) slot = static_cast<std::size_t>(x);
        else throw input_error(std::string("bad value for ") + name);
      }
    };
    read("JUMPKIT_MAX_MINORS", c.minors);
    read("JUMPKIT_MAX_SUPPORT", c.support);
    read("JUMPKIT_MAX_CHARACTERS", c.characters);
    read("JUMPKIT_MAX_VERTICES", c.vertices);
    return c;
  }
};

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

// Floor division; b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw cap_exceeded("exponent overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw cap_exceeded("exponent overflow");
  return r;
}

// ---- prime fields -------------------------------------------------------

namespace fp {

using elem = std::uint64_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

__extension__ using wide = unsigned __int128;

inline elem mul(elem a, elem b, elem p) {
  return static_cast<elem>((static_cast<wide>(a) * b) % p);
}

inline elem pow(elem a, std::uint64_t e, elem p) {
  elem r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline elem inv(elem a, elem p) {
  if (a % p == 0) throw std::domain_error("inverse of zero in prime field");
  return pow(a, p - 2, p);
}

// a^e for signed e, a a unit.
inline elem pow_signed(elem a, std::int64_t e, elem p) {
  if (e >= 0) return pow(a, static_cast<std::uint64_t>(e), p);
  // -e may overflow for INT64_MIN; reduce modulo the group order first.
  std::uint64_t ord = p - 1;
  std::uint64_t k = static_cast<std::uint64_t>(-(e % static_cast<std::int64_t>(ord)));
  return pow(inv(a, p), k, p);
}

inline elem reduce(const Integer& c, elem p) {
  Integer r = c % p;
  if (r < 0) r += p;
  return r.convert_to<elem>();
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline elem primitive_root(elem p) {
  if (p == 2) return 1;
  auto fs = prime_factors(p - 1);
  for (elem g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : fs)
      if (pow(g, (p - 1) / q, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

// Multiplicative order of a unit a.
inline std::uint64_t order(elem a, elem p) {
  std::uint64_t n = p - 1;
  for (auto q : prime_factors(p - 1))
    while (n % q == 0 && pow(a, n / q, p) == 1) n /= q;
  return n;
}

// A fixed primitive n-th root of unity; requires n | p-1.
inline elem root_of_unity(std::uint64_t n, elem p) {
  if (n == 0 || (p - 1) % n != 0)
    throw input_error("modulus " + std::to_string(n) + " does not divide " +
                      std::to_string(p) + " - 1");
  return pow(primitive_root(p), (p - 1) / n, p);
}

// Smallest prime p with n | p-1.
inline elem smallest_prime_for(std::uint64_t n) {
  for (std::uint64_t k = 1;; ++k)
    if (is_prime(k * n + 1)) return k * n + 1;
}

}  // namespace fp

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto q : fp::prime_factors(n)) r = r / q * (q - 1);
  return r;
}

// Calls f(indices) for each k-subset of {0..n-1} in lexicographic order;
// stops early when f returns false.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!f(static_cast<const std::vector<std::size_t>&>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Integer r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace jumpkit
