#pragma once

#include "jumploci.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace jumpkit {

// A partition of a polynomial's support into blocks with zero coefficient sum.
struct SupportPartitionWitness {
  std::vector<std::vector<Exponent>> blocks;
  std::vector<Integer> sums;
};

namespace detail {

// L(p): z with <u - v, z> = 0 whenever u, v share a block.
inline RationalSubspace partition_subspace(std::size_t n, const std::vector<Exponent>& pts,
                                           const std::vector<std::uint32_t>& blocks) {
  std::vector<std::vector<Integer>> rows;
  for (auto b : blocks) {
    int first = std::countr_zero(b);
    for (std::uint32_t rest = b & (b - 1); rest; rest &= rest - 1) {
      int j = std::countr_zero(rest);
      std::vector<Integer> r(n);
      for (std::size_t k = 0; k < n; ++k) r[k] = Integer(pts[first][k]) - pts[j][k];
      rows.push_back(std::move(r));
    }
  }
  return RationalSubspace::from_normals(n, rows);
}

// Calls f(blocks) for every partition of the support into minimal zero-sum
// blocks. Coarser admissible partitions give smaller subspaces, so these
// suffice for the union.
template <class F>
void for_each_minimal_partition(const std::vector<Integer>& coeffs, F&& f) {
  const std::size_t s = coeffs.size();
  const std::uint32_t full = s == 32 ? ~0u : ((1u << s) - 1);
  std::vector<Integer> sum(std::size_t(1) << s);
  for (std::uint32_t m = 1; m <= full && m != 0; ++m) {
    int low = std::countr_zero(m);
    sum[m] = sum[m & (m - 1)] + coeffs[static_cast<std::size_t>(low)];
  }
  std::vector<char> minimal(sum.size(), 0);
  for (std::uint32_t m = 1; m <= full && m != 0; ++m) {
    if (sum[m] != 0) continue;
    bool ok = true;
    for (std::uint32_t sub = (m - 1) & m; sub; sub = (sub - 1) & m)
      if (sum[sub] == 0) { ok = false; break; }
    minimal[m] = ok;
  }
  std::vector<std::uint32_t> chosen;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t left) {
    if (!left) { f(static_cast<const std::vector<std::uint32_t>&>(chosen)); return; }
    const std::uint32_t low = left & (~left + 1);
    const std::uint32_t others = left ^ low;
    // blocks containing the lowest remaining point
    for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
      const std::uint32_t b = sub | low;
      if (minimal[b]) {
        chosen.push_back(b);
        rec(left ^ b);
        chosen.pop_back();
      }
      if (!sub) break;
    }
  };
  rec(full);
}

}  // namespace detail

// Exponential tangent cone of the hypersurface V(f) at 1.
inline SubspaceArrangement tau1_of_polynomial(const LaurentPoly& f, const Caps& caps = {}) {
  const std::size_t n = f.nvars();
  if (f.is_zero()) return SubspaceArrangement::whole(n);
  if (f.value_at_one() != 0) return SubspaceArrangement(n);
  if (f.size() > caps.support || f.size() > 24)
    throw cap_exceeded("support size " + std::to_string(f.size()) + " exceeds cap " +
                       std::to_string(caps.support));
  std::vector<Exponent> pts;
  std::vector<Integer> cs;
  for (const auto& [e, c] : f.terms()) {
    pts.push_back(e);
    cs.push_back(c);
  }
  SubspaceArrangement out(n);
  detail::for_each_minimal_partition(cs, [&](const std::vector<std::uint32_t>& blocks) {
    out.insert(detail::partition_subspace(n, pts, blocks));
  });
  return out;
}

// Every minimal zero-sum partition of the support, as explicit witnesses.
inline std::vector<SupportPartitionWitness> tau1_witnesses(const LaurentPoly& f, const Caps& caps = {}) {
  std::vector<SupportPartitionWitness> out;
  if (f.is_zero() || f.value_at_one() != 0) return out;
  if (f.size() > caps.support || f.size() > 24)
    throw cap_exceeded("support size " + std::to_string(f.size()) + " exceeds cap " +
                       std::to_string(caps.support));
  std::vector<Exponent> pts;
  std::vector<Integer> cs;
  for (const auto& [e, c] : f.terms()) {
    pts.push_back(e);
    cs.push_back(c);
  }
  detail::for_each_minimal_partition(cs, [&](const std::vector<std::uint32_t>& blocks) {
    SupportPartitionWitness w;
    for (auto b : blocks) {
      w.blocks.emplace_back();
      Integer s = 0;
      for (std::uint32_t r = b; r; r &= r - 1) {
        auto j = static_cast<std::size_t>(std::countr_zero(r));
        w.blocks.back().push_back(pts[j]);
        s += cs[j];
      }
      w.sums.push_back(s);
    }
    out.push_back(std::move(w));
  });
  return out;
}

// tau_1 of V(f_1, ..., f_k); the empty system cuts out everything.
inline SubspaceArrangement tau1_of_system(const std::vector<LaurentPoly>& fs, std::size_t nvars,
                                          const Caps& caps = {}) {
  for (const auto& f : fs)
    if (f.nvars() != nvars) throw input_error("variable count mismatch in system");
  for (const auto& f : fs)
    if (!f.is_zero() && f.value_at_one() != 0) return SubspaceArrangement(nvars);
  std::vector<const LaurentPoly*> order;
  for (const auto& f : fs)
    if (!f.is_zero()) order.push_back(&f);
  std::stable_sort(order.begin(), order.end(),
                   [](const LaurentPoly* a, const LaurentPoly* b) { return a->size() < b->size(); });
  SubspaceArrangement acc = SubspaceArrangement::whole(nvars);
  const SubspaceArrangement origin = SubspaceArrangement::origin(nvars);
  for (const LaurentPoly* f : order) {
    // Once only the origin is left, each remaining f just needs f(1) = 0,
    // which was checked above.
    if (acc == origin) break;
    acc = acc.intersected(tau1_of_polynomial(*f, caps));
    if (acc.empty()) break;
  }
  return acc;
}

inline SubspaceArrangement tau1_of_system(const std::vector<LaurentPoly>& fs, const Caps& caps = {}) {
  if (fs.empty()) throw input_error("empty system needs an explicit variable count");
  return tau1_of_system(fs, fs.front().nvars(), caps);
}

// tau_1(V_1(G)) ∪ {0}; the BNS invariant Σ^1(G) avoids all of it.
inline SubspaceArrangement bns_upper_bound(const GroupPresentation& p, const Caps& caps = {}) {
  p.validate();
  const Abelianization ab = abelianize(p);
  const std::size_t n = ab.rank;
  SubspaceArrangement out(n);
  if (n == 0) return out;
  if (p.q() == 1) {
    // E_1 is the unit ideal, so V_1 \ {1} is empty.
  } else {
    const LaurentMatrix M = alexander_matrix(p, ab);
    try {
      out = tau1_of_system(distinct_minors(M, p.q() - 1, caps), n, caps);
    } catch (const cap_exceeded& e) {
      throw cap_exceeded(std::string(e.what()) +
                         "; raise the cap, or use tau1 of the Alexander polynomial as a coarser bound");
    }
  }
  return out.united(SubspaceArrangement::origin(n));
}

// True iff the infinite cyclic cover defined by nu has finite b1.
inline bool dwyer_fried_rank1(const GroupPresentation& p, const std::vector<Integer>& nu, const Caps& caps = {}) {
  const SubspaceArrangement bound = bns_upper_bound(p, caps);
  if (nu.size() != bound.ambient())
    throw input_error("covector has length " + std::to_string(nu.size()) + ", expected " +
                      std::to_string(bound.ambient()));
  Integer g = 0;
  for (const auto& x : nu) g = gcd(g, x);
  if (g == 0) throw input_error("covector must be nonzero");
  if (g != 1) throw input_error("covector must be primitive");
  return !bound.contains_point(nu);
}

// ---- coordinate loci --------------------------------------------------------

enum class LocusKind { subtorus, subspace };

// Irredundant union of coordinate subtori (k^×)^W or subspaces k^W, W a
// vertex subset stored as a bitmask.
class CoordinateLocusSet {
 public:
  CoordinateLocusSet() = default;
  explicit CoordinateLocusSet(std::size_t n, LocusKind kind = LocusKind::subtorus) : n_(n), kind_(kind) {
    if (n > 63) throw cap_exceeded("too many vertices for a coordinate locus");
  }

  std::size_t ambient() const { return n_; }
  LocusKind kind() const { return kind_; }
  const std::vector<std::uint64_t>& sets() const { return sets_; }
  bool empty() const { return sets_.empty(); }
  std::size_t size() const { return sets_.size(); }

  void insert(std::uint64_t w) {
    for (auto s : sets_)
      if ((w & ~s) == 0) return;
    std::erase_if(sets_, [w](std::uint64_t s) { return (s & ~w) == 0; });
    sets_.insert(std::lower_bound(sets_.begin(), sets_.end(), w), w);
  }
  CoordinateLocusSet united(const CoordinateLocusSet& o) const {
    CoordinateLocusSet r = *this;
    for (auto s : o.sets_) r.insert(s);
    return r;
  }
  // Whether a point whose non-identity coordinates are `support` lies in it.
  bool contains_support(std::uint64_t support) const {
    return std::any_of(sets_.begin(), sets_.end(), [&](std::uint64_t s) { return (support & ~s) == 0; });
  }
  CoordinateLocusSet with_kind(LocusKind k) const {
    CoordinateLocusSet r = *this;
    r.kind_ = k;
    return r;
  }
  std::vector<std::vector<std::size_t>> as_lists() const {
    std::vector<std::vector<std::size_t>> out;
    for (auto s : sets_) {
      out.emplace_back();
      for (std::size_t i = 0; i < n_; ++i)
        if (s >> i & 1) out.back().push_back(i);
    }
    return out;
  }
  bool operator==(const CoordinateLocusSet& o) const { return n_ == o.n_ && sets_ == o.sets_; }

 private:
  std::size_t n_ = 0;
  LocusKind kind_ = LocusKind::subtorus;
  std::vector<std::uint64_t> sets_;
};

// Degree-i depth-1 locus of X × Y from the loci of X and Y in degrees 0..i.
inline CoordinateLocusSet loci_product(const std::vector<CoordinateLocusSet>& a,
                                       const std::vector<CoordinateLocusSet>& b, std::size_t i) {
  if (a.size() <= i || b.size() <= i) throw input_error("product needs loci in every degree up to " + std::to_string(i));
  const std::size_t na = a.front().ambient(), nb = b.front().ambient();
  CoordinateLocusSet out(na + nb, a.front().kind());
  for (std::size_t p = 0; p <= i; ++p)
    for (auto wa : a[p].sets())
      for (auto wb : b[i - p].sets()) out.insert(wa | (wb << na));
  return out;
}

}  // namespace jumpkit
