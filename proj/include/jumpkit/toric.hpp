#pragma once

#include "tcone.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace jumpkit {

using VertexSet = std::uint64_t;

inline std::size_t popcount(VertexSet s) { return static_cast<std::size_t>(std::popcount(s)); }
inline VertexSet all_vertices(std::size_t n) { return n >= 64 ? ~VertexSet(0) : (VertexSet(1) << n) - 1; }

// ---- simplicial complexes ---------------------------------------------------

// A finite simplicial complex on vertices 0..n-1; faces are bitmasks. The
// empty face is present unless the complex is void.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Vertices missing from every facet become isolated points.
  SimplicialComplex(std::size_t n, const std::vector<VertexSet>& facets, std::vector<std::string> names = {})
      : n_(n), names_(std::move(names)) {
    if (n > 63) throw cap_exceeded("too many vertices");
    if (names_.empty())
      for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i + 1));
    if (names_.size() != n) throw input_error("vertex name count mismatch");
    VertexSet covered = 0;
    std::vector<VertexSet> fs;
    for (auto f : facets) {
      if (f & ~all_vertices(n)) throw input_error("facet uses an unknown vertex");
      covered |= f;
      fs.push_back(f);
    }
    for (std::size_t v = 0; v < n; ++v)
      if (!(covered >> v & 1)) fs.push_back(VertexSet(1) << v);
    // keep the maximal ones
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    for (auto f : fs) {
      bool maximal = true;
      for (auto g : fs)
        if (g != f && (f & ~g) == 0) { maximal = false; break; }
      if (maximal) facets_.push_back(f);
    }
    std::set<VertexSet> all{0};
    for (auto f : facets_)
      for (VertexSet s = f;; s = (s - 1) & f) {
        all.insert(s);
        if (!s) break;
      }
    faces_.assign(all.begin(), all.end());
  }

  static SimplicialComplex simplex(std::size_t n) { return {n, {all_vertices(n)}}; }
  static SimplicialComplex discrete(std::size_t n) { return {n, {}}; }

  std::size_t vertex_count() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<VertexSet>& facets() const { return facets_; }
  const std::vector<VertexSet>& faces() const { return faces_; }  // includes the empty face
  bool has_face(VertexSet s) const { return std::binary_search(faces_.begin(), faces_.end(), s); }

  SimplicialComplex induced(VertexSet w) const {
    std::vector<VertexSet> fs;
    for (auto f : facets_) fs.push_back(f & w);
    // vertex labels are kept; vertices outside w are dropped by relabeling
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < n_; ++v)
      if (w >> v & 1) keep.push_back(v);
    std::vector<VertexSet> relabeled;
    for (auto f : fs) {
      VertexSet g = 0;
      for (std::size_t k = 0; k < keep.size(); ++k)
        if (f >> keep[k] & 1) g |= VertexSet(1) << k;
      if (g) relabeled.push_back(g);
    }
    std::vector<std::string> nm;
    for (auto v : keep) nm.push_back(names_[v]);
    return {keep.size(), relabeled, nm};
  }

  // L * K: vertices of K shifted past those of L.
  SimplicialComplex join(const SimplicialComplex& k) const {
    std::vector<VertexSet> fs;
    for (auto a : facets_)
      for (auto b : k.facets_) fs.push_back(a | (b << n_));
    std::vector<std::string> nm = names_;
    for (const auto& s : k.names_) nm.push_back(s + "'");
    return {n_ + k.n_, fs, nm};
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<VertexSet> facets_;
  std::vector<VertexSet> faces_;
};

// ---- reduced homology of a face list ------------------------------------------

namespace detail {

// Boundary matrix C_i -> C_{i-1} with faces given by size (i+1 and i).
inline IntMatrix boundary_matrix(const std::vector<VertexSet>& hi, const std::vector<VertexSet>& lo) {
  std::map<VertexSet, std::size_t> index;
  for (std::size_t k = 0; k < lo.size(); ++k) index[lo[k]] = k;
  IntMatrix D(hi.size(), lo.size(), Integer(0));
  for (std::size_t r = 0; r < hi.size(); ++r) {
    int sign = 1;
    for (VertexSet s = hi[r]; s; s &= s - 1) {
      VertexSet bit = s & (~s + 1);
      auto it = index.find(hi[r] ^ bit);
      if (it != index.end()) D(r, it->second) = sign;
      sign = -sign;
    }
  }
  return D;
}

inline std::vector<VertexSet> faces_of_size(const std::vector<VertexSet>& faces, std::ptrdiff_t size) {
  std::vector<VertexSet> out;
  if (size < 0) return out;
  for (auto f : faces)
    if (static_cast<std::ptrdiff_t>(popcount(f)) == size) out.push_back(f);
  return out;
}

inline std::size_t matrix_rank(const IntMatrix& M, fp::elem prime) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  return prime ? rank_mod_p(reduce_mod_p(M, prime), prime) : rank_over_q(M);
}

}  // namespace detail

// dim H~_i over F_p (prime > 0) or Q (prime = 0) of the complex whose face
// list is `faces` (the empty face included unless the complex is void).
inline std::size_t reduced_betti(const std::vector<VertexSet>& faces, std::ptrdiff_t i, fp::elem prime = 0) {
  if (i < -1 || faces.empty()) return 0;
  const auto ci = detail::faces_of_size(faces, i + 1);
  if (ci.empty()) return 0;
  const auto below = detail::faces_of_size(faces, i);
  const auto above = detail::faces_of_size(faces, i + 2);
  const std::size_t r_out = detail::matrix_rank(detail::boundary_matrix(ci, below), prime);
  const std::size_t r_in = detail::matrix_rank(detail::boundary_matrix(above, ci), prime);
  return ci.size() - r_out - r_in;
}

inline AbelianGroup reduced_homology_z(const std::vector<VertexSet>& faces, std::ptrdiff_t i) {
  AbelianGroup h;
  if (i < -1 || faces.empty()) return h;
  const auto ci = detail::faces_of_size(faces, i + 1);
  if (ci.empty()) return h;
  const auto below = detail::faces_of_size(faces, i);
  const auto above = detail::faces_of_size(faces, i + 2);
  const std::size_t r_out = detail::matrix_rank(detail::boundary_matrix(ci, below), 0);
  const IntMatrix in = detail::boundary_matrix(above, ci);
  const SNFResult s = smith_normal_form(in);
  h.rank = ci.size() - r_out - s.rank;
  h.torsion = s.torsion();
  return h;
}

inline std::size_t reduced_betti(const SimplicialComplex& k, std::ptrdiff_t i, fp::elem prime = 0) {
  return reduced_betti(k.faces(), i, prime);
}
inline AbelianGroup reduced_homology_z(const SimplicialComplex& k, std::ptrdiff_t i) {
  return reduced_homology_z(k.faces(), i);
}

// Faces of lk_{L_W}(sigma) = {tau ⊆ W : tau ∪ sigma ∈ L}, sigma ∩ W = ∅.
inline std::vector<VertexSet> link_faces(const SimplicialComplex& L, VertexSet w, VertexSet sigma) {
  std::vector<VertexSet> out;
  for (auto f : L.faces())
    if ((f & sigma) == sigma && ((f & ~sigma) & ~w) == 0) out.push_back(f & ~sigma);
  std::sort(out.begin(), out.end());
  return out;
}

// Σ_{σ ∈ L_{V∖W}} dim H~_{i-1-|σ|}(lk_{L_W}(σ)).
inline std::size_t toric_depth_sum(const SimplicialComplex& L, VertexSet w, std::size_t i, fp::elem prime = 0) {
  const VertexSet rest = all_vertices(L.vertex_count()) & ~w;
  std::size_t total = 0;
  for (auto sigma : L.faces()) {
    if ((sigma & ~rest) != 0) continue;
    const std::ptrdiff_t deg = static_cast<std::ptrdiff_t>(i) - 1 - static_cast<std::ptrdiff_t>(popcount(sigma));
    if (deg < -1) continue;
    total += reduced_betti(link_faces(L, w, sigma), deg, prime);
  }
  return total;
}

// Maximal W with toric depth sum >= d: V^i_d(T_L) is the union of (k^×)^W,
// and R^i_d the union of k^W, over these W.
inline CoordinateLocusSet toric_jump_loci(const SimplicialComplex& L, std::size_t i, std::size_t d,
                                          LocusKind kind = LocusKind::subtorus, fp::elem prime = 0,
                                          const Caps& caps = {}) {
  const std::size_t n = L.vertex_count();
  if (n > caps.vertices)
    throw cap_exceeded("vertex count " + std::to_string(n) + " exceeds cap " + std::to_string(caps.vertices));
  CoordinateLocusSet out(n, kind);
  // Larger sets first so that subsets of accepted sets can be skipped.
  std::vector<VertexSet> ws;
  for (VertexSet w = 0; w <= all_vertices(n); ++w) {
    ws.push_back(w);
    if (w == all_vertices(n)) break;
  }
  std::stable_sort(ws.begin(), ws.end(), [](VertexSet a, VertexSet b) { return popcount(a) > popcount(b); });
  for (auto w : ws) {
    if (out.contains_support(w)) continue;
    if (toric_depth_sum(L, w, i, prime) >= d) out.insert(w);
  }
  return out;
}

// ---- graphs and right-angled Artin groups ------------------------------------

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n, std::vector<std::string> names = {}) : n_(n), adj_(n, 0), names_(std::move(names)) {
    if (n > 63) throw cap_exceeded("too many vertices");
    if (names_.empty())
      for (std::size_t i = 0; i < n; ++i) names_.push_back("x" + std::to_string(i + 1));
    if (names_.size() != n) throw input_error("vertex name count mismatch");
  }

  void add_edge(std::size_t a, std::size_t b) {
    if (a >= n_ || b >= n_) throw input_error("edge endpoint out of range");
    if (a == b) throw input_error("loops are not allowed");
    adj_[a] |= VertexSet(1) << b;
    adj_[b] |= VertexSet(1) << a;
  }

  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
  }
  static Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }
  static Graph discrete(std::size_t n) { return Graph(n); }
  static Graph path(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
  }
  static Graph complete_multipartite(const std::vector<std::size_t>& parts) {
    std::size_t n = 0;
    for (auto p : parts) n += p;
    Graph g(n);
    std::vector<std::size_t> part_of;
    for (std::size_t k = 0; k < parts.size(); ++k) part_of.insert(part_of.end(), parts[k], k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (part_of[i] != part_of[j]) g.add_edge(i, j);
    return g;
  }

  std::size_t vertex_count() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  VertexSet neighbors(std::size_t v) const { return adj_[v]; }
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a] >> b & 1; }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (adjacent(i, j)) e.emplace_back(i, j);
    return e;
  }

  // Whether the subgraph induced on w is connected (w nonempty).
  bool connected(VertexSet w) const {
    if (!w) return false;
    VertexSet seen = w & (~w + 1), frontier = seen;
    while (frontier) {
      VertexSet next = 0;
      for (VertexSet f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
      next &= w & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == w;
  }
  bool connected() const { return connected(all_vertices(n_)); }

  Graph complement() const {
    Graph g(n_, names_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!adjacent(i, j)) g.add_edge(i, j);
    return g;
  }

  // Connected components as vertex sets, ordered by least vertex.
  std::vector<VertexSet> components() const {
    std::vector<VertexSet> out;
    VertexSet left = all_vertices(n_);
    while (left) {
      VertexSet seen = left & (~left + 1), frontier = seen;
      while (frontier) {
        VertexSet next = 0;
        for (VertexSet f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
        next &= left & ~seen;
        seen |= next;
        frontier = next;
      }
      out.push_back(seen);
      left &= ~seen;
    }
    return out;
  }

  bool is_clique(VertexSet w) const {
    for (VertexSet s = w; s; s &= s - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(s));
      if ((w & ~(VertexSet(1) << v) & ~adj_[v]) != 0) return false;
    }
    return true;
  }

  // The flag complex: faces are the cliques.
  SimplicialComplex flag_complex() const {
    std::vector<VertexSet> cliques;
    // grow cliques vertex by vertex in increasing order
    std::function<void(VertexSet, std::size_t)> grow = [&](VertexSet c, std::size_t from) {
      bool extended = false;
      for (std::size_t v = from; v < n_; ++v) {
        if ((c & ~adj_[v]) == 0) {
          grow(c | (VertexSet(1) << v), v + 1);
          extended = true;
        }
      }
      if (!extended && c) cliques.push_back(c);
    };
    grow(0, 0);
    std::vector<std::string> nm = names_;
    return {n_, cliques, nm};
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  std::size_t n_ = 0;
  std::vector<VertexSet> adj_;
  std::vector<std::string> names_;
};

// One representative per isomorphism class of graphs on n vertices (n <= 6).
inline std::vector<Graph> graphs_up_to_isomorphism(std::size_t n) {
  if (n > 6) throw cap_exceeded("graph enumeration is limited to 6 vertices");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
  for (std::size_t k = 0; k < pairs.size(); ++k) pair_index[pairs[k]] = k;
  std::set<std::uint32_t> seen;
  std::vector<Graph> out;
  for (std::uint32_t code = 0; code < (1u << pairs.size()); ++code) {
    std::uint32_t canon = code;
    for (const auto& pm : perms) {
      std::uint32_t c = 0;
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if (code >> k & 1) {
          auto a = pm[pairs[k].first], b = pm[pairs[k].second];
          c |= 1u << pair_index[{std::min(a, b), std::max(a, b)}];
        }
      canon = std::min(canon, c);
    }
    if (!seen.insert(canon).second) continue;
    Graph g(n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (canon >> k & 1) g.add_edge(pairs[k].first, pairs[k].second);
    out.push_back(g);
  }
  return out;
}

inline GroupPresentation raag_presentation(const Graph& g) {
  GroupPresentation p{g.names(), {}};
  for (auto [a, b] : g.edges()) p.relators.push_back(commutator(Word::letter(a), Word::letter(b)));
  return p;
}

// Maximal W (|W| >= 2) inducing a disconnected subgraph.
inline CoordinateLocusSet raag_v1(const Graph& g, const Caps& caps = {}) {
  const std::size_t n = g.vertex_count();
  if (n > caps.vertices)
    throw cap_exceeded("vertex count " + std::to_string(n) + " exceeds cap " + std::to_string(caps.vertices));
  CoordinateLocusSet out(n);
  for (VertexSet w = all_vertices(n);; --w) {
    if (popcount(w) >= 2 && !out.contains_support(w) && !g.connected(w)) out.insert(w);
    if (w == 0) break;
  }
  return out;
}

// Vertex connectivity: n-1 for complete graphs, 0 when disconnected,
// otherwise the size of a smallest separating set.
inline std::size_t connectivity(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0 || !g.connected()) return 0;
  if (g.is_clique(all_vertices(n))) return n - 1;
  std::size_t best = n - 1;
  const VertexSet all = all_vertices(n);
  for (VertexSet s = 0; s < all; ++s) {
    if (popcount(s) >= best) continue;
    const VertexSet rest = all & ~s;
    if (popcount(rest) >= 2 && !g.connected(rest)) best = popcount(s);
  }
  return best;
}

struct RaagDeltaStatus {
  std::size_t connectivity = 0;
  bool delta_nonconstant_predicted = false;
  bool delta_nonconstant = false;
  AlexanderPolynomial delta;
  bool agree = false;
};

inline RaagDeltaStatus raag_delta_status(const Graph& g, const Caps& caps = {}) {
  RaagDeltaStatus s;
  s.connectivity = connectivity(g);
  s.delta_nonconstant_predicted = s.connectivity == 1;
  s.delta = alexander_polynomial(raag_presentation(g), caps);
  s.delta_nonconstant = !s.delta.poly.is_constant_up_to_units();
  s.agree = s.delta_nonconstant == s.delta_nonconstant_predicted;
  return s;
}

struct SigmaComplement {
  CoordinateLocusSet locus;      // ∪_{i<=q} R^i_1, as coordinate subspaces
  bool torsion_condition = false;
  // the first offending (sigma, W, j) when the condition fails
  VertexSet bad_sigma = 0, bad_w = 0;
  std::ptrdiff_t bad_degree = 0;
};

inline SigmaComplement raag_sigma_complement(const Graph& g, std::size_t q, const Caps& caps = {}) {
  const SimplicialComplex L = g.flag_complex();
  SigmaComplement out;
  out.locus = CoordinateLocusSet(g.vertex_count(), LocusKind::subspace);
  for (std::size_t i = 0; i <= q; ++i)
    out.locus = out.locus.united(toric_jump_loci(L, i, 1, LocusKind::subspace, 0, caps));
  out.torsion_condition = true;
  const VertexSet all = all_vertices(g.vertex_count());
  for (auto sigma : L.faces()) {
    const VertexSet rest = all & ~sigma;
    const std::ptrdiff_t top = static_cast<std::ptrdiff_t>(q) - static_cast<std::ptrdiff_t>(popcount(sigma)) - 1;
    for (VertexSet w = rest;; w = (w - 1) & rest) {
      const auto lk = link_faces(L, w, sigma);
      for (std::ptrdiff_t j = 0; j <= top; ++j) {
        if (!reduced_homology_z(lk, j).torsion.empty()) {
          out.torsion_condition = false;
          out.bad_sigma = sigma;
          out.bad_w = w;
          out.bad_degree = j;
          return out;
        }
      }
      if (!w) break;
    }
  }
  return out;
}

struct RaagClassification {
  bool quasi_kahler = false;
  std::vector<std::vector<std::size_t>> parts;  // of the complete multipartite structure
  std::vector<std::size_t> part_sizes;          // sorted
  bool kahler = false;
};

inline RaagClassification raag_classify(const Graph& g) {
  RaagClassification r;
  const Graph c = g.complement();
  r.quasi_kahler = true;
  for (auto comp : c.components()) {
    if (!c.is_clique(comp)) r.quasi_kahler = false;
    r.parts.emplace_back();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (comp >> v & 1) r.parts.back().push_back(v);
    r.part_sizes.push_back(popcount(comp));
  }
  std::sort(r.part_sizes.begin(), r.part_sizes.end());
  if (!r.quasi_kahler) {
    r.parts.clear();
    r.part_sizes.clear();
  }
  const std::size_t n = g.vertex_count();
  r.kahler = n > 0 && n % 2 == 0 && g.is_clique(all_vertices(n));
  return r;
}

}  // namespace jumpkit
