// Exact pinch-cluster checks by exhaustive search over vertex sequences.
// Deliberately brute force: this is the ground truth the fast algorithms are
// validated against.  Guarded to n <= 16.
#pragma once

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "thinp/graph.hpp"

namespace thinp {

inline constexpr int kOracleMaxN = 16;

struct OracleSide {
  bool ok = true;
  // On failure, the vertex sequence whose additions (convex) or removals
  // (concave) reach a smaller boundary without ever exceeding |dA| first.
  std::vector<Vertex> witness;
};

struct OracleReport {
  OracleSide convex;
  OracleSide concave;
  bool pinch() const { return convex.ok && concave.ok; }
};

namespace detail {

inline void oracle_guard(const Graph& g) {
  if (g.n() > kOracleMaxN)
    throw std::invalid_argument("exact oracle is limited to 16 vertices");
}

inline uint32_t set_mask(const VertexSet& a) {
  uint32_t m = 0;
  for (Vertex v : a.members()) m |= 1u << v;
  return m;
}

inline Weight mask_boundary(const Graph& g, uint32_t m) {
  Weight b = 0;
  for (int v = 0; v < g.n(); ++v) {
    if (!(m & (1u << v))) continue;
    for (const auto& [u, w] : g.neighbors(v))
      if (!(m & (1u << u))) b += w;
  }
  return b;
}

inline Weight mask_slope(const Graph& g, uint32_t m, Vertex v) {
  Weight inside = 0;
  for (const auto& [u, w] : g.neighbors(v))
    if (u != v && (m & (1u << u))) inside += w;
  return g.strength(v) - 2 * inside;
}

// BFS over sets reachable from `start` one vertex at a time (additions when
// grow, removals otherwise) with every intermediate boundary <= |dA| + eps.
// Fails iff some reachable set gets strictly below |dA|.
inline OracleSide oracle_search(const Graph& g, uint32_t start, bool grow,
                                const Tolerance& tol) {
  Weight b0 = mask_boundary(g, start);
  std::unordered_map<uint32_t, std::pair<uint32_t, Vertex>> parent;
  std::unordered_set<uint32_t> seen{start};
  std::deque<std::pair<uint32_t, Weight>> queue{{start, b0}};
  while (!queue.empty()) {
    auto [s, bs] = queue.front();
    queue.pop_front();
    for (Vertex v = 0; v < g.n(); ++v) {
      bool member = (s & (1u << v)) != 0;
      if (member == grow) continue;
      uint32_t t = grow ? (s | (1u << v)) : (s & ~(1u << v));
      if (seen.count(t)) continue;
      Weight bt = bs + (grow ? mask_slope(g, s, v) : -mask_slope(g, s, v));
      if (tol.gt(bt, b0)) continue;  // sequence must first rise above |dA|
      seen.insert(t);
      parent[t] = {s, v};
      if (tol.lt(bt, b0)) {
        std::vector<Vertex> witness;
        for (uint32_t c = t; c != start; c = parent[c].first)
          witness.push_back(parent[c].second);
        std::reverse(witness.begin(), witness.end());
        return OracleSide{false, witness};
      }
      queue.emplace_back(t, bt);
    }
  }
  return OracleSide{true, {}};
}

}  // namespace detail

// Pinch convex: no addition sequence can shrink the boundary without a strict
// rise above |dA| first.
inline OracleSide is_pinch_convex_exact(const Graph& g, const VertexSet& a,
                                        const Tolerance& tol = {}) {
  detail::oracle_guard(g);
  return detail::oracle_search(g, detail::set_mask(a), true, tol);
}

// Pinch concave: the mirror statement for removal sequences.
inline OracleSide is_pinch_concave_exact(const Graph& g, const VertexSet& a,
                                         const Tolerance& tol = {}) {
  detail::oracle_guard(g);
  return detail::oracle_search(g, detail::set_mask(a), false, tol);
}

// Removing w from a adds w to the complement and boundaries agree, so
// concavity of a is convexity of its complement.  Kept as an independent
// route; tests require it to agree with the direct search.
inline OracleSide is_pinch_concave_via_complement(const Graph& g,
                                                  const VertexSet& a,
                                                  const Tolerance& tol = {}) {
  return is_pinch_convex_exact(g, a.complement(), tol);
}

inline OracleReport oracle_report(const Graph& g, const VertexSet& a,
                                  const Tolerance& tol = {}) {
  return OracleReport{is_pinch_convex_exact(g, a, tol),
                      is_pinch_concave_exact(g, a, tol)};
}

// All pinch clusters of g, ascending as bitmasks; empty set and full vertex
// set are skipped unless include_trivial.
inline std::vector<VertexSet> enumerate_pinch_clusters(
    const Graph& g, const Tolerance& tol = {}, bool include_trivial = false) {
  detail::oracle_guard(g);
  int n = g.n();
  std::vector<VertexSet> out;
  uint32_t full = (1u << n) - 1;  // n <= 16 by the guard
  for (uint32_t m = 0; m <= full; ++m) {
    if (!include_trivial && (m == 0 || m == full)) continue;
    if (!detail::oracle_search(g, m, true, tol).ok) continue;
    if (!detail::oracle_search(g, m, false, tol).ok) continue;
    VertexSet s(n);
    for (int v = 0; v < n; ++v)
      if (m & (1u << v)) s.insert(v);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace thinp
