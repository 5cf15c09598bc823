// Reading pinch clusters off a strongly irreducible ordering: local-minimum
// prefixes, refined blocks between consecutive minima, and cluster cores.
#pragma once

#include <optional>
#include <sstream>

#include "thinp/thinning.hpp"

namespace thinp {

struct Provenance {
  enum class Kind { MinimumLevel, BlockRefined, Core };
  Kind kind = Kind::MinimumLevel;
  int level = -1;                // MinimumLevel: prefix level
  int block_index = -1;          // BlockRefined: which interior block
  std::vector<Vertex> removed;   // BlockRefined: vertices stripped in order
  std::string parent;            // Core: description of the source cluster

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::MinimumLevel:
        os << "minimum-level(" << level << ")";
        break;
      case Kind::BlockRefined:
        os << "block-refined(" << block_index << ", removed " << removed.size()
           << ")";
        break;
      case Kind::Core:
        os << "core(" << parent << ")";
        break;
    }
    return os.str();
  }
};

struct Cluster {
  VertexSet members;
  Weight boundary = 0;
  Provenance provenance;
};

// Necessary single-vertex conditions: members must not want out (slope <= 0),
// outsiders must not want in (slope >= 0).  Cheap screen; necessary but not
// sufficient.
inline bool is_pinch_cluster_fast(const Graph& g, const VertexSet& a,
                                  const Tolerance& tol = {}) {
  for (int v = 0; v < g.n(); ++v) {
    Weight s = slope(g, a, v);
    if (a.contains(v) ? tol.positive(s) : tol.negative(s)) return false;
  }
  return true;
}

namespace detail {

// Repeatedly removes the smallest-id member whose slope against the current
// set is zero; returns the final all-negative-slope set, or nullopt if a
// member with positive slope exists at any point.  The outcome decides pinch
// concavity exactly: a removal sequence that shrinks the boundary without
// first exceeding it must consist of zero-slope removals followed by one
// positive-slope removal, all of its vertices are necessarily stripped here
// too (removals only raise the slopes of the rest), and the total slope
// removed balances to zero for the stripped set, so such a sequence exists
// iff stripping exposes a positive slope.  Removal order does not affect the
// verdict.
inline std::optional<VertexSet> strip_zero_slopes(const Graph& g, VertexSet cur,
                                                  const Tolerance& tol) {
  std::vector<Weight> s(static_cast<size_t>(g.n()));
  for (Vertex v : cur.members()) s[static_cast<size_t>(v)] = slope(g, cur, v);
  for (;;) {
    Vertex zero = -1;
    for (Vertex v : cur.members()) {
      if (tol.positive(s[static_cast<size_t>(v)])) return std::nullopt;
      if (zero < 0 && tol.zero(s[static_cast<size_t>(v)])) zero = v;
    }
    if (zero < 0) return cur;
    cur.erase(zero);
    for (auto [u, w] : g.neighbors(zero))
      if (cur.contains(u)) s[static_cast<size_t>(u)] += 2 * w;
  }
}

}  // namespace detail

// Exact pinch predicates in polynomial time.  Concavity reduces to the strip
// test above; convexity is concavity of the complement.
inline bool is_pinch_concave(const Graph& g, const VertexSet& a,
                             const Tolerance& tol = {}) {
  return detail::strip_zero_slopes(g, a, tol).has_value();
}

inline bool is_pinch_convex(const Graph& g, const VertexSet& a,
                            const Tolerance& tol = {}) {
  return detail::strip_zero_slopes(g, a.complement(), tol).has_value();
}

inline bool is_pinch_cluster(const Graph& g, const VertexSet& a,
                             const Tolerance& tol = {}) {
  return is_pinch_concave(g, a, tol) && is_pinch_convex(g, a, tol);
}

namespace detail {

inline void require_strongly_irreducible(const Graph& g, const Ordering& o,
                                         const WidthProfile& p,
                                         const Tolerance& tol) {
  SlopeTable t = build_slope_table(g, o);
  if (find_weak_reduction(g, o, p, t, tol))
    throw std::invalid_argument(
        "ordering is not strongly irreducible; thin it first");
}

// Leftmost interior level of a minimal flat, or -1 if the flat has none.
// Flats touching level 0 or n still contribute their interior levels: a
// profile that is flat zero everywhere (no edges) yields level 1, whose
// prefix is a legitimate boundary-0 cluster.
inline int interior_representative(const Flat& f, int n) {
  int lo = std::max(f.lo, 1);
  int hi = std::min(f.hi, n - 1);
  return lo <= hi ? lo : -1;
}

}  // namespace detail

// One cluster per interior local-minimum flat of a strongly irreducible
// ordering (every interior level of each flat with all_levels).  Each is the
// prefix set at that level.  Strong irreducibility forces the single-vertex
// slope conditions at every minimum, but a prefix can still leak boundary
// through a chain of zero-slope removals, so each candidate is verified with
// the exact predicate and silently skipped if it fails.
inline std::vector<Cluster> extract_minima_clusters(const Graph& g,
                                                    const Ordering& o,
                                                    const WidthProfile& p,
                                                    const Tolerance& tol = {},
                                                    bool all_levels = false) {
  detail::require_strongly_irreducible(g, o, p, tol);
  std::vector<Cluster> out;
  VertexSet prefix(g.n());
  int built = 0;
  auto prefix_at = [&](int level) {
    for (; built < level; ) prefix.insert(o.vertex_at(++built));
    return prefix;
  };
  for (const Flat& f : p.flats) {
    if (f.kind != FlatKind::Minimal) continue;
    int rep = detail::interior_representative(f, g.n());
    if (rep < 0) continue;
    int last = all_levels ? std::min(f.hi, g.n() - 1) : rep;
    for (int level = rep; level <= last; ++level) {
      Cluster c;
      c.members = prefix_at(level);
      if (!is_pinch_cluster(g, c.members, tol)) continue;
      // Recomputed from scratch: the profile value carries the accumulated
      // rounding of n incremental updates, the reported boundary must not.
      c.boundary = boundary_size(g, c.members);
      c.provenance = Provenance{Provenance::Kind::MinimumLevel, level, -1, {}, ""};
      out.push_back(std::move(c));
    }
  }
  return out;
}

// Consecutive interior minima m_1 < ... < m_k (one per interior minimal flat,
// leftmost level) with sentinels m_0 = 0 and m_{k+1} = n.  Block i holds the
// vertices at positions m_i+1 .. m_{i+1}.  Blocks 0 and k are the prefix at
// m_1 and the complement of the prefix at m_k; only blocks 1..k-1 are
// "interior" and need refining.  A minimal flat whose prefix fails the exact
// pinch check is skipped: refined blocks are only guaranteed to be pinch
// clusters when both flanking prefixes are.
struct BlockDecomposition {
  std::vector<int> minima;          // with sentinels; size k+2
  std::vector<VertexSet> blocks;    // size k+1

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool interior(int i) const { return i > 0 && i + 1 < block_count(); }
};

inline BlockDecomposition block_decomposition(const Graph& g, const Ordering& o,
                                              const WidthProfile& p,
                                              const Tolerance& tol = {}) {
  BlockDecomposition d;
  d.minima.push_back(0);
  VertexSet prefix(g.n());
  int built = 0;
  for (const Flat& f : p.flats) {
    if (f.kind != FlatKind::Minimal) continue;
    if (f.lo == 0 || f.hi == g.n()) continue;  // end flats act as sentinels
    while (built < f.lo) prefix.insert(o.vertex_at(++built));
    if (is_pinch_cluster(g, prefix, tol)) d.minima.push_back(f.lo);
  }
  d.minima.push_back(g.n());
  for (size_t i = 0; i + 1 < d.minima.size(); ++i) {
    VertexSet blk(g.n());
    for (int pos = d.minima[i] + 1; pos <= d.minima[i + 1]; ++pos)
      blk.insert(o.vertex_at(pos));
    d.blocks.push_back(std::move(blk));
  }
  return d;
}

// While any vertex of the set has slope >= 0 against it, remove one with
// maximal slope (smallest id on ties).  A non-empty result has all member
// slopes strictly negative and is itself a pinch cluster.
inline std::optional<Cluster> refine_block(const Graph& g, const VertexSet& block,
                                           const Tolerance& tol = {},
                                           int block_index = -1) {
  VertexSet cur = block;
  std::vector<Vertex> removed;
  while (!cur.empty()) {
    Vertex worst = -1;
    Weight worst_slope = 0;
    for (Vertex v : cur.members()) {
      Weight s = slope(g, cur, v);
      if (tol.negative(s)) continue;
      if (worst < 0 || s > worst_slope) {
        worst = v;
        worst_slope = s;
      }
    }
    if (worst < 0) break;  // all slopes strictly negative
    cur.erase(worst);
    removed.push_back(worst);
  }
  if (cur.empty()) return std::nullopt;
  Cluster c;
  c.boundary = boundary_size(g, cur);
  c.members = std::move(cur);
  c.provenance =
      Provenance{Provenance::Kind::BlockRefined, -1, block_index, std::move(removed), ""};
  return c;
}

// Strips zero-slope vertices (ascending id, slopes recomputed after every
// removal) until all remaining slopes are strictly negative.  Boundary is
// preserved.  A positive member slope means the input was not a pinch
// cluster, which is a caller contract violation.
inline Cluster core(const Graph& g, const Cluster& a, const Tolerance& tol = {}) {
  auto stripped = detail::strip_zero_slopes(g, a.members, tol);
  if (!stripped)
    throw std::invalid_argument(
        "core requires a pinch cluster; found a positive member slope");
  Cluster c;
  c.boundary = boundary_size(g, *stripped);
  c.members = std::move(*stripped);
  c.provenance = Provenance{Provenance::Kind::Core, -1, -1, {}, a.provenance.describe()};
  return c;
}

}  // namespace thinp
