// Vertex orderings, width profiles, flats, and width-vector comparison.
#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "thinp/graph.hpp"

namespace thinp {

// Bijection between vertices and positions 1..n.  Prefix level i (0..n)
// denotes the set A_i of the first i vertices.
class Ordering {
 public:
  Ordering() = default;

  static Ordering identity(int n) {
    std::vector<Vertex> seq(static_cast<size_t>(n));
    std::iota(seq.begin(), seq.end(), 0);
    return from_sequence(seq);
  }

  // seq[0] is the vertex at position 1.
  static Ordering from_sequence(const std::vector<Vertex>& seq) {
    Ordering o;
    int n = static_cast<int>(seq.size());
    o.vert_.assign(static_cast<size_t>(n) + 1, -1);
    o.pos_.assign(static_cast<size_t>(n), 0);
    for (int i = 1; i <= n; ++i) {
      Vertex v = seq[static_cast<size_t>(i - 1)];
      if (v < 0 || v >= n || o.pos_[static_cast<size_t>(v)] != 0)
        throw std::invalid_argument("ordering is not a permutation");
      o.vert_[static_cast<size_t>(i)] = v;
      o.pos_[static_cast<size_t>(v)] = i;
    }
    return o;
  }

  int n() const { return static_cast<int>(pos_.size()); }

  Vertex vertex_at(int position) const {
    if (position < 1 || position > n())
      throw std::out_of_range("ordering position out of range");
    return vert_[static_cast<size_t>(position)];
  }

  int position_of(Vertex v) const { return pos_[static_cast<size_t>(v)]; }

  VertexSet prefix(int level) const {
    if (level < 0 || level > n()) throw std::out_of_range("prefix level out of range");
    VertexSet a(n());
    for (int i = 1; i <= level; ++i) a.insert(vert_[static_cast<size_t>(i)]);
    return a;
  }

  std::vector<Vertex> sequence() const {
    return std::vector<Vertex>(vert_.begin() + 1, vert_.end());
  }

  Ordering reversed() const {
    std::vector<Vertex> seq(vert_.rbegin(), vert_.rend() - 1);
    return from_sequence(seq);
  }

  // Move the vertex at `from` to `to`; everything in between slides one slot
  // toward `from`.  Prefix sets outside [min,max) are unchanged.
  void shift(int from, int to) {
    int n_ = n();
    if (from < 1 || from > n_ || to < 1 || to > n_)
      throw std::out_of_range("shift position out of range");
    if (from == to) throw std::invalid_argument("shift requires from != to");
    Vertex moved = vert_[static_cast<size_t>(from)];
    if (from < to) {
      for (int i = from; i < to; ++i) {
        vert_[static_cast<size_t>(i)] = vert_[static_cast<size_t>(i + 1)];
        pos_[static_cast<size_t>(vert_[static_cast<size_t>(i)])] = i;
      }
    } else {
      for (int i = from; i > to; --i) {
        vert_[static_cast<size_t>(i)] = vert_[static_cast<size_t>(i - 1)];
        pos_[static_cast<size_t>(vert_[static_cast<size_t>(i)])] = i;
      }
    }
    vert_[static_cast<size_t>(to)] = moved;
    pos_[static_cast<size_t>(moved)] = to;
  }

  bool valid() const {
    for (int i = 1; i <= n(); ++i) {
      Vertex v = vert_[static_cast<size_t>(i)];
      if (v < 0 || v >= n() || pos_[static_cast<size_t>(v)] != i) return false;
    }
    return true;
  }

  friend bool operator==(const Ordering& a, const Ordering& b) {
    return a.vert_ == b.vert_;
  }

 private:
  std::vector<Vertex> vert_;  // 1-based; vert_[0] unused
  std::vector<int> pos_;
};

inline Ordering apply_shift(const Ordering& o, int from, int to) {
  Ordering out = o;
  out.shift(from, to);
  return out;
}

// Full table build: row 0 holds vertex strengths (slopes against the empty
// prefix); each later row subtracts 2*w(entering vertex, .) from the row
// above.  O(n^2) time and space, row copies dominate.
inline SlopeTable build_slope_table(const Graph& g, const Ordering& o) {
  int n = g.n();
  SlopeTable t(n);
  Weight* r0 = t.row(0);
  for (Vertex v = 0; v < n; ++v) r0[v] = g.strength(v);
  for (int i = 1; i <= n; ++i) {
    const Weight* prev = t.row(i - 1);
    Weight* cur = t.row(i);
    std::copy(prev, prev + n, cur);
    for (const auto& [u, w] : g.neighbors(o.vertex_at(i))) cur[u] -= 2 * w;
  }
  return t;
}

enum class FlatKind { Minimal, Maximal, Slope };

// Maximal run [lo,hi] of equal widths b_lo..b_hi (levels, inclusive).
struct Flat {
  int lo = 0;
  int hi = 0;
  FlatKind kind = FlatKind::Slope;
};

// Neighbouring levels are grouped while they compare equal under tol.  End
// flats are classified by their single interior neighbour; a profile that is
// one single flat (no edges at all) counts as minimal.
inline std::vector<Flat> classify_flats(const std::vector<Weight>& b,
                                        const Tolerance& tol) {
  std::vector<Flat> flats;
  int last = static_cast<int>(b.size()) - 1;
  int lo = 0;
  for (int i = 1; i <= last + 1; ++i) {
    if (i <= last && tol.eq(b[static_cast<size_t>(i)], b[static_cast<size_t>(i - 1)]))
      continue;
    Flat f;
    f.lo = lo;
    f.hi = i - 1;
    // Neighbouring levels of a flat always differ from it by more than eps,
    // so each existing neighbour is strictly up or strictly down.
    bool has_left = lo > 0;
    bool has_right = f.hi < last;
    bool left_up = has_left &&
        tol.gt(b[static_cast<size_t>(lo - 1)], b[static_cast<size_t>(lo)]);
    bool right_up = has_right &&
        tol.gt(b[static_cast<size_t>(f.hi + 1)], b[static_cast<size_t>(f.hi)]);
    if (!has_left && !has_right)
      f.kind = FlatKind::Minimal;  // whole profile is one flat
    else if ((!has_left || left_up) && (!has_right || right_up))
      f.kind = FlatKind::Minimal;
    else if ((!has_left || !left_up) && (!has_right || !right_up))
      f.kind = FlatKind::Maximal;
    else
      f.kind = FlatKind::Slope;
    flats.push_back(f);
    lo = i;
  }
  return flats;
}

// b_i = |dA_i| for each prefix level, plus the flat decomposition.
struct WidthProfile {
  std::vector<Weight> b;  // size n+1, b[0] == b[n] == 0
  std::vector<Flat> flats;

  Weight max_b() const {
    Weight m = 0;
    for (Weight x : b) m = std::max(m, x);
    return m;
  }
};

// Computed by the slope recurrence b_i = b_{i-1} + s_{i,i}, maintaining one
// running slope row; O(n + |E|).
inline WidthProfile width_profile(const Graph& g, const Ordering& o,
                                  const Tolerance& tol) {
  int n = g.n();
  WidthProfile p;
  p.b.assign(static_cast<size_t>(n) + 1, 0.0);
  std::vector<Weight> cur(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) cur[static_cast<size_t>(v)] = g.strength(v);
  for (int i = 1; i <= n; ++i) {
    Vertex vi = o.vertex_at(i);
    p.b[static_cast<size_t>(i)] =
        p.b[static_cast<size_t>(i - 1)] + cur[static_cast<size_t>(vi)];
    for (const auto& [u, w] : g.neighbors(vi)) cur[static_cast<size_t>(u)] -= 2 * w;
  }
  p.flats = classify_flats(p.b, tol);
  return p;
}

// Width values sorted non-increasing; the thinness measure.
struct WidthVector {
  std::vector<Weight> w;
};

inline WidthVector width_vector(const WidthProfile& p) {
  WidthVector wv;
  wv.w = p.b;
  std::sort(wv.w.begin(), wv.w.end(), std::greater<Weight>());
  return wv;
}

inline WidthVector width_vector(const std::vector<Weight>& b) {
  WidthVector wv;
  wv.w = b;
  std::sort(wv.w.begin(), wv.w.end(), std::greater<Weight>());
  return wv;
}

enum class Cmp { Less, Equal, Greater };

// Lexicographic; the shorter vector is padded with zeros.
inline Cmp compare_widths(const WidthVector& a, const WidthVector& b,
                          const Tolerance& tol = {}) {
  size_t len = std::max(a.w.size(), b.w.size());
  for (size_t i = 0; i < len; ++i) {
    Weight x = i < a.w.size() ? a.w[i] : 0.0;
    Weight y = i < b.w.size() ? b.w[i] : 0.0;
    if (tol.lt(x, y)) return Cmp::Less;
    if (tol.gt(x, y)) return Cmp::Greater;
  }
  return Cmp::Equal;
}

}  // namespace thinp
