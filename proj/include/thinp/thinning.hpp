// Weak reductions and the thinning loop that drives orderings to strong
// irreducibility.
#pragma once

#include <functional>
#include <optional>

#include "thinp/ordering.hpp"

namespace thinp {

// One accepted width-reducing move.  AddSide shifts a vertex from the climb
// before a maximal flat [i,j] to position i+1; RemoveSide shifts a vertex
// from the descent after it to position j.
struct ShiftMove {
  enum class Case { AddSide, RemoveSide };
  Case kind = Case::AddSide;
  int k = 0;       // source position
  int target = 0;  // destination position
  Flat flat;       // the maximal flat that qualified the move
};

inline const char* to_string(ShiftMove::Case c) {
  return c == ShiftMove::Case::AddSide ? "add-side" : "remove-side";
}

// Ordering plus incrementally maintained profile and slope table.  After a
// shift only the prefix levels between the flanking minima change, so the
// profile and the table are patched over that interval instead of rebuilt.
class ThinState {
 public:
  ThinState(const Graph& g, Ordering o, Tolerance tol)
      : g_(&g), o_(std::move(o)), tol_(tol) {
    if (o_.n() != g.n()) throw std::invalid_argument("ordering size mismatch");
    table_ = build_slope_table(g, o_);
    b_.assign(static_cast<size_t>(g.n()) + 1, 0.0);
    for (int i = 1; i <= g.n(); ++i)
      b_[static_cast<size_t>(i)] =
          b_[static_cast<size_t>(i - 1)] + table_.at(i, o_.vertex_at(i));
    flats_ = classify_flats(b_, tol_);
  }

  const Graph& graph() const { return *g_; }
  const Ordering& ordering() const { return o_; }
  const std::vector<Weight>& b() const { return b_; }
  const std::vector<Flat>& flats() const { return flats_; }
  const SlopeTable& table() const { return table_; }
  const Tolerance& tolerance() const { return tol_; }

  WidthProfile profile() const { return WidthProfile{b_, flats_}; }

  // s_{level,pos} in ordering coordinates.
  Weight slope_at(int level, int pos) const {
    return table_.at(level, o_.vertex_at(pos));
  }

  void apply_move(const ShiftMove& m) { apply_shift(m.k, m.target); }

  void apply_shift(int from, int to) {
    if (from == to) throw std::invalid_argument("shift requires from != to");
    int n = g_->n();
    if (from < 1 || from > n || to < 1 || to > n)
      throw std::out_of_range("shift position out of range");
    Vertex vk = o_.vertex_at(from);
    if (to > from) {
      // Rightward: for levels l in [from, to-1], A'_l = A_l \ {v_k} + {v_{l+1}}.
      std::vector<Weight> nb(static_cast<size_t>(to - from));
      for (int l = from; l < to; ++l) {
        Vertex vnext = o_.vertex_at(l + 1);
        nb[static_cast<size_t>(l - from)] = b_[static_cast<size_t>(l)] -
            table_.at(l, vk) + table_.at(l, vnext) + 2 * g_->weight(vk, vnext);
      }
      for (int l = from; l < to; ++l) {
        Weight* row = table_.row(l);
        for (const auto& [u, w] : g_->neighbors(vk)) row[u] += 2 * w;
        for (const auto& [u, w] : g_->neighbors(o_.vertex_at(l + 1)))
          row[u] -= 2 * w;
      }
      for (int l = from; l < to; ++l)
        b_[static_cast<size_t>(l)] = nb[static_cast<size_t>(l - from)];
    } else {
      // Leftward: for levels l in [to, from-1], A'_l = A_{l-1} + {v_k},
      // equivalently A_l \ {v_l} + {v_k}.
      std::vector<Weight> nb(static_cast<size_t>(from - to));
      for (int l = to; l < from; ++l)
        nb[static_cast<size_t>(l - to)] =
            b_[static_cast<size_t>(l - 1)] + table_.at(l - 1, vk);
      for (int l = to; l < from; ++l) {
        Weight* row = table_.row(l);
        for (const auto& [u, w] : g_->neighbors(o_.vertex_at(l))) row[u] += 2 * w;
        for (const auto& [u, w] : g_->neighbors(vk)) row[u] -= 2 * w;
      }
      for (int l = to; l < from; ++l)
        b_[static_cast<size_t>(l)] = nb[static_cast<size_t>(l - to)];
    }
    o_.shift(from, to);
    flats_ = classify_flats(b_, tol_);
  }

 private:
  const Graph* g_;
  Ordering o_;
  std::vector<Weight> b_;
  std::vector<Flat> flats_;
  SlopeTable table_;
  Tolerance tol_;
};

namespace detail {

// Scans maximal flats left to right; for each, condition 1 over the climb
// positions (j^- , i], then condition 2 over the descent positions (j, i^+];
// smallest qualifying position first.  Both conditions come straight from
// the shift guarantee: they hold exactly when the move strictly lowers the
// width vector.
template <typename SlopeAt>
std::optional<ShiftMove> find_weak_reduction_impl(
    const Graph& g, const Ordering& o, const std::vector<Flat>& flats,
    SlopeAt&& s, const Tolerance& tol) {
  for (size_t fi = 0; fi < flats.size(); ++fi) {
    if (flats[fi].kind != FlatKind::Maximal) continue;
    // Flanking minimal flats always exist: end flats are minimal.
    size_t li = fi;
    while (flats[--li].kind != FlatKind::Minimal) {}
    size_t ri = fi;
    while (flats[++ri].kind != FlatKind::Minimal) {}
    int jm = flats[li].hi;   // right end of left minimum
    int ip = flats[ri].lo;   // left end of right minimum
    int i = flats[fi].lo;
    int j = flats[fi].hi;
    // Condition 1: s_{i,k} > 0 and s_{i,k} - s_{i,i+1} - 2 w(v_k, v_{i+1}) > 0.
    Vertex vnext = o.vertex_at(i + 1);
    Weight s_i_next = s(i, i + 1);
    for (int k = jm + 1; k <= i; ++k) {
      Weight sik = s(i, k);
      if (tol.positive(sik) &&
          tol.positive(sik - s_i_next - 2 * g.weight(o.vertex_at(k), vnext)))
        return ShiftMove{ShiftMove::Case::AddSide, k, i + 1, flats[fi]};
    }
    // Condition 2: s_{j,k} < 0 and -s_{j,k} + s_{j,j} - 2 w(v_k, v_j) > 0.
    Vertex vj = o.vertex_at(j);
    Weight sjj = s(j, j);
    for (int k = j + 1; k <= ip; ++k) {
      Weight sjk = s(j, k);
      if (tol.negative(sjk) &&
          tol.positive(-sjk + sjj - 2 * g.weight(o.vertex_at(k), vj)))
        return ShiftMove{ShiftMove::Case::RemoveSide, k, j, flats[fi]};
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<ShiftMove> find_weak_reduction(const Graph& g,
                                                    const Ordering& o,
                                                    const WidthProfile& p,
                                                    const SlopeTable& t,
                                                    const Tolerance& tol) {
  return detail::find_weak_reduction_impl(
      g, o, p.flats,
      [&](int level, int pos) { return t.at(level, o.vertex_at(pos)); }, tol);
}

inline std::optional<ShiftMove> find_weak_reduction(const ThinState& st) {
  return detail::find_weak_reduction_impl(
      st.graph(), st.ordering(), st.flats(),
      [&](int level, int pos) { return st.slope_at(level, pos); },
      st.tolerance());
}

struct ThinOptions {
  long max_steps = -1;  // <= 0: default cap 10 * n^2 * max(b), a defect detector
  std::function<void(const ShiftMove&, const ThinState&)> on_move;
};

struct ThinResult {
  Ordering ordering;
  WidthProfile profile;
  long steps = 0;
};

// Applies weak reductions until none exists.  Every accepted move must
// strictly lower the width vector; a non-decreasing move or a blown step cap
// indicates a defect and throws.
inline ThinResult thin(const Graph& g, Ordering o, const Tolerance& tol,
                       const ThinOptions& opts = {}) {
  ThinState st(g, std::move(o), tol);
  long cap = opts.max_steps;
  if (cap <= 0) {
    double mb = 0;
    for (Weight x : st.b()) mb = std::max(mb, x);
    cap = 10L * g.n() * g.n() * static_cast<long>(std::max(1.0, std::ceil(mb)));
  }
  WidthVector cur = width_vector(st.b());
  long steps = 0;
  while (auto mv = find_weak_reduction(st)) {
    if (++steps > cap)
      throw std::logic_error("thinning exceeded its step cap; descent broken");
    st.apply_move(*mv);
    WidthVector next = width_vector(st.b());
    if (compare_widths(next, cur, tol) != Cmp::Less)
      throw std::logic_error("accepted shift did not lower the width vector");
    cur = std::move(next);
    if (opts.on_move) opts.on_move(*mv, st);
  }
  ThinResult r;
  r.ordering = st.ordering();
  // Recompute from scratch so long float runs end drift-free.
  r.profile = width_profile(g, r.ordering, tol);
  r.steps = steps;
  return r;
}

}  // namespace thinp
