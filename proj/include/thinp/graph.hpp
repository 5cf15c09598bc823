// Weighted undirected graph, vertex subsets, boundary and slope primitives.
#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thinp/tolerance.hpp"

namespace thinp {

using Weight = double;
using Vertex = int;

// Dense membership set over vertices 0..n-1.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : member_(static_cast<size_t>(n), 0) {}

  static VertexSet of(int n, std::initializer_list<Vertex> vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.insert(v);
    return s;
  }

  int universe_size() const { return static_cast<int>(member_.size()); }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool full() const { return count_ == universe_size(); }

  bool contains(Vertex v) const { return member_[static_cast<size_t>(v)] != 0; }

  void insert(Vertex v) {
    if (!contains(v)) {
      member_[static_cast<size_t>(v)] = 1;
      ++count_;
    }
  }

  void erase(Vertex v) {
    if (contains(v)) {
      member_[static_cast<size_t>(v)] = 0;
      --count_;
    }
  }

  VertexSet complement() const {
    VertexSet s(universe_size());
    for (int v = 0; v < universe_size(); ++v)
      if (!contains(v)) s.insert(v);
    return s;
  }

  // Ascending vertex ids; used as the canonical form for dedup and reports.
  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(static_cast<size_t>(count_));
    for (int v = 0; v < universe_size(); ++v)
      if (contains(v)) out.push_back(v);
    return out;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.member_ == b.member_;
  }

 private:
  std::vector<unsigned char> member_;
  int count_ = 0;
};

// Symmetric non-negative weights, zero diagonal.  The dense matrix is the
// canonical representation; the adjacency lists back sparse iteration.
// Zero-weight edges are treated as absent.
class Graph {
 public:
  class Builder;

  Graph() = default;

  int n() const { return n_; }

  Weight weight(Vertex u, Vertex v) const {
    return w_[static_cast<size_t>(u) * n_ + static_cast<size_t>(v)];
  }

  Weight strength(Vertex v) const { return strength_[static_cast<size_t>(v)]; }

  const std::vector<std::pair<Vertex, Weight>>& neighbors(Vertex v) const {
    return adj_[static_cast<size_t>(v)];
  }

  long edge_count() const { return edge_count_; }
  Weight total_weight() const { return total_weight_; }
  Weight max_weight() const { return max_weight_; }

  bool has_labels() const { return !labels_.empty(); }
  std::string label(Vertex v) const {
    return has_labels() ? labels_[static_cast<size_t>(v)] : std::to_string(v);
  }

  Tolerance default_tolerance() const {
    return Tolerance::for_max_weight(max_weight_);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.w_ == b.w_ && a.labels_ == b.labels_;
  }

 private:
  int n_ = 0;
  std::vector<Weight> w_;
  std::vector<Weight> strength_;
  std::vector<std::vector<std::pair<Vertex, Weight>>> adj_;
  std::vector<std::string> labels_;
  long edge_count_ = 0;
  Weight total_weight_ = 0;
  Weight max_weight_ = 0;
};

// Accumulates edges; duplicate (u,v) pairs sum their weights.  Self-loops and
// negative weights are rejected here so no graph can ever carry them.
class Graph::Builder {
 public:
  Builder() = default;
  explicit Builder(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
  }

  // Get-or-create a vertex by external label (first-seen order).
  Vertex vertex(const std::string& label) {
    auto it = label_index_.find(label);
    if (it != label_index_.end()) return it->second;
    Vertex v = n_++;
    label_index_.emplace(label, v);
    labels_.push_back(label);
    return v;
  }

  Vertex add_vertex() { return n_++; }

  void add_edge(Vertex u, Vertex v, Weight w) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (!(w >= 0) || !std::isfinite(w))
      throw std::invalid_argument("edge weights must be finite and non-negative");
    if (u > v) std::swap(u, v);
    weights_[{u, v}] += w;
  }

  int current_size() const { return n_; }

  Graph build() const {
    Graph g;
    g.n_ = n_;
    g.w_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), 0.0);
    g.strength_.assign(static_cast<size_t>(n_), 0.0);
    g.adj_.assign(static_cast<size_t>(n_), {});
    g.labels_ = labels_;
    if (!g.labels_.empty() && static_cast<int>(g.labels_.size()) != n_)
      throw std::logic_error("partial label assignment");
    for (const auto& [uv, w] : weights_) {
      if (w == 0.0) continue;  // absent edge
      auto [u, v] = uv;
      g.w_[static_cast<size_t>(u) * n_ + v] = w;
      g.w_[static_cast<size_t>(v) * n_ + u] = w;
      g.adj_[static_cast<size_t>(u)].emplace_back(v, w);
      g.adj_[static_cast<size_t>(v)].emplace_back(u, w);
      g.strength_[static_cast<size_t>(u)] += w;
      g.strength_[static_cast<size_t>(v)] += w;
      ++g.edge_count_;
      g.total_weight_ += w;
      g.max_weight_ = std::max(g.max_weight_, w);
    }
    return g;
  }

 private:
  int n_ = 0;
  std::map<std::pair<Vertex, Vertex>, Weight> weights_;
  std::map<std::string, Vertex> label_index_;
  std::vector<std::string> labels_;
};

// |dA|: total weight of edges with exactly one endpoint in a.
inline Weight boundary_size(const Graph& g, const VertexSet& a) {
  Weight b = 0;
  for (int v = 0; v < g.n(); ++v) {
    if (!a.contains(v)) continue;
    for (const auto& [u, w] : g.neighbors(v))
      if (!a.contains(u)) b += w;
  }
  return b;
}

// s_a(v) = (weight from v to outside a) - (weight from v into a \ {v}).
// Independent of whether v itself is in a.  Adding an outside vertex v to a
// changes |dA| by exactly s_a(v); removing a member v changes it by -s_a(v).
inline Weight slope(const Graph& g, const VertexSet& a, Vertex v) {
  Weight inside = 0;
  for (const auto& [u, w] : g.neighbors(v))
    if (u != v && a.contains(u)) inside += w;
  return g.strength(v) - 2 * inside;
}

// Slopes of every vertex against every prefix of an ordering.  Rows are
// prefix levels 0..n, columns are indexed by vertex id (not position); the
// position view lives with the ordering, which knows the vertex at each slot.
class SlopeTable {
 public:
  SlopeTable() = default;
  explicit SlopeTable(int n)
      : n_(n), s_(static_cast<size_t>(n + 1) * static_cast<size_t>(n), 0.0) {}

  int n() const { return n_; }

  Weight at(int level, Vertex v) const {
    return s_[static_cast<size_t>(level) * n_ + static_cast<size_t>(v)];
  }

  Weight& at(int level, Vertex v) {
    return s_[static_cast<size_t>(level) * n_ + static_cast<size_t>(v)];
  }

  Weight* row(int level) { return s_.data() + static_cast<size_t>(level) * n_; }
  const Weight* row(int level) const {
    return s_.data() + static_cast<size_t>(level) * n_;
  }

 private:
  int n_ = 0;
  std::vector<Weight> s_;
};

}  // namespace thinp
