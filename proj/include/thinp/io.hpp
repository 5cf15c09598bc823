// Edge-list and point-cloud ingestion, graph generators, and report output.
#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "thinp/clusters.hpp"
#include "thinp/oracle.hpp"
#include "thinp/rng.hpp"

namespace thinp {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

inline double parse_number(const std::string& tok, int line) {
  double x = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(line, "bad number '" + tok + "'");
  return x;
}

}  // namespace detail

// Text edge list: one `u v w` edge per line (w optional, default 1), `#`
// starts a comment, a line with a single token declares an isolated vertex.
// Vertex ids are arbitrary whitespace-free strings, mapped to dense indices
// in first-seen order.  Duplicate edges sum their weights.
inline Graph load_edge_list(std::istream& in) {
  Graph::Builder b;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() == 1) {
      b.vertex(toks[0]);
      continue;
    }
    if (toks.size() > 3) throw ParseError(lineno, "expected 'u v [w]'");
    Vertex u = b.vertex(toks[0]);
    Vertex v = b.vertex(toks[1]);
    double w = toks.size() == 3 ? detail::parse_number(toks[2], lineno) : 1.0;
    if (u == v) throw ParseError(lineno, "self-loop on '" + toks[0] + "'");
    if (w < 0 || !std::isfinite(w))
      throw ParseError(lineno, "negative or non-finite weight");
    b.add_edge(u, v, w);
  }
  return b.build();
}

inline Graph load_edge_list(const std::string& text) {
  std::istringstream is(text);
  return load_edge_list(is);
}

namespace detail {

inline std::string format_weight(Weight w) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, w);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace detail

// Inverse of load_edge_list; declares every vertex first so indices and
// isolated vertices survive the round trip exactly.
inline std::string serialize_edge_list(const Graph& g) {
  std::ostringstream os;
  for (Vertex v = 0; v < g.n(); ++v) {
    std::string lab = g.label(v);
    if (lab.empty() || lab.find_first_of(" \t#") != std::string::npos)
      throw std::invalid_argument("label not representable in edge-list format");
    os << lab << "\n";
  }
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = u + 1; v < g.n(); ++v)
      if (Weight w = g.weight(u, v); w != 0)
        os << g.label(u) << " " << g.label(v) << " " << detail::format_weight(w)
           << "\n";
  return os.str();
}

// Whitespace-separated coordinates, one point per line, `#` comments.
inline std::vector<std::vector<double>> load_points(std::istream& in) {
  std::vector<std::vector<double>> pts;
  std::string line;
  int lineno = 0;
  size_t dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    std::vector<double> p;
    p.reserve(toks.size());
    for (const auto& t : toks) {
      double x = detail::parse_number(t, lineno);
      if (!std::isfinite(x)) throw ParseError(lineno, "non-finite coordinate");
      p.push_back(x);
    }
    if (dim == 0) dim = p.size();
    if (p.size() != dim)
      throw ParseError(lineno, "inconsistent point dimension");
    pts.push_back(std::move(p));
  }
  return pts;
}

// Symmetric k-nearest-neighbour graph with Gaussian similarity
// exp(-d^2 / (2 sigma^2)).  An edge is kept when either endpoint selects the
// other.  Neighbour ties break by (distance, index).
inline Graph knn_similarity_graph(const std::vector<std::vector<double>>& points,
                                  int k, double sigma) {
  int n = static_cast<int>(points.size());
  if (n < 2) throw std::invalid_argument("need at least two points");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  size_t dim = points[0].size();
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("inconsistent dimensions");
    for (double x : p)
      if (!std::isfinite(x)) throw std::invalid_argument("non-finite coordinate");
  }
  auto dist2 = [&](int a, int b) {
    double d = 0;
    for (size_t c = 0; c < dim; ++c) {
      double t = points[static_cast<size_t>(a)][c] - points[static_cast<size_t>(b)][c];
      d += t * t;
    }
    return d;
  };
  std::set<std::pair<int, int>> picked;
  std::vector<std::pair<double, int>> cand;
  for (int i = 0; i < n; ++i) {
    cand.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) cand.emplace_back(dist2(i, j), j);
    size_t take = std::min<size_t>(static_cast<size_t>(k), cand.size());
    std::partial_sort(cand.begin(), cand.begin() + static_cast<long>(take),
                      cand.end());
    for (size_t t = 0; t < take; ++t) {
      int j = cand[t].second;
      picked.insert({std::min(i, j), std::max(i, j)});
    }
  }
  Graph::Builder b(n);
  for (auto [u, v] : picked)
    b.add_edge(u, v, std::exp(-dist2(u, v) / (2 * sigma * sigma)));
  return b.build();
}

// --- generators -----------------------------------------------------------

// Two complete graphs K_m joined by the single edge (m-1, m).
inline Graph make_barbell(int m) {
  if (m < 1) throw std::invalid_argument("barbell needs m >= 1");
  Graph::Builder b(2 * m);
  for (int blob = 0; blob < 2; ++blob)
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        b.add_edge(blob * m + i, blob * m + j, 1.0);
  b.add_edge(m - 1, m, 1.0);
  return b.build();
}

// Two K_m blobs connected through `strands` parallel paths of two extra
// vertices each, so the graph can be cut in half in three places, each time
// through `strands` unit edges.
inline Graph make_neck(int m, int strands) {
  if (m < 1 || strands < 1) throw std::invalid_argument("neck needs m, strands >= 1");
  int n = 2 * m + 2 * strands;
  Graph::Builder b(n);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      b.add_edge(i, j, 1.0);
      b.add_edge(m + 2 * strands + i, m + 2 * strands + j, 1.0);
    }
  for (int s = 0; s < strands; ++s) {
    int x = m + s;
    int y = m + strands + s;
    b.add_edge(s % m, x, 1.0);
    b.add_edge(x, y, 1.0);
    b.add_edge(y, m + 2 * strands + s % m, 1.0);
  }
  return b.build();
}

// t unit triangles in a row; triangle i is (3i, 3i+1, 3i+2) and a unit bridge
// joins 3i+2 to 3i+3.
inline Graph make_triangle_chain(int t) {
  if (t < 1) throw std::invalid_argument("chain needs t >= 1");
  Graph::Builder b(3 * t);
  for (int i = 0; i < t; ++i) {
    b.add_edge(3 * i, 3 * i + 1, 1.0);
    b.add_edge(3 * i, 3 * i + 2, 1.0);
    b.add_edge(3 * i + 1, 3 * i + 2, 1.0);
    if (i + 1 < t) b.add_edge(3 * i + 2, 3 * i + 3, 1.0);
  }
  return b.build();
}

// Planted partition: unit edges drawn with probability p_in inside a group
// and p_out across groups; groups occupy consecutive index ranges.
inline Graph make_planted(const std::vector<int>& sizes, double p_in,
                          double p_out, uint64_t seed) {
  if (sizes.empty()) throw std::invalid_argument("planted needs group sizes");
  int n = 0;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("group sizes must be positive");
    n += s;
  }
  if (p_in < 0 || p_in > 1 || p_out < 0 || p_out > 1)
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  std::vector<int> group(static_cast<size_t>(n));
  int v = 0;
  for (size_t gi = 0; gi < sizes.size(); ++gi)
    for (int i = 0; i < sizes[gi]; ++i) group[static_cast<size_t>(v++)] = static_cast<int>(gi);
  auto rng = seeded_rng(seed, 0x706c616e74u /* "plant" */);
  Graph::Builder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double p = group[static_cast<size_t>(i)] == group[static_cast<size_t>(j)] ? p_in : p_out;
      if (unit_real(rng) < p) b.add_edge(i, j, 1.0);
    }
  return b.build();
}

// Rescale to integer weights when a decimal power 10^d (d <= 9) makes every
// weight integral; flat/width equality is then exact.  Returns the scale
// applied (1 when weights stay as they are).
inline std::pair<Graph, double> integer_scaled(const Graph& g) {
  for (int d = 0; d <= 9; ++d) {
    double scale = std::pow(10.0, d);
    bool ok = true;
    for (Vertex u = 0; u < g.n() && ok; ++u)
      for (const auto& [v, w] : g.neighbors(u)) {
        double ws = w * scale;
        // Absolute test: a relative one would accept any weight once the
        // scale is large enough.  Rounding to zero would drop the edge.
        if (std::fabs(ws - std::round(ws)) > 1e-6 || std::round(ws) < 1.0) {
          ok = false;
          break;
        }
      }
    if (!ok) continue;
    if (d == 0) return {g, 1.0};
    Graph::Builder b;
    for (Vertex v = 0; v < g.n(); ++v) b.vertex(g.label(v));
    for (Vertex u = 0; u < g.n(); ++u)
      for (const auto& [v, w] : g.neighbors(u))
        if (u < v) b.add_edge(u, v, std::round(w * scale));
    return {b.build(), scale};
  }
  return {g, 1.0};
}

// --- reports ---------------------------------------------------------------

struct RestartSummary {
  int restart = 0;
  long steps = 0;
  std::vector<Weight> width;  // final width vector
};

struct ClusterEntry {
  Cluster cluster;
  bool fast_check = false;
  std::optional<OracleReport> oracle;
};

// Everything a clustering run reports.  Weights are stated in input units:
// when the run rescaled to integers, boundaries are divided back by
// weight_scale before they land here.
struct ClusterReport {
  int n = 0;
  long edges = 0;
  Weight total_weight = 0;
  Weight max_weight = 0;
  double weight_scale = 1.0;
  uint64_t seed = 0;
  int restarts = 0;
  double epsilon = 0;
  std::vector<std::string> labels;
  std::vector<RestartSummary> per_restart;
  std::vector<ClusterEntry> clusters;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["graph"] = {{"n", n},
                  {"edges", edges},
                  {"total_weight", total_weight},
                  {"max_weight", max_weight},
                  {"weight_scale", weight_scale}};
    j["config"] = {{"seed", seed}, {"restarts", restarts}, {"epsilon", epsilon}};
    j["restarts"] = nlohmann::json::array();
    for (const auto& r : per_restart)
      j["restarts"].push_back(
          {{"restart", r.restart}, {"steps", r.steps}, {"width", r.width}});
    j["clusters"] = nlohmann::json::array();
    for (const auto& e : clusters) {
      nlohmann::json c;
      auto member_ids = e.cluster.members.members();
      std::vector<std::string> names;
      names.reserve(member_ids.size());
      for (Vertex v : member_ids) names.push_back(labels[static_cast<size_t>(v)]);
      c["members"] = names;
      c["size"] = member_ids.size();
      c["boundary"] = e.cluster.boundary;
      c["provenance"] = e.cluster.provenance.describe();
      c["fast_check"] = e.fast_check;
      if (e.oracle) {
        c["oracle"] = {{"convex", e.oracle->convex.ok},
                       {"concave", e.oracle->concave.ok},
                       {"pinch", e.oracle->pinch()}};
      }
      j["clusters"].push_back(std::move(c));
    }
    return j;
  }

  void write_text(std::ostream& os) const {
    os << "graph: n=" << n << " edges=" << edges
       << " total_weight=" << detail::format_weight(total_weight) << "\n";
    os << "run: restarts=" << restarts << " seed=" << seed
       << " epsilon=" << detail::format_weight(epsilon) << "\n";
    for (const auto& r : per_restart) {
      os << "restart " << r.restart << ": steps=" << r.steps << " width=(";
      size_t show = std::min<size_t>(8, r.width.size());
      for (size_t i = 0; i < show; ++i)
        os << (i ? "," : "") << detail::format_weight(r.width[i]);
      if (show < r.width.size()) os << ",...";
      os << ")\n";
    }
    os << "clusters: " << clusters.size() << "\n";
    for (const auto& e : clusters) {
      auto ids = e.cluster.members.members();
      os << "  boundary=" << detail::format_weight(e.cluster.boundary)
         << " size=" << ids.size() << " [" << e.cluster.provenance.describe()
         << "]" << (e.fast_check ? "" : " FAST-CHECK-FAILED");
      if (e.oracle) os << (e.oracle->pinch() ? " oracle=pinch" : " oracle=NOT-PINCH");
      os << " {";
      size_t show = std::min<size_t>(16, ids.size());
      for (size_t i = 0; i < show; ++i)
        os << (i ? "," : "") << labels[static_cast<size_t>(ids[i])];
      if (show < ids.size()) os << ",...";
      os << "}\n";
    }
  }
};

}  // namespace thinp
