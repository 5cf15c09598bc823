// Multistart clustering runs and prefix-seeded discovery.
#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "thinp/io.hpp"

namespace thinp {

struct RunConfig {
  int restarts = 32;
  uint64_t seed = 1;
  double epsilon = -1;   // < 0: 1e-9 * max edge weight
  bool emit_oracle = false;
  long max_steps = -1;   // forwarded to thin()
  int threads = 1;
  bool all_levels = false;  // emit every interior level of each minimal flat
};

// Fisher-Yates from the back, rejection-sampled indices.
inline Ordering random_ordering(int n, std::mt19937_64& rng) {
  std::vector<Vertex> seq(static_cast<size_t>(n));
  std::iota(seq.begin(), seq.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<size_t>(bounded(rng, static_cast<uint64_t>(i) + 1));
    std::swap(seq[static_cast<size_t>(i)], seq[j]);
  }
  return Ordering::from_sequence(seq);
}

namespace detail {

struct RestartResult {
  RestartSummary summary;
  std::vector<Cluster> clusters;
};

inline RestartResult run_one_restart(const Graph& g, const RunConfig& cfg,
                                     const Tolerance& tol, int restart) {
  auto rng = seeded_rng(cfg.seed, static_cast<uint64_t>(restart));
  Ordering o = random_ordering(g.n(), rng);
  ThinOptions topts;
  topts.max_steps = cfg.max_steps;
  ThinResult tr = thin(g, std::move(o), tol, topts);
  RestartResult rr;
  rr.summary.restart = restart;
  rr.summary.steps = tr.steps;
  rr.summary.width = width_vector(tr.profile).w;
  rr.clusters =
      extract_minima_clusters(g, tr.ordering, tr.profile, tol, cfg.all_levels);
  BlockDecomposition bd = block_decomposition(g, tr.ordering, tr.profile, tol);
  for (int i = 0; i < bd.block_count(); ++i) {
    if (!bd.interior(i)) continue;
    if (auto c = refine_block(g, bd.blocks[static_cast<size_t>(i)], tol, i))
      rr.clusters.push_back(std::move(*c));
  }
  return rr;
}

}  // namespace detail

// Independent seeded restarts merged into one deduplicated report.  The merge
// happens in restart order, so the result is identical no matter how the
// restarts were scheduled across threads.
inline ClusterReport run_multistart(const Graph& g, const RunConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  Tolerance tol =
      cfg.epsilon < 0 ? g.default_tolerance() : Tolerance{cfg.epsilon};
  int workers = std::clamp(cfg.threads, 1, cfg.restarts);

  std::vector<detail::RestartResult> results(static_cast<size_t>(cfg.restarts));
  if (workers == 1) {
    for (int r = 1; r <= cfg.restarts; ++r)
      results[static_cast<size_t>(r - 1)] = detail::run_one_restart(g, cfg, tol, r);
  } else {
    std::atomic<int> next{1};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (;;) {
          int r = next.fetch_add(1);
          if (r > cfg.restarts) return;
          try {
            results[static_cast<size_t>(r - 1)] =
                detail::run_one_restart(g, cfg, tol, r);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
            return;
          }
        }
      });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  ClusterReport rep;
  rep.n = g.n();
  rep.edges = g.edge_count();
  rep.total_weight = g.total_weight();
  rep.max_weight = g.max_weight();
  rep.seed = cfg.seed;
  rep.restarts = cfg.restarts;
  rep.epsilon = tol.eps;
  rep.labels.reserve(static_cast<size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) rep.labels.push_back(g.label(v));

  std::map<std::vector<Vertex>, size_t> index;  // member set -> cluster slot
  for (auto& rr : results) {
    rep.per_restart.push_back(std::move(rr.summary));
    for (auto& c : rr.clusters) {
      auto key = c.members.members();
      if (index.count(key)) continue;  // first provenance wins
      ClusterEntry e;
      e.fast_check = is_pinch_cluster_fast(g, c.members, tol);
      if (cfg.emit_oracle && g.n() <= kOracleMaxN)
        e.oracle = oracle_report(g, c.members, tol);
      e.cluster = std::move(c);
      index.emplace(std::move(key), rep.clusters.size());
      rep.clusters.push_back(std::move(e));
    }
  }
  std::sort(rep.clusters.begin(), rep.clusters.end(),
            [](const ClusterEntry& a, const ClusterEntry& b) {
              if (a.cluster.boundary != b.cluster.boundary)
                return a.cluster.boundary < b.cluster.boundary;
              if (a.cluster.members.size() != b.cluster.members.size())
                return a.cluster.members.size() > b.cluster.members.size();
              return a.cluster.members.members() < b.cluster.members.members();
            });
  return rep;
}

struct SeededPrefixResult {
  Ordering ordering;
  WidthProfile profile;
  bool discovered = false;
};

// Start from an ordering with a's vertices first (ascending id inside and
// outside), thin, and report whether a sits as the prefix of an interior
// local minimum.  Discovery is guaranteed when a is a pinch cluster: thinning
// never shifts a vertex across a minimum, so the seeded prefix survives.
// The full vertex set is never "discovered": level n is not interior.
inline SeededPrefixResult run_seeded_prefix(const Graph& g, const VertexSet& a,
                                            double epsilon = -1) {
  Tolerance tol = epsilon < 0 ? g.default_tolerance() : Tolerance{epsilon};
  std::vector<Vertex> seq = a.members();
  for (Vertex v = 0; v < g.n(); ++v)
    if (!a.contains(v)) seq.push_back(v);
  ThinResult tr = thin(g, Ordering::from_sequence(seq), tol);
  SeededPrefixResult out;
  out.discovered = false;
  int level = a.size();
  if (level > 0 && level < g.n()) {
    for (const Flat& f : tr.profile.flats) {
      if (f.kind != FlatKind::Minimal) continue;
      if (level < f.lo || level > f.hi) continue;
      out.discovered = tr.ordering.prefix(level) == a;
      break;
    }
  }
  out.ordering = std::move(tr.ordering);
  out.profile = std::move(tr.profile);
  return out;
}

}  // namespace thinp
