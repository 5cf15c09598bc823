// Command-line front end: cluster / thin / verify / gen.
// Exit codes: 0 success, 1 input error, 2 internal invariant violation.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "thinp/driver.hpp"

namespace {

thinp::Graph read_graph_file(const std::string& path) {
  if (path == "-") return thinp::load_edge_list(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return thinp::load_edge_list(in);
}

std::vector<std::vector<double>> read_points_file(const std::string& path) {
  if (path == "-") return thinp::load_points(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return thinp::load_points(in);
}

// Mean distance to the k-th nearest neighbour; a serviceable default scale.
double auto_sigma(const std::vector<std::vector<double>>& pts, int k) {
  int n = static_cast<int>(pts.size());
  int kk = std::min(k, n - 1);
  double acc = 0;
  std::vector<double> d;
  for (int i = 0; i < n; ++i) {
    d.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = 0;
      for (size_t c = 0; c < pts[static_cast<size_t>(i)].size(); ++c) {
        double t = pts[static_cast<size_t>(i)][c] - pts[static_cast<size_t>(j)][c];
        s += t * t;
      }
      d.push_back(s);
    }
    std::nth_element(d.begin(), d.begin() + (kk - 1), d.end());
    acc += std::sqrt(d[static_cast<size_t>(kk - 1)]);
  }
  double sigma = acc / n;
  return sigma > 0 ? sigma : 1.0;
}

struct ClusterArgs {
  std::string input;
  std::string format = "edgelist";
  std::string output;
  thinp::RunConfig cfg;
  int knn_k = 8;
  double sigma = 0;  // 0: auto
  bool no_scale = false;
};

int cmd_cluster(const ClusterArgs& a) {
  thinp::Graph g;
  if (a.format == "points") {
    auto pts = read_points_file(a.input);
    if (pts.size() < 2) throw std::runtime_error("need at least two points");
    double sigma = a.sigma > 0 ? a.sigma : auto_sigma(pts, a.knn_k);
    g = thinp::knn_similarity_graph(pts, a.knn_k, sigma);
  } else {
    g = read_graph_file(a.input);
  }
  double scale = 1.0;
  if (!a.no_scale) std::tie(g, scale) = thinp::integer_scaled(g);
  thinp::RunConfig cfg = a.cfg;
  if (cfg.epsilon >= 0 && scale != 1) cfg.epsilon *= scale;
  thinp::ClusterReport rep = thinp::run_multistart(g, cfg);
  if (scale != 1) {
    rep.weight_scale = scale;
    rep.total_weight /= scale;
    rep.max_weight /= scale;
    rep.epsilon /= scale;
    for (auto& r : rep.per_restart)
      for (auto& w : r.width) w /= scale;
    for (auto& e : rep.clusters) e.cluster.boundary /= scale;
  }
  rep.write_text(std::cout);
  if (!a.output.empty()) {
    std::ofstream out(a.output);
    if (!out) throw std::runtime_error("cannot write '" + a.output + "'");
    out << rep.to_json().dump(2) << "\n";
  }
  return 0;
}

struct ThinArgs {
  std::string input;
  uint64_t seed = 1;
  bool identity = false;
  double epsilon = -1;
  bool no_scale = false;
};

int cmd_thin(const ThinArgs& a) {
  thinp::Graph g = read_graph_file(a.input);
  double scale = 1.0;
  if (!a.no_scale) std::tie(g, scale) = thinp::integer_scaled(g);
  thinp::Tolerance tol = a.epsilon < 0 ? g.default_tolerance()
                                       : thinp::Tolerance{a.epsilon * scale};
  thinp::Ordering o;
  if (a.identity) {
    o = thinp::Ordering::identity(g.n());
  } else {
    auto rng = thinp::seeded_rng(a.seed, 1);
    o = thinp::random_ordering(g.n(), rng);
  }
  long step = 0;
  thinp::ThinOptions opts;
  opts.on_move = [&](const thinp::ShiftMove& m, const thinp::ThinState& st) {
    double sum = 0, mx = 0;
    for (double x : st.b()) {
      sum += x;
      mx = std::max(mx, x);
    }
    std::cout << "step " << ++step << ": " << thinp::to_string(m.kind)
              << " from=" << m.k << " to=" << m.target << " max_b=" << mx / scale
              << " sum_b=" << sum / scale << "\n";
  };
  thinp::ThinResult r = thinp::thin(g, std::move(o), tol, opts);
  auto wv = thinp::width_vector(r.profile);
  std::cout << "steps: " << r.steps << "\nwidth: (";
  for (size_t i = 0; i < wv.w.size(); ++i)
    std::cout << (i ? "," : "") << wv.w[i] / scale;
  std::cout << ")\n";
  return 0;
}

struct VerifyArgs {
  std::string input;
  std::string set;
  double epsilon = -1;
  bool no_scale = false;
};

int cmd_verify(const VerifyArgs& a) {
  thinp::Graph g = read_graph_file(a.input);
  double scale = 1.0;
  if (!a.no_scale) std::tie(g, scale) = thinp::integer_scaled(g);
  thinp::Tolerance tol = a.epsilon < 0 ? g.default_tolerance()
                                       : thinp::Tolerance{a.epsilon * scale};
  std::map<std::string, thinp::Vertex> by_label;
  for (thinp::Vertex v = 0; v < g.n(); ++v) by_label[g.label(v)] = v;
  thinp::VertexSet set(g.n());
  std::istringstream is(a.set);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    auto it = by_label.find(tok);
    if (it == by_label.end())
      throw std::runtime_error("unknown vertex '" + tok + "'");
    set.insert(it->second);
  }
  std::cout << "set: " << set.size() << " of " << g.n() << " vertices\n";
  std::cout << "boundary: " << thinp::boundary_size(g, set) / scale << "\n";
  bool fast = thinp::is_pinch_cluster_fast(g, set, tol);
  std::cout << "fast-check: " << (fast ? "pass" : "fail")
            << " (member slopes <= 0, outsider slopes >= 0)\n";
  if (g.n() <= thinp::kOracleMaxN) {
    auto rep = thinp::oracle_report(g, set, tol);
    std::cout << "oracle: convex=" << (rep.convex.ok ? "yes" : "no")
              << " concave=" << (rep.concave.ok ? "yes" : "no")
              << " pinch=" << (rep.pinch() ? "yes" : "no") << "\n";
    auto witness = [&](const char* what, const thinp::OracleSide& s) {
      if (s.ok) return;
      std::cout << "  " << what << " witness:";
      for (thinp::Vertex v : s.witness) std::cout << " " << g.label(v);
      std::cout << "\n";
    };
    witness("add", rep.convex);
    witness("remove", rep.concave);
  } else {
    std::cout << "oracle: skipped (graph larger than " << thinp::kOracleMaxN
              << " vertices)\n";
  }
  return 0;
}

struct GenArgs {
  std::string output;
  int m = 3;
  int bridges = 3;
  int t = 3;
  std::string sizes = "5,5";
  double p_in = 1.0;
  double p_out = 0.0;
  uint64_t seed = 1;
};

void write_graph(const thinp::Graph& g, const std::string& path) {
  std::string text = thinp::serialize_edge_list(g);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thinp: graph clustering by thinning vertex orderings"};
  app.require_subcommand(1);

  ClusterArgs ca;
  auto* cluster = app.add_subcommand("cluster", "multistart cluster search");
  cluster->add_option("--input", ca.input, "edge list or points file, - for stdin")
      ->required();
  cluster->add_option("--format", ca.format, "edgelist|points")
      ->check(CLI::IsMember({"edgelist", "points"}));
  cluster->add_option("--restarts", ca.cfg.restarts, "independent restarts");
  cluster->add_option("--seed", ca.cfg.seed, "PRNG seed");
  cluster->add_option("--eps", ca.cfg.epsilon, "comparison tolerance");
  cluster->add_flag("--oracle", ca.cfg.emit_oracle,
                    "run the exact oracle on every cluster (n <= 16)");
  cluster->add_option("--max-steps", ca.cfg.max_steps, "thinning step cap");
  cluster->add_option("--threads", ca.cfg.threads, "worker threads");
  cluster->add_flag("--all-levels", ca.cfg.all_levels,
                    "emit every level of each minimal flat");
  cluster->add_option("--output", ca.output, "write JSON report here");
  cluster->add_option("--knn-k", ca.knn_k, "neighbours per point (points format)");
  cluster->add_option("--sigma", ca.sigma, "similarity scale (points format)");
  cluster->add_flag("--no-scale", ca.no_scale, "skip integer weight rescaling");

  ThinArgs ta;
  auto* thin_cmd = app.add_subcommand("thin", "thin one ordering, print the trajectory");
  thin_cmd->add_option("--input", ta.input, "edge list file")->required();
  thin_cmd->add_option("--seed", ta.seed, "seed for the initial ordering");
  thin_cmd->add_flag("--identity", ta.identity, "start from the identity ordering");
  thin_cmd->add_option("--eps", ta.epsilon, "comparison tolerance");
  thin_cmd->add_flag("--no-scale", ta.no_scale, "skip integer weight rescaling");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check whether a set is a pinch cluster");
  verify->add_option("--input", va.input, "edge list file")->required();
  verify->add_option("--set", va.set, "comma-separated vertex labels")->required();
  verify->add_option("--eps", va.epsilon, "comparison tolerance");
  verify->add_flag("--no-scale", va.no_scale, "skip integer weight rescaling");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a benchmark graph");
  gen->require_subcommand(1);
  auto* barbell = gen->add_subcommand("barbell", "two K_m joined by one edge");
  barbell->add_option("--m", ga.m, "blob size");
  auto* neck = gen->add_subcommand("neck", "two K_m joined through parallel strands");
  neck->add_option("--m", ga.m, "blob size");
  neck->add_option("--bridges", ga.bridges, "parallel strands");
  auto* chain = gen->add_subcommand("chain", "row of bridged triangles");
  chain->add_option("--t", ga.t, "triangle count");
  auto* planted = gen->add_subcommand("planted", "planted partition");
  planted->add_option("--sizes", ga.sizes, "comma-separated group sizes");
  planted->add_option("--p-in", ga.p_in, "within-group edge probability");
  planted->add_option("--p-out", ga.p_out, "cross-group edge probability");
  planted->add_option("--seed", ga.seed, "PRNG seed");
  for (auto* sc : {barbell, neck, chain, planted})
    sc->add_option("--output", ga.output, "output path, - or empty for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(cluster)) return cmd_cluster(ca);
    if (app.got_subcommand(thin_cmd)) return cmd_thin(ta);
    if (app.got_subcommand(verify)) return cmd_verify(va);
    if (app.got_subcommand(gen)) {
      thinp::Graph g;
      if (gen->got_subcommand(barbell)) {
        g = thinp::make_barbell(ga.m);
      } else if (gen->got_subcommand(neck)) {
        g = thinp::make_neck(ga.m, ga.bridges);
      } else if (gen->got_subcommand(chain)) {
        g = thinp::make_triangle_chain(ga.t);
      } else {
        std::vector<int> sizes;
        std::istringstream is(ga.sizes);
        std::string tok;
        while (std::getline(is, tok, ','))
          if (!tok.empty()) sizes.push_back(std::stoi(tok));
        g = thinp::make_planted(sizes, ga.p_in, ga.p_out, ga.seed);
      }
      write_graph(g, ga.output);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    // descent violations, blown step caps: bugs, not bad input
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
