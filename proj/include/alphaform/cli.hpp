#ifndef ALPHAFORM_CLI_HPP
#define ALPHAFORM_CLI_HPP

/// Command implementations behind the alphaform binary.  Argument parsing
/// lives in tools/; everything here takes a filled RunConfig so the commands
/// stay directly testable.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "alpha.hpp"
#include "dodgson.hpp"
#include "families.hpp"
#include "io.hpp"

namespace af {
namespace cli {

struct RunConfig {
  std::string command;
  std::string graph_path;    // file path, or "-" for stdin
  std::string graph_inline;  // direct text/JSON content (takes precedence)
  std::optional<int> v_star;
  std::string format = "text";  // text | json | latex
  bool with_pi = false;
  bool timings = false;  // off by default so output is byte-identical
  int max_edges = 12;    // brute-force guard on |E|
  unsigned seed = 7;
  int jobs = 1;

  // dodgson / symanzik
  std::string rows, cols;  // "e:1,2" or "v:1,2"
  bool second = false;
  bool massless = false;

  // verify
  std::string suite;
  int max_vertices = 4;
  int suite_max_edges = 6;
  int loops = 2;
  int random_count = 25;
  std::string graphs_dir;

  // gen
  std::string family;
  std::string size;  // e.g. "3" or "5,5,5"
  std::string out_path;
  int rand_v = 4, rand_e = 6;
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string witness;
  double seconds = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteResult> results;
  int passed = 0, failed = 0;

  void add(SuiteResult r) {
    (r.pass ? passed : failed)++;
    results.push_back(std::move(r));
  }
  bool ok() const { return failed == 0; }
};

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

inline IndexSet parse_index_set(const std::string& s) {
  if (s.rfind("e:", 0) == 0) return IndexSet::edges(parse_int_list(s.substr(2)));
  if (s.rfind("v:", 0) == 0) return IndexSet::vertices(parse_int_list(s.substr(2)));
  throw std::invalid_argument("index set must look like e:1,2 or v:1,2");
}

inline Graph load_graph(const RunConfig& cfg) {
  std::string text;
  if (!cfg.graph_inline.empty()) {
    text = cfg.graph_inline;
  } else if (cfg.graph_path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    text = os.str();
  } else {
    std::ifstream f(cfg.graph_path);
    if (!f) throw std::invalid_argument("cannot open graph file: " + cfg.graph_path);
    std::ostringstream os;
    os << f.rdbuf();
    text = os.str();
  }
  Graph g = graph_from_string(text);
  if (cfg.v_star) return Graph(g.vertex_count(), g.edges(), *cfg.v_star);
  return g;
}

// --- corpus enumeration ----------------------------------------------------

/// Connected multigraphs as edge multisets over the canonical (tail < head)
/// vertex pairs, every vertex 1..n used, in lexicographic order.
inline void enumerate_connected_multigraphs(
    int n, int min_edges, int max_edges,
    const std::function<void(const Graph&)>& visit) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
  std::vector<int> chosen;  // indices into pairs, non-decreasing
  std::function<void(int)> rec = [&](int from) {
    int m = static_cast<int>(chosen.size());
    if (m >= min_edges) {
      std::vector<EdgeDef> edges;
      for (int idx : chosen) edges.push_back({pairs[idx].first, pairs[idx].second});
      Graph g(n, std::move(edges));
      bool spanning = true;
      {
        std::vector<bool> touched(n + 1, false);
        for (const auto& e : g.edges()) touched[e.tail] = touched[e.head] = true;
        for (int v = 1; v <= n; ++v) spanning = spanning && touched[v];
      }
      if (spanning && g.is_connected()) visit(g);
    }
    if (m == max_edges) return;
    for (int i = from; i < static_cast<int>(pairs.size()); ++i) {
      chosen.push_back(i);
      rec(i);
      chosen.pop_back();
    }
  };
  rec(0);
}

/// The generated stress corpus used by the nilpotency and identity suites.
inline std::vector<std::pair<std::string, Graph>> stress_corpus(int max_edges) {
  std::vector<std::pair<std::string, Graph>> out;
  auto add = [&](std::string name, Graph g) {
    if (g.edge_count() <= max_edges) out.push_back({std::move(name), std::move(g)});
  };
  add("dunce", families::dunce());
  add("dunce-subdivided-1", families::dunce_subdivided(1));
  add("dunce-subdivided-2", families::dunce_subdivided(2));
  add("theta-2,2,1", families::theta_subdivided(2, 2, 1));
  add("theta-2,2,2", families::theta_subdivided(2, 2, 2));
  add("theta-3,3,2", families::theta_subdivided(3, 3, 2));
  add("theta-4,3,3", families::theta_subdivided(4, 3, 3));
  add("wheel-4", families::wheel(4));
  add("wheel-5", families::wheel(5));
  add("k4-doubled", families::k4_doubled());
  add("banana-4", families::banana(4));
  add("banana-5", families::banana(5));
  return out;
}

// --- suites -----------------------------------------------------------------

inline SuiteResult check_nilpotency(const std::string& name, const Graph& g) {
  SuiteResult r{name};
  auto t0 = std::chrono::steady_clock::now();
  AlphaForm a = alpha_tree_sum(g);
  r.pass = true;
  for (const auto& qe : wedge_self(a)) {
    if (!qe.value.is_zero()) {
      r.pass = false;
      std::ostringstream os;
      os << "nonzero Q on edges {";
      for (int e : qe.edge_set) os << " " << e;
      os << " }: " << qe.value.to_string();
      r.witness = os.str();
      break;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline SuiteReport suite_nilpotency(int max_vertices, int max_edges) {
  SuiteReport rep{"nilpotency"};
  for (const auto& [name, g] : stress_corpus(max_edges)) {
    if (edge_bound_check(g)) continue;  // trivially zero, nothing to exercise
    if (g.loop_number() % 2 != 0 || g.loop_number() < 2) continue;
    rep.add(check_nilpotency(name, g));
  }
  for (int n = 2; n <= max_vertices; ++n) {
    enumerate_connected_multigraphs(n, n - 1, max_edges, [&](const Graph& g) {
      int L = g.loop_number();
      if (L % 2 != 0 || L < 2 || edge_bound_check(g)) return;
      std::ostringstream name;
      name << "n" << n << ":";
      for (const auto& e : g.edges()) name << " " << e.tail << "-" << e.head;
      rep.add(check_nilpotency(name.str(), g));
    });
  }
  return rep;
}

inline SuiteReport suite_pipelines(int max_vertices, int max_edges, int random_count,
                                   unsigned seed) {
  SuiteReport rep{"pipelines"};
  auto check = [&](const std::string& name, const Graph& g) {
    SuiteResult r{name};
    auto t0 = std::chrono::steady_clock::now();
    AgreementResult a = pipelines_agree(g);
    r.pass = a.ok;
    r.witness = a.witness;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.add(std::move(r));
  };
  for (int n = 2; n <= max_vertices; ++n) {
    enumerate_connected_multigraphs(n, n - 1, max_edges, [&](const Graph& g) {
      std::ostringstream name;
      name << "n" << n << ":";
      for (const auto& e : g.edges()) name << " " << e.tail << "-" << e.head;
      check(name.str(), g);
    });
  }
  for (int i = 0; i < random_count; ++i) {
    unsigned s = seed + static_cast<unsigned>(i);
    std::mt19937 rng(s * 2654435761u + 1);
    int v = std::uniform_int_distribution<int>(2, 5)(rng);
    int e = std::uniform_int_distribution<int>(v - 1, 8)(rng);
    check("random v=" + std::to_string(v) + " e=" + std::to_string(e) +
              " seed=" + std::to_string(s),
          families::random_connected(v, e, s));
  }
  return rep;
}

inline SuiteReport suite_dodgson_identities(
    const std::vector<std::pair<std::string, Graph>>& corpus) {
  SuiteReport rep{"dodgson-identities"};
  for (const auto& [name, g] : corpus) {
    SuiteResult r{name};
    auto t0 = std::chrono::steady_clock::now();
    r.pass = true;
    RegistryPtr reg = schwinger_registry(g);
    int m = g.edge_count();
    auto fail = [&](const std::string& what) {
      r.pass = false;
      if (r.witness.empty()) r.witness = what;
    };
    try {
      // Jacobi with |A| = |B| = 1 and one 2x2 case
      if (!jacobi_expand(g, IndexSet::edges({1}), IndexSet::edges({m}), reg).ok)
        fail("jacobi e:1 / e:" + std::to_string(m));
      if (m >= 4) {
        if (!jacobi_expand(g, IndexSet::edges({1, 2}), IndexSet::edges({3, 4}), reg).ok)
          fail("jacobi e:1,2 / e:3,4");
      }
      // forest expansion on a disjoint pair
      if (m >= 2) {
        if (!forest_expansion(g, IndexSet::edges({1}), IndexSet::edges({2}), reg).ok)
          fail("forest e:1 / e:2");
        if (m > 2 && !forest_expansion(g, IndexSet::edges({1}), IndexSet::edges({m}), reg).ok)
          fail("forest e:1 / e:" + std::to_string(m));
      }
      // vertex-edge for every edge against its own endpoints' partners
      for (int e = 1; e <= m; ++e) {
        for (int v : {g.edge(e).tail, g.edge(e).head}) {
          if (v == g.v_star()) continue;
          if (!vertex_edge_combine(g, e, v, reg).ok)
            fail("vertex-edge e=" + std::to_string(e) + " v=" + std::to_string(v));
          break;  // one per edge keeps big graphs quick
        }
      }
      // edge-edge on the first few pairs
      int pairs_done = 0;
      for (int e1 = 1; e1 <= m && pairs_done < 4; ++e1)
        for (int e2 = e1 + 1; e2 <= m && pairs_done < 4; ++e2) {
          if (!edge_edge_combine(g, e1, e2, reg).ok)
            fail("edge-edge " + std::to_string(e1) + "," + std::to_string(e2));
          ++pairs_done;
        }
    } catch (const std::exception& ex) {
      fail(std::string("exception: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.add(std::move(r));
  }
  return rep;
}

inline SuiteReport suite_formal_qe(int loops) {
  SuiteReport rep{"formal-qe"};
  SuiteResult r{"qe_formal(" + std::to_string(loops) + ")"};
  auto t0 = std::chrono::steady_clock::now();
  try {
    MPoly q = qe_formal(loops);
    r.pass = q.is_zero();
    if (!r.pass) r.witness = "nonzero: " + q.to_string();
    if (loops == 2 && r.pass) {
      r.pass = qe_formal_full(2).is_zero();
      if (!r.pass) r.witness = "unquotiented L=2 sum nonzero";
    }
  } catch (const std::exception& ex) {
    r.pass = false;
    r.witness = ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.add(std::move(r));
  return rep;
}

inline SuiteReport suite_certificates() {
  SuiteReport rep{"certificates"};
  for (int L : {2, 4}) {
    SuiteResult r{"cancellation_certificate(" + std::to_string(L) + ")"};
    auto t0 = std::chrono::steady_clock::now();
    auto cert = cancellation_certificate(L);
    r.pass = cert.valid();
    if (!r.pass) r.witness = cert.failure;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.add(std::move(r));
  }
  return rep;
}

// --- rendering ---------------------------------------------------------------

inline void print_report(const SuiteReport& rep, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    json j;
    j["suite"] = rep.suite;
    j["passed"] = rep.passed;
    j["failed"] = rep.failed;
    json results = json::array();
    for (const auto& r : rep.results) {
      json e;
      e["name"] = r.name;
      e["pass"] = r.pass;
      if (!r.witness.empty()) e["witness"] = r.witness;
      if (cfg.timings) e["seconds"] = r.seconds;
      results.push_back(std::move(e));
    }
    j["results"] = std::move(results);
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& r : rep.results) {
    out << (r.pass ? "ok   " : "FAIL ") << rep.suite << " " << r.name;
    if (!r.pass && !r.witness.empty()) out << "  [" << r.witness << "]";
    if (cfg.timings) out << "  (" << r.seconds << "s)";
    out << "\n";
  }
  out << rep.suite << ": " << rep.passed << " passed, " << rep.failed << " failed\n";
}

// --- commands ----------------------------------------------------------------

inline int cmd_alpha(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(cfg);
  RegistryPtr reg = schwinger_registry(g);
  AlphaForm tree = alpha_tree_sum(g, reg);
  bool ran_brute = false, agree = true;
  std::string brute_notice;
  if (g.edge_count() <= cfg.max_edges) {
    AgreementResult a = pipelines_agree(g);
    ran_brute = true;
    agree = a.ok;
    if (!a.ok) brute_notice = a.witness;
  } else {
    brute_notice = "brute-force pipeline skipped: |E| > " + std::to_string(cfg.max_edges);
  }

  if (cfg.format == "json") {
    json j;
    j["graph"] = graph_to_json(g);
    j["v_star"] = g.v_star();
    j["L"] = g.loop_number();
    j["alpha"] = alpha_to_json(tree, cfg.with_pi);
    bool wz = true;
    for (const auto& qe : wedge_self(tree)) wz = wz && qe.value.is_zero();
    j["wedge_zero"] = wz;
    if (ran_brute) j["pipelines_agree"] = agree;
    if (!brute_notice.empty()) j["notice"] = brute_notice;
    out << j.dump(2) << "\n";
  } else if (cfg.format == "latex") {
    out << "\\alpha_\\Gamma = " << alpha_to_latex(tree, cfg.with_pi) << "\n";
  } else {
    out << "alpha = " << alpha_to_text(tree, cfg.with_pi) << "\n";
    if (ran_brute)
      out << "pipelines agree: " << (agree ? "yes" : "NO " + brute_notice) << "\n";
    else
      err << brute_notice << "\n";
  }
  return agree ? 0 : 1;
}

inline int cmd_wedge_check(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Graph g = load_graph(cfg);
  AlphaForm a = alpha_tree_sum(g);
  auto qe = wedge_self(a);
  bool all_zero = true;
  std::string witness;
  for (const auto& q : qe)
    if (!q.value.is_zero()) {
      all_zero = false;
      std::ostringstream os;
      os << "edges {";
      for (int e : q.edge_set) os << " " << e;
      os << " }";
      witness = os.str();
      break;
    }
  if (cfg.format == "json") {
    json j;
    j["graph"] = graph_to_json(g);
    j["L"] = g.loop_number();
    j["edge_bound_trivial"] = edge_bound_check(g);
    j["subsets"] = qe.size();
    j["wedge_zero"] = all_zero;
    if (!all_zero) j["witness"] = witness;
    out << j.dump(2) << "\n";
  } else {
    out << "alpha ^ alpha over " << qe.size() << " edge subsets: "
        << (all_zero ? "0" : "NONZERO " + witness) << "\n";
    if (edge_bound_check(g)) out << "(trivial: 2L > |E|, no admissible subset)\n";
  }
  return all_zero ? 0 : 1;
}

inline int cmd_symanzik(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Graph g = load_graph(cfg);
  if (cfg.second) {
    std::vector<int> momenta = g.non_star_vertices();
    std::vector<int> massive;
    if (!cfg.massless)
      for (int e = 1; e <= g.edge_count(); ++e) massive.push_back(e);
    SecondSymanzik s = symanzik_second(g, momenta, massive);
    if (cfg.format == "json") {
      json j;
      j["phi"] = poly_to_json(s.phi);
      out << j.dump(2) << "\n";
    } else if (cfg.format == "latex") {
      out << "\\varphi = " << poly_to_latex(s.phi) << "\n";
    } else {
      out << "phi = " << s.phi.to_string() << "\n";
    }
    return 0;
  }
  MPoly psi = symanzik_first(g);
  if (cfg.format == "json") {
    json j;
    j["psi"] = poly_to_json(psi);
    out << j.dump(2) << "\n";
  } else if (cfg.format == "latex") {
    out << "\\psi = " << poly_to_latex(psi) << "\n";
  } else {
    out << "psi = " << psi.to_string() << "\n";
  }
  return 0;
}

inline int cmd_dodgson(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(cfg);
  IndexSet A = parse_index_set(cfg.rows), B = parse_index_set(cfg.cols);
  if (A.size() != B.size()) {
    err << "usage error: row and column sets must have equal size\n";
    return 2;
  }
  DodgsonResult d = dodgson(g, A, B);
  if (cfg.format == "json") {
    json j;
    j["rows"] = cfg.rows;
    j["cols"] = cfg.cols;
    j["value"] = poly_to_json(d.value);
    out << j.dump(2) << "\n";
  } else if (cfg.format == "latex") {
    out << "\\psi^{" << cfg.rows << "," << cfg.cols << "} = " << poly_to_latex(d.value)
        << "\n";
  } else {
    out << d.value.to_string() << "\n";
  }
  return 0;
}

inline int cmd_certificate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto cert = cancellation_certificate(cfg.loops);
  if (cfg.format == "json") {
    json j;
    j["L"] = cert.L;
    j["total_terms"] = cert.total_terms;
    j["pairs"] = cert.pairs;
    j["valid"] = cert.valid();
    if (!cert.valid()) j["failure"] = cert.failure;
    json entries = json::array();
    for (const auto& e : cert.entries) {
      json row;
      row["e1"] = e.term.e1;
      json dashed = json::array();
      for (auto [a, b] : e.term.dashed) dashed.push_back({a, b});
      row["dashed"] = std::move(dashed);
      row["fixed"] = e.fixed;
      json swaps = json::array();
      for (auto [a, b] : e.swapped) swaps.push_back({a, b});
      row["swapped"] = std::move(swaps);
      row["sign"] = e.term.sign;
      entries.push_back(std::move(row));
      if (entries.size() >= 64) break;  // keep L=4 output bounded
    }
    j["entries"] = std::move(entries);
    out << j.dump(2) << "\n";
  } else {
    out << "L = " << cert.L << ": " << cert.total_terms << " term families, "
        << cert.pairs << " canceling pairs, involution "
        << (cert.valid() ? "valid" : "INVALID " + cert.failure) << "\n";
    size_t shown = 0;
    for (const auto& e : cert.entries) {
      if (shown++ >= 8) {
        out << "... (" << cert.entries.size() - 8 << " more pairs)\n";
        break;
      }
      out << "  pair: E1={";
      for (int x : e.term.e1) out << " " << x;
      out << " } fix {";
      for (int x : e.fixed) out << " " << x;
      out << " } exchange";
      for (auto [a, b] : e.swapped) out << " " << a << "<->" << b;
      out << "\n";
    }
  }
  return cert.valid() ? 0 : 1;
}

inline int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<int> size = parse_int_list(cfg.size);
  Graph g(1, {});
  if (cfg.family == "banana") {
    g = families::banana(size.at(0));
  } else if (cfg.family == "theta-subdivided") {
    g = families::theta_subdivided(size.at(0), size.at(1), size.at(2));
  } else if (cfg.family == "wheel") {
    g = families::wheel(size.at(0));
  } else if (cfg.family == "path") {
    g = families::path(size.at(0));
  } else if (cfg.family == "cycle") {
    g = families::cycle(size.at(0));
  } else if (cfg.family == "dunce") {
    g = families::dunce();
  } else if (cfg.family == "dunce-subdivided") {
    g = families::dunce_subdivided(size.empty() ? 1 : size.at(0));
  } else if (cfg.family == "k4-doubled") {
    g = families::k4_doubled();
  } else if (cfg.family == "random") {
    g = families::random_connected(cfg.rand_v, cfg.rand_e, cfg.seed);
  } else {
    err << "unknown family: " << cfg.family << "\n";
    return 2;
  }
  std::string payload = graph_to_json(g).dump(2) + "\n";
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) {
      err << "cannot write " << cfg.out_path << "\n";
      return 1;
    }
    f << payload;
  } else {
    out << payload;
  }
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SuiteReport rep;
  if (cfg.suite == "nilpotency") {
    rep = suite_nilpotency(cfg.max_vertices, cfg.suite_max_edges);
  } else if (cfg.suite == "pipelines") {
    rep = suite_pipelines(cfg.max_vertices, cfg.suite_max_edges, cfg.random_count,
                          cfg.seed);
  } else if (cfg.suite == "dodgson-identities") {
    std::vector<std::pair<std::string, Graph>> corpus;
    if (!cfg.graphs_dir.empty()) {
      std::vector<std::string> files;
      for (const auto& entry :
           std::filesystem::directory_iterator(cfg.graphs_dir))
        if (entry.is_regular_file()) files.push_back(entry.path().string());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        std::ifstream in(f);
        std::ostringstream os;
        os << in.rdbuf();
        corpus.push_back({std::filesystem::path(f).filename().string(),
                          graph_from_string(os.str())});
      }
    } else {
      corpus = stress_corpus(cfg.suite_max_edges);
    }
    rep = suite_dodgson_identities(corpus);
  } else if (cfg.suite == "formal-qe") {
    rep = suite_formal_qe(cfg.loops);
  } else if (cfg.suite == "certificates") {
    rep = suite_certificates();
  } else {
    err << "unknown suite: " << cfg.suite << "\n";
    return 2;
  }
  print_report(rep, cfg, out);
  return rep.ok() ? 0 : 1;
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "alpha") return cmd_alpha(cfg, out, err);
    if (cfg.command == "wedge-check") return cmd_wedge_check(cfg, out, err);
    if (cfg.command == "symanzik") return cmd_symanzik(cfg, out, err);
    if (cfg.command == "dodgson") return cmd_dodgson(cfg, out, err);
    if (cfg.command == "certificate") return cmd_certificate(cfg, out, err);
    if (cfg.command == "gen") return cmd_gen(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    err << "unknown command: " << cfg.command << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    err << "usage error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace cli
}  // namespace af

#endif
