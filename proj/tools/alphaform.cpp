#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "alphaform/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"symbolic alpha-form engine for multigraphs"};
  app.require_subcommand(1);

  af::cli::RunConfig cfg;
  if (const char* jobs = std::getenv("ALPHAFORM_JOBS")) cfg.jobs = std::atoi(jobs);

  auto add_common = [&](CLI::App* sub, bool needs_graph) {
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "latex"}));
    sub->add_flag("--with-pi", cfg.with_pi, "display the symbolic pi factor");
    sub->add_flag("--timings", cfg.timings, "include wall-clock timings in reports");
    sub->add_option("--jobs", cfg.jobs, "worker count (reports stay input-ordered)");
    if (needs_graph) {
      sub->add_option("--graph", cfg.graph_path, "graph file (JSON or text), - for stdin")
          ->required();
      sub->add_option("--v-star", cfg.v_star, "override the distinguished vertex");
    }
  };

  auto* alpha = app.add_subcommand("alpha", "compute the alpha form of a graph");
  add_common(alpha, true);
  alpha->add_option("--max-edges", cfg.max_edges, "brute-force pipeline guard on |E|");

  auto* wedge = app.add_subcommand("wedge-check", "verify alpha ^ alpha = 0");
  add_common(wedge, true);

  auto* sym = app.add_subcommand("symanzik", "Symanzik polynomial(s)");
  add_common(sym, true);
  sym->add_flag("--second", cfg.second, "second Symanzik polynomial phi");
  sym->add_flag("--massless", cfg.massless, "drop the mass terms of phi");

  auto* dodg = app.add_subcommand("dodgson", "Dodgson polynomial psi^{A,B}");
  add_common(dodg, true);
  dodg->add_option("--rows", cfg.rows, "deleted rows, e:1,2 or v:1,2")->required();
  dodg->add_option("--cols", cfg.cols, "deleted columns, e:3,4 or v:1,2")->required();

  auto* cert = app.add_subcommand("certificate", "cancellation certificate for Q_E");
  add_common(cert, false);
  cert->add_option("--loops", cfg.loops, "loop number (2 or 4)");

  auto* gen = app.add_subcommand("gen", "generate a corpus graph");
  add_common(gen, false);
  gen->add_option("family", cfg.family,
                  "banana | theta-subdivided | wheel | path | cycle | dunce | "
                  "dunce-subdivided | k4-doubled | random")
      ->required();
  gen->add_option("size", cfg.size, "family size, e.g. 3 or 5,5,5");
  gen->add_option("--v", cfg.rand_v, "random family: vertex count");
  gen->add_option("--e", cfg.rand_e, "random family: edge count");
  gen->add_option("--seed", cfg.seed, "random family: seed");
  gen->add_option("--out", cfg.out_path, "write to file instead of stdout");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, false);
  verify->add_option("suite", cfg.suite,
                     "nilpotency | pipelines | dodgson-identities | formal-qe | "
                     "certificates")
      ->required();
  verify->add_option("--max-vertices", cfg.max_vertices, "enumeration bound");
  verify->add_option("--max-edges", cfg.suite_max_edges, "enumeration bound");
  verify->add_option("--loops", cfg.loops, "formal-qe loop number");
  verify->add_option("--random", cfg.random_count, "random graphs in the pipelines suite");
  verify->add_option("--seed", cfg.seed, "seed for random graphs");
  verify->add_option("--graphs", cfg.graphs_dir, "directory of graph files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return af::cli::run(cfg, std::cout, std::cerr);
}
