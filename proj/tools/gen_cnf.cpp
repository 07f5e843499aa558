// Generates benchmark corpora in DIMACS format: uniform random 3-SAT filtered
// satisfiable through the brute-force oracle, and 3-colouring encodings of
// random graphs with a hidden partition (satisfiable by construction).

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gtsat/instances.hpp"
#include "gtsat/rng.hpp"

namespace {

int generate(const std::string& kind, const std::string& out_dir, int count, int vars, int clauses,
             int vertices, int edges, uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  gtsat::Rng rng(seed);
  for (int i = 0; i < count; i++) {
    gtsat::CnfFormula cnf;
    std::string stem;
    if (kind == "uf") {
      cnf = gtsat::random_ksat_satisfiable(vars, clauses, 3, rng);
      stem = "uf" + std::to_string(vars) + "-";
    } else {
      cnf = gtsat::random_coloring_cnf(vertices, edges, rng);
      stem = "flat" + std::to_string(vertices) + "-";
    }
    char num[16];
    std::snprintf(num, sizeof num, "%04d", i + 1);
    const fs::path path = fs::path(out_dir) / (stem + num + ".cnf");
    std::ofstream f(path);
    if (!f) {
      std::cerr << "cannot write " << path << '\n';
      return 1;
    }
    f << gtsat::write_dimacs(cnf);
  }
  std::cout << "wrote " << count << " instances to " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"benchmark instance generator"};
  app.require_subcommand(1);

  std::string out_dir;
  int count = 100;
  uint64_t seed = 1;

  int vars = 20, clauses = 91;
  auto* uf = app.add_subcommand("uf", "uniform random 3-SAT, satisfiable-filtered");
  uf->add_option("out", out_dir, "output directory")->required();
  uf->add_option("--count", count);
  uf->add_option("--vars", vars);
  uf->add_option("--clauses", clauses);
  uf->add_option("--seed", seed);

  int vertices = 30, edges = 60;
  auto* flat = app.add_subcommand("flat", "3-colouring of hidden-partition random graphs");
  flat->add_option("out", out_dir, "output directory")->required();
  flat->add_option("--count", count);
  flat->add_option("--vertices", vertices);
  flat->add_option("--edges", edges);
  flat->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);
  return generate(uf->parsed() ? "uf" : "flat", out_dir, count, vars, clauses, vertices, edges,
                  seed);
}
