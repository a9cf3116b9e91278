// pairspec: spectral runs on the hard-wall pair domain and its comparison
// domains.  Exit codes: 0 pass, 1 verification failure, 2 input error,
// 3 solver failure.

#include "pairspec/report.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct MeshFlags {
  std::string domain = "pair";
  std::string sector = "full";
  double d = 1.0;
  double L = 0;  // 0: 8d
  double h = 0;  // 0: d/32
};

void add_mesh_flags(CLI::App* cmd, MeshFlags& f) {
  // the spacing option is spelled --h, so the short help flag must go
  cmd->set_help_flag("--help", "print help and exit");
  cmd->add_option("--domain", f.domain, "pair|cross-diag|cross-axis|square|arms")
      ->default_val("pair");
  cmd->add_option("--sector", f.sector, "full|s|a (pair domain only)")->default_val("full");
  cmd->add_option("--d", f.d, "pair extension d")->default_val(1.0);
  cmd->add_option("--L", f.L, "arm truncation distance (default 8d)");
  cmd->add_option("--h", f.h, "target mesh spacing (default d/32)");
}

pairspec::SolveConfig to_config(const MeshFlags& f) {
  pairspec::SolveConfig cfg;
  cfg.domain = pairspec::parse_domain(f.domain);
  cfg.sector = pairspec::parse_sector(f.sector);
  cfg.d = f.d;
  cfg.L = f.L > 0 ? f.L : 8.0 * f.d;
  cfg.h = f.h > 0 ? f.h : f.d / 32.0;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral verification of the hard-wall pair operator"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  MeshFlags solve_mesh, count_mesh;
  int k = 6;
  double tol = 1e-8, E = 0;
  std::uint64_t seed = 0, sweep_seed = 0;
  std::string format = "json", sweep_format = "json";
  bool deterministic = false;
  std::string dump_mesh, dump_matrices, plan_path, out_path;
  pairspec::VerifyConfig vcfg;

  CLI::App* solve = app.add_subcommand("solve", "compute the lowest eigenpairs on one domain");
  add_mesh_flags(solve, solve_mesh);
  solve->add_option("--k", k, "number of eigenpairs")->default_val(6);
  solve->add_option("--tol", tol, "residual tolerance")->default_val(1e-8);
  solve->add_option("--seed", seed, "random seed for iteration start vectors")->default_val(0);
  solve->add_option("--format", format, "json|csv")->default_val("json");
  solve->add_flag("--deterministic", deterministic,
                  "force sequential assembly (always on; flag kept for compatibility)");
  solve->add_option("--dump-mesh", dump_mesh, "write the mesh to this path")->group("");
  solve->add_option("--dump-matrices", dump_matrices,
                    "write stiffness/mass to <prefix>_K.txt, <prefix>_M.txt")
      ->group("");

  CLI::App* count = app.add_subcommand("count", "count eigenvalues below a threshold");
  add_mesh_flags(count, count_mesh);
  count->add_option("--E", E, "count eigenvalues strictly below this energy")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the full theorem-verification suite");
  verify->set_help_flag("--help", "print help and exit");
  verify->add_option("--d", vcfg.d, "pair extension d")->default_val(1.0);
  verify->add_option("--delta", vcfg.delta, "threshold margin")->default_val(0.02);
  verify->add_option("--out", out_path, "write the JSON report to this path");
  verify->add_option("--h", vcfg.h, "mesh spacing override (default d/32)")->group("");
  verify->add_option("--L", vcfg.L, "truncation override (default 8d)")->group("");
  verify->add_option("--k", vcfg.k, "eigenpairs per sector")->group("");
  verify->add_option("--tol", vcfg.tol, "residual tolerance")->group("");
  verify->add_option("--seed", vcfg.seed, "random seed")->group("");

  CLI::App* sweep = app.add_subcommand("sweep", "run an (h, L) refinement sweep from a plan");
  sweep->set_help_flag("--help", "print help and exit");
  sweep->add_option("--plan", plan_path, "JSON sweep plan")->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--format", sweep_format, "json|csv")->default_val("json");
  sweep->add_option("--seed", sweep_seed, "random seed override")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      if (format != "json" && format != "csv")
        throw std::invalid_argument("--format must be json or csv");
      pairspec::SolveConfig cfg = to_config(solve_mesh);
      cfg.k = k;
      cfg.tol = tol;
      cfg.seed = seed;
      const pairspec::AssembledSystem<double> sys = pairspec::build_system(cfg);
      if (!dump_mesh.empty()) {
        std::ofstream os(dump_mesh);
        if (!os) throw std::invalid_argument("cannot open " + dump_mesh);
        pairspec::write_mesh(os, *sys.mesh);
      }
      if (!dump_matrices.empty()) {
        std::ofstream ok(dump_matrices + "_K.txt"), om(dump_matrices + "_M.txt");
        if (!ok || !om) throw std::invalid_argument("cannot open " + dump_matrices + "_*.txt");
        pairspec::write_matrix(ok, sys.stiffness);
        pairspec::write_matrix(om, sys.mass);
      }
      const pairspec::SolveOutcome out = pairspec::run_solve(cfg, sys);
      if (format == "csv")
        std::cout << pairspec::solve_csv(out.report);
      else
        std::cout << out.report.dump(2) << '\n';
      if (!out.solver_ok) return 3;
      return out.pass ? 0 : 1;
    }

    if (count->parsed()) {
      pairspec::SolveConfig cfg = to_config(count_mesh);
      const pairspec::AssembledSystem<double> sys = pairspec::build_system(cfg);
      const pairspec::InertiaCount ic =
          pairspec::count_below_resolved(sys.stiffness, sys.mass, E);
      pairspec::ordered_json j;
      j["domain"] = pairspec::to_string(sys.mesh->spec.kind);
      j["sector"] = pairspec::to_string(cfg.sector);
      j["d"] = cfg.d;
      j["L"] = cfg.L;
      j["h"] = cfg.h;
      j["snapped_width"] = sys.mesh->spec.snapped_half_width;
      j["E"] = E;
      j["count"] = ic.count;
      j["boundary"] = ic.boundary;
      std::cout << j.dump(2) << '\n';
      if (ic.boundary) {
        std::cerr << "E sits numerically on an eigenvalue; count unreliable\n";
        return 3;
      }
      return 0;
    }

    if (verify->parsed()) {
      const pairspec::VerifyOutcome out = pairspec::verify_theorem(vcfg);
      if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw std::invalid_argument("cannot open " + out_path);
        os << out.report.dump(2) << '\n';
      }
      std::cout << out.report.dump(2) << '\n';
      if (!out.solver_ok) return 3;
      return out.pass ? 0 : 1;
    }

    if (sweep->parsed()) {
      if (sweep_format != "json" && sweep_format != "csv")
        throw std::invalid_argument("--format must be json or csv");
      std::ifstream is(plan_path);
      nlohmann::json plan_json;
      try {
        is >> plan_json;
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("sweep plan: ") + e.what());
      }
      pairspec::SweepPlan plan = pairspec::parse_sweep_plan(plan_json);
      if (sweep->count("--seed") > 0) plan.seed = sweep_seed;
      const pairspec::SweepOutcome out = pairspec::run_sweep(plan);
      if (sweep_format == "csv")
        std::cout << pairspec::sweep_csv(out.table);
      else
        std::cout << out.table.dump(2) << '\n';
      return out.all_ok ? 0 : 3;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
