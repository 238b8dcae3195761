#include "tabsolve/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tabsolve/bench.hpp"

namespace tabsolve {

namespace {

LayoutSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::vector<Strategy> parse_strategies(const std::string& csv) {
  std::vector<Strategy> out;
  std::istringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto s = strategy_from_token(tok);
    if (!s) throw CLI::ValidationError("--strategies", "unknown strategy: " + tok);
    out.push_back(*s);
  }
  if (out.empty())
    throw CLI::ValidationError("--strategies", "no strategies given");
  return out;
}

// Suite loaded back from a directory of .spec files; run indices restart
// per constraint count, in filename order.
std::vector<GeneratedSpec> load_suite(const std::string& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".spec")
      paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw std::runtime_error("no .spec files in " + dir);

  std::vector<GeneratedSpec> suite;
  std::map<int, int> counter;
  for (const auto& p : paths) {
    GeneratedSpec g;
    g.spec = load_spec(p.string());
    g.constraints = static_cast<int>(g.spec.constraints.size());
    g.index = counter[g.constraints]++;
    suite.push_back(std::move(g));
  }
  return suite;
}

double soft_objective(const LayoutSpec& spec, const Vector& errors,
                      bool squared) {
  double obj = 0;
  for (size_t i = 0; i < spec.constraints.size(); ++i) {
    const auto& c = spec.constraints[i];
    if (c.hard()) continue;
    obj += *c.penalty * (squared ? errors(i) * errors(i) : errors(i));
  }
  return obj;
}

int cmd_solve(const std::string& path, const std::string& strategy_tok,
              double tol, double mu, double eps, std::ostream& out) {
  const LayoutSpec spec = load_spec(path);
  const Strategy st = *strategy_from_token(strategy_tok);
  SolveOptions opts;
  opts.barrier.mu = mu;
  opts.barrier.eps = eps;
  const Solution sol = solve_spec(spec, st, opts);

  out << "status: " << to_string(sol.status) << '\n';
  out << "iterations: " << sol.iterations << '\n';
  out << "objective: "
      << format_double(
             soft_objective(spec, sol.errors, st != Strategy::Simplex))
      << '\n';
  for (int i = 0; i < spec.var_count; ++i) {
    const std::string& name = spec.var_names[i];
    out << (name.empty() ? "x" + std::to_string(i) : name) << " = "
        << format_double(sol.x(i)) << '\n';
  }
  for (size_t i = 0; i < spec.constraints.size(); ++i)
    out << "error[" << i << "] = " << format_double(sol.errors(i)) << '\n';
  out << "suboptimal (tol " << format_double(tol)
      << "): " << count_suboptimal(spec, sol.x, tol) << '\n';
  return sol.status == SolveStatus::Optimal ? 0 : 1;
}

int cmd_fit(const std::string& csv_path, const std::string& strategy_tok,
            std::ostream& out) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open " + csv_path);
  const auto records = read_csv(in);

  std::vector<Strategy> wanted;
  if (!strategy_tok.empty()) {
    wanted.push_back(*strategy_from_token(strategy_tok));
  } else {
    for (Strategy s :
         {Strategy::InteriorPoint, Strategy::ActiveSet, Strategy::Simplex})
      for (const auto& r : records)
        if (r.strategy == s) {
          wanted.push_back(s);
          break;
        }
  }

  std::vector<std::pair<Strategy, RegressionFit>> fits;
  for (Strategy s : wanted) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records)
      if (r.strategy == s && r.status != "error")
        pts.emplace_back(static_cast<double>(r.constraints), r.time_ms);
    fits.emplace_back(s, fit_cubic(pts));
  }
  out << format_fit_table(fits);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"tabsolve: hard/soft linear layout constraints, three solvers"};
  app.require_subcommand(1);

  GenConfig cfg;
  std::string out_dir = "specs";
  auto* gen = app.add_subcommand("generate", "write a suite of random layout specs");
  gen->add_option("--min", cfg.min_size, "smallest constraint count");
  gen->add_option("--max", cfg.max_size, "largest constraint count");
  gen->add_option("--step", cfg.step, "constraint-count increment");
  gen->add_option("--per-size", cfg.per_size, "specs per size");
  gen->add_option("--seed", cfg.seed, "suite seed");
  gen->add_option("--out", out_dir, "output directory");

  std::string strategy_tok = "ip";
  double tol = 1e-3, mu = 10.0, eps = 1e-6;
  std::string spec_path;
  auto* solve = app.add_subcommand("solve", "solve one spec file");
  solve->add_option("--strategy", strategy_tok, "ip|as|simplex")
      ->check(CLI::IsMember({"ip", "as", "simplex"}));
  solve->add_option("--tol", tol, "sub-optimality tolerance");
  solve->add_option("--mu", mu, "barrier multiplier (ip)");
  solve->add_option("--eps", eps, "barrier duality gap target (ip)");
  solve->add_option("file", spec_path, "layout spec file")
      ->required()
      ->check(CLI::ExistingFile);

  std::string strategies_csv = "ip,as,simplex";
  int repeats = 3;
  std::string csv_out, specs_dir;
  auto* bench = app.add_subcommand("bench", "time strategies over a spec suite");
  bench->add_option("--strategies", strategies_csv, "comma list of ip|as|simplex");
  bench->add_option("--tol", tol, "sub-optimality tolerance");
  bench->add_option("--repeats", repeats, "timings per solve (median kept)");
  bench->add_option("--out", csv_out, "CSV output path (default stdout)");
  bench->add_option("--specs", specs_dir, "directory of .spec files")
      ->check(CLI::ExistingDirectory);
  bench->add_option("--min", cfg.min_size, "smallest constraint count");
  bench->add_option("--max", cfg.max_size, "largest constraint count");
  bench->add_option("--step", cfg.step, "constraint-count increment");
  bench->add_option("--per-size", cfg.per_size, "specs per size");
  bench->add_option("--seed", cfg.seed, "suite seed");

  std::string csv_path, fit_strategy;
  auto* fit = app.add_subcommand("fit", "cubic time model from a bench CSV");
  fit->add_option("csv", csv_path, "bench CSV file")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--strategy", fit_strategy, "fit only this strategy")
      ->check(CLI::IsMember({"ip", "as", "simplex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const auto paths = write_suite(generate_suite(cfg), out_dir);
      out << "wrote " << paths.size() << " specs to " << out_dir << '\n';
      return 0;
    }
    if (solve->parsed())
      return cmd_solve(spec_path, strategy_tok, tol, mu, eps, out);
    if (bench->parsed()) {
      const auto strategies = parse_strategies(strategies_csv);
      const auto suite =
          specs_dir.empty() ? generate_suite(cfg) : load_suite(specs_dir);
      const auto records = run_bench(suite, strategies, tol, repeats);
      if (csv_out.empty()) {
        write_csv(records, out);
      } else {
        std::ofstream f(csv_out);
        if (!f) throw std::runtime_error("cannot write " + csv_out);
        write_csv(records, f);
        out << "wrote " << records.size() << " records to " << csv_out << '\n';
      }
      return 0;
    }
    if (fit->parsed()) return cmd_fit(csv_path, fit_strategy, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace tabsolve
