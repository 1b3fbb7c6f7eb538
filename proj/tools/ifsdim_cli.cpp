#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ifsdim/config.hpp"
#include "ifsdim/dimension.hpp"
#include "ifsdim/estimators.hpp"
#include "ifsdim/ifs.hpp"
#include "ifsdim/markov.hpp"
#include "ifsdim/measure.hpp"
#include "ifsdim/skew.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAcceptanceFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNotApplicable = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string system;
  double p = std::nan("");
  double q = std::nan("");
  std::vector<double> A;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::int64_t samples = -1;
  std::int64_t burn_in = -1;
  std::string initial;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "Configuration file (key = values)");
  cmd->add_option("--out-dir", o.out_dir,
                  "Output directory (default: $IFSDIM_OUT_DIR or '.')");
  cmd->add_option("--system", o.system, "Built-in system: example1 | cantor | affine");
  cmd->add_option("--p", o.p, "example1 probability parameter, p in (0,1/2)");
  cmd->add_option("--q", o.q, "cantor constant probability, q in (0,1)");
  cmd->add_option("--A", o.A, "example1 set A as interval endpoint pairs");
  cmd->add_option("--seed", o.seed, "RNG seed")->each([&o](const std::string&) {
    o.seed_set = true;
  });
  cmd->add_option("--n,--samples", o.samples, "Sample count");
  cmd->add_option("--burn-in", o.burn_in, "Burn-in steps");
  cmd->add_option("--initial", o.initial, "Initial point or 'uniform'");
}

// Flags override file values.
ifsdim::Config merge(const CommonOpts& o) {
  ifsdim::Config cfg;
  if (!o.config_path.empty()) cfg = ifsdim::Config::from_file(o.config_path);
  auto set1 = [&cfg](const std::string& k, const std::string& v) {
    cfg.set(k, {v});
  };
  if (!o.system.empty()) set1("system", o.system);
  if (!std::isnan(o.p)) set1("p", ifsdim::format_double(o.p));
  if (!std::isnan(o.q)) set1("q", ifsdim::format_double(o.q));
  if (!o.A.empty()) {
    std::vector<std::string> parts;
    for (double v : o.A) parts.push_back(ifsdim::format_double(v));
    cfg.set("A", parts);
  }
  if (o.seed_set) set1("seed", std::to_string(o.seed));
  if (o.samples >= 0) set1("samples", std::to_string(o.samples));
  if (o.burn_in >= 0) set1("burn_in", std::to_string(o.burn_in));
  if (!o.initial.empty()) set1("initial", o.initial);
  return cfg;
}

std::filesystem::path resolve_out_dir(const CommonOpts& o) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv("IFSDIM_OUT_DIR")) return env;
  return ".";
}

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw ifsdim::ConfigError("cannot open output file: " + (dir / name).string());
  return os;
}

int cmd_simulate(const CommonOpts& o) {
  auto cfg = merge(o);
  auto sys = ifsdim::system_from_config(cfg);
  auto rc = ifsdim::run_config_from(cfg);
  auto traj = ifsdim::sample_trajectory(sys, rc.chain);
  auto os = open_out(resolve_out_dir(o), "trajectory.csv");
  ifsdim::write_trajectory_csv(os, traj);
  std::cout << "wrote " << traj.size() << " rows (seed " << rc.chain.seed << ")\n";
  return kExitOk;
}

int cmd_invariant(const CommonOpts& o, std::vector<std::uint64_t> kb_n,
                  std::uint64_t coarsen_cells) {
  auto cfg = merge(o);
  auto sys = ifsdim::system_from_config(cfg);
  auto rc = ifsdim::run_config_from(cfg);
  if (!cfg.has("kb_n") && kb_n.empty()) kb_n = {10, 100, 1000};
  if (cfg.has("kb_n") && kb_n.empty()) {
    for (double v : cfg.get_doubles("kb_n", {}))
      kb_n.push_back(static_cast<std::uint64_t>(v));
  }
  if (kb_n.empty())
    throw ifsdim::ConfigError("invariant: the n list must be nonempty");
  const double x0 = rc.chain.initial_point.value_or(
      0.5 * (sys.domain().lo + sys.domain().hi));
  auto mu0 = ifsdim::EmpiricalMeasure::dirac(x0);
  auto dir = resolve_out_dir(o);
  auto conv = open_out(dir, "convergence.csv");
  conv << "n,fm_distance\n";
  ifsdim::EmpiricalMeasure last;
  for (std::uint64_t n : kb_n) {
    auto mu_n = ifsdim::krylov_bogolyubov(sys, mu0, n, coarsen_cells);
    auto pushed = ifsdim::push_forward(sys, mu_n);
    if (coarsen_cells) pushed = pushed.coarsened(sys.domain(), coarsen_cells);
    const double d = ifsdim::fortet_mourier(mu_n, pushed);
    conv << n << ',' << ifsdim::format_double(d) << '\n';
    last = mu_n;
  }
  auto mos = open_out(dir, "invariant_measure.csv");
  ifsdim::write_measure_csv(mos, last);
  std::cout << "wrote convergence.csv and invariant_measure.csv (seed "
            << rc.chain.seed << ")\n";
  return kExitOk;
}

int cmd_bound(const CommonOpts& o) {
  auto cfg = merge(o);
  auto sys = ifsdim::system_from_config(cfg);
  auto rc = ifsdim::run_config_from(cfg);
  auto traj = ifsdim::sample_trajectory(sys, rc.chain);
  auto mu = ifsdim::trajectory_measure(traj);
  auto table = ifsdim::build_estimate_table(sys, mu, rc.N_max, rc.deltas,
                                            rc.theta, rc.word_budget);
  auto rep = ifsdim::assemble_report(sys, mu, table, rc);
  auto dir = resolve_out_dir(o);
  {
    auto os = open_out(dir, "estimate_table.csv");
    ifsdim::write_table_csv(os, table);
  }
  {
    auto os = open_out(dir, "bound_report.txt");
    os << "seed " << rc.chain.seed << '\n';
    ifsdim::write_report(os, rep);
  }
  {
    auto os = open_out(dir, "bound_report.csv");
    ifsdim::write_report_csv_row(os, rep);
  }
  std::cout << "seed " << rc.chain.seed << '\n';
  std::cout << "h_N/N trend:";
  for (std::size_t i = 0; i < table.Ns.size(); ++i)
    std::cout << ' '
              << ifsdim::format_double(table.h[i].back() /
                                       static_cast<double>(table.Ns[i]));
  std::cout << "\nfekete_minimum " << ifsdim::format_double(rep.h) << '\n';
  ifsdim::write_report(std::cout, rep);
  if (!rep.applicable) {
    std::cerr << rep.failure_reason << '\n';
    return kExitNotApplicable;
  }
  return kExitOk;
}

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

int cmd_check_example(double p, std::uint64_t seed) {
  using namespace ifsdim;
  auto sys = example1_system(p, IntervalSet({{0.0, 0.5}}));
  std::vector<Check> checks;
  auto record = [&checks](const std::string& name, bool ok, std::string detail) {
    checks.push_back({name, ok, std::move(detail)});
  };

  RunConfig rc;
  rc.chain.seed = seed;
  auto traj = sample_trajectory(sys, rc.chain);
  auto mu = trajectory_measure(traj);

  // Closed-form target: H(p)/log 3 with natural-log binary entropy.
  const double entropy = -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
  const double closed_form = entropy / std::log(3.0);

  // Lyapunov exactness on the full (N, delta) grid.
  {
    bool ok = true;
    double worst = 0.0;
    for (int N = 1; N <= 5 && ok; ++N)
      for (double d : rc.deltas) {
        const double v = lambda_N_estimate(sys, mu, N, d, rc.theta);
        worst = std::max(worst, std::abs(v + N * std::log(3.0)));
        if (worst > 1e-12) ok = false;
      }
    record("lambda_exactness", ok, "max |lambda_N + N log 3| = " + format_double(worst));
  }

  auto table = build_estimate_table(sys, mu, rc.N_max, rc.deltas, rc.theta);
  auto rep = assemble_report(sys, mu, table, rc);

  record("bound_matches_closed_form",
         rep.applicable && std::abs(rep.bound - closed_form) <= 0.02,
         "bound = " + format_double(rep.bound) +
             ", closed form = " + format_double(closed_form));
  record("empirical_dim_below_bound",
         rep.applicable && rep.empirical_dim <= rep.bound + 0.05,
         "empirical = " + format_double(rep.empirical_dim));

  // Triadic atom-freeness bound.
  {
    bool ok = true;
    double worst_excess = -1.0;
    const double n = static_cast<double>(rc.chain.sample_count);
    for (int level = 1; level <= 6 && ok; ++level) {
      const double width = std::pow(3.0, -level);
      const double cap = std::pow(1.0 - p, level);
      const double slack = 3.0 * std::sqrt(cap / n);
      for (int k = 0; k * width < 1.0; ++k) {
        const double m = mu.mass_in(k * width, (k + 1) * width);
        worst_excess = std::max(worst_excess, m - cap - slack);
        if (m > cap + slack) ok = false;
      }
    }
    record("triadic_atom_bound", ok,
           "worst mass excess = " + format_double(worst_excess));
  }

  // Ergodicity diagnostic over spread-out starts.
  {
    std::vector<NamedObservable> obs{
        {"log_p", [&sys](double x, int i) { return std::log(sys.probability(i, x)); }},
        {"x", [](double x, int) { return x; }},
        {"x2", [](double x, int) { return x * x; }}};
    std::vector<double> starts;
    for (int k = 0; k < 10; ++k) starts.push_back(k / 9.0);
    auto erg = ergodicity_diagnostic(sys, obs, starts, 100000, 0.03, seed + 1);
    double max_spread = 0.0;
    for (const auto& row : erg.rows) max_spread = std::max(max_spread, row.spread);
    record("ergodicity_diagnostic", erg.consistent,
           "max spread = " + format_double(max_spread));
  }

  std::cout << "check-example p=" << format_double(p) << " seed=" << seed << '\n';
  bool all_ok = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail
              << ")\n";
    all_ok = all_ok && c.passed;
  }
  return all_ok ? kExitOk : kExitAcceptanceFailure;
}

int cmd_fm_distance(const std::string& path_a, const std::string& path_b) {
  std::ifstream a(path_a), b(path_b);
  if (!a) throw ifsdim::ConfigError("cannot open " + path_a);
  if (!b) throw ifsdim::ConfigError("cannot open " + path_b);
  auto mu = ifsdim::read_measure_csv(a);
  auto nu = ifsdim::read_measure_csv(b);
  std::cout << ifsdim::format_double(ifsdim::fortet_mourier(mu, nu)) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ifsdim: dimension bounds for place-dependent IFS invariant measures"};
  app.require_subcommand(1);

  CommonOpts sim_o, inv_o, bound_o;
  auto* sim = app.add_subcommand("simulate", "Sample the IFS Markov chain to CSV");
  add_common(sim, sim_o);

  auto* inv = app.add_subcommand(
      "invariant", "Krylov-Bogolyubov averaging with convergence diagnostics");
  add_common(inv, inv_o);
  std::vector<std::uint64_t> kb_n;
  std::uint64_t coarsen_cells = 1u << 20;
  inv->add_option("--kb-n", kb_n, "Averaging lengths n");
  inv->add_option("--coarsen-cells", coarsen_cells,
                  "Support coarsening grid cells (0 = exact)");

  auto* bnd = app.add_subcommand(
      "bound", "Full pipeline: sample, estimate, extrapolate, bound, verify");
  add_common(bnd, bound_o);

  auto* chk = app.add_subcommand("check-example",
                                 "Run the built-in validation battery");
  double chk_p = 0.3;
  std::uint64_t chk_seed = 7;
  chk->add_option("--p", chk_p, "Probability parameter in (0,1/2)");
  chk->add_option("--seed", chk_seed, "RNG seed");

  auto* fmd = app.add_subcommand("fm-distance",
                                 "Fortet-Mourier distance of two measure CSVs");
  std::string fm_a, fm_b;
  fmd->add_option("a", fm_a, "First measure CSV")->required();
  fmd->add_option("b", fm_b, "Second measure CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim_o);
    if (inv->parsed()) return cmd_invariant(inv_o, kb_n, coarsen_cells);
    if (bnd->parsed()) return cmd_bound(bound_o);
    if (chk->parsed()) return cmd_check_example(chk_p, chk_seed);
    if (fmd->parsed()) return cmd_fm_distance(fm_a, fm_b);
  } catch (const ifsdim::BoundNotApplicable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotApplicable;
  } catch (const ifsdim::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}
