#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rydberg/cli.hpp"

namespace cli = rydberg::cli;

namespace {

void add_state_options(CLI::App* sub, double& D, double& Z, int& l, std::vector<int>& mu) {
  sub->add_option("--D", D, "dimension (integer >= 2)")->required();
  sub->add_option("--Z", Z, "nuclear charge")->capture_default_str();
  sub->add_option("--l", l, "orbital quantum number")->capture_default_str();
  sub->add_option("--mu", mu, "hyperquantum chain mu_2 ... mu_{D-1} (default all zero)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi, Shannon and Tsallis entropies of D-dimensional hydrogenic (Rydberg) states"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::Options opt;
  app.add_option("--tol", opt.tol, "relative quadrature tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", opt.out, "output file (default stdout)");
  app.add_option("--threads", opt.threads, "worker threads")->capture_default_str()->check(CLI::Range(1, 1024));

  cli::EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "entropies of one state");
  add_state_options(eval, ev.D, ev.Z, ev.l, ev.mu);
  eval->add_option("--n", ev.n, "principal quantum number")->required();
  eval->add_option("--p", ev.p, "entropic order (1 = Shannon)")->required();
  eval->add_option("--backend", ev.backend, "exact | asymptotic")->capture_default_str();

  cli::CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "exact norm against the leading asymptotic term over n");
  add_state_options(compare, cmp.D, cmp.Z, cmp.l, cmp.mu);
  compare->add_option("--p", cmp.p, "entropic order")->required();
  compare->add_option("--n-from", cmp.n_from)->capture_default_str();
  compare->add_option("--n-to", cmp.n_to)->capture_default_str();
  compare->add_option("--n-step", cmp.n_step)->capture_default_str();

  cli::SweepSpec sw;
  std::string preset;
  double from = 0, to = 0, step = 1;
  std::vector<double> values;
  auto* sweep = app.add_subcommand("sweep", "entropies along one parameter axis");
  sweep->add_option("--preset", preset, "fig1 | fig2 | fig3 | fig4");
  sweep->add_option("--axis", sw.axis, "n | p | Z | D")->capture_default_str();
  sweep->add_option("--values", values, "explicit axis values");
  sweep->add_option("--from", from);
  sweep->add_option("--to", to);
  sweep->add_option("--step", step)->capture_default_str();
  sweep->add_option("--D", sw.D)->capture_default_str();
  sweep->add_option("--n", sw.n)->capture_default_str();
  sweep->add_option("--l", sw.l)->capture_default_str();
  sweep->add_option("--mu", sw.mu);
  sweep->add_option("--Z", sw.Z)->capture_default_str();
  sweep->add_option("--p", sw.p)->capture_default_str();
  sweep->add_option("--backend", sw.backend, "exact | asymptotic | both")->capture_default_str();
  sweep->add_flag("--z-translation", sw.z_translation, "derive Z != 1 rows from Z = 1");
  sweep->add_option("--series", sw.series, "label for the series column");

  cli::RegimeArgs rg;
  auto* regimes = app.add_subcommand("regimes", "regime diagram over (D, p)");
  regimes->add_option("--D-from", rg.D_from)->capture_default_str();
  regimes->add_option("--D-to", rg.D_to)->capture_default_str();
  regimes->add_option("--D-step", rg.D_step)->capture_default_str();
  regimes->add_option("--p-from", rg.p_from)->capture_default_str();
  regimes->add_option("--p-to", rg.p_to)->capture_default_str();
  regimes->add_option("--p-step", rg.p_step)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_invalid;
  }

  if (eval->parsed()) return cli::cmd_eval(ev, opt, std::cout, std::cerr);
  if (compare->parsed()) return cli::cmd_compare(cmp, opt, std::cout, std::cerr);
  if (regimes->parsed()) return cli::cmd_regimes(rg, opt, std::cout, std::cerr);

  return cli::guarded(std::cerr, [&] {
    std::vector<cli::SweepSpec> specs;
    if (!preset.empty()) {
      specs = cli::sweep_preset(preset);
    } else {
      sw.values = values.empty() ? cli::progression(from, to, step) : values;
      if (sw.series.empty()) sw.series = "custom";
      specs.push_back(sw);
    }
    return cli::cmd_sweep(specs, opt, std::cout, std::cerr);
  });
}
