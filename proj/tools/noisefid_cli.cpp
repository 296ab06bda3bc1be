// noisefid: sweeps, engine/oracle comparison, figure data and self-checks.

#include "noisefid/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

namespace nh = noisefid::harness;

namespace {

enum Exit { kOk = 0, kCompareFailed = 1, kBadInput = 2 };

std::vector<nh::ParamRange> parse_params(const std::vector<std::string>& flags) {
  std::vector<nh::ParamRange> out;
  for (const auto& f : flags) {
    out.push_back(nh::parse_param_flag(f));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelity of quantum communication protocols under noise"};
  app.require_subcommand(1);

  std::string protocol, channel, out, config;
  std::vector<std::string> params;
  unsigned threads = 1;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a protocol/channel over a parameter grid");
  sweep->add_option("--protocol", protocol, "Protocol id (b92, bbm, qka1, qka2, lm05, pp, qd1, qd2)");
  sweep->add_option("--channel", channel, "Channel family (AD, PD, CR, CD, Pauli, depolarizing, ...)");
  sweep->add_option("--param", params, "name=start:stop:step, name=start:stop#count or name=value")
      ->take_all();
  sweep->add_option("--out", out, "Output CSV (default: stdout)");
  sweep->add_option("--config", config, "JSON config; flags override its values")
      ->check(CLI::ExistingFile);
  auto* threads_opt = sweep->add_option("--threads", threads, "Worker threads (0: all cores)");

  double tolerance = 1e-9;
  int grid = 21;
  auto* compare = app.add_subcommand("compare", "Engine against the closed-form fidelities");
  compare->add_option("--tolerance", tolerance, "Pass threshold on |numeric - analytic|");
  compare->add_option("--grid", grid, "Points per parameter axis")->check(CLI::Range(2, 1001));

  std::string figure_id;
  std::string figure_dir = ".";
  int figure_grid = 101;
  std::vector<std::string> bindings;
  auto* figure = app.add_subcommand("figure", "Write the curve data behind one figure panel");
  figure->add_option("id", figure_id, "Figure id (1a..5f, 3a, 3c, 6)")->required();
  figure->add_option("--out", figure_dir, "Output directory");
  figure->add_option("--grid", figure_grid, "Points along the x axis (contours: per axis)")
      ->check(CLI::Range(2, 100001));
  figure->add_option("--param", bindings, "SGAD panel bindings: x, r, Phi, Q, p, gt")->take_all();

  auto* validate = app.add_subcommand("validate", "Channel algebra self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*sweep) {
      nh::SweepConfig cfg;
      if (!config.empty()) {
        cfg = nh::load_sweep_config(config);
      }
      if (!protocol.empty()) cfg.protocol = protocol;
      if (!channel.empty()) cfg.channel = channel;
      if (!out.empty()) cfg.out = out;
      if (*threads_opt) cfg.threads = threads;
      if (!params.empty()) {
        // Flags replace same-named config entries and append the rest.
        for (auto& p : parse_params(params)) {
          auto it = std::find_if(cfg.params.begin(), cfg.params.end(),
                                 [&](const nh::ParamRange& q) { return q.name == p.name; });
          if (it != cfg.params.end()) {
            *it = std::move(p);
          } else {
            cfg.params.push_back(std::move(p));
          }
        }
      }
      if (cfg.protocol.empty() || cfg.channel.empty()) {
        throw nh::ConfigError("sweep needs --protocol and --channel (or a --config naming them)");
      }
      if (cfg.out.empty()) {
        nh::write_csv(std::cout, nh::run_sweep(cfg));
      } else {
        nh::cmd_sweep(cfg);
      }
      return kOk;
    }
    if (*compare) {
      nh::CompareOptions opts;
      opts.grid = grid;
      opts.tolerance = tolerance;
      const auto report = nh::cmd_compare(opts);
      nh::print_compare_report(std::cout, report);
      return report.any_non_sgad_failure() ? kCompareFailed : kOk;
    }
    if (*figure) {
      nh::FigureOptions opts;
      opts.grid = figure_grid;
      if (figure->count("--grid") > 0) {
        opts.contour_grid = figure_grid;
      }
      opts.bindings = parse_params(bindings);
      for (const auto& path : nh::cmd_figure(figure_id, figure_dir, opts)) {
        std::cout << path.string() << '\n';
      }
      return kOk;
    }
    if (*validate) {
      const auto checks = nh::cmd_validate();
      nh::print_checks(std::cout, checks);
      for (const auto& c : checks) {
        if (!c.pass) return kCompareFailed;
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    // Bad names, out-of-range values, unreadable or unwritable files.
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
