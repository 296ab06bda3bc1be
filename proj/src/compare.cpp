#include "noisefid/harness.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

namespace noisefid::harness {

namespace {

using oracle::ChannelKind;
using oracle::FormulaKey;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  }
  return v;
}

struct GridPoint {
  std::string label;
  Family family;
  std::vector<NamedParam> params;
};

std::vector<GridPoint> key_grid(const FormulaKey& key, const ProtocolSpec& spec, int grid) {
  std::vector<GridPoint> pts;
  switch (key.channel) {
    case ChannelKind::AD:
    case ChannelKind::PD: {
      const Family f = key.channel == ChannelKind::AD ? Family::AD : Family::PD;
      for (double eta : linspace(0.0, 1.0, grid)) {
        pts.push_back({"", f, {{"eta", eta}}});
      }
      break;
    }
    case ChannelKind::CR:
    case ChannelKind::CD: {
      const bool rot = key.channel == ChannelKind::CR;
      const Family f = rot ? Family::CR : Family::CD;
      const std::string base = rot ? "theta" : "phi";
      const auto axis = linspace(0.0, rot ? std::numbers::pi : 2.0 * std::numbers::pi, grid);
      if (spec.slot_count() == 1) {
        for (double a : axis) {
          pts.push_back({"", f, {{base + "1", a}}});
        }
      } else {
        for (double a : axis) {
          for (double b : axis) {
            pts.push_back({"", f, {{base + "1", a}, {base + "2", b}}});
          }
        }
      }
      break;
    }
    case ChannelKind::Pauli: {
      const std::pair<const char*, Family> variants[] = {
          {"bit_flip", Family::BitFlip},
          {"phase_flip", Family::PhaseFlip},
          {"bit_phase_flip", Family::BitPhaseFlip},
          {"depolarizing", Family::Depolarizing}};
      for (const auto& [label, f] : variants) {
        for (double pp : linspace(0.0, 1.0, grid)) {
          pts.push_back({label, f, {{"pprime", pp}}});
        }
      }
      // Whole simplex on a lattice of step 1/5.
      constexpr int kSteps = 5;
      for (int a = 0; a <= kSteps; ++a) {
        for (int b = 0; a + b <= kSteps; ++b) {
          for (int c = 0; a + b + c <= kSteps; ++c) {
            const int d = kSteps - a - b - c;
            pts.push_back({"general",
                           Family::Pauli,
                           {{"p1", a / double(kSteps)},
                            {"p2", b / double(kSteps)},
                            {"p3", c / double(kSteps)},
                            {"p4", d / double(kSteps)}}});
          }
        }
      }
      break;
    }
    case ChannelKind::SGAD: {
      for (double eta : linspace(0.0, 1.0, grid)) {
        for (double phi : {0.0, std::numbers::pi / 8.0, 1.0}) {
          pts.push_back({"ad_limit",
                         Family::SGAD,
                         {{"lambda", eta}, {"mu", 0.0}, {"nu", 0.0}, {"Q", 1.0}, {"Phi", phi}}});
        }
      }
      break;
    }
  }
  return pts;
}

ComparePoint evaluate_point(const ProtocolSpec& spec, const FormulaKey& key, const GridPoint& gp,
                            const OracleFn& oracle_fn) {
  const PointSetup setup = setup_point(spec, gp.family, gp.params);
  ComparePoint cp;
  cp.label = gp.label;
  cp.params = setup.oracle_params;
  cp.numeric = average_fidelity(spec, setup.noise);
  cp.analytic = oracle_fn(key, setup.oracle_params);
  cp.abs_diff = std::abs(cp.numeric - cp.analytic);
  return cp;
}

std::string describe(const oracle::Params& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    s += (s.empty() ? "" : " ") + k + "=" + format_number(v);
  }
  return s;
}

}  // namespace

bool CompareReport::any_non_sgad_failure() const {
  for (const auto& k : keys) {
    if (k.key.channel != ChannelKind::SGAD && !k.pass) {
      return true;
    }
  }
  return false;
}

CompareReport cmd_compare(const CompareOptions& opts) {
  if (opts.grid < 2) {
    throw ConfigError("compare grid must have at least 2 points per parameter");
  }
  if (!(opts.tolerance > 0.0)) {
    throw ConfigError("compare tolerance must be positive");
  }
  const OracleFn oracle_fn = opts.oracle ? opts.oracle : OracleFn(&oracle::eval);

  CompareReport report;
  report.tolerance = opts.tolerance;
  report.grid = opts.grid;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (const FormulaKey& key : oracle::all_keys()) {
    const ProtocolSpec spec = protocol_by_id(oracle::protocol_for_scheme(key.scheme));
    KeyComparison kc;
    kc.key = key;
    for (const GridPoint& gp : key_grid(key, spec, opts.grid)) {
      ComparePoint cp = evaluate_point(spec, key, gp, oracle_fn);
      ++kc.points;
      if (!(cp.abs_diff <= kc.max_abs_diff)) {
        kc.max_abs_diff = cp.abs_diff;
      }
      if (!(cp.abs_diff < opts.tolerance)) {
        kc.failures.push_back(std::move(cp));
      }
    }
    kc.pass = kc.failures.empty();

    if (key.channel == ChannelKind::SGAD) {
      for (std::size_t i = 0; i < opts.sgad_general_points; ++i) {
        GridPoint gp{"general",
                     Family::SGAD,
                     {{"lambda", unit(rng)},
                      {"mu", unit(rng)},
                      {"nu", unit(rng)},
                      {"Q", unit(rng)},
                      {"Phi", 2.0 * std::numbers::pi * unit(rng)}}};
        ComparePoint cp = evaluate_point(spec, key, gp, oracle_fn);
        if (!(cp.abs_diff <= opts.sgad_discrepancy_threshold)) {
          report.sgad_discrepancies.emplace_back(key, std::move(cp));
        }
      }
    }
    report.keys.push_back(std::move(kc));
  }
  return report;
}

void print_compare_report(std::ostream& os, const CompareReport& report) {
  os << "# engine vs closed form, grid " << report.grid << ", tolerance "
     << format_number(report.tolerance) << '\n';
  for (const auto& k : report.keys) {
    os << (k.pass ? "PASS " : "FAIL ") << k.key.str() << "  points=" << k.points
       << "  max_abs_diff=" << format_number(k.max_abs_diff);
    if (k.key.channel == ChannelKind::SGAD) {
      os << "  (AD-limit points)";
    }
    os << '\n';
    constexpr std::size_t kShown = 5;
    for (std::size_t i = 0; i < k.failures.size() && i < kShown; ++i) {
      const auto& f = k.failures[i];
      os << "    at " << (f.label.empty() ? "" : f.label + ": ") << describe(f.params)
         << "  numeric=" << format_number(f.numeric) << "  analytic=" << format_number(f.analytic)
         << "  diff=" << format_number(f.abs_diff) << '\n';
    }
    if (k.failures.size() > kShown) {
      os << "    ... " << (k.failures.size() - kShown) << " more failing point(s)\n";
    }
  }
  if (!report.sgad_discrepancies.empty()) {
    os << "# SGAD discrepancies at general parameter points (numeric engine is the reference)\n";
    for (const auto& [key, p] : report.sgad_discrepancies) {
      os << "DISCREPANCY " << key.str() << "  " << describe(p.params)
         << "  numeric=" << format_number(p.numeric) << "  analytic=" << format_number(p.analytic)
         << "  diff=" << format_number(p.abs_diff) << '\n';
    }
  }
  os << (report.any_non_sgad_failure() ? "RESULT: FAIL" : "RESULT: PASS") << '\n';
}

}  // namespace noisefid::harness
