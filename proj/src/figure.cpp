#include "noisefid/harness.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

namespace noisefid::harness {

namespace {

constexpr double kPi = std::numbers::pi;

struct Pair {
  const char* first;
  const char* second;
};

// Figure number -> single-qubit scheme, entangled scheme.
std::optional<Pair> figure_pair(char figure) {
  switch (figure) {
    case '1': return Pair{"b92", "bbm"};
    case '2': return Pair{"qka1", "qka2"};
    case '4': return Pair{"lm05", "pp"};
    case '5': return Pair{"qd1", "qd2"};
    default: return std::nullopt;
  }
}

std::vector<double> axis(double a, double b, int n) {
  RangeSpec r{a, b, std::nullopt, static_cast<std::size_t>(n)};
  return r.values();
}

double fidelity_at(const ProtocolSpec& spec, Family f, const std::vector<NamedParam>& point) {
  try {
    return average_fidelity(spec, setup_point(spec, f, point).noise);
  } catch (const RateOutOfRange&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

Table line_panel(const std::string& name, const Pair& pair, Family f, const std::string& xname,
                 double x0, double x1, int n) {
  const ProtocolSpec a = protocol_by_id(pair.first);
  const ProtocolSpec b = protocol_by_id(pair.second);
  Table t{name, {xname, a.id, b.id}, {}};
  for (double x : axis(x0, x1, n)) {
    // A bare theta/phi binds every round to the same angle.
    const std::vector<NamedParam> point{{xname, x}};
    t.rows.push_back({x, fidelity_at(a, f, point), fidelity_at(b, f, point)});
  }
  return t;
}

Table pauli_panel(const std::string& name, const Pair& pair, int n) {
  const std::pair<const char*, Family> variants[] = {{"bit_flip", Family::BitFlip},
                                                     {"phase_flip", Family::PhaseFlip},
                                                     {"bit_phase_flip", Family::BitPhaseFlip},
                                                     {"depolarizing", Family::Depolarizing}};
  const ProtocolSpec specs[] = {protocol_by_id(pair.first), protocol_by_id(pair.second)};
  Table t{name, {"pprime"}, {}};
  for (const auto& s : specs) {
    for (const auto& [label, f] : variants) {
      t.columns.push_back(s.id + "_" + label);
    }
  }
  for (double pp : axis(0.0, 1.0, n)) {
    std::vector<double> row{pp};
    for (const auto& s : specs) {
      for (const auto& [label, f] : variants) {
        row.push_back(fidelity_at(s, f, {{"pprime", pp}}));
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

const ParamRange* binding(const FigureOptions& opts, std::string_view name) {
  for (const auto& b : opts.bindings) {
    if (b.name == name) {
      return &b;
    }
  }
  return nullptr;
}

double scalar_binding(const FigureOptions& opts, std::string_view name, std::string_view id) {
  const ParamRange* b = binding(opts, name);
  if (!b) {
    throw ConfigError("figure " + std::string(id) + " needs --param " + std::string(name) +
                      "=VALUE (SGAD panels take x, r, Phi, Q and optionally p, gt)");
  }
  const auto v = b->range.values();
  if (v.size() != 1) {
    throw ConfigError("figure " + std::string(id) + ": '" + std::string(name) +
                      "' must be a single value");
  }
  return v.front();
}

// Without an explicit p, each bath uses p = (N+1)/(2N+1), which sends both
// lambda and nu to 1 as t -> infinity in the unsqueezed case.
double bath_weight(double x, double r) {
  const double n = squeezed_occupation(x, r);
  return (n + 1.0) / (2.0 * n + 1.0);
}

Table sgad_panel(const std::string& name, const Pair& pair, const FigureOptions& opts,
                 std::string_view id) {
  const double x = scalar_binding(opts, "x", id);
  const double r = scalar_binding(opts, "r", id);
  const double phi = scalar_binding(opts, "Phi", id);
  const double q = scalar_binding(opts, "Q", id);
  const bool fixed_p = binding(opts, "p") != nullptr;
  const double p = fixed_p ? scalar_binding(opts, "p", id) : 0.0;
  const ParamRange* tb = binding(opts, "gt");
  const std::vector<double> times =
      tb ? tb->range.values() : axis(0.0, 5.0, std::max(2, opts.grid));

  const ProtocolSpec a = protocol_by_id(pair.first);
  const ProtocolSpec b = protocol_by_id(pair.second);
  Table t{name,
          {"gt", a.id + "_AD", b.id + "_AD", a.id + "_GAD", b.id + "_GAD", a.id + "_SGAD",
           b.id + "_SGAD"},
          {}};

  const auto physical = [&](double gt, double squeeze) {
    return std::vector<NamedParam>{{"gt", gt},
                                   {"r", squeeze},
                                   {"x", x},
                                   {"p", fixed_p ? p : bath_weight(x, squeeze)},
                                   {"Q", q},
                                   {"Phi", phi}};
  };
  for (double gt : times) {
    const std::vector<NamedParam> ad{{"eta", -std::expm1(-gt)}};
    const auto gad = physical(gt, 0.0);
    const auto sgad = physical(gt, r);
    t.rows.push_back({gt, fidelity_at(a, Family::AD, ad), fidelity_at(b, Family::AD, ad),
                      fidelity_at(a, Family::SGADPhysical, gad),
                      fidelity_at(b, Family::SGADPhysical, gad),
                      fidelity_at(a, Family::SGADPhysical, sgad),
                      fidelity_at(b, Family::SGADPhysical, sgad)});
  }
  return t;
}

Table contour(const std::string& protocol, Family f, int n) {
  const ProtocolSpec spec = protocol_by_id(protocol);
  const bool rot = f == Family::CR;
  const std::string base = rot ? "theta" : "phi";
  const auto ax = axis(0.0, rot ? kPi : 2.0 * kPi, n);
  Table t{"", {base + "1", base + "2", "fidelity"}, {}};
  t.name = "fig_" + protocol + "_" + std::string(to_string(f));
  for (double u : ax) {
    for (double v : ax) {
      t.rows.push_back({u, v, fidelity_at(spec, f, {{base + "1", u}, {base + "2", v}})});
    }
  }
  return t;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (char fig : {'1', '2', '4', '5'}) {
      for (char panel : {'a', 'b', 'c', 'd', 'e', 'f'}) {
        v.push_back(std::string{fig, panel});
      }
    }
    v.push_back("3a");
    v.push_back("3c");
    v.push_back("6");
    return v;
  }();
  return ids;
}

std::vector<Table> make_figure(std::string_view id, const FigureOptions& opts) {
  if (opts.grid < 2 || opts.contour_grid < 2) {
    throw ConfigError("figure grids need at least 2 points");
  }
  const std::string name = "fig" + std::string(id);
  if (id == "3a" || id == "3c") {
    Table t = contour("qka2", id == "3a" ? Family::CR : Family::CD, opts.contour_grid);
    t.name = name;
    return {t};
  }
  if (id == "6") {
    std::vector<Table> out;
    for (const char* p : {"qd1", "qd2"}) {
      for (Family f : {Family::CR, Family::CD}) {
        Table t = contour(p, f, opts.contour_grid);
        t.name = name + "_" + p + "_" + std::string(to_string(f));
        out.push_back(std::move(t));
      }
    }
    return out;
  }
  if (id.size() == 2) {
    if (const auto pair = figure_pair(id[0])) {
      switch (id[1]) {
        case 'a': return {line_panel(name, *pair, Family::AD, "eta", 0.0, 1.0, opts.grid)};
        case 'b': return {line_panel(name, *pair, Family::PD, "eta", 0.0, 1.0, opts.grid)};
        case 'c': return {line_panel(name, *pair, Family::CR, "theta", 0.0, kPi, opts.grid)};
        case 'd': return {line_panel(name, *pair, Family::CD, "phi", 0.0, 2.0 * kPi, opts.grid)};
        case 'e': return {pauli_panel(name, *pair, opts.grid)};
        case 'f': return {sgad_panel(name, *pair, opts, id)};
        default: break;
      }
    }
  }
  throw ConfigError("unknown figure id '" + std::string(id) + "'");
}

std::vector<std::filesystem::path> cmd_figure(std::string_view id,
                                              const std::filesystem::path& out_dir,
                                              const FigureOptions& opts) {
  const auto tables = make_figure(id, opts);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& t : tables) {
    const auto path = out_dir / (t.name + ".csv");
    std::ofstream os(path, std::ios::binary);
    if (!os) {
      throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    write_table(os, t);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace noisefid::harness
