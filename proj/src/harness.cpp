#include "noisefid/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace noisefid::harness {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_double(std::string_view text, std::string_view context) {
  const std::string s(text);
  if (s.empty()) {
    throw ConfigError("empty number in '" + std::string(context) + "'");
  }
  // Named constants keep angle ranges readable on the command line.
  const std::string l = lower(s);
  if (l == "pi") return std::numbers::pi;
  if (l == "-pi") return -std::numbers::pi;
  if (l == "2pi") return 2.0 * std::numbers::pi;
  if (l == "pi/2") return std::numbers::pi / 2.0;
  if (l == "pi/4") return std::numbers::pi / 4.0;
  if (l == "pi/8") return std::numbers::pi / 8.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "' in '" + std::string(context) + "'");
  }
  if (used != s.size()) {
    throw ConfigError("trailing characters in '" + s + "' in '" + std::string(context) + "'");
  }
  return v;
}

const double* find(const std::vector<NamedParam>& point, std::string_view name) {
  for (const auto& p : point) {
    if (p.name == name) {
      return &p.value;
    }
  }
  return nullptr;
}

double need(const std::vector<NamedParam>& point, std::string_view name, Family f) {
  if (const double* v = find(point, name)) {
    return *v;
  }
  throw ConfigError("channel " + std::string(to_string(f)) + " needs parameter '" +
                    std::string(name) + "'");
}

// Per-slot angles: "theta1", "theta2" win over a bare "theta" that binds
// every slot.
std::vector<double> slot_angles(const std::vector<NamedParam>& point, std::string_view base,
                                int slots, Family f) {
  std::vector<double> out;
  const double* shared = find(point, base);
  for (int k = 1; k <= slots; ++k) {
    const std::string name = std::string(base) + std::to_string(k);
    if (const double* v = find(point, name)) {
      out.push_back(*v);
    } else if (shared) {
      out.push_back(*shared);
    } else {
      throw ConfigError("channel " + std::string(to_string(f)) + " needs '" + name + "' or '" +
                        std::string(base) + "'");
    }
  }
  return out;
}

oracle::Params angle_params(std::string_view base, const std::vector<double>& angles) {
  oracle::Params p;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    p[std::string(base) + std::to_string(k + 1)] = angles[k];
  }
  return p;
}

oracle::Params pauli_params(const PauliWeights& w) {
  return {{"p1", w.p1}, {"p2", w.p2}, {"p3", w.p3}, {"p4", w.p4}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Ranges

void RangeSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw ConfigError("range bounds must be finite");
  }
  if (step && count) {
    throw ConfigError("range takes a step or a count, not both");
  }
  if (step) {
    if (!(*step > 0.0) || !std::isfinite(*step)) {
      throw ConfigError("range step must be positive");
    }
    if (stop < start) {
      throw ConfigError("range stop is below start");
    }
  }
  if (count && *count == 0) {
    throw ConfigError("range count must be positive");
  }
  if (count && *count == 1 && start != stop) {
    throw ConfigError("a one-point range needs start == stop");
  }
  if (!step && !count && start != stop) {
    throw ConfigError("range needs a step or a count");
  }
}

std::vector<double> RangeSpec::values() const {
  validate();
  if (count) {
    std::vector<double> v(*count);
    for (std::size_t i = 0; i < *count; ++i) {
      v[i] = *count == 1 ? start
                         : start + (stop - start) * static_cast<double>(i) /
                                       static_cast<double>(*count - 1);
    }
    if (*count > 1) {
      v.back() = stop;
    }
    return v;
  }
  if (!step) {
    return {start};
  }
  const double span = stop - start;
  const auto n = static_cast<std::size_t>(std::floor(span / *step + 1e-9)) + 1;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = start + static_cast<double>(i) * *step;
  }
  if (std::abs(v.back() - stop) <= 1e-9) {
    v.back() = stop;
  }
  return v;
}

RangeSpec parse_range(std::string_view text) {
  RangeSpec r;
  const auto hash = text.find('#');
  if (hash != std::string_view::npos) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon > hash) {
      throw ConfigError("count range must look like start:stop#count, got '" +
                        std::string(text) + "'");
    }
    r.start = parse_double(text.substr(0, colon), text);
    r.stop = parse_double(text.substr(colon + 1, hash - colon - 1), text);
    const std::string_view c = text.substr(hash + 1);
    std::size_t n = 0;
    const auto res = std::from_chars(c.data(), c.data() + c.size(), n);
    if (res.ec != std::errc() || res.ptr != c.data() + c.size()) {
      throw ConfigError("bad count in range '" + std::string(text) + "'");
    }
    r.count = n;
    r.validate();
    return r;
  }
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon == std::string_view::npos ? colon : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) {
    r.start = r.stop = parse_double(parts[0], text);
  } else if (parts.size() == 3) {
    r.start = parse_double(parts[0], text);
    r.stop = parse_double(parts[1], text);
    r.step = parse_double(parts[2], text);
  } else {
    throw ConfigError("range must be v, start:stop:step or start:stop#count, got '" +
                      std::string(text) + "'");
  }
  r.validate();
  return r;
}

ParamRange parse_param_flag(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("--param expects name=range, got '" + std::string(text) + "'");
  }
  return {std::string(text.substr(0, eq)), parse_range(text.substr(eq + 1))};
}

// ---------------------------------------------------------------------------
// Families

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Identity: return "identity";
    case Family::AD: return "AD";
    case Family::PD: return "PD";
    case Family::CR: return "CR";
    case Family::CD: return "CD";
    case Family::Pauli: return "pauli";
    case Family::Depolarizing: return "depolarizing";
    case Family::BitFlip: return "bit_flip";
    case Family::PhaseFlip: return "phase_flip";
    case Family::BitPhaseFlip: return "bit_phase_flip";
    case Family::SGAD: return "SGAD";
    case Family::SGADPhysical: return "SGAD_physical";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  std::string l = lower(text);
  std::replace(l.begin(), l.end(), '-', '_');
  if (l == "identity" || l == "none") return Family::Identity;
  if (l == "ad") return Family::AD;
  if (l == "pd") return Family::PD;
  if (l == "cr") return Family::CR;
  if (l == "cd") return Family::CD;
  if (l == "pauli") return Family::Pauli;
  if (l == "depolarizing") return Family::Depolarizing;
  if (l == "bit_flip" || l == "bitflip") return Family::BitFlip;
  if (l == "phase_flip" || l == "phaseflip") return Family::PhaseFlip;
  if (l == "bit_phase_flip" || l == "bitphaseflip") return Family::BitPhaseFlip;
  if (l == "sgad") return Family::SGAD;
  if (l == "sgad_physical" || l == "sgadphysical") return Family::SGADPhysical;
  throw ConfigError("unknown channel '" + std::string(text) + "'");
}

std::vector<std::string> family_params(Family f, const ProtocolSpec& spec) {
  switch (f) {
    case Family::Identity:
      return {};
    case Family::AD:
    case Family::PD:
      return {"eta"};
    case Family::CR:
    case Family::CD: {
      std::vector<std::string> names;
      const std::string base = f == Family::CR ? "theta" : "phi";
      for (int k = 1; k <= spec.slot_count(); ++k) {
        names.push_back(base + std::to_string(k));
      }
      return names;
    }
    case Family::Pauli:
      return {"p1", "p2", "p3", "p4"};
    case Family::Depolarizing:
    case Family::BitFlip:
    case Family::PhaseFlip:
    case Family::BitPhaseFlip:
      return {"pprime"};
    case Family::SGAD:
      return {"lambda", "mu", "nu", "Q", "Phi"};
    case Family::SGADPhysical:
      return {"gt", "r", "x", "p", "Q", "Phi"};
  }
  return {};
}

PointSetup setup_point(const ProtocolSpec& spec, Family f, const std::vector<NamedParam>& point) {
  const int slots = spec.slot_count();
  const oracle::Scheme scheme = oracle::scheme_for_protocol(spec.id);
  PointSetup s;
  switch (f) {
    case Family::Identity:
      s.noise = NoiseAssignment::identity(slots);
      return s;
    case Family::AD:
    case Family::PD: {
      const double eta = need(point, "eta", f);
      s.noise = NoiseAssignment::uniform(f == Family::AD ? make_ad(eta) : make_pd(eta), slots);
      s.key = oracle::FormulaKey{
          scheme, f == Family::AD ? oracle::ChannelKind::AD : oracle::ChannelKind::PD};
      s.oracle_params = {{"eta", eta}};
      return s;
    }
    case Family::CR:
    case Family::CD: {
      const bool rot = f == Family::CR;
      const std::string_view base = rot ? "theta" : "phi";
      const auto angles = slot_angles(point, base, slots, f);
      s.noise = rot ? NoiseAssignment::rotation(angles) : NoiseAssignment::dephasing(angles);
      s.key = oracle::FormulaKey{scheme, rot ? oracle::ChannelKind::CR : oracle::ChannelKind::CD};
      s.oracle_params = angle_params(base, angles);
      return s;
    }
    case Family::Pauli:
    case Family::Depolarizing:
    case Family::BitFlip:
    case Family::PhaseFlip:
    case Family::BitPhaseFlip: {
      PauliWeights w;
      switch (f) {
        case Family::Pauli:
          w = {need(point, "p1", f), need(point, "p2", f), need(point, "p3", f),
               need(point, "p4", f)};
          break;
        case Family::Depolarizing: w = depolarizing_weights(need(point, "pprime", f)); break;
        case Family::BitFlip: w = bit_flip_weights(need(point, "pprime", f)); break;
        case Family::PhaseFlip: w = phase_flip_weights(need(point, "pprime", f)); break;
        default: w = bit_phase_flip_weights(need(point, "pprime", f)); break;
      }
      s.noise = NoiseAssignment::uniform(make_pauli(w), slots);
      s.key = oracle::FormulaKey{scheme, oracle::ChannelKind::Pauli};
      s.oracle_params = pauli_params(w);
      return s;
    }
    case Family::SGAD:
    case Family::SGADPhysical: {
      SgadParams sp;
      sp.q = need(point, "Q", f);
      sp.phi = need(point, "Phi", f);
      if (f == Family::SGAD) {
        sp.lambda = need(point, "lambda", f);
        sp.mu = need(point, "mu", f);
        sp.nu = need(point, "nu", f);
      } else {
        SgadPhysical phys;
        phys.gamma0 = 1.0;
        phys.t = need(point, "gt", f);
        phys.r = need(point, "r", f);
        phys.x = need(point, "x", f);
        phys.p = need(point, "p", f);
        phys.phi = sp.phi;
        const SgadRates rates = sgad_rates(phys);
        sp.lambda = rates.lambda;
        sp.mu = rates.mu;
        sp.nu = rates.nu;
      }
      s.noise = NoiseAssignment::uniform(make_sgad(sp), slots);
      s.key = oracle::FormulaKey{scheme, oracle::ChannelKind::SGAD};
      s.oracle_params = {
          {"lambda", sp.lambda}, {"mu", sp.mu}, {"nu", sp.nu}, {"Q", sp.q}, {"Phi", sp.phi}};
      return s;
    }
  }
  throw ConfigError("unhandled channel family");
}

// ---------------------------------------------------------------------------
// CSV

std::string format_number(double v) {
  if (!std::isfinite(v)) {
    return "nan";
  }
  if (v == 0.0) {
    return "0";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<FidelityRecord>& records) {
  os << "protocol,channel";
  if (!records.empty()) {
    for (const auto& p : records.front().params) {
      os << ',' << p.name;
    }
  }
  os << ",fidelity_numeric,fidelity_analytic,abs_diff\n";
  for (const auto& r : records) {
    os << r.protocol << ',' << r.channel;
    for (const auto& p : r.params) {
      os << ',' << format_number(p.value);
    }
    os << ',' << format_number(r.fidelity_numeric) << ',';
    if (r.fidelity_analytic) os << format_number(*r.fidelity_analytic);
    os << ',';
    if (r.abs_diff) os << format_number(*r.abs_diff);
    os << '\n';
  }
}

void write_table(std::ostream& os, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << format_number(row[c]);
    }
    os << '\n';
  }
}

}  // namespace noisefid::harness
