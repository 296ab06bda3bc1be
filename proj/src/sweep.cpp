#include "noisefid/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <thread>

namespace noisefid::harness {

void SweepConfig::validate() const {
  const ProtocolSpec spec = [&] {
    try {
      return protocol_by_id(protocol);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  const Family family = parse_family(channel);
  std::set<std::string> seen;
  for (const auto& p : params) {
    if (!seen.insert(p.name).second) {
      throw ConfigError("parameter '" + p.name + "' given twice");
    }
    p.range.validate();
  }
  const auto needed = family_params(family, spec);
  for (const auto& name : seen) {
    const bool known = std::find(needed.begin(), needed.end(), name) != needed.end() ||
                       (family == Family::CR && name == "theta") ||
                       (family == Family::CD && name == "phi");
    if (!known) {
      throw ConfigError("channel " + std::string(to_string(family)) + " on " + protocol +
                        " takes no parameter '" + name + "'");
    }
  }
  for (const auto& name : needed) {
    const bool have = seen.count(name) > 0 ||
                      ((family == Family::CR && seen.count("theta")) ||
                       (family == Family::CD && seen.count("phi")));
    if (!have) {
      throw ConfigError("channel " + std::string(to_string(family)) + " on " + protocol +
                        " needs parameter '" + name + "'");
    }
  }
}

namespace {

std::vector<std::vector<NamedParam>> grid_points(const std::vector<ParamRange>& params) {
  std::vector<std::vector<double>> axes;
  for (const auto& p : params) {
    axes.push_back(p.range.values());
  }
  std::vector<std::vector<NamedParam>> out;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    std::vector<NamedParam> point;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      point.push_back({params[k].name, axes[k][idx[k]]});
    }
    out.push_back(std::move(point));
    // Odometer with the last axis fastest.
    std::size_t k = axes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k].size()) {
        break;
      }
      idx[k] = 0;
      if (k == 0) {
        return out;
      }
    }
    if (axes.empty()) {
      return out;
    }
  }
}

FidelityRecord evaluate(const ProtocolSpec& spec, Family family, const std::string& channel,
                        std::vector<NamedParam> point) {
  FidelityRecord rec;
  rec.protocol = spec.id;
  rec.channel = channel;
  try {
    const PointSetup setup = setup_point(spec, family, point);
    rec.fidelity_numeric = average_fidelity(spec, setup.noise);
    if (setup.key) {
      rec.fidelity_analytic = oracle::eval(*setup.key, setup.oracle_params);
      rec.abs_diff = std::abs(rec.fidelity_numeric - *rec.fidelity_analytic);
    }
  } catch (const RateOutOfRange&) {
    // Physically invalid grid point: keep the row, mark it unevaluable.
    rec.fidelity_numeric = std::numeric_limits<double>::quiet_NaN();
  }
  rec.params = std::move(point);
  return rec;
}

}  // namespace

std::vector<FidelityRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const ProtocolSpec spec = protocol_by_id(cfg.protocol);
  const Family family = parse_family(cfg.channel);
  const std::string channel(to_string(family));
  const auto points = grid_points(cfg.params);

  std::vector<FidelityRecord> out(points.size());
  unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(points.size())));

  if (threads == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      out[i] = evaluate(spec, family, channel, points[i]);
    }
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size() && !failed; i = next++) {
          try {
            out[i] = evaluate(spec, family, channel, points[i]);
          } catch (...) {
            if (!failed.exchange(true)) {
              failure = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return out;
}

void cmd_sweep(const SweepConfig& cfg) {
  const auto records = run_sweep(cfg);
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) {
    throw std::runtime_error("cannot open '" + cfg.out + "' for writing");
  }
  write_csv(os, records);
  if (!os) {
    throw std::runtime_error("write to '" + cfg.out + "' failed");
  }
}

}  // namespace noisefid::harness
