#include "noisefid/harness.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace noisefid::harness {

namespace {

using nlohmann::json;

RangeSpec range_from_json(const std::string& name, const json& j) {
  if (j.is_string()) {
    return parse_range(j.get<std::string>());
  }
  if (j.is_number()) {
    const double v = j.get<double>();
    return {v, v, std::nullopt, std::nullopt};
  }
  if (!j.is_object()) {
    throw ConfigError("parameter '" + name + "' must be a number, a range string or an object");
  }
  RangeSpec r;
  r.start = j.at("start").get<double>();
  r.stop = j.value("stop", r.start);
  if (j.contains("step")) r.step = j.at("step").get<double>();
  if (j.contains("count")) r.count = j.at("count").get<std::size_t>();
  r.validate();
  return r;
}

}  // namespace

SweepConfig sweep_config_from_json(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  SweepConfig cfg;
  try {
    cfg.protocol = j.value("protocol", "");
    cfg.channel = j.value("channel", "");
    cfg.out = j.value("out", "");
    cfg.threads = j.value("threads", 1u);
    if (j.contains("params")) {
      const json& params = j.at("params");
      if (params.is_object()) {
        // nlohmann::json orders object keys alphabetically; use an array
        // when the axis order matters.
        for (const auto& [name, value] : params.items()) {
          cfg.params.push_back({name, range_from_json(name, value)});
        }
      } else if (params.is_array()) {
        for (const auto& entry : params) {
          const std::string name = entry.at("name").get<std::string>();
          cfg.params.push_back({name, range_from_json(name, entry.contains("range")
                                                                 ? entry.at("range")
                                                                 : entry)});
        }
      } else {
        throw ConfigError("'params' must be an object or an array");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot read config '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  return sweep_config_from_json(ss.str());
}

}  // namespace noisefid::harness
