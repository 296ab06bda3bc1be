#include "noisefid/harness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
namespace nh = noisefid::harness;
using namespace noisefid;

namespace {

std::vector<NamedParam> to_point(const std::map<std::string, double>& params) {
  std::vector<NamedParam> out;
  for (const auto& [k, v] : params) out.push_back({k, v});
  return out;
}

py::dict record_dict(const nh::FidelityRecord& r) {
  py::dict d;
  d["protocol"] = r.protocol;
  d["channel"] = r.channel;
  for (const auto& p : r.params) d[py::str(p.name)] = p.value;
  d["fidelity_numeric"] = r.fidelity_numeric;
  d["fidelity_analytic"] = r.fidelity_analytic ? py::cast(*r.fidelity_analytic) : py::none();
  d["abs_diff"] = r.abs_diff ? py::cast(*r.abs_diff) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_noisefid, m) {
  m.doc() = "Average fidelity of quantum communication protocols under noise.";

  py::register_exception<nh::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("protocol_ids", &protocol_ids);

  m.def(
      "average_fidelity",
      [](const std::string& protocol, const std::string& channel,
         const std::map<std::string, double>& params) {
        const ProtocolSpec spec = protocol_by_id(protocol);
        return average_fidelity(spec,
                                nh::setup_point(spec, nh::parse_family(channel), to_point(params))
                                    .noise);
      },
      py::arg("protocol"), py::arg("channel"), py::arg("params") = std::map<std::string, double>{},
      "Numeric average fidelity. `channel` is a family name such as 'AD', 'CR' or "
      "'depolarizing'; `params` maps parameter names (eta, theta1, pprime, ...) to values.");

  m.def(
      "closed_form",
      [](const std::string& key, const std::map<std::string, double>& params) {
        oracle::Params p(params.begin(), params.end());
        return oracle::eval(oracle::FormulaKey::parse(key), p);
      },
      py::arg("key"), py::arg("params"),
      "Closed-form fidelity for a key such as 'qkd1/AD' or 'qsdc2/Pauli'.");

  m.def("closed_form_keys", [] {
    std::vector<std::string> keys;
    for (const auto& k : oracle::all_keys()) keys.push_back(k.str());
    return keys;
  });

  m.def("kraus_ad", [](double eta) { return make_ad(eta).operators; }, py::arg("eta"));
  m.def("kraus_pd", [](double eta) { return make_pd(eta).operators; }, py::arg("eta"));
  m.def(
      "kraus_pauli",
      [](double p1, double p2, double p3, double p4) {
        return make_pauli({p1, p2, p3, p4}).operators;
      },
      py::arg("p1"), py::arg("p2"), py::arg("p3"), py::arg("p4"));
  m.def(
      "kraus_sgad",
      [](double lambda, double mu, double nu, double q, double phi) {
        return make_sgad({lambda, mu, nu, q, phi}).operators;
      },
      py::arg("lam"), py::arg("mu"), py::arg("nu"), py::arg("Q"), py::arg("Phi"));
  m.def("collective_rotation", &make_cr, py::arg("theta"));
  m.def("collective_dephasing", &make_cd, py::arg("phi"));

  m.def(
      "sgad_rates",
      [](double gamma0, double t, double r, double x, double p) {
        const SgadRates s = sgad_rates({gamma0, t, r, 0.0, x, p});
        return py::make_tuple(s.lambda, s.mu, s.nu);
      },
      py::arg("gamma0"), py::arg("t"), py::arg("r"), py::arg("x"), py::arg("p"),
      "(lambda, mu, nu) for a squeezed thermal bath. Raises ValueError where a rate "
      "leaves [0, 1].");

  m.def(
      "sweep",
      [](const std::string& protocol, const std::string& channel,
         const std::vector<std::pair<std::string, std::string>>& params, unsigned threads) {
        nh::SweepConfig cfg{protocol, channel, {}, "", threads};
        for (const auto& [name, range] : params) cfg.params.push_back({name, nh::parse_range(range)});
        py::list rows;
        for (const auto& r : nh::run_sweep(cfg)) rows.append(record_dict(r));
        return rows;
      },
      py::arg("protocol"), py::arg("channel"), py::arg("params"), py::arg("threads") = 1,
      "Grid sweep. `params` is a list of (name, range) pairs, ranges written as "
      "'start:stop:step', 'start:stop#count' or a single value.");

  m.def(
      "compare_report",
      [](int grid, double tolerance) {
        nh::CompareOptions opts;
        opts.grid = grid;
        opts.tolerance = tolerance;
        const auto report = nh::cmd_compare(opts);
        py::list keys;
        for (const auto& k : report.keys) {
          py::dict d;
          d["key"] = k.key.str();
          d["points"] = k.points;
          d["max_abs_diff"] = k.max_abs_diff;
          d["pass"] = k.pass;
          keys.append(d);
        }
        std::ostringstream text;
        nh::print_compare_report(text, report);
        py::dict out;
        out["keys"] = keys;
        out["failed"] = report.any_non_sgad_failure();
        out["text"] = text.str();
        return out;
      },
      py::arg("grid") = 21, py::arg("tolerance") = 1e-9);

  m.def("validate", [] {
    py::list out;
    for (const auto& c : nh::cmd_validate()) out.append(py::make_tuple(c.name, c.pass, c.detail));
    return out;
  });
}
