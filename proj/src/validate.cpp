#include "noisefid/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace noisefid::harness {

namespace {

constexpr int kGrid = 11;

std::vector<double> unit_grid() {
  std::vector<double> v;
  for (int i = 0; i < kGrid; ++i) {
    v.push_back(i / double(kGrid - 1));
  }
  return v;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Tracker {
  explicit Tracker(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t count = 0;
  double worst = 0.0;
  std::string worst_at;
  std::string error;

  void record(double dev, const std::string& where) {
    ++count;
    if (!(dev <= worst)) {
      worst = dev;
      worst_at = where;
    }
  }

  CheckResult result(double tolerance) const {
    CheckResult r{name, error.empty() && worst <= tolerance, ""};
    if (!error.empty()) {
      r.detail = error;
    } else {
      r.detail = std::to_string(count) + " point(s), max deviation " + sci(worst);
      if (!r.pass) {
        r.detail += " at " + worst_at;
      }
    }
    return r;
  }
};

template <typename Make>
CheckResult cptp_1d(const std::string& name, Make make) {
  Tracker t{name};
  try {
    for (double v : unit_grid()) {
      t.record(validate_cptp(make(v)).max_deviation, sci(v));
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t.result(tol::kChannel);
}

CheckResult cptp_pauli() {
  Tracker t{"cptp Pauli simplex"};
  constexpr int n = kGrid - 1;
  try {
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; a + b <= n; ++b) {
        for (int c = 0; a + b + c <= n; ++c) {
          const PauliWeights w{a / double(n), b / double(n), c / double(n),
                               (n - a - b - c) / double(n)};
          t.record(validate_cptp(make_pauli(w)).max_deviation,
                   sci(w.p1) + "," + sci(w.p2) + "," + sci(w.p3) + "," + sci(w.p4));
        }
      }
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t.result(tol::kChannel);
}

CheckResult cptp_sgad() {
  Tracker t{"cptp SGAD (lambda, mu, nu, Q)"};
  const auto g = unit_grid();
  try {
    for (double l : g) {
      for (double m : g) {
        for (double n : g) {
          for (double q : g) {
            const SgadParams s{l, m, n, q, 0.7};
            t.record(validate_cptp(make_sgad(s)).max_deviation,
                     sci(l) + "," + sci(m) + "," + sci(n) + "," + sci(q));
          }
        }
      }
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t.result(tol::kChannel);
}

ComplexMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double operator_diff(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
  if (a.size() != b.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, max_abs_diff(a[i], b[i]));
  }
  return d;
}

// mu = 0 turns SGAD into generalized amplitude damping, and Q = 1 further
// into amplitude damping, operator by operator.
CheckResult limit_chain() {
  Tracker t{"limit SGAD -> GAD -> AD"};
  const auto g = unit_grid();
  try {
    for (double l : g) {
      for (double n : g) {
        for (double q : g) {
          for (double phi : {0.0, 1.3, std::numbers::pi}) {
            const auto sgad = make_sgad({l, 0.0, n, q, phi}).operators;
            const double wq = std::sqrt(q);
            const double wr = std::sqrt(1.0 - q);
            const std::vector<ComplexMatrix> gad{
                wq * m2(1, 0, 0, std::sqrt(1 - l)), wq * m2(0, std::sqrt(l), 0, 0),
                wr * m2(std::sqrt(1 - n), 0, 0, 1), wr * m2(0, 0, std::sqrt(n), 0)};
            t.record(operator_diff(sgad, gad),
                     "lambda=" + sci(l) + " nu=" + sci(n) + " Q=" + sci(q));
          }
        }
        auto ad_limit = make_sgad({l, 0.0, n, 1.0, 0.4}).operators;
        auto ad = make_ad(l).operators;
        ad.push_back(ComplexMatrix::Zero(2, 2));
        ad.push_back(ComplexMatrix::Zero(2, 2));
        t.record(operator_diff(ad_limit, ad), "Q=1 lambda=" + sci(l) + " nu=" + sci(n));
      }
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t.result(tol::kConstruction);
}

CheckResult rates_at_zero() {
  Tracker t{"SGAD rates vanish at t=0"};
  try {
    for (double r : {0.0, 0.5, 1.0}) {
      for (double x : {0.1, 1.0, 5.0}) {
        for (double p : {0.2, 0.5, 0.8}) {
          const SgadRates s = sgad_rates({1.0, 0.0, r, 0.0, x, p});
          t.record(std::max({std::abs(s.lambda), std::abs(s.mu), std::abs(s.nu)}),
                   "r=" + sci(r) + " x=" + sci(x) + " p=" + sci(p));
        }
      }
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t.result(tol::kConstruction);
}

CheckResult unsqueezed_mu() {
  Tracker t{"SGAD rates: r=0 gives mu=0"};
  try {
    for (int i = 0; i < kGrid; ++i) {
      const double gt = 5.0 * i / (kGrid - 1);
      for (double x : {0.1, 1.0, 5.0}) {
        const double n = thermal_occupation(x);
        const SgadRates s = sgad_rates({1.0, gt, 0.0, 0.0, x, (n + 1) / (2 * n + 1)});
        t.record(std::abs(s.mu), "gt=" + sci(gt) + " x=" + sci(x));
      }
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t.result(tol::kConstruction);
}

template <typename Make>
CheckResult unitarity(const std::string& name, Make make, double span) {
  Tracker t{name};
  constexpr int samples = 100;
  for (int i = 0; i < samples; ++i) {
    const double a = span * i / (samples - 1);
    const ComplexMatrix u = make(a);
    t.record(max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(2, 2)), sci(a));
  }
  return t.result(tol::kChannel);
}

}  // namespace

std::vector<CheckResult> cmd_validate() {
  std::vector<CheckResult> out;
  out.push_back(cptp_1d("cptp AD", [](double v) { return make_ad(v); }));
  out.push_back(cptp_1d("cptp PD", [](double v) { return make_pd(v); }));
  out.push_back(cptp_1d("cptp depolarizing", [](double v) { return make_depolarizing(v); }));
  out.push_back(cptp_1d("cptp bit flip", [](double v) { return make_bit_flip(v); }));
  out.push_back(cptp_1d("cptp phase flip", [](double v) { return make_phase_flip(v); }));
  out.push_back(cptp_1d("cptp bit-phase flip", [](double v) { return make_bit_phase_flip(v); }));
  out.push_back(cptp_pauli());
  out.push_back(cptp_sgad());
  out.push_back(limit_chain());
  out.push_back(rates_at_zero());
  out.push_back(unsqueezed_mu());
  out.push_back(unitarity("unitary CR", [](double a) { return make_cr(a); }, 2 * std::numbers::pi));
  out.push_back(unitarity("unitary CD", [](double a) { return make_cd(a); }, 2 * std::numbers::pi));
  return out;
}

void print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
    all = all && c.pass;
  }
  os << (all ? "RESULT: PASS" : "RESULT: FAIL") << '\n';
}

}  // namespace noisefid::harness
