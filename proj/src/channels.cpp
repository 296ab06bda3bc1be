#include "noisefid/channels.hpp"

#include <cmath>
#include <sstream>

namespace noisefid {

namespace {

void require_probability(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    std::ostringstream os;
    os << name << " = " << v << " is outside [0, 1]";
    throw ParameterError(os.str());
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ParameterError(std::string(name) + " must be finite");
  }
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

KrausChannel checked(KrausChannel ch) {
  const CptpReport report = validate_cptp(ch);
  if (!report.pass) {
    std::ostringstream os;
    os << ch.name << ": completeness deviation " << report.max_deviation;
    throw ParameterError(os.str());
  }
  return ch;
}

KrausChannel named_pauli(std::string name, const PauliWeights& w, double pprime) {
  KrausChannel ch = make_pauli(w);
  ch.name = std::move(name);
  ch.params = {{"pprime", pprime}};
  return ch;
}

}  // namespace

CptpReport validate_cptp(const KrausChannel& channel, double tolerance) {
  if (channel.operators.empty()) {
    return {false, 1.0};
  }
  const Eigen::Index d = channel.operators.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : channel.operators) {
    if (e.rows() != d || e.cols() != d) {
      throw DimensionError("validate_cptp: Kraus operators differ in shape");
    }
    sum.noalias() += e.adjoint() * e;
  }
  const double dev = max_abs_diff(sum, ComplexMatrix::Identity(d, d));
  return {dev <= tolerance, dev};
}

KrausChannel identity_channel() { return {"identity", {gates::identity()}, {}}; }

KrausChannel make_ad(double eta) {
  require_probability(eta, "AD eta");
  return checked({"AD",
                  {mat2(1.0, 0.0, 0.0, std::sqrt(1.0 - eta)), mat2(0.0, std::sqrt(eta), 0.0, 0.0)},
                  {{"eta", eta}}});
}

KrausChannel make_pd(double eta) {
  require_probability(eta, "PD eta");
  const double keep = std::sqrt(1.0 - eta);
  const double hit = std::sqrt(eta);
  return checked({"PD",
                  {mat2(keep, 0.0, 0.0, keep), mat2(hit, 0.0, 0.0, 0.0), mat2(0.0, 0.0, 0.0, hit)},
                  {{"eta", eta}}});
}

void PauliWeights::validate() const {
  require_probability(p1, "Pauli p1");
  require_probability(p2, "Pauli p2");
  require_probability(p3, "Pauli p3");
  require_probability(p4, "Pauli p4");
  const double sum = p1 + p2 + p3 + p4;
  if (std::abs(sum - 1.0) > tol::kConstruction) {
    std::ostringstream os;
    os << "Pauli weights sum to " << sum << ", not 1";
    throw ParameterError(os.str());
  }
}

KrausChannel make_pauli(const PauliWeights& w) {
  w.validate();
  return checked({"pauli",
                  {std::sqrt(w.p1) * gates::identity(), std::sqrt(w.p2) * gates::x(),
                   std::sqrt(w.p3) * gates::iy(), std::sqrt(w.p4) * gates::z()},
                  {{"p1", w.p1}, {"p2", w.p2}, {"p3", w.p3}, {"p4", w.p4}}});
}

PauliWeights depolarizing_weights(double pprime) {
  require_probability(pprime, "depolarizing p'");
  return {1.0 - pprime, pprime / 3.0, pprime / 3.0, pprime / 3.0};
}

PauliWeights bit_flip_weights(double pprime) {
  require_probability(pprime, "bit flip p'");
  return {1.0 - pprime, pprime, 0.0, 0.0};
}

PauliWeights bit_phase_flip_weights(double pprime) {
  require_probability(pprime, "bit-phase flip p'");
  return {1.0 - pprime, 0.0, pprime, 0.0};
}

PauliWeights phase_flip_weights(double pprime) {
  require_probability(pprime, "phase flip p'");
  return {1.0 - pprime, 0.0, 0.0, pprime};
}

KrausChannel make_depolarizing(double pprime) {
  return named_pauli("depolarizing", depolarizing_weights(pprime), pprime);
}
KrausChannel make_bit_flip(double pprime) {
  return named_pauli("bit_flip", bit_flip_weights(pprime), pprime);
}
KrausChannel make_phase_flip(double pprime) {
  return named_pauli("phase_flip", phase_flip_weights(pprime), pprime);
}
KrausChannel make_bit_phase_flip(double pprime) {
  return named_pauli("bit_phase_flip", bit_phase_flip_weights(pprime), pprime);
}

KrausChannel make_sgad(const SgadParams& s) {
  require_probability(s.lambda, "SGAD lambda");
  require_probability(s.mu, "SGAD mu");
  require_probability(s.nu, "SGAD nu");
  require_probability(s.q, "SGAD Q");
  require_finite(s.phi, "SGAD Phi");
  const double wq = std::sqrt(s.q);
  const double wr = std::sqrt(1.0 - s.q);
  const Complex squeeze_phase = std::polar(1.0, -s.phi);
  return checked(
      {"SGAD",
       {wq * mat2(1.0, 0.0, 0.0, std::sqrt(1.0 - s.lambda)),
        wq * mat2(0.0, std::sqrt(s.lambda), 0.0, 0.0),
        wr * mat2(std::sqrt(1.0 - s.nu), 0.0, 0.0, std::sqrt(1.0 - s.mu)),
        wr * mat2(0.0, std::sqrt(s.mu) * squeeze_phase, std::sqrt(s.nu), 0.0)},
       {{"lambda", s.lambda}, {"mu", s.mu}, {"nu", s.nu}, {"Q", s.q}, {"Phi", s.phi}}});
}

void SgadPhysical::validate() const {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    throw ParameterError("SGAD gamma0 must be positive");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ParameterError("SGAD t must be non-negative");
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ParameterError("SGAD x = hbar*omega/(k_B T) must be positive");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw ParameterError("SGAD p must lie in (0, 1)");
  }
  require_finite(r, "SGAD r");
  require_finite(phi, "SGAD Phi");
}

double thermal_occupation(double x) { return 1.0 / std::expm1(x); }

double squeezed_occupation(double x, double r) {
  const double nth = thermal_occupation(x);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  return nth * (ch * ch + sh * sh) + sh * sh;
}

double squeezing_coupling(double x, double r) {
  return std::sinh(2.0 * r) * (2.0 * thermal_occupation(x) + 1.0);
}

SgadRates sgad_rates(const SgadPhysical& p) {
  p.validate();
  if (p.t == 0.0) {
    return {0.0, 0.0, 0.0};
  }
  const double n = squeezed_occupation(p.x, p.r);
  const double a = squeezing_coupling(p.x, p.r);
  const double g = p.gamma0 * p.t;
  const double decay = std::exp(-g * (2.0 * n + 1.0));

  const double sh_num = std::sinh(g * a / 2.0);
  const double sh_den = std::sinh(g * (2.0 * n + 1.0) / 2.0);
  SgadRates rates;
  rates.mu = (2.0 * n + 1.0) / (2.0 * n * (1.0 - p.p)) * (sh_num * sh_num) / (sh_den * sh_den) *
             std::exp(-g * (2.0 * n + 1.0) / 2.0);
  rates.nu = n / ((1.0 - p.p) * (2.0 * n + 1.0)) * (1.0 - decay);
  rates.lambda = (1.0 - (1.0 - p.p) * (rates.mu + rates.nu) - decay) / p.p;

  const auto check = [&](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      std::ostringstream os;
      os << "sgad_rates: " << name << " = " << v << " outside [0, 1] at gamma0*t = " << g
         << ", r = " << p.r << ", x = " << p.x << ", p = " << p.p;
      throw RateOutOfRange(os.str(), rates);
    }
  };
  check(rates.lambda, "lambda");
  check(rates.mu, "mu");
  check(rates.nu, "nu");
  return rates;
}

ComplexMatrix make_cr(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return mat2(c, -s, s, c);
}

ComplexMatrix make_cd(double phi) { return mat2(1.0, 0.0, 0.0, std::polar(1.0, phi)); }

}  // namespace noisefid
