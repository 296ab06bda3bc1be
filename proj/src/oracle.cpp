#include "noisefid/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace noisefid::oracle {

namespace {

double sq(double v) { return v * v; }

class Reader {
 public:
  Reader(const FormulaKey& key, const Params& params) : key_(key), params_(params) {}

  double operator()(std::string_view name) const {
    const auto it = params_.find(name);
    if (it == params_.end()) {
      throw MissingParameter(key_.str() + ": missing parameter '" + std::string(name) + "'");
    }
    return it->second;
  }

 private:
  const FormulaKey& key_;
  const Params& params_;
};

// Shared SGAD symbols.
struct Sgad {
  double l, m, n, Q, Phi;
  double L, M, N;  // sqrt(1-lambda), sqrt(1-mu), sqrt(1-nu)
  double sm, sn;   // sqrt(mu), sqrt(nu)

  explicit Sgad(const Reader& p)
      : l(p("lambda")), m(p("mu")), n(p("nu")), Q(p("Q")), Phi(p("Phi")),
        L(std::sqrt(1.0 - l)), M(std::sqrt(1.0 - m)), N(std::sqrt(1.0 - n)),
        sm(std::sqrt(m)), sn(std::sqrt(n)) {}
};

// Entangled two-round expressions, shared by qka2, qsdc2 (ping-pong) and
// the dense-coding dialogue under Pauli noise.
double qka2(ChannelKind c, const Reader& p) {
  switch (c) {
    case ChannelKind::AD: {
      const double eta = p("eta");
      return 0.25 * sq(eta - 2.0);
    }
    case ChannelKind::PD: {
      const double eta = p("eta");
      return 0.5 * (eta * eta - 2.0 * eta + 2.0);
    }
    case ChannelKind::CD:
      return 0.5 * (std::cos(p("phi1")) * std::cos(p("phi2")) + 1.0);
    case ChannelKind::CR: {
      const double t1 = p("theta1");
      const double t2 = p("theta2");
      return 0.5 * (sq(std::cos(t1 - t2)) + sq(std::cos(t1 + t2)));
    }
    case ChannelKind::Pauli:
      return sq(p("p1")) + sq(p("p2")) + sq(p("p3")) + sq(p("p4"));
    case ChannelKind::SGAD: {
      const Sgad s(p);
      const double l = s.l, m = s.m, n = s.n, Q = s.Q;
      const double LMN = s.L * s.M * s.N;
      return 0.25 * (Q * Q * (l * l - 2.0 * l * (m + n + 1.0) - 2.0 * (2.0 * LMN + m + n - 2.0) +
                              m * m + 5.0 * m * n + n * n) +
                     m * m + m * (5.0 * n - 4.0) + sq(n - 2.0) +
                     m * n * sq(Q - 1.0) * std::cos(2.0 * s.Phi) +
                     2.0 * Q * (l * (m + n - 1.0) + 2.0 * LMN - m * m + m * (3.0 - 5.0 * n) -
                                (n - 3.0) * n - 2.0));
    }
  }
  throw UnknownKey("qka2: unhandled channel");
}

double qkd1(ChannelKind c, const Reader& p) {
  switch (c) {
    case ChannelKind::AD:
      return 0.25 * (std::sqrt(1.0 - p("eta")) + 3.0);
    case ChannelKind::PD:
      return 0.25 * (-p("eta") + 4.0);
    case ChannelKind::CD:
      return 0.25 * (std::cos(p("phi1")) + 3.0);
    case ChannelKind::CR:
      return sq(std::cos(p("theta1")));
    case ChannelKind::Pauli:
      return 0.5 * (2.0 * p("p1") + p("p2") + p("p4"));
    case ChannelKind::SGAD: {
      const Sgad s(p);
      const double MN = s.M * s.N;
      return 0.25 * (MN - 2.0 * s.n + s.Q * (s.L - MN + 2.0 * s.n) -
                     s.sm * s.sn * (s.Q - 1.0) * std::cos(s.Phi) + 3.0);
    }
  }
  throw UnknownKey("qkd1: unhandled channel");
}

double qkd2(ChannelKind c, const Reader& p) {
  switch (c) {
    case ChannelKind::AD: {
      const double eta = p("eta");
      return 0.25 * (-eta + 2.0 * std::sqrt(1.0 - eta) + 2.0);
    }
    case ChannelKind::PD:
      return 0.5 * (-p("eta") + 2.0);
    case ChannelKind::CD:
      return sq(std::cos(p("phi1") / 2.0));
    case ChannelKind::CR:
      return sq(std::cos(p("theta1")));
    case ChannelKind::Pauli:
      return p("p1");
    case ChannelKind::SGAD: {
      const Sgad s(p);
      const double MN = s.M * s.N;
      return 0.25 * (2.0 * MN - s.m - s.n +
                     s.Q * (-s.l + 2.0 * s.L - 2.0 * MN + s.m + s.n) + 2.0);
    }
  }
  throw UnknownKey("qkd2: unhandled channel");
}

double qka1(ChannelKind c, const Reader& p) {
  switch (c) {
    case ChannelKind::AD: {
      const double eta = p("eta");
      return 0.25 * (-eta + std::sqrt(1.0 - eta) + 3.0);
    }
    case ChannelKind::PD: {
      const double eta = p("eta");
      return 0.25 * (eta * eta - 2.0 * eta + 4.0);
    }
    case ChannelKind::CD:
      return 0.25 * (std::cos(p("phi1")) + 3.0);
    case ChannelKind::CR:
      return sq(std::cos(p("theta1")));
    case ChannelKind::Pauli:
      return 0.5 * (2.0 * p("p1") + p("p2") + p("p4"));
    case ChannelKind::SGAD: {
      const Sgad s(p);
      const double MN = s.M * s.N;
      return 0.25 * (MN - s.m - s.n + s.Q * (-s.l + s.L - MN + s.m + s.n) -
                     s.sm * s.sn * (s.Q - 1.0) * std::cos(s.Phi) + 3.0);
    }
  }
  throw UnknownKey("qka1: unhandled channel");
}

double qsdc1(ChannelKind c, const Reader& p) {
  switch (c) {
    case ChannelKind::AD: {
      const double eta = p("eta");
      return 0.25 * (eta * eta - 3.0 * eta + 4.0);
    }
    case ChannelKind::PD: {
      const double eta = p("eta");
      return 0.25 * (eta * eta - 2.0 * eta + 4.0);
    }
    case ChannelKind::CD:
      return 0.25 * (std::cos(p("phi1")) * std::cos(p("phi2")) + 3.0);
    case ChannelKind::CR:
      return sq(std::cos(p("theta1") + p("theta2")));
    case ChannelKind::Pauli: {
      const double p1 = p("p1"), p2 = p("p2"), p3 = p("p3"), p4 = p("p4");
      return p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4 + (p1 + p3) * (p2 + p4);
    }
    case ChannelKind::SGAD: {
      const Sgad s(p);
      const double l = s.l, m = s.m, n = s.n, Q = s.Q;
      const double LMN = s.L * s.M * s.N;
      const double MN = s.M * s.N;
      // The printed bracketing is unbalanced across its line breaks; this
      // follows it token by token, closing the group opened at
      // "mu(Q-1)(" after the "+6".
      return (1.0 / 8.0) *
             (2.0 * ((n - 3.0) * n + Q * Q * (-2.0 * l * n + (l - 1.0) * l + n * n - n + 2.0) +
                     2.0 * (n - 1.0) * Q * (l - n + 1.0) + 4.0) -
              4.0 * LMN * Q * Q +
              m * (Q - 1.0) *
                  (-7.0 * n + Q * (-4.0 * l + 7.0 * n - 2.0) +
                   4.0 * s.sm * s.sn * (Q - 1.0) * std::cos(s.Phi) * (-MN - s.L * Q + MN * Q) +
                   n * (Q - 1.0) * std::cos(2.0 * s.Phi) + 6.0) +
              4.0 * LMN * Q + 2.0 * m * m * sq(Q - 1.0));
    }
  }
  throw UnknownKey("qsdc1: unhandled channel");
}

double qd1(ChannelKind c, const Reader& p) {
  switch (c) {
    case ChannelKind::AD: {
      const double eta = p("eta");
      const double r = std::sqrt(1.0 - eta);
      return (1.0 / 8.0) * (-2.0 * eta * eta * eta + 5.0 * eta * eta - (r + 7.0) * eta +
                            2.0 * (r + 3.0));
    }
    case ChannelKind::PD: {
      const double eta = p("eta");
      return (1.0 / 8.0) * (-eta * eta * eta + 4.0 * eta * eta - 6.0 * eta + 8.0);
    }
    case ChannelKind::CD: {
      const double c1 = std::cos(p("phi1"));
      const double c2 = std::cos(p("phi2"));
      return (1.0 / 8.0) * (c1 * c1 * c2 + c1 * (c2 + 1.0) + 5.0);
    }
    case ChannelKind::CR: {
      const double t1 = p("theta1");
      const double t2 = p("theta2");
      return sq(std::cos(t1)) * sq(std::cos(t1 + t2));
    }
    case ChannelKind::Pauli: {
      const double p1 = p("p1"), p2 = p("p2"), p3 = p("p3"), p4 = p("p4");
      return 0.5 * (2.0 * p1 * p1 * p1 + 3.0 * p1 * p1 * (p2 + p4) +
                    2.0 * p1 * (2.0 * p2 * p2 + p2 * p3 + p3 * p3 + p3 * p4 + 2.0 * p4 * p4) +
                    p2 * p2 * p2 + p2 * p2 * p4 + p2 * (p3 * p3 + 4.0 * p3 * p4 + p4 * p4) +
                    p4 * (p3 * p3 + p4 * p4));
    }
    case ChannelKind::SGAD: {
      const Sgad s(p);
      const double l = s.l, m = s.m, n = s.n, Q = s.Q, L = s.L;
      const double MN = s.M * s.N;
      const double cubic =
          Q * Q * Q *
          (-4.0 * l * l * l + 4.0 * (3.0 * m + n) * l * l -
           2.0 * (6.0 * m * m + 4.0 * n * m + 2.0 * n * n + L - 3.0 * MN) * l - 6.0 * L * m +
           9.0 * L * m * n - 6.0 * L * n - 5.0 * MN * m * n + 2.0 * MN * n +
           4.0 * (m + n) * (m * m + n * n) + 8.0 * L + 2.0 * MN * m - 8.0 * MN);
      const double quadratic =
          Q * Q *
          (12.0 * m * m * m + 2.0 * (6.0 * n - 5.0) * m * m +
           3.0 * (n * (4.0 * n + 6.0 * L - 5.0 * MN - 5.0) + 2.0 * MN) * m +
           2.0 * (-6.0 * L * m + m + n + 2.0 * L * (MN - 3.0 * n) + 6.0 * L - 6.0 * MN - 2.0) +
           2.0 * n * (n * (6.0 * n - 5.0) + 3.0 * MN) +
           2.0 * l * (6.0 * n - 2.0 * (2.0 * n * n + 4.0 * m * n + m * (6.0 * m - 5.0)) +
                      3.0 * MN + 1.0) +
           2.0 * l * l * (6.0 * m + 2.0 * n - 5.0));
      const double constant =
          3.0 * (n * (4.0 * n + 3.0 * L - 5.0 * MN - 10.0) + 2.0 * MN) * m + 12.0 * m * m * m +
          2.0 * ((8.0 - 3.0 * L) * m + 8.0 * n + L * (2.0 * MN - 3.0 * n) + 4.0 * L -
                 4.0 * MN - 2.0) +
          4.0 * (3.0 * n - 5.0) * m * m -
          4.0 * l * (3.0 * m * m + (2.0 * n - 5.0) * m + (n - 3.0) * n + 3.0) +
          2.0 * n * (2.0 * n * (3.0 * n - 5.0) + 3.0 * MN);
      return (1.0 / 16.0) * (cubic - quadratic + constant);
    }
  }
  throw UnknownKey("qd1: unhandled channel");
}

double qd2(ChannelKind c, const Reader& p) {
  switch (c) {
    case ChannelKind::AD: {
      const double eta = p("eta");
      return 0.25 * sq(eta - 2.0);
    }
    case ChannelKind::PD: {
      const double eta = p("eta");
      return 0.5 * (eta * eta - 2.0 * eta + 2.0);
    }
    case ChannelKind::CD:
      return 0.5 * (std::cos(p("phi1")) * std::cos(p("phi2")) + 1.0);
    case ChannelKind::CR: {
      const double t1 = p("theta1");
      const double t2 = p("theta2");
      return 0.5 * (sq(std::cos(t1 - t2)) + sq(std::cos(t1 + t2)));
    }
    case ChannelKind::Pauli:
      // Published only as "the same as the ping-pong protocol".
      return qka2(c, p);
    case ChannelKind::SGAD:
      return qka2(c, p);  // printed expression is character-identical
  }
  throw UnknownKey("qd2: unhandled channel");
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Qkd1: return "qkd1";
    case Scheme::Qkd2: return "qkd2";
    case Scheme::Qka1: return "qka1";
    case Scheme::Qka2: return "qka2";
    case Scheme::Qsdc1: return "qsdc1";
    case Scheme::Qsdc2: return "qsdc2";
    case Scheme::Qd1: return "qd1";
    case Scheme::Qd2: return "qd2";
  }
  return "?";
}

std::string_view to_string(ChannelKind c) {
  switch (c) {
    case ChannelKind::AD: return "AD";
    case ChannelKind::PD: return "PD";
    case ChannelKind::CD: return "CD";
    case ChannelKind::CR: return "CR";
    case ChannelKind::Pauli: return "Pauli";
    case ChannelKind::SGAD: return "SGAD";
  }
  return "?";
}

const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> v = {Scheme::Qkd1,  Scheme::Qkd2,  Scheme::Qka1,
                                        Scheme::Qka2,  Scheme::Qsdc1, Scheme::Qsdc2,
                                        Scheme::Qd1,   Scheme::Qd2};
  return v;
}

const std::vector<ChannelKind>& all_channel_kinds() {
  static const std::vector<ChannelKind> v = {ChannelKind::AD, ChannelKind::PD,
                                             ChannelKind::CD, ChannelKind::CR,
                                             ChannelKind::Pauli, ChannelKind::SGAD};
  return v;
}

std::vector<FormulaKey> all_keys() {
  std::vector<FormulaKey> keys;
  for (Scheme s : all_schemes()) {
    for (ChannelKind c : all_channel_kinds()) {
      keys.push_back({s, c});
    }
  }
  return keys;
}

Scheme parse_scheme(std::string_view text) {
  for (Scheme s : all_schemes()) {
    if (to_string(s) == text) {
      return s;
    }
  }
  throw UnknownKey("unknown scheme '" + std::string(text) + "'");
}

ChannelKind parse_channel_kind(std::string_view text) {
  for (ChannelKind c : all_channel_kinds()) {
    if (to_string(c) == text) {
      return c;
    }
  }
  throw UnknownKey("unknown channel kind '" + std::string(text) + "'");
}

std::string FormulaKey::str() const {
  return std::string(to_string(scheme)) + "/" + std::string(to_string(channel));
}

FormulaKey FormulaKey::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw UnknownKey("formula key '" + std::string(text) + "' is not of the form scheme/channel");
  }
  return {parse_scheme(text.substr(0, slash)), parse_channel_kind(text.substr(slash + 1))};
}

Scheme scheme_for_protocol(std::string_view id) {
  if (id == "b92") return Scheme::Qkd1;
  if (id == "bbm") return Scheme::Qkd2;
  if (id == "qka1") return Scheme::Qka1;
  if (id == "qka2") return Scheme::Qka2;
  if (id == "lm05") return Scheme::Qsdc1;
  if (id == "pp") return Scheme::Qsdc2;
  if (id == "qd1") return Scheme::Qd1;
  if (id == "qd2") return Scheme::Qd2;
  throw UnknownKey("no formula scheme for protocol '" + std::string(id) + "'");
}

std::string_view protocol_for_scheme(Scheme s) {
  switch (s) {
    case Scheme::Qkd1: return "b92";
    case Scheme::Qkd2: return "bbm";
    case Scheme::Qka1: return "qka1";
    case Scheme::Qka2: return "qka2";
    case Scheme::Qsdc1: return "lm05";
    case Scheme::Qsdc2: return "pp";
    case Scheme::Qd1: return "qd1";
    case Scheme::Qd2: return "qd2";
  }
  return "?";
}

int collective_slots(Scheme s) {
  switch (s) {
    case Scheme::Qkd1:
    case Scheme::Qkd2:
    case Scheme::Qka1:
      return 1;
    default:
      return 2;
  }
}

std::vector<std::string> required_params(const FormulaKey& key) {
  const bool two = collective_slots(key.scheme) == 2;
  switch (key.channel) {
    case ChannelKind::AD:
    case ChannelKind::PD:
      return {"eta"};
    case ChannelKind::CD:
      return two ? std::vector<std::string>{"phi1", "phi2"} : std::vector<std::string>{"phi1"};
    case ChannelKind::CR:
      return two ? std::vector<std::string>{"theta1", "theta2"}
                 : std::vector<std::string>{"theta1"};
    case ChannelKind::Pauli:
      return {"p1", "p2", "p3", "p4"};
    case ChannelKind::SGAD:
      return {"lambda", "mu", "nu", "Q", "Phi"};
  }
  return {};
}

double eval(const FormulaKey& key, const Params& params) {
  const Reader p(key, params);
  switch (key.scheme) {
    case Scheme::Qkd1: return qkd1(key.channel, p);
    case Scheme::Qkd2: return qkd2(key.channel, p);
    case Scheme::Qka1: return qka1(key.channel, p);
    case Scheme::Qka2: return qka2(key.channel, p);
    case Scheme::Qsdc1: return qsdc1(key.channel, p);
    // Ping-pong results are identical to the entangled QKA.
    case Scheme::Qsdc2: return qka2(key.channel, p);
    case Scheme::Qd1: return qd1(key.channel, p);
    case Scheme::Qd2: return qd2(key.channel, p);
  }
  throw UnknownKey("unhandled scheme");
}

LimitCheck sgad_limit_check(Scheme scheme, int grid_points, double tolerance) {
  LimitCheck out;
  out.sgad_key = {scheme, ChannelKind::SGAD};
  out.ad_key = {scheme, ChannelKind::AD};
  const double phis[] = {0.0, 0.3927, 1.0, 2.5};
  for (int i = 0; i < grid_points; ++i) {
    const double eta = grid_points == 1 ? 0.0 : static_cast<double>(i) / (grid_points - 1);
    const double ad = eval(out.ad_key, {{"eta", eta}});
    for (double phi : phis) {
      const double sg =
          eval(out.sgad_key, {{"lambda", eta}, {"mu", 0.0}, {"nu", 0.0}, {"Q", 1.0}, {"Phi", phi}});
      const double d = std::abs(sg - ad);
      if (!(d <= out.max_abs_diff)) {
        out.max_abs_diff = d;
        out.worst_eta = eta;
      }
    }
  }
  out.pass = out.max_abs_diff <= tolerance;
  return out;
}

}  // namespace noisefid::oracle
