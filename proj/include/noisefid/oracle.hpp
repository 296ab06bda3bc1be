#pragma once

// Closed-form average fidelities.
//
// Expressions are kept as written even where they disagree with the numeric
// engine. Comparison tooling reports the disagreement.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace noisefid::oracle {

enum class Scheme { Qkd1, Qkd2, Qka1, Qka2, Qsdc1, Qsdc2, Qd1, Qd2 };
enum class ChannelKind { AD, PD, CD, CR, Pauli, SGAD };

struct FormulaKey {
  Scheme scheme = Scheme::Qkd1;
  ChannelKind channel = ChannelKind::AD;

  /// "qkd1/AD", "qsdc2/Pauli", ...
  std::string str() const;
  /// Inverse of str(); throws UnknownKey.
  static FormulaKey parse(std::string_view text);

  friend bool operator==(const FormulaKey&, const FormulaKey&) = default;
};

/// Parameter names: eta; theta1, theta2; phi1, phi2; p1..p4;
/// lambda, mu, nu, Q, Phi.
using Params = std::map<std::string, double, std::less<>>;

class UnknownKey : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string_view to_string(Scheme s);
std::string_view to_string(ChannelKind c);
Scheme parse_scheme(std::string_view text);
ChannelKind parse_channel_kind(std::string_view text);

const std::vector<Scheme>& all_schemes();
const std::vector<ChannelKind>& all_channel_kinds();
std::vector<FormulaKey> all_keys();

/// Scheme label of an engine protocol id (b92 -> qkd1, pp -> qsdc2, ...).
Scheme scheme_for_protocol(std::string_view protocol_id);
/// Engine protocol id of a scheme (qkd1 -> b92, ...).
std::string_view protocol_for_scheme(Scheme s);

/// Number of collective-noise rounds the key's expression is written in.
int collective_slots(Scheme s);

/// Names the expression for `key` reads.
std::vector<std::string> required_params(const FormulaKey& key);

/// Evaluates the closed-form expression. Throws MissingParameter.
double eval(const FormulaKey& key, const Params& params);

struct LimitCheck {
  FormulaKey sgad_key;
  FormulaKey ad_key;
  double max_abs_diff = 0.0;
  double worst_eta = 0.0;
  bool pass = false;
};

/// Compares eval(SGAD key) at lambda = eta, mu = nu = 0, Q = 1 (several
/// Phi) against eval(AD key) at eta on a uniform eta grid over [0, 1].
LimitCheck sgad_limit_check(Scheme scheme, int grid_points = 21, double tolerance = 1e-12);

}  // namespace noisefid::oracle
