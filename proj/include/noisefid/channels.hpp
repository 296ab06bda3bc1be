#pragma once

// Single-qubit noise models: amplitude damping, phase damping, the Pauli
// family, squeezed generalized amplitude damping, and the collective
// rotation/dephasing unitaries.

#include "noisefid/core.hpp"

#include <string>
#include <utility>
#include <vector>

namespace noisefid {

struct NamedParam {
  std::string name;
  double value = 0.0;
};

/// A finite Kraus set. Constructors in this header only ever return sets
/// that pass validate_cptp; hand-built sets may not.
struct KrausChannel {
  std::string name;
  std::vector<ComplexMatrix> operators;
  std::vector<NamedParam> params;
};

struct CptpReport {
  bool pass = false;
  /// max |(sum_i E_i^dagger E_i - I)_jk|
  double max_deviation = 0.0;
};

CptpReport validate_cptp(const KrausChannel& channel, double tolerance = tol::kChannel);

KrausChannel identity_channel();

/// Amplitude damping; eta is the decay probability.
KrausChannel make_ad(double eta);

/// Phase damping: sqrt(1-eta) I, sqrt(eta)|0><0|, sqrt(eta)|1><1|.
KrausChannel make_pd(double eta);

/// Weights of sigma_0 = I, sigma_1 = X, sigma_2 = iY, sigma_3 = Z, in that
/// order; p1..p4 in the closed-form fidelity expressions.
struct PauliWeights {
  double p1 = 1.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;

  /// Throws ParameterError unless each weight is in [0,1] and they sum to 1
  /// within tol::kConstruction.
  void validate() const;
};

KrausChannel make_pauli(const PauliWeights& w);

PauliWeights depolarizing_weights(double pprime);
PauliWeights bit_flip_weights(double pprime);
PauliWeights phase_flip_weights(double pprime);
PauliWeights bit_phase_flip_weights(double pprime);

KrausChannel make_depolarizing(double pprime);
KrausChannel make_bit_flip(double pprime);
KrausChannel make_phase_flip(double pprime);
KrausChannel make_bit_phase_flip(double pprime);

struct SgadParams {
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  /// Mixing weight between the zero-temperature and squeezed branches.
  double q = 1.0;
  /// Bath squeezing angle (rad).
  double phi = 0.0;
};

/// Squeezed generalized amplitude damping:
///   E0 = sqrt(Q)   [[1, 0], [0, sqrt(1-lambda)]]
///   E1 = sqrt(Q)   [[0, sqrt(lambda)], [0, 0]]
///   E2 = sqrt(1-Q) [[sqrt(1-nu), 0], [0, sqrt(1-mu)]]
///   E3 = sqrt(1-Q) [[0, sqrt(mu) e^{-i Phi}], [sqrt(nu), 0]]
KrausChannel make_sgad(const SgadParams& s);

/// Physical description from which the SGAD rates follow. gamma0*t is the
/// only combination of rate and time that enters.
struct SgadPhysical {
  double gamma0 = 1.0;  ///< spontaneous emission rate
  double t = 0.0;
  double r = 0.0;    ///< squeezing magnitude
  double phi = 0.0;  ///< squeezing angle (rad); carried for the Kraus phase only
  double x = 1.0;    ///< hbar*omega / (k_B T)
  double p = 0.5;    ///< decomposition weight inside lambda/mu/nu, in (0,1)

  void validate() const;
};

struct SgadRates {
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
};

/// Thrown by sgad_rates when a rate leaves [0,1]; the offending values are
/// kept so callers can report them.
class RateOutOfRange : public ParameterError {
 public:
  RateOutOfRange(const std::string& what, SgadRates rates)
      : ParameterError(what), rates_(rates) {}
  const SgadRates& rates() const { return rates_; }

 private:
  SgadRates rates_;
};

/// N_th = 1 / (e^x - 1)
double thermal_occupation(double x);
/// N = N_th (cosh^2 r + sinh^2 r) + sinh^2 r
double squeezed_occupation(double x, double r);
/// a = sinh(2r) (2 N_th + 1)
double squeezing_coupling(double x, double r);

/// Closed-form lambda(t), mu(t), nu(t). At t = 0 all three are exactly 0.
/// Throws RateOutOfRange rather than clamping.
SgadRates sgad_rates(const SgadPhysical& p);

/// Unitary of one collective-rotation round: [[cos, -sin], [sin, cos]].
ComplexMatrix make_cr(double theta);
/// Unitary of one collective-dephasing round: diag(1, e^{i phi}).
ComplexMatrix make_cd(double phi);

}  // namespace noisefid
