#pragma once

// The eight communication protocols as enumerable noisy pipelines.
//
// A protocol is an ensemble of initial kets plus a fixed list of steps.
// Noise steps act on the travel qubits of one round ("slot"); encoding
// steps apply one party's chosen operator to a qubit. Home qubits never
// see noise. The average fidelity is the unweighted mean over every
// (initial state, encoding choices) combination.

#include "noisefid/channels.hpp"
#include "noisefid/core.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace noisefid {

struct NoiseStep {
  int slot = 0;
  std::vector<int> qubits;
};

struct EncodeStep {
  int party = 0;
  int qubit = 0;
};

using PipelineStep = std::variant<NoiseStep, EncodeStep>;

/// One transmission round: which qubits travel and which noise slot they use.
struct TravelRound {
  std::vector<int> qubits;
  int slot = 0;
};

struct EncodingSet {
  std::string party;
  std::vector<ComplexMatrix> operators;
};

/// Maps an initial ket and the chosen encodings (one per party, in party
/// order) to the noise-free final state.
using IdealTarget = std::function<Ket(const Ket&, std::span<const ComplexMatrix>)>;

struct ProtocolSpec {
  std::string id;
  std::string name;
  int n_qubits = 1;
  std::vector<Ket> ensemble;
  std::vector<EncodingSet> encodings;
  std::vector<PipelineStep> pipeline;
  IdealTarget ideal_target;

  std::vector<TravelRound> schedule() const;
  int slot_count() const;
  std::size_t case_count() const;
};

/// Coherent unitary on all travel qubits of a round.
struct CollectiveUnitary {
  enum class Kind { Rotation, Dephasing };
  Kind kind = Kind::Rotation;
  double angle = 0.0;

  ComplexMatrix matrix() const;
};

using SlotNoise = std::variant<KrausChannel, CollectiveUnitary>;

struct NoiseAssignment {
  std::vector<SlotNoise> slots;

  /// Same Kraus channel in every slot.
  static NoiseAssignment uniform(const KrausChannel& channel, int slot_count);
  static NoiseAssignment rotation(std::vector<double> thetas);
  static NoiseAssignment dephasing(std::vector<double> phis);
  static NoiseAssignment identity(int slot_count);
};

/// Raised when a NoiseAssignment does not match the protocol schedule.
class SlotMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ProtocolSpec b92();
ProtocolSpec bbm();
ProtocolSpec qka_single();
ProtocolSpec qka_entangled();
ProtocolSpec lm05();
ProtocolSpec ping_pong();
ProtocolSpec qd_single();
ProtocolSpec qd_ba_an();

/// Stable identifiers: b92, bbm, qka1, qka2, lm05, pp, qd1, qd2.
const std::vector<std::string>& protocol_ids();
/// Throws std::invalid_argument for an unknown id.
ProtocolSpec protocol_by_id(std::string_view id);
std::vector<ProtocolSpec> all_protocols();

struct CaseIndex {
  std::size_t ensemble = 0;
  std::vector<std::size_t> choices;  ///< one per encoding set
};

/// Ensemble-major, then each party's choice in listed order (last party
/// varies fastest).
CaseIndex decode_case(const ProtocolSpec& spec, std::size_t index);

struct CaseResult {
  double fidelity = 0.0;
  DensityMatrix final_rho;
  Ket target;
};

/// Runs one case. Throws IndexError for index >= case_count() and
/// SlotMismatch when the noise does not cover the schedule.
CaseResult run_case(const ProtocolSpec& spec, std::size_t index, const NoiseAssignment& noise);

double average_fidelity(const ProtocolSpec& spec, const NoiseAssignment& noise);

}  // namespace noisefid
