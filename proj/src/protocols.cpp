#include "noisefid/protocols.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace noisefid {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<Ket> bb84_states() {
  return {states::zero(), states::one(), states::plus(), states::minus()};
}

std::vector<ComplexMatrix> identity_or_iy() { return {gates::identity(), gates::iy()}; }
std::vector<ComplexMatrix> identity_or_x() { return {gates::identity(), gates::x()}; }
std::vector<ComplexMatrix> dense_coding() {
  return {gates::identity(), gates::x(), gates::iy(), gates::z()};
}

// Applies the chosen encodings to `qubit`, first party first.
IdealTarget encodings_on(int qubit, int n_qubits) {
  return [qubit, n_qubits](const Ket& initial, std::span<const ComplexMatrix> chosen) {
    ComplexMatrix u = gates::identity();
    for (const auto& e : chosen) {
      u = e * u;
    }
    return initial.transformed(embed(u, qubit, n_qubits));
  };
}

IdealTarget unchanged() {
  return [](const Ket& initial, std::span<const ComplexMatrix>) { return initial; };
}

// Entangled two-round pipeline shared by the entangled QKA and ping-pong
// schemes: travel qubit 0 goes out, gets encoded, and comes back.
ProtocolSpec entangled_round_trip(std::string id, std::string name, std::string party) {
  ProtocolSpec s;
  s.id = std::move(id);
  s.name = std::move(name);
  s.n_qubits = 2;
  s.ensemble = {states::psi_plus()};
  s.encodings = {{std::move(party), identity_or_x()}};
  s.pipeline = {NoiseStep{0, {0}}, EncodeStep{0, 0}, NoiseStep{1, {0}}};
  s.ideal_target = encodings_on(0, 2);
  return s;
}

void check_noise(const ProtocolSpec& spec, const NoiseAssignment& noise) {
  const int expected = spec.slot_count();
  if (static_cast<int>(noise.slots.size()) != expected) {
    throw SlotMismatch(spec.id + ": expected " + std::to_string(expected) +
                       " noise slot(s), got " + std::to_string(noise.slots.size()));
  }
  for (const auto& slot : noise.slots) {
    if (const auto* k = std::get_if<KrausChannel>(&slot)) {
      for (const auto& e : k->operators) {
        if (e.rows() != 2 || e.cols() != 2) {
          throw DimensionError("noise slot: Kraus operators must be single-qubit");
        }
      }
    }
  }
}

DensityMatrix apply_slot(const DensityMatrix& rho, const SlotNoise& noise,
                         const std::vector<int>& qubits, int n_qubits) {
  return std::visit(
      overloaded{
          [&](const KrausChannel& ch) {
            // Independent (local) noise on each travelling qubit.
            DensityMatrix out = rho;
            std::vector<ComplexMatrix> lifted(ch.operators.size());
            for (int q : qubits) {
              std::transform(ch.operators.begin(), ch.operators.end(), lifted.begin(),
                             [&](const ComplexMatrix& e) { return embed(e, q, n_qubits); });
              out = apply_kraus(out, lifted);
            }
            return out;
          },
          [&](const CollectiveUnitary& cu) {
            // One coherent unitary acting identically on every travelling qubit.
            const ComplexMatrix u = cu.matrix();
            ComplexMatrix full = gates::identity(rho.dim());
            for (int q : qubits) {
              full = embed(u, q, n_qubits) * full;
            }
            return apply_unitary(rho, full);
          },
      },
      noise);
}

}  // namespace

// ---------------------------------------------------------------------------
// ProtocolSpec

std::vector<TravelRound> ProtocolSpec::schedule() const {
  std::vector<TravelRound> rounds;
  for (const auto& step : pipeline) {
    if (const auto* n = std::get_if<NoiseStep>(&step)) {
      rounds.push_back({n->qubits, n->slot});
    }
  }
  return rounds;
}

int ProtocolSpec::slot_count() const {
  std::set<int> slots;
  for (const auto& round : schedule()) {
    slots.insert(round.slot);
  }
  return static_cast<int>(slots.size());
}

std::size_t ProtocolSpec::case_count() const {
  std::size_t n = ensemble.size();
  for (const auto& set : encodings) {
    n *= set.operators.size();
  }
  return n;
}

ComplexMatrix CollectiveUnitary::matrix() const {
  return kind == Kind::Rotation ? make_cr(angle) : make_cd(angle);
}

NoiseAssignment NoiseAssignment::uniform(const KrausChannel& channel, int slot_count) {
  return {std::vector<SlotNoise>(static_cast<std::size_t>(slot_count), channel)};
}

NoiseAssignment NoiseAssignment::rotation(std::vector<double> thetas) {
  NoiseAssignment a;
  for (double t : thetas) {
    a.slots.emplace_back(CollectiveUnitary{CollectiveUnitary::Kind::Rotation, t});
  }
  return a;
}

NoiseAssignment NoiseAssignment::dephasing(std::vector<double> phis) {
  NoiseAssignment a;
  for (double p : phis) {
    a.slots.emplace_back(CollectiveUnitary{CollectiveUnitary::Kind::Dephasing, p});
  }
  return a;
}

NoiseAssignment NoiseAssignment::identity(int slot_count) {
  return uniform(identity_channel(), slot_count);
}

// ---------------------------------------------------------------------------
// Protocols

ProtocolSpec b92() {
  ProtocolSpec s;
  s.id = "b92";
  s.name = "B92 QKD";
  s.n_qubits = 1;
  s.ensemble = {states::zero(), states::plus()};
  s.pipeline = {NoiseStep{0, {0}}};
  s.ideal_target = unchanged();
  return s;
}

ProtocolSpec bbm() {
  ProtocolSpec s;
  s.id = "bbm";
  s.name = "BBM QKD";
  s.n_qubits = 2;
  s.ensemble = {states::phi_minus()};
  // Alice keeps qubit 0; qubit 1 travels to Bob.
  s.pipeline = {NoiseStep{0, {1}}};
  s.ideal_target = unchanged();
  return s;
}

ProtocolSpec qka_single() {
  ProtocolSpec s;
  s.id = "qka1";
  s.name = "single-qubit QKA";
  s.n_qubits = 1;
  s.ensemble = bb84_states();
  s.encodings = {{"Bob", identity_or_iy()}};
  s.pipeline = {NoiseStep{0, {0}}, EncodeStep{0, 0}};
  s.ideal_target = encodings_on(0, 1);
  return s;
}

ProtocolSpec qka_entangled() {
  return entangled_round_trip("qka2", "entangled QKA", "Bob");
}

ProtocolSpec lm05() {
  ProtocolSpec s;
  s.id = "lm05";
  s.name = "LM05 QSDC";
  s.n_qubits = 1;
  s.ensemble = bb84_states();
  s.encodings = {{"Alice", identity_or_iy()}};
  s.pipeline = {NoiseStep{0, {0}}, EncodeStep{0, 0}, NoiseStep{1, {0}}};
  s.ideal_target = encodings_on(0, 1);
  return s;
}

ProtocolSpec ping_pong() { return entangled_round_trip("pp", "ping-pong QSDC", "Alice"); }

ProtocolSpec qd_single() {
  ProtocolSpec s;
  s.id = "qd1";
  s.name = "single-qubit QD";
  s.n_qubits = 2;
  // Qubit 0 carries both encodings; qubit 1 is the copy that tells Alice
  // the initial state. Both make the first trip, only the carrier returns.
  for (const auto& psi : bb84_states()) {
    s.ensemble.push_back(tensor(psi, psi));
  }
  s.encodings = {{"Alice", identity_or_iy()}, {"Bob", identity_or_iy()}};
  s.pipeline = {NoiseStep{0, {0, 1}}, EncodeStep{0, 0}, NoiseStep{1, {0}}, EncodeStep{1, 0}};
  s.ideal_target = encodings_on(0, 2);
  return s;
}

ProtocolSpec qd_ba_an() {
  ProtocolSpec s;
  s.id = "qd2";
  s.name = "dense-coding QD";
  s.n_qubits = 2;
  s.ensemble = {states::psi_plus()};
  s.encodings = {{"Bob", dense_coding()}, {"Alice", dense_coding()}};
  s.pipeline = {EncodeStep{0, 0}, NoiseStep{0, {0}}, EncodeStep{1, 0}, NoiseStep{1, {0}}};
  s.ideal_target = encodings_on(0, 2);
  return s;
}

const std::vector<std::string>& protocol_ids() {
  static const std::vector<std::string> ids = {"b92",  "bbm", "qka1", "qka2",
                                               "lm05", "pp",  "qd1",  "qd2"};
  return ids;
}

ProtocolSpec protocol_by_id(std::string_view id) {
  if (id == "b92") return b92();
  if (id == "bbm") return bbm();
  if (id == "qka1") return qka_single();
  if (id == "qka2") return qka_entangled();
  if (id == "lm05") return lm05();
  if (id == "pp") return ping_pong();
  if (id == "qd1") return qd_single();
  if (id == "qd2") return qd_ba_an();
  throw std::invalid_argument("unknown protocol id '" + std::string(id) + "'");
}

std::vector<ProtocolSpec> all_protocols() {
  std::vector<ProtocolSpec> out;
  for (const auto& id : protocol_ids()) {
    out.push_back(protocol_by_id(id));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

CaseIndex decode_case(const ProtocolSpec& spec, std::size_t index) {
  if (index >= spec.case_count()) {
    throw IndexError(spec.id + ": case " + std::to_string(index) + " out of range (" +
                     std::to_string(spec.case_count()) + " cases)");
  }
  CaseIndex c;
  c.choices.resize(spec.encodings.size());
  for (std::size_t k = spec.encodings.size(); k-- > 0;) {
    const std::size_t n = spec.encodings[k].operators.size();
    c.choices[k] = index % n;
    index /= n;
  }
  c.ensemble = index;
  return c;
}

CaseResult run_case(const ProtocolSpec& spec, std::size_t index, const NoiseAssignment& noise) {
  check_noise(spec, noise);
  const CaseIndex c = decode_case(spec, index);
  const Ket& initial = spec.ensemble[c.ensemble];

  std::vector<ComplexMatrix> chosen;
  chosen.reserve(c.choices.size());
  for (std::size_t k = 0; k < c.choices.size(); ++k) {
    chosen.push_back(spec.encodings[k].operators[c.choices[k]]);
  }

  DensityMatrix rho = DensityMatrix::from_ket(initial);
  for (const auto& step : spec.pipeline) {
    std::visit(overloaded{
                   [&](const NoiseStep& n) {
                     rho = apply_slot(rho, noise.slots[static_cast<std::size_t>(n.slot)],
                                      n.qubits, spec.n_qubits);
                   },
                   [&](const EncodeStep& e) {
                     rho = apply_unitary(
                         rho, embed(chosen[static_cast<std::size_t>(e.party)], e.qubit,
                                    spec.n_qubits));
                   },
               },
               step);
  }

  Ket target = spec.ideal_target(initial, chosen);
  const double f = fidelity_pure(target, rho);
  return {f, std::move(rho), std::move(target)};
}

double average_fidelity(const ProtocolSpec& spec, const NoiseAssignment& noise) {
  check_noise(spec, noise);
  const std::size_t n = spec.case_count();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += run_case(spec, i, noise).fidelity;
  }
  return sum / static_cast<double>(n);
}

}  // namespace noisefid
