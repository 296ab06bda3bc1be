#pragma once

// Independent reference for the protocol fidelities.
//
// Works on kets only: every combination of Kraus indices (one per noisy
// qubit per round) is pushed through the protocol as an unnormalized
// trajectory, and F = sum_k |<target|psi_k>|^2. No Eigen, no density
// matrices and no code shared with the library.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace trajectory {

using C = std::complex<double>;
using Op = std::array<C, 4>;  // row-major 2x2
using Vec = std::vector<C>;
using Kraus = std::vector<Op>;

inline Op op(C a, C b, C c, C d) { return {a, b, c, d}; }

inline const Op I = op(1, 0, 0, 1);
inline const Op X = op(0, 1, 1, 0);
inline const Op iY = op(0, 1, -1, 0);
inline const Op Z = op(1, 0, 0, -1);

inline Kraus ad(double e) {
  return {op(1, 0, 0, std::sqrt(1 - e)), op(0, std::sqrt(e), 0, 0)};
}
inline Kraus pd(double e) {
  const double k = std::sqrt(1 - e), h = std::sqrt(e);
  return {op(k, 0, 0, k), op(h, 0, 0, 0), op(0, 0, 0, h)};
}
inline Kraus pauli(double p1, double p2, double p3, double p4) {
  return {op(std::sqrt(p1), 0, 0, std::sqrt(p1)), op(0, std::sqrt(p2), std::sqrt(p2), 0),
          op(0, std::sqrt(p3), -std::sqrt(p3), 0), op(std::sqrt(p4), 0, 0, -std::sqrt(p4))};
}
inline Kraus sgad(double l, double m, double n, double q, double phi) {
  const double a = std::sqrt(q), b = std::sqrt(1 - q);
  return {op(a, 0, 0, a * std::sqrt(1 - l)), op(0, a * std::sqrt(l), 0, 0),
          op(b * std::sqrt(1 - n), 0, 0, b * std::sqrt(1 - m)),
          op(0, b * std::sqrt(m) * std::polar(1.0, -phi), b * std::sqrt(n), 0)};
}
inline Kraus rotation(double t) {
  return {op(std::cos(t), -std::sin(t), std::sin(t), std::cos(t))};
}
inline Kraus dephasing(double p) { return {op(1, 0, 0, std::polar(1.0, p))}; }

// Qubit 0 is the most significant bit.
inline Vec apply(const Op& m, int qubit, int n, const Vec& v) {
  Vec out(v.size());
  const std::size_t bit = std::size_t{1} << (n - 1 - qubit);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    const C a = v[i], b = v[i | bit];
    out[i] = m[0] * a + m[1] * b;
    out[i | bit] = m[2] * a + m[3] * b;
  }
  return out;
}

struct Step {
  enum Kind { Noise, Encode } kind;
  int slot_or_party;
  std::vector<int> qubits;
};

struct Protocol {
  int n = 1;
  std::vector<Vec> states;
  std::vector<std::vector<Op>> parties;
  std::vector<Step> steps;
};

inline Vec ket1(C a, C b) { return {a, b}; }

inline std::vector<Vec> bb84() {
  const double h = 1 / std::sqrt(2.0);
  return {ket1(1, 0), ket1(0, 1), ket1(h, h), ket1(h, -h)};
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out;
  for (C x : a)
    for (C y : b) out.push_back(x * y);
  return out;
}

inline Protocol protocol(const std::string& id) {
  const double h = 1 / std::sqrt(2.0);
  const Vec bell_plus{h, 0, 0, h};
  const Vec singlet{0, h, -h, 0};
  const std::vector<Op> flip{I, iY};
  const std::vector<Op> dense{I, X, iY, Z};
  using S = Step;
  if (id == "b92") return {1, {ket1(1, 0), ket1(h, h)}, {}, {{S::Noise, 0, {0}}}};
  if (id == "bbm") return {2, {singlet}, {}, {{S::Noise, 0, {1}}}};
  if (id == "qka1") return {1, bb84(), {flip}, {{S::Noise, 0, {0}}, {S::Encode, 0, {0}}}};
  if (id == "qka2" || id == "pp")
    return {2, {bell_plus}, {{I, X}},
            {{S::Noise, 0, {0}}, {S::Encode, 0, {0}}, {S::Noise, 1, {0}}}};
  if (id == "lm05")
    return {1, bb84(), {flip}, {{S::Noise, 0, {0}}, {S::Encode, 0, {0}}, {S::Noise, 1, {0}}}};
  if (id == "qd1") {
    Protocol p{2, {}, {flip, flip},
               {{S::Noise, 0, {0, 1}}, {S::Encode, 0, {0}}, {S::Noise, 1, {0}}, {S::Encode, 1, {0}}}};
    for (const auto& s : bb84()) p.states.push_back(kron(s, s));
    return p;
  }
  if (id == "qd2")
    return {2, {bell_plus}, {dense, dense},
            {{S::Encode, 0, {0}}, {S::Noise, 0, {0}}, {S::Encode, 1, {0}}, {S::Noise, 1, {0}}}};
  throw std::invalid_argument("trajectory oracle: unknown protocol " + id);
}

// Per-slot channels; collective noise is a one-operator "channel" applied
// to each travel qubit of the round.
inline double average_fidelity(const Protocol& p, const std::vector<Kraus>& slots) {
  // Expand party choices: last party fastest.
  std::vector<std::vector<std::size_t>> choices{{}};
  for (const auto& ops : p.parties) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& c : choices)
      for (std::size_t k = 0; k < ops.size(); ++k) {
        auto d = c;
        d.push_back(k);
        next.push_back(d);
      }
    choices = next;
  }

  double total = 0;
  std::size_t cases = 0;
  for (const Vec& psi : p.states) {
    for (const auto& choice : choices) {
      Vec target = psi;
      for (const auto& s : p.steps)
        if (s.kind == Step::Encode)
          target = apply(p.parties[s.slot_or_party][choice[s.slot_or_party]], s.qubits[0], p.n,
                         target);

      // Depth-first over Kraus indices.
      double f = 0;
      auto walk = [&](auto&& self, std::size_t step, std::size_t qi, Vec v) -> void {
        if (step == p.steps.size()) {
          C ov = 0;
          for (std::size_t i = 0; i < v.size(); ++i) ov += std::conj(target[i]) * v[i];
          f += std::norm(ov);
          return;
        }
        const Step& s = p.steps[step];
        if (s.kind == Step::Encode) {
          self(self, step + 1, 0,
               apply(p.parties[s.slot_or_party][choice[s.slot_or_party]], s.qubits[0], p.n, v));
          return;
        }
        if (qi == s.qubits.size()) {
          self(self, step + 1, 0, std::move(v));
          return;
        }
        for (const Op& k : slots.at(static_cast<std::size_t>(s.slot_or_party)))
          self(self, step, qi + 1, apply(k, s.qubits[qi], p.n, v));
      };
      walk(walk, 0, 0, psi);
      total += f;
      ++cases;
    }
  }
  return total / static_cast<double>(cases);
}

inline double average_fidelity(const std::string& id, const std::vector<Kraus>& slots) {
  return average_fidelity(protocol(id), slots);
}

}  // namespace trajectory
