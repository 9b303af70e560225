#pragma once

// Gate vocabulary shared by the event-based processors and the state-vector
// oracle, and the embedding of each gate into the full 2^L space.
//
// Bit order: qubit 1 is the most significant bit of a basis-state index, so
// qubit q of an L-qubit index i is (i >> (L - q)) & 1. Every embedding and
// every readout goes through qubit_bit()/qubit_mask().

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlmq/errors.hpp"
#include "dlmq/linalg.hpp"

namespace dlmq {

inline constexpr std::size_t kMaxQubits = 8;

inline std::size_t qubit_mask(std::size_t qubit, std::size_t num_qubits) {
  return std::size_t{1} << (num_qubits - qubit);
}

inline int qubit_bit(std::size_t index, std::size_t qubit,
                     std::size_t num_qubits) {
  return (index & qubit_mask(qubit, num_qubits)) ? 1 : 0;
}

enum class GateKind { H, X, Y, R, CNOT, CPHASE, TOFFOLI, PHASESHIFT };

inline std::string_view mnemonic(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::R: return "R";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CPHASE: return "CPHASE";
    case GateKind::TOFFOLI: return "TOFFOLI";
    case GateKind::PHASESHIFT: return "PHASESHIFT";
  }
  return "?";
}

inline std::optional<GateKind> gate_kind_from(std::string_view s) {
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::R,
                     GateKind::CNOT, GateKind::CPHASE, GateKind::TOFFOLI,
                     GateKind::PHASESHIFT})
    if (mnemonic(k) == s) return k;
  return std::nullopt;
}

inline std::size_t arity(GateKind k) {
  switch (k) {
    case GateKind::CNOT:
    case GateKind::CPHASE: return 2;
    case GateKind::TOFFOLI: return 3;
    default: return 1;
  }
}

inline bool takes_angle(GateKind k) {
  return k == GateKind::R || k == GateKind::CPHASE ||
         k == GateKind::PHASESHIFT;
}

/// One gate of a circuit. For controlled gates the controls come first and
/// the target last.
struct GateSpec {
  GateKind kind = GateKind::H;
  std::vector<std::size_t> qubits;
  std::optional<double> angle;

  friend bool operator==(const GateSpec&, const GateSpec&) = default;
};

/// Throws PreconditionError unless `g` is well formed for an L-qubit register.
inline void validate(const GateSpec& g, std::size_t num_qubits) {
  const auto name = std::string(mnemonic(g.kind));
  if (g.qubits.size() != arity(g.kind))
    throw PreconditionError(name + " takes " + std::to_string(arity(g.kind)) +
                            " qubit(s), got " + std::to_string(g.qubits.size()));
  if (takes_angle(g.kind) != g.angle.has_value())
    throw PreconditionError(name + (takes_angle(g.kind)
                                        ? " requires an angle"
                                        : " does not take an angle"));
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    const std::size_t q = g.qubits[i];
    if (q < 1 || q > num_qubits)
      throw PreconditionError(name + ": qubit " + std::to_string(q) +
                              " out of range [1, " +
                              std::to_string(num_qubits) + "]");
    for (std::size_t k = 0; k < i; ++k)
      if (g.qubits[k] == q)
        throw PreconditionError(name + ": qubit " + std::to_string(q) +
                                " used twice");
  }
}

namespace unitary {

inline ComplexMatrix hadamard() {
  const double h = 1.0 / std::numbers::sqrt2;
  return ComplexMatrix(2, {h, h, h, -h});
}

/// Rotation by pi/2 about x: exp(i pi S^x / 2).
inline ComplexMatrix x_rotation() {
  const double h = 1.0 / std::numbers::sqrt2;
  return ComplexMatrix(2, {Complex(h, 0), Complex(0, h), Complex(0, h),
                           Complex(h, 0)});
}

/// Rotation by pi/2 about y: exp(i pi S^y / 2).
inline ComplexMatrix y_rotation() {
  const double h = 1.0 / std::numbers::sqrt2;
  return ComplexMatrix(2, {h, h, -h, h});
}

inline ComplexMatrix phase(double phi) {
  return ComplexMatrix(2, {1.0, 0.0, 0.0, std::polar(1.0, phi)});
}

inline ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

/// exp(i v.S) with S the spin-1/2 operator, i.e.
/// cos(|v|/2) I + i (v.sigma / |v|) sin(|v|/2).
inline ComplexMatrix spin_rotation(double vx, double vy, double vz) {
  const double len = std::sqrt(vx * vx + vy * vy + vz * vz);
  if (len == 0.0) return ComplexMatrix::identity(2);
  const double c = std::cos(len / 2.0);
  const double s = std::sin(len / 2.0) / len;
  const Complex i(0.0, 1.0);
  // v.sigma = [[vz, vx - i vy], [vx + i vy, -vz]]
  return ComplexMatrix(2, {c + i * s * vz, i * s * Complex(vx, -vy),
                           i * s * Complex(vx, vy), c - i * s * vz});
}

}  // namespace unitary

/// 2x2 unitary of a single-qubit gate kind.
inline ComplexMatrix single_qubit_unitary(GateKind kind,
                                          std::optional<double> angle = {}) {
  switch (kind) {
    case GateKind::H: return unitary::hadamard();
    case GateKind::X: return unitary::x_rotation();
    case GateKind::Y: return unitary::y_rotation();
    case GateKind::R:
    case GateKind::PHASESHIFT: return unitary::phase(angle.value_or(0.0));
    default:
      throw PreconditionError("single_qubit_unitary: " +
                              std::string(mnemonic(kind)) +
                              " is not a single-qubit gate");
  }
}

/// Applies `u` to `target` whenever every qubit in `controls` is 1.
inline ComplexMatrix embed_controlled(const ComplexMatrix& u,
                                      const std::vector<std::size_t>& controls,
                                      std::size_t target,
                                      std::size_t num_qubits) {
  if (u.dim() != 2) throw DimensionError("embed: gate must be 2x2");
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw PreconditionError("embed: unsupported qubit count " +
                            std::to_string(num_qubits));
  const std::size_t n = std::size_t{1} << num_qubits;
  const std::size_t tmask = qubit_mask(target, num_qubits);
  std::size_t cmask = 0;
  for (std::size_t c : controls) cmask |= qubit_mask(c, num_qubits);

  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & cmask) != cmask) {
      m(i, i) = 1.0;
      continue;
    }
    const int b = (i & tmask) ? 1 : 0;
    for (int nb = 0; nb < 2; ++nb) {
      const std::size_t row = nb ? (i | tmask) : (i & ~tmask);
      m(row, i) += u(nb, b);
    }
  }
  return m;
}

inline ComplexMatrix embed_single(const ComplexMatrix& u, std::size_t qubit,
                                  std::size_t num_qubits) {
  return embed_controlled(u, {}, qubit, num_qubits);
}

/// Full 2^L unitary of a gate.
inline ComplexMatrix embed(const GateSpec& g, std::size_t num_qubits) {
  validate(g, num_qubits);
  switch (g.kind) {
    case GateKind::CNOT:
      return embed_controlled(unitary::pauli_x(), {g.qubits[0]}, g.qubits[1],
                              num_qubits);
    case GateKind::CPHASE:
      return embed_controlled(unitary::phase(*g.angle), {g.qubits[0]},
                              g.qubits[1], num_qubits);
    case GateKind::TOFFOLI:
      return embed_controlled(unitary::pauli_x(), {g.qubits[0], g.qubits[1]},
                              g.qubits[2], num_qubits);
    default:
      return embed_single(single_qubit_unitary(g.kind, g.angle), g.qubits[0],
                          num_qubits);
  }
}

}  // namespace dlmq
