#pragma once

// Event-based gate: front-end DLM -> fixed orthogonal transform -> back-end
// DLM (or SLM). The front-end learns the incoming event stream, the
// transform maps what it learned, and the back-end learns the transformed
// vector and picks the output event.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "dlmq/gates.hpp"
#include "dlmq/learning_machine.hpp"
#include "dlmq/linalg.hpp"
#include "dlmq/rng.hpp"

namespace dlmq {

class GateProcessor {
 public:
  GateProcessor(LearningMachine front, RealMatrix transform,
                LearningMachine back, std::string label = {})
      : front_(std::move(front)),
        transform_(std::move(transform)),
        sparse_(transform_),
        back_(std::move(back)),
        label_(std::move(label)),
        scratch_(transform_.dim()) {
    if (front_.dim() != transform_.dim() || back_.dim() != transform_.dim())
      throw DimensionError("GateProcessor: front/transform/back dims differ");
    if (!is_orthogonal(transform_))
      throw PreconditionError("GateProcessor: transform is not orthogonal");
  }

  /// Consumes one event and emits exactly one.
  Event process(const Event& in, Rng& rng) {
    if (in.kind >= front_.num_kinds())
      throw PreconditionError("process: event kind " + std::to_string(in.kind) +
                              " out of range in " + label_);
    front_.update(front_.fill_missing(in));
    sparse_.apply(front_.x(), scratch_);
    const UpdateDecision d = back_.update(scratch_);
    const std::size_t kind =
        back_.config().mode == OutputMode::stochastic
            ? back_.output_channel_stochastic(rng.uniform())
            : output_channel_deterministic(d);
    return back_.output_message(kind);
  }

  const LearningMachine& front() const { return front_; }
  const LearningMachine& back() const { return back_; }
  const RealMatrix& transform() const { return transform_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return transform_.dim(); }

 private:
  LearningMachine front_;
  RealMatrix transform_;
  SparseRows sparse_;
  LearningMachine back_;
  std::string label_;
  RealVector scratch_;
};

/// Passive device with no learning: rotates the message of matching events
/// by phi and passes everything else through. An event matches when
/// (kind & mask) == match.
struct PhaseShifter {
  double phi = 0.0;
  std::size_t mask = ~std::size_t{0};
  std::size_t match = 1;

  /// Acts on exactly one event kind.
  static PhaseShifter on_kind(double phi, std::size_t kind) {
    return {phi, ~std::size_t{0}, kind};
  }
  /// Acts on every kind whose `qubit` bit is 1.
  static PhaseShifter on_qubit(double phi, std::size_t qubit,
                               std::size_t num_qubits) {
    const std::size_t m = qubit_mask(qubit, num_qubits);
    return {phi, m, m};
  }

  bool acts_on(std::size_t kind) const { return (kind & mask) == match; }

  Event apply(const Event& e) const {
    if (!acts_on(e.kind)) return e;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Event out = e;
    out.m0 = c * e.m0 - s * e.m1;
    out.m1 = s * e.m0 + c * e.m1;
    return out;
  }
};

inline Event phase_shift(const PhaseShifter& ps, const Event& e) {
  return ps.apply(e);
}

/// Builds a processor for an arbitrary unitary on 2^L amplitudes. The output
/// mode applies to the back-end only; the front-end is always a DLM. Both
/// internal vectors are drawn from `rng`, front first.
inline GateProcessor make_gate_processor(const ComplexMatrix& u, double alpha,
                                         OutputMode mode, Rng& rng,
                                         std::string label = {}) {
  RealMatrix t = realify(u);
  const std::size_t dim = t.dim();
  LearningMachine front = LearningMachine::random(
      {alpha, dim, OutputMode::deterministic}, rng);
  LearningMachine back = LearningMachine::random({alpha, dim, mode}, rng);
  return GateProcessor(std::move(front), std::move(t), std::move(back),
                       std::move(label));
}

inline GateProcessor make_single_qubit_gate(const ComplexMatrix& u,
                                            double alpha, OutputMode mode,
                                            Rng& rng, std::string label = {}) {
  if (u.dim() != 2)
    throw DimensionError("make_single_qubit_gate: expected a 2x2 unitary");
  return make_gate_processor(u, alpha, mode, rng, std::move(label));
}

/// Processor for a gate embedded into an L-qubit register.
inline GateProcessor make_multi_qubit_gate(const GateSpec& g,
                                           std::size_t num_qubits,
                                           double alpha, OutputMode mode,
                                           Rng& rng) {
  std::string label(mnemonic(g.kind));
  for (std::size_t q : g.qubits) label += " " + std::to_string(q);
  return make_gate_processor(embed(g, num_qubits), alpha, mode, rng,
                             std::move(label));
}

}  // namespace dlmq
