#pragma once

// Executable event pipeline: one stage per gate, each input event traverses
// every stage before the next one is drawn.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "dlmq/circuit.hpp"
#include "dlmq/gate_processor.hpp"
#include "dlmq/rng.hpp"

namespace dlmq {

/// Seed for an independent stream derived from `seed` (splitmix64 finalizer).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Stage = std::variant<GateProcessor, PhaseShifter>;

class Network {
 public:
  Network(std::size_t num_qubits, OutputMode mode, std::uint64_t seed)
      : num_qubits_(num_qubits), mode_(mode), rng_(seed) {}

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_kinds() const { return std::size_t{1} << num_qubits_; }
  OutputMode mode() const { return mode_; }
  const std::vector<Stage>& stages() const { return stages_; }
  Rng& rng() { return rng_; }

  void add(Stage s) {
    if (const auto* p = std::get_if<GateProcessor>(&s);
        p && p->dim() != 2 * num_kinds())
      throw DimensionError("Network: processor dim does not match register");
    stages_.push_back(std::move(s));
  }

  std::size_t num_processors() const {
    std::size_t n = 0;
    for (const Stage& s : stages_) n += std::holds_alternative<GateProcessor>(s);
    return n;
  }

  /// Pushes one event through every stage. `tap`, if set, sees each stage's
  /// output.
  template <typename Tap>
  Event step(Event e, Tap&& tap) {
    for (std::size_t i = 0; i < stages_.size(); ++i) {
      e = std::visit(
          [&](auto& st) -> Event {
            if constexpr (std::is_same_v<std::decay_t<decltype(st)>, GateProcessor>)
              return st.process(e, rng_);
            else
              return st.apply(e);
          },
          stages_[i]);
      tap(i, e);
    }
    return e;
  }
  Event step(const Event& e) {
    return step(e, [](std::size_t, const Event&) {});
  }

 private:
  std::size_t num_qubits_;
  OutputMode mode_;
  Rng rng_;
  std::vector<Stage> stages_;
};

/// One processor per gate (PHASESHIFT becomes a passive stage). Internal
/// vectors are drawn from Rng(seed) in gate order; the same generator later
/// drives stochastic back-ends.
inline Network build_network(const CircuitDescription& c, double alpha,
                             OutputMode mode, std::uint64_t seed) {
  Network net(c.num_qubits, mode, seed);
  for (const GateSpec& g : c.gates) {
    validate(g, c.num_qubits);
    if (g.kind == GateKind::PHASESHIFT)
      net.add(PhaseShifter::on_qubit(*g.angle, g.qubits[0], c.num_qubits));
    else
      net.add(make_multi_qubit_gate(g, c.num_qubits, alpha, mode, net.rng()));
  }
  return net;
}

using EventSource = std::function<Event()>;

/// Always the same kind and message.
inline EventSource constant_source(Event e) {
  return [e] { return e; };
}

/// Kind k with probability probs[k], carrying message angle phases[k].
inline EventSource mixed_source(std::vector<double> probs,
                                std::vector<double> phases,
                                std::uint64_t seed) {
  if (probs.size() != phases.size() || probs.empty())
    throw PreconditionError("mixed_source: probs/phases size mismatch");
  return [probs = std::move(probs), phases = std::move(phases),
          rng = Rng(seed)]() mutable {
    const double r = rng.uniform();
    double acc = 0.0;
    std::size_t k = 0;
    for (; k + 1 < probs.size(); ++k) {
      acc += probs[k];
      if (r < acc) break;
    }
    return Event::with_phase(k, phases[k]);
  };
}

struct RunOptions {
  /// Leading events excluded from the steady-state counters.
  std::size_t discard = 0;
  /// Keep the last `keep_recent` (input, output) pairs.
  std::size_t keep_recent = 0;
  /// Keep every (input, output) pair.
  bool full_trace = false;
};

struct EventLog {
  std::size_t total = 0;
  std::size_t discarded = 0;
  std::vector<std::uint64_t> input_counts;
  std::vector<std::uint64_t> output_counts;
  /// Counters over events after the discard window only.
  std::vector<std::uint64_t> steady_output_counts;
  /// steady_stage_counts[s][k]: kind-k events leaving stage s after discard.
  std::vector<std::vector<std::uint64_t>> steady_stage_counts;
  std::deque<std::pair<Event, Event>> recent;
  std::vector<std::pair<Event, Event>> trace;

  std::size_t steady_total() const { return total - discarded; }

  std::vector<double> steady_frequencies() const {
    std::vector<double> f(steady_output_counts.size(), 0.0);
    const double n = static_cast<double>(steady_total());
    if (n > 0)
      for (std::size_t k = 0; k < f.size(); ++k)
        f[k] = static_cast<double>(steady_output_counts[k]) / n;
    return f;
  }

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

/// Runs `count` events strictly one at a time. `observer(i, in, out)` is
/// called after each event if given.
inline EventLog run(
    Network& net, const EventSource& source, std::size_t count,
    const RunOptions& opt = {},
    const std::function<void(std::size_t, const Event&, const Event&)>&
        observer = {}) {
  if (count < 1) throw PreconditionError("run: count must be >= 1");
  const std::size_t kinds = net.num_kinds();
  EventLog log;
  log.input_counts.assign(kinds, 0);
  log.output_counts.assign(kinds, 0);
  log.steady_output_counts.assign(kinds, 0);
  log.steady_stage_counts.assign(net.stages().size(),
                                 std::vector<std::uint64_t>(kinds, 0));
  if (opt.full_trace) log.trace.reserve(count);

  for (std::size_t i = 0; i < count; ++i) {
    const Event in = source();
    if (in.kind >= kinds) throw PreconditionError("run: source kind out of range");
    const bool steady = i >= opt.discard;
    const Event out = net.step(in, [&](std::size_t s, const Event& e) {
      if (steady) ++log.steady_stage_counts[s][e.kind];
    });
    ++log.total;
    ++log.input_counts[in.kind];
    ++log.output_counts[out.kind];
    if (steady)
      ++log.steady_output_counts[out.kind];
    else
      ++log.discarded;
    if (opt.keep_recent > 0) {
      if (log.recent.size() == opt.keep_recent) log.recent.pop_front();
      log.recent.emplace_back(in, out);
    }
    if (opt.full_trace) log.trace.emplace_back(in, out);
    if (observer) observer(i, in, out);
  }
  return log;
}

}  // namespace dlmq
