#pragma once

// Deterministic learning machine (DLM) and its stochastic-output variant
// (SLM).
//
// A machine holds a unit internal vector x of even dimension `dim`. Slots
// (2k, 2k+1) of x store what it has learned about events of kind k. On each
// input vector v it evaluates the 2*dim candidate vectors
//
//   w_j = alpha * x  with component j replaced by  s * sqrt(1 - alpha^2 (1 - x_j^2))
//
// (s = +1 or -1) and keeps the one that minimizes C = -w_j . v. Every
// candidate has unit norm when x does, and any rounding drift in ‖x‖ is
// damped by a factor alpha^2 per update.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dlmq/errors.hpp"
#include "dlmq/linalg.hpp"
#include "dlmq/rng.hpp"

namespace dlmq {

enum class OutputMode { deterministic, stochastic };

inline const char* to_string(OutputMode m) {
  return m == OutputMode::deterministic ? "deterministic" : "stochastic";
}

struct MachineConfig {
  double alpha = 0.99;
  std::size_t dim = 4;
  OutputMode mode = OutputMode::deterministic;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw PreconditionError("MachineConfig: alpha must lie in (0,1), got " +
                              std::to_string(alpha));
    if (dim < 4 || (dim & (dim - 1)) != 0)
      throw PreconditionError(
          "MachineConfig: dim must be a power of two >= 4, got " +
          std::to_string(dim));
  }
};

/// An arriving message: basis-state index plus a unit 2-vector carrying the
/// phase (Re a / |a|, Im a / |a|).
struct Event {
  std::size_t kind = 0;
  double m0 = 1.0;
  double m1 = 0.0;

  Event() = default;
  Event(std::size_t k, double y0, double y1) : kind(k), m0(y0), m1(y1) {
    const double n = std::hypot(y0, y1);
    if (std::abs(n - 1.0) > kUnitNormTolerance)
      throw PreconditionError("Event: message norm " + std::to_string(n) +
                              " is not 1");
  }
  static Event with_phase(std::size_t k, double radians) {
    return Event(k, std::cos(radians), std::sin(radians));
  }

  friend bool operator==(const Event&, const Event&) = default;
};

struct UpdateDecision {
  std::size_t j = 0;
  int s = +1;
  double cost = 0.0;
};

class LearningMachine {
 public:
  LearningMachine(MachineConfig config, RealUnitVector x)
      : config_(config), x_(x.vector()) {
    config_.validate();
    if (x_.size() != config_.dim)
      throw DimensionError("LearningMachine: internal vector has dim " +
                           std::to_string(x_.size()) + ", expected " +
                           std::to_string(config_.dim));
  }

  /// Components drawn uniform in [-1, 1] from `rng`, then normalized.
  static LearningMachine random(MachineConfig config, Rng& rng) {
    config.validate();
    RealVector v(config.dim);
    for (;;) {
      for (double& c : v) c = rng.uniform(-1.0, 1.0);
      if (norm(v) > kDegenerateNorm) break;
    }
    return LearningMachine(config, normalize(v));
  }

  const MachineConfig& config() const { return config_; }
  std::size_t dim() const { return config_.dim; }
  std::size_t num_kinds() const { return config_.dim / 2; }
  std::span<const double> x() const { return x_; }

  /// Times output_message fell back to (1,0) on a near-zero pair.
  std::uint64_t degenerate_messages() const { return degenerate_messages_; }

  /// Input vector for an event: x with the event's pair replaced by its
  /// message.
  RealVector fill_missing(const Event& e) const {
    if (2 * e.kind + 1 >= config_.dim)
      throw PreconditionError("fill_missing: event kind " +
                              std::to_string(e.kind) + " out of range for dim " +
                              std::to_string(config_.dim));
    RealVector v = x_;
    v[2 * e.kind] = e.m0;
    v[2 * e.kind + 1] = e.m1;
    return v;
  }

  /// Selects the minimum-cost candidate and adopts it as the new x. Exact ties
  /// go to the smaller j, then to s = +1.
  UpdateDecision update(std::span<const double> v) {
    if (v.size() != config_.dim)
      throw DimensionError("update: input has dim " + std::to_string(v.size()) +
                           ", expected " + std::to_string(config_.dim));
    const double a = config_.alpha;
    const double a2 = a * a;
    double xv = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) xv += x_[i] * v[i];

    UpdateDecision best{0, +1, 0.0};
    double best_root = 0.0;
    bool first = true;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double root = std::sqrt(1.0 - a2 + a2 * x_[j] * x_[j]);
      const double rest = a * (xv - x_[j] * v[j]);
      const double plus = -(root * v[j] + rest);
      const double minus = -(-root * v[j] + rest);
      if (first || plus < best.cost) {
        best = {j, +1, plus};
        best_root = root;
        first = false;
      }
      if (minus < best.cost) {
        best = {j, -1, minus};
        best_root = root;
      }
    }

    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] *= a;
    x_[best.j] = best.s * best_root;
    return best;
  }

  /// Kind whose cumulative-probability interval [P_{k-1}, P_k) contains r,
  /// where kind k has weight x_{2k}^2 + x_{2k+1}^2.
  std::size_t output_channel_stochastic(double r) const {
    double cumulative = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < num_kinds(); ++k) {
      const double w = x_[2 * k] * x_[2 * k] + x_[2 * k + 1] * x_[2 * k + 1];
      if (w > 0.0) last_nonzero = k;
      cumulative += w;
      if (r < cumulative) return k;
    }
    // r landed in the rounding gap just below 1.
    return last_nonzero;
  }

  /// Normalized stored pair for `kind`; (1,0) when the pair is degenerate.
  Event output_message(std::size_t kind) {
    if (kind >= num_kinds())
      throw PreconditionError("output_message: kind out of range");
    const double p = x_[2 * kind];
    const double q = x_[2 * kind + 1];
    const double n = std::hypot(p, q);
    if (!(n > kDegenerateNorm)) {
      ++degenerate_messages_;
      return Event(kind, 1.0, 0.0);
    }
    Event e;
    e.kind = kind;
    e.m0 = p / n;
    e.m1 = q / n;
    return e;
  }

 private:
  MachineConfig config_;
  RealVector x_;
  std::uint64_t degenerate_messages_ = 0;
};

inline std::size_t output_channel_deterministic(const UpdateDecision& d) {
  return d.j / 2;
}

}  // namespace dlmq
