#pragma once

// Independent reference helpers shared by the unit tests and the acceptance
// runner: random circuits and unitaries, and brute-force DLM candidates.

#include <cmath>
#include <complex>
#include <random>
#include <numbers>
#include <utility>
#include <vector>

#include "dlmq/circuit.hpp"
#include "dlmq/linalg.hpp"
#include "dlmq/rng.hpp"

namespace dlmq::reference {

/// 1-`max_qubits` qubits, 1-`max_gates` gates; multi-qubit gates only when the
/// register is wide enough. Qubits of one gate are distinct.
inline CircuitDescription random_circuit(Rng& rng, std::size_t max_qubits = 3,
                                         std::size_t max_gates = 5) {
  CircuitDescription c;
  c.num_qubits = 1 + rng.next() % max_qubits;
  const std::size_t num_gates = 1 + rng.next() % max_gates;
  std::vector<GateKind> kinds{GateKind::H, GateKind::X, GateKind::Y, GateKind::R,
                              GateKind::PHASESHIFT};
  if (c.num_qubits >= 2) {
    kinds.push_back(GateKind::CNOT);
    kinds.push_back(GateKind::CPHASE);
  }
  if (c.num_qubits >= 3) kinds.push_back(GateKind::TOFFOLI);

  for (std::size_t i = 0; i < num_gates; ++i) {
    GateSpec g;
    g.kind = kinds[rng.next() % kinds.size()];
    std::vector<std::size_t> pool;
    for (std::size_t q = 1; q <= c.num_qubits; ++q) pool.push_back(q);
    for (std::size_t j = 0; j < arity(g.kind); ++j) {
      std::swap(pool[j], pool[j + rng.next() % (pool.size() - j)]);
      g.qubits.push_back(pool[j]);
    }
    if (takes_angle(g.kind)) g.angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    c.gates.push_back(std::move(g));
  }
  return c;
}

/// True when every kind's frequency lies within `z` binomial standard
/// deviations of its probability over `n` samples.
inline bool within_multinomial_bounds(const std::vector<double>& freq,
                                      const std::vector<double>& prob, double n,
                                      double z = 3.0) {
  for (std::size_t k = 0; k < prob.size(); ++k) {
    const double sigma = std::sqrt(prob[k] * (1.0 - prob[k]) / n);
    if (std::abs(freq[k] - prob[k]) > z * sigma) return false;
  }
  return true;
}

/// Unitary from Gram-Schmidt on a matrix of complex Gaussians.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  std::vector<ComplexVector> cols(n, ComplexVector(n));
  for (auto& c : cols)
    for (auto& z : c) z = {g(gen), g(gen)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex proj{};
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(cols[k][i]) * cols[j][i];
      for (std::size_t i = 0; i < n; ++i) cols[j][i] -= proj * cols[k][i];
    }
    double s = 0.0;
    for (const auto& z : cols[j]) s += std::norm(z);
    for (auto& z : cols[j]) z /= std::sqrt(s);
  }
  ComplexMatrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u(i, j) = cols[j][i];
  return u;
}

inline RealVector random_unit_vector(std::size_t dim, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  RealVector v(dim);
  double s = 0.0;
  for (auto& c : v) {
    c = g(gen);
    s += c * c;
  }
  for (auto& c : v) c /= std::sqrt(s);
  return v;
}

struct Candidate {
  std::size_t j;
  int s;
  RealVector w;
  double cost;
};

/// Every DLM candidate built explicitly and scored with a full dot product,
/// in (j ascending, s = +1 first) order.
inline std::vector<Candidate> enumerate_candidates(const RealVector& x, const RealVector& v,
                                                   double alpha) {
  std::vector<Candidate> out;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (int s : {+1, -1}) {
      RealVector w(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) w[i] = alpha * x[i];
      w[j] = s * std::sqrt(1.0 - alpha * alpha * (1.0 - x[j] * x[j]));
      double c = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) c -= w[i] * v[i];
      out.push_back({j, s, std::move(w), c});
    }
  return out;
}

/// First candidate of minimal cost.
inline const Candidate& brute_force_best(const std::vector<Candidate>& cs) {
  const Candidate* best = &cs.front();
  for (const auto& c : cs)
    if (c.cost < best->cost) best = &c;
  return *best;
}

}  // namespace dlmq::reference
