#pragma once

// Conventional state-vector simulation and the closed-form results for
// period finding with N = 15. Used as ground truth for the event-based
// networks; shares the qubit bit order defined in gates.hpp.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "dlmq/circuit.hpp"
#include "dlmq/errors.hpp"
#include "dlmq/gates.hpp"
#include "dlmq/linalg.hpp"

namespace dlmq {

inline constexpr double kStateNormTolerance = 1e-10;

class StateVector {
 public:
  /// Computational basis state |index>.
  static StateVector basis(std::size_t num_qubits, std::size_t index = 0) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
      throw PreconditionError("StateVector: unsupported qubit count");
    StateVector s;
    s.num_qubits_ = num_qubits;
    s.a_.assign(std::size_t{1} << num_qubits, Complex{});
    if (index >= s.a_.size())
      throw PreconditionError("StateVector: basis index out of range");
    s.a_[index] = 1.0;
    return s;
  }

  /// Takes amplitudes as given; throws unless they have unit norm.
  static StateVector from_amplitudes(ComplexVector a) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < a.size()) ++n;
    if (a.empty() || (std::size_t{1} << n) != a.size() || n < 1)
      throw PreconditionError("StateVector: size must be 2^L, L >= 1");
    double s = 0.0;
    for (const Complex& c : a) s += std::norm(c);
    if (std::abs(s - 1.0) > kStateNormTolerance)
      throw PreconditionError("StateVector: amplitudes are not normalized");
    StateVector v;
    v.num_qubits_ = n;
    v.a_ = std::move(a);
    return v;
  }

  std::size_t num_qubits() const { return num_qubits_; }
  const ComplexVector& amplitudes() const { return a_; }
  const Complex& operator[](std::size_t i) const { return a_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const Complex& c : a_) s += std::norm(c);
    return s;
  }

  friend StateVector apply_unitary(const StateVector& s, const ComplexMatrix& u) {
    if (u.dim() != s.a_.size()) throw DimensionError("apply: size mismatch");
    StateVector out = s;
    out.a_ = u * s.a_;
    return out;
  }

 private:
  std::size_t num_qubits_ = 0;
  ComplexVector a_;
};

inline StateVector apply_gate(const StateVector& s, const GateSpec& g) {
  return apply_unitary(s, embed(g, s.num_qubits()));
}

inline StateVector apply_circuit(StateVector s, const CircuitDescription& c) {
  if (s.num_qubits() != c.num_qubits)
    throw PreconditionError("apply_circuit: register size mismatch");
  for (const GateSpec& g : c.gates) s = apply_gate(s, g);
  return s;
}

inline std::vector<double> probabilities(const StateVector& s) {
  std::vector<double> p(s.amplitudes().size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(s[i]);
  return p;
}

/// <Q_k^z> = probability that qubit k reads 1, for k = 1..L.
inline std::vector<double> qubit_expectations(const std::vector<double>& probs,
                                              std::size_t num_qubits) {
  std::vector<double> q(num_qubits, 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i)
    for (std::size_t k = 1; k <= num_qubits; ++k)
      if (qubit_bit(i, k, num_qubits)) q[k - 1] += probs[i];
  return q;
}

inline std::vector<double> qubit_expectations(const StateVector& s) {
  return qubit_expectations(probabilities(s), s.num_qubits());
}

struct PeriodDistribution {
  std::size_t period = 1;
  std::vector<double> probs;
};

/// Probability p_q(M) of observing |q> after the Fourier transform of a
/// function with period M sampled on q = 0..N-1. Terms where sin(pi q M/N)
/// vanishes use their limits: the squared ratio tends to L^2 and the
/// second ratio to 2L+1.
inline PeriodDistribution period_distribution(std::size_t period,
                                              std::size_t n = 8) {
  if (period < 1 || period > n)
    throw PreconditionError("period_distribution: need 1 <= M <= N");
  const double M = static_cast<double>(period);
  const double N = static_cast<double>(n);
  const std::size_t fits = n / period;
  const double L = static_cast<double>(fits);
  const double pi = std::numbers::pi;

  PeriodDistribution d{period, std::vector<double>(n, 0.0)};
  for (std::size_t q = 0; q < n; ++q) {
    double ratio_sq, ratio_odd;
    if ((q * period) % n == 0) {
      ratio_sq = L * L;
      ratio_odd = 2.0 * L + 1.0;
    } else {
      const double x = pi * static_cast<double>(q) * M / N;
      const double den = std::sin(x);
      const double r = std::sin(x * L) / den;
      ratio_sq = r * r;
      ratio_odd = std::sin(x * (2.0 * L + 1.0)) / den;
    }
    d.probs[q] = M / (N * N) * ratio_sq + (N - M * L) / (N * N) * ratio_odd;
  }
  return d;
}

/// Expectations of the three Fourier-register qubits. The transform leaves
/// its output bit-reversed, so qubit k holds bit (k-1) of q.
inline std::array<double, 3> fourier_register_expectations(
    const PeriodDistribution& d) {
  if (d.probs.size() != 8)
    throw PreconditionError("fourier_register_expectations: need N = 8");
  std::array<double, 3> q{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t b = 0; b < 3; ++b)
      if ((i >> b) & 1) q[b] += d.probs[i];
  return q;
}

inline std::uint64_t modpow(std::uint64_t base, std::uint64_t exp,
                            std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

/// f(j) = a^j mod N for j = 0 .. 2^bits - 1.
inline std::vector<std::uint64_t> modexp_table(std::uint64_t a, std::uint64_t n,
                                               std::size_t bits) {
  if (n < 2 || a == 0 || a >= n)
    throw PreconditionError("modexp_table: need 0 < a < N");
  if (std::gcd(a, n) != 1)
    throw PreconditionError("modexp_table: gcd(" + std::to_string(a) + ", " +
                            std::to_string(n) + ") != 1");
  if (bits > 20) throw PreconditionError("modexp_table: too many bits");
  std::vector<std::uint64_t> f(std::size_t{1} << bits);
  std::uint64_t v = 1 % n;
  for (auto& x : f) {
    x = v;
    v = v * a % n;
  }
  return f;
}

/// Smallest M > 0 with a^M mod N = 1. Also checks that f takes distinct
/// values within one period.
inline std::size_t find_period(std::uint64_t a, std::uint64_t n) {
  if (std::gcd(a, n) != 1 || a == 0 || a >= n)
    throw PreconditionError("find_period: need 0 < a < N, gcd(a,N) = 1");
  std::vector<std::uint64_t> seen;
  std::uint64_t v = 1 % n;
  for (std::size_t m = 1; m <= n; ++m) {
    seen.push_back(v);
    v = v * a % n;
    if (v == 1 % n) {
      std::vector<std::uint64_t> sorted = seen;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("find_period: f repeats within a period");
      return m;
    }
  }
  throw PreconditionError("find_period: no period found");
}

struct Factors {
  std::uint64_t first = 0;
  std::uint64_t second = 0;
  friend bool operator==(const Factors&, const Factors&) = default;
};

/// Factors gcd(a^(M/2) - 1, N) and gcd(a^(M/2) + 1, N), smaller first.
inline Factors shor_postprocess(std::size_t period, std::uint64_t a,
                                std::uint64_t n) {
  if (period == 0 || period % 2 != 0)
    throw PeriodUnusableError("period " + std::to_string(period) + " is odd");
  const std::uint64_t half = modpow(a, period / 2, n);
  if (half == n - 1)
    throw PeriodUnusableError("a^(M/2) = -1 mod N");
  const std::uint64_t f1 = std::gcd(half + n - 1, n);
  const std::uint64_t f2 = std::gcd(half + 1, n);
  const auto trivial = [n](std::uint64_t f) { return f == 1 || f == n; };
  if (trivial(f1) && trivial(f2))
    throw PeriodUnusableError("only trivial factors for period " +
                              std::to_string(period));
  return f1 <= f2 ? Factors{f1, f2} : Factors{f2, f1};
}

}  // namespace dlmq
