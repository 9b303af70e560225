#pragma once

// Canned experiments: Hadamard interference, Mach-Zehnder interferometer,
// reversed CNOT and Shor period finding for N = 15, plus arbitrary circuit
// sweeps. Each sweep point gets its own generator seeded with
// seed + point index, so points are independent of each other.

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlmq/circuit.hpp"
#include "dlmq/network.hpp"
#include "dlmq/oracle.hpp"

namespace dlmq {

inline double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

/// Inclusive angle sweep in degrees; `gate` selects which angled gates it
/// drives in run_circuit_sweep.
struct Sweep {
  GateKind gate = GateKind::PHASESHIFT;
  double start_deg = 0.0;
  double stop_deg = 360.0;
  double step_deg = 10.0;

  std::vector<double> values() const {
    if (!(step_deg > 0.0) || stop_deg < start_deg)
      throw PreconditionError("sweep: need step > 0 and stop >= start");
    std::vector<double> v;
    const auto n = static_cast<std::size_t>(
        std::floor((stop_deg - start_deg) / step_deg + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
      v.push_back(start_deg + static_cast<double>(i) * step_deg);
    return v;
  }
};

/// "<MNEMONIC>:<start>:<stop>:<step>", angles in degrees.
inline Sweep parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 4)
    throw PreconditionError("sweep '" + text + "': expected GATE:start:stop:step");
  const auto kind = gate_kind_from(detail::upper(parts[0]));
  if (!kind || !takes_angle(*kind))
    throw PreconditionError("sweep '" + text + "': gate must be R, CPHASE or PHASESHIFT");
  Sweep s{*kind, 0, 0, 0};
  double* fields[] = {&s.start_deg, &s.stop_deg, &s.step_deg};
  for (int i = 0; i < 3; ++i) {
    const auto v = detail::parse_double(parts[i + 1]);
    if (!v) throw PreconditionError("sweep '" + text + "': bad number '" + parts[i + 1] + "'");
    *fields[i] = *v;
  }
  s.values();
  return s;
}

struct ExperimentConfig {
  std::string name;
  double alpha = 0.99;
  std::size_t events_per_point = 10000;
  double discard_fraction = 0.5;
  std::uint64_t seed = kDefaultSeed;
  OutputMode mode = OutputMode::deterministic;

  // Hadamard
  double p0 = 1.0;
  std::size_t points = 36;
  // MZI and circuit sweeps
  Sweep sweep{};
  // Reversed CNOT: (qubit 1, qubit 2) basis inputs
  std::vector<std::array<int, 2>> inputs{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  // Shor
  std::uint64_t a = 7;
  std::size_t window = 100;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw PreconditionError("alpha must lie in (0,1)");
    if (!(discard_fraction > 0.0 && discard_fraction < 1.0))
      throw PreconditionError("discard fraction must lie in (0,1)");
    if (events_per_point < 100)
      throw PreconditionError("events per point must be >= 100");
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw PreconditionError("p0 must lie in [0,1]");
    if (points < 1) throw PreconditionError("points must be >= 1");
    if (window < 1) throw PreconditionError("window must be >= 1");
  }

  std::size_t discard_count() const {
    return static_cast<std::size_t>(discard_fraction *
                                    static_cast<double>(events_per_point));
  }
  std::uint64_t point_seed(std::size_t point) const { return seed + point; }
};

/// Column-labelled numeric table, the common shape of every CSV we write.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

inline void emit_csv(const Table& t, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing: " +
                                   std::strerror(errno));
  write_csv(t, f);
  f.flush();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

/// `<experiment>_<param>_<alpha>_<mode>.csv`; `param` may be empty.
inline std::string default_output_name(const std::string& experiment,
                                       const std::string& param, double alpha,
                                       OutputMode mode) {
  std::string name = experiment;
  if (!param.empty()) name += "_" + param;
  return name + "_" + format_number(alpha) + "_" + to_string(mode) + ".csv";
}

// ---------------------------------------------------------------- Hadamard

struct HadamardPoint {
  double psi0_deg = 0, psi1_deg = 0, phi_deg = 0;
  std::uint64_t n0 = 0, n1 = 0;
  double f0 = 0, f1 = 0;
  double oracle_b0 = 0, oracle_b1 = 0;
};

/// |b0|^2 for input amplitudes (sqrt(p0) e^{i psi0}, sqrt(1-p0) e^{i psi1}).
inline double hadamard_b0_squared(double p0, double phi) {
  return (1.0 + 2.0 * std::sqrt(p0 * (1.0 - p0)) * std::cos(phi)) / 2.0;
}

inline std::vector<HadamardPoint> run_hadamard(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<HadamardPoint> out;
  for (std::size_t pt = 0; pt < cfg.points; ++pt) {
    const std::uint64_t seed = cfg.point_seed(pt);
    Rng angles(stream_seed(seed, 0));
    const double psi0 = angles.uniform(0.0, 2.0 * std::numbers::pi);
    const double psi1 = angles.uniform(0.0, 2.0 * std::numbers::pi);

    Network net(1, cfg.mode, seed);
    net.add(make_single_qubit_gate(unitary::hadamard(), cfg.alpha, cfg.mode,
                                   net.rng(), "H"));
    const EventLog log =
        run(net, mixed_source({cfg.p0, 1.0 - cfg.p0}, {psi0, psi1}, stream_seed(seed, 1)),
            cfg.events_per_point, {.discard = cfg.discard_count()});

    HadamardPoint p;
    p.psi0_deg = rad2deg(psi0);
    p.psi1_deg = rad2deg(psi1);
    p.phi_deg = std::fmod(rad2deg(psi0 - psi1) + 360.0, 360.0);
    p.n0 = log.steady_output_counts[0];
    p.n1 = log.steady_output_counts[1];
    const auto f = log.steady_frequencies();
    p.f0 = f[0];
    p.f1 = f[1];
    p.oracle_b0 = hadamard_b0_squared(cfg.p0, psi0 - psi1);
    p.oracle_b1 = 1.0 - p.oracle_b0;
    out.push_back(p);
  }
  return out;
}

inline Table to_table(const std::vector<HadamardPoint>& pts) {
  Table t{{"phi_deg", "psi0_deg", "psi1_deg", "n0", "n1", "n0_frac", "n1_frac",
           "oracle_b0sq", "oracle_b1sq"},
          {}};
  for (const auto& p : pts)
    t.rows.push_back({p.phi_deg, p.psi0_deg, p.psi1_deg, double(p.n0),
                      double(p.n1), p.f0, p.f1, p.oracle_b0, p.oracle_b1});
  return t;
}

// --------------------------------------------------------------------- MZI

inline CircuitDescription mzi_circuit(double phi) {
  return {1,
          {{GateKind::X, {1}, std::nullopt},
           {GateKind::PHASESHIFT, {1}, phi},
           {GateKind::X, {1}, std::nullopt}}};
}

struct MziPoint {
  double phi_deg = 0;
  std::uint64_t n0 = 0, n1 = 0, n2 = 0, n3 = 0;
  double n0_frac = 0, n2_frac = 0, n3_frac = 0;
  double oracle_sin2 = 0, oracle_cos2 = 0;
};

inline std::vector<MziPoint> run_mzi(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<MziPoint> out;
  const auto phis = cfg.sweep.values();
  for (std::size_t pt = 0; pt < phis.size(); ++pt) {
    const std::uint64_t seed = cfg.point_seed(pt);
    Rng angles(stream_seed(seed, 0));
    const double psi0 = angles.uniform(0.0, 2.0 * std::numbers::pi);
    const double phi = deg2rad(phis[pt]);

    Network net = build_network(mzi_circuit(phi), cfg.alpha, cfg.mode, seed);
    const EventLog log = run(net, constant_source(Event::with_phase(0, psi0)),
                             cfg.events_per_point, {.discard = cfg.discard_count()});
    const auto& first = log.steady_stage_counts.front();
    const auto& last = log.steady_stage_counts.back();

    MziPoint p;
    p.phi_deg = phis[pt];
    p.n0 = first[0];
    p.n1 = first[1];
    p.n2 = last[0];
    p.n3 = last[1];
    p.n0_frac = double(p.n0) / double(p.n0 + p.n1);
    p.n2_frac = double(p.n2) / double(p.n2 + p.n3);
    p.n3_frac = double(p.n3) / double(p.n2 + p.n3);
    p.oracle_sin2 = std::pow(std::sin(phi / 2.0), 2);
    p.oracle_cos2 = std::pow(std::cos(phi / 2.0), 2);
    out.push_back(p);
  }
  return out;
}

inline Table to_table(const std::vector<MziPoint>& pts) {
  Table t{{"phi_deg", "n0_frac", "n2_frac", "n3_frac", "oracle_sin2", "oracle_cos2"}, {}};
  for (const auto& p : pts)
    t.rows.push_back({p.phi_deg, p.n0_frac, p.n2_frac, p.n3_frac, p.oracle_sin2,
                      p.oracle_cos2});
  return t;
}

// ------------------------------------------------------------ Reversed CNOT

/// Four Hadamards around a CNOT; acts as a CNOT with control and target
/// exchanged.
inline CircuitDescription reversed_cnot_circuit() {
  return parse_circuit("QUBITS 2\nH 1\nH 2\nCNOT 1 2\nH 1\nH 2\n");
}

struct ReversedCnotRow {
  int q1 = 0, q2 = 0;
  std::size_t events = 0;
  std::array<double, 4> f{};
  std::array<double, 4> oracle{};
};

inline std::vector<ReversedCnotRow> run_reversed_cnot(const ExperimentConfig& cfg) {
  cfg.validate();
  const CircuitDescription c = reversed_cnot_circuit();
  std::vector<ReversedCnotRow> out;
  for (std::size_t pt = 0; pt < cfg.inputs.size(); ++pt) {
    const auto [q1, q2] = cfg.inputs[pt];
    if ((q1 != 0 && q1 != 1) || (q2 != 0 && q2 != 1))
      throw PreconditionError("reversed CNOT input bits must be 0 or 1");
    const std::size_t kind = (std::size_t(q1) << 1) | std::size_t(q2);

    Network net = build_network(c, cfg.alpha, cfg.mode, cfg.point_seed(pt));
    const EventLog log = run(net, constant_source(Event(kind, 1.0, 0.0)),
                             cfg.events_per_point, {.discard = cfg.discard_count()});
    const auto probs = probabilities(apply_circuit(StateVector::basis(2, kind), c));

    ReversedCnotRow r{q1, q2, cfg.events_per_point, {}, {}};
    const auto f = log.steady_frequencies();
    for (std::size_t k = 0; k < 4; ++k) {
      r.f[k] = f[k];
      r.oracle[k] = probs[k];
    }
    out.push_back(r);
  }
  return out;
}

inline Table to_table(const std::vector<ReversedCnotRow>& rows) {
  Table t{{"q1", "q2", "events", "f0", "f1", "f2", "f3", "oracle_f0", "oracle_f1",
           "oracle_f2", "oracle_f3"},
          {}};
  for (const auto& r : rows)
    t.rows.push_back({double(r.q1), double(r.q2), double(r.events), r.f[0], r.f[1],
                      r.f[2], r.f[3], r.oracle[0], r.oracle[1], r.oracle[2],
                      r.oracle[3]});
  return t;
}

// -------------------------------------------------------------------- Shor

/// Seven-qubit period-finding circuit for N = 15. Qubits 1-3 hold j (qubit
/// 3 least significant), qubits 4-7 hold f(j) (qubit 7 least significant);
/// the register starts in |0000001>. The Fourier stage has no final swaps,
/// so qubit k ends up holding bit k-1 of the measured q.
inline CircuitDescription shor_circuit(std::uint64_t a) {
  std::string text = "QUBITS 7\nH 1\nH 2\nH 3\n";
  if (a == 11) {
    // 11^j mod 15 is 11 for odd j, 1 otherwise: 0001 -> 1011 when j0 = 1.
    text += "CNOT 3 4\nCNOT 3 6\n";
  } else if (a == 7) {
    // Multiply by 7 when j0 = 1 (0001 -> 0111), then by 7^2 = 4 when j1 = 1.
    // Multiplying by 4 mod 15 rotates the 4-bit register left by two: two
    // controlled swaps, each CNOT / Toffoli / CNOT.
    text +=
        "CNOT 3 5\nCNOT 3 6\n"
        "CNOT 6 4\nTOFFOLI 2 4 6\nCNOT 6 4\n"
        "CNOT 7 5\nTOFFOLI 2 5 7\nCNOT 7 5\n";
  } else {
    throw PreconditionError("shor_circuit: only a = 7 and a = 11 are supported");
  }
  text +=
      "H 1\nCPHASE 2 1 pi/2\nCPHASE 3 1 pi/4\n"
      "H 2\nCPHASE 3 2 pi/2\n"
      "H 3\n";
  return parse_circuit(text);
}

inline constexpr std::size_t kShorInitialKind = 1;  // |0000001>

/// Period whose Fourier-register expectations lie closest to `q`.
inline std::size_t infer_period(const std::array<double, 3>& q) {
  std::size_t best = 1;
  double best_d = 1e300;
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto ref = fourier_register_expectations(period_distribution(m));
    double d = 0.0;
    for (std::size_t k = 0; k < 3; ++k) d += (q[k] - ref[k]) * (q[k] - ref[k]);
    if (d < best_d) {
      best_d = d;
      best = m;
    }
  }
  return best;
}

struct ShorResult {
  std::uint64_t a = 0;
  std::size_t window = 100;
  /// Mean bit of qubits 1..3 over consecutive blocks of `window` outputs.
  std::vector<std::array<double, 3>> windows;
  std::array<double, 3> oracle{};
  /// Averages over the events after the discard window.
  std::array<double, 3> estimate{};
  std::size_t period = 0;
  std::optional<Factors> factors;
  std::string failure;

  /// First event index after which every full window stays within `tol`
  /// of the oracle on all three qubits; nullopt if the last window does not.
  std::optional<std::size_t> converged_after(double tol) const {
    std::size_t first_good = windows.size();
    for (std::size_t w = windows.size(); w-- > 0;) {
      bool ok = true;
      for (std::size_t k = 0; k < 3; ++k)
        ok = ok && std::abs(windows[w][k] - oracle[k]) <= tol;
      if (!ok) break;
      first_good = w;
    }
    if (first_good == windows.size()) return std::nullopt;
    return first_good * window;
  }
};

inline ShorResult run_shor(const ExperimentConfig& cfg) {
  cfg.validate();
  const CircuitDescription c = shor_circuit(cfg.a);
  const std::size_t L = c.num_qubits;

  ShorResult res;
  res.a = cfg.a;
  res.window = cfg.window;
  const auto exact = qubit_expectations(apply_circuit(StateVector::basis(L, kShorInitialKind), c));
  for (std::size_t k = 0; k < 3; ++k) res.oracle[k] = exact[k];

  Network net = build_network(c, cfg.alpha, cfg.mode, cfg.seed);
  std::array<std::uint64_t, 3> block{}, steady{};
  std::size_t in_block = 0;
  const std::size_t discard = cfg.discard_count();
  run(net, constant_source(Event(kShorInitialKind, 1.0, 0.0)), cfg.events_per_point,
      {.discard = discard}, [&](std::size_t i, const Event&, const Event& out) {
        for (std::size_t k = 0; k < 3; ++k) {
          const int b = qubit_bit(out.kind, k + 1, L);
          block[k] += b;
          if (i >= discard) steady[k] += b;
        }
        if (++in_block == cfg.window) {
          std::array<double, 3> w{};
          for (std::size_t k = 0; k < 3; ++k) w[k] = double(block[k]) / double(cfg.window);
          res.windows.push_back(w);
          block = {};
          in_block = 0;
        }
      });

  const double n_steady = double(cfg.events_per_point - discard);
  for (std::size_t k = 0; k < 3; ++k) res.estimate[k] = double(steady[k]) / n_steady;
  res.period = infer_period(res.estimate);
  try {
    res.factors = shor_postprocess(res.period, cfg.a, 15);
  } catch (const PeriodUnusableError& e) {
    res.failure = e.what();
  }
  return res;
}

inline Table to_table(const ShorResult& r) {
  Table t{{"window_index", "q1", "q2", "q3", "oracle_q1", "oracle_q2", "oracle_q3"}, {}};
  for (std::size_t w = 0; w < r.windows.size(); ++w)
    t.rows.push_back({double(w), r.windows[w][0], r.windows[w][1], r.windows[w][2],
                      r.oracle[0], r.oracle[1], r.oracle[2]});
  return t;
}

// ---------------------------------------------------------- circuit sweeps

/// Sets the angle (degrees) of every gate of the sweep's kind.
inline CircuitDescription with_angle(CircuitDescription c, GateKind kind, double deg) {
  for (GateSpec& g : c.gates)
    if (g.kind == kind) g.angle = deg2rad(deg);
  return c;
}

/// Runs a circuit once, or once per sweep value, on a constant input event.
/// Columns: [sweep_deg,] f0..f{D-1}, oracle_p0..oracle_p{D-1}.
inline Table run_circuit_sweep(const CircuitDescription& c, const ExperimentConfig& cfg,
                               const Event& input, const std::optional<Sweep>& sweep) {
  cfg.validate();
  const std::size_t D = std::size_t{1} << c.num_qubits;
  if (input.kind >= D) throw PreconditionError("input kind out of range");
  Table t;
  if (sweep) t.columns.push_back("sweep_deg");
  for (std::size_t k = 0; k < D; ++k) t.columns.push_back("f" + std::to_string(k));
  for (std::size_t k = 0; k < D; ++k) t.columns.push_back("oracle_p" + std::to_string(k));

  const std::vector<double> values = sweep ? sweep->values() : std::vector<double>{0.0};
  for (std::size_t pt = 0; pt < values.size(); ++pt) {
    const CircuitDescription cc = sweep ? with_angle(c, sweep->gate, values[pt]) : c;
    Network net = build_network(cc, cfg.alpha, cfg.mode, cfg.point_seed(pt));
    const EventLog log = run(net, constant_source(input), cfg.events_per_point,
                             {.discard = cfg.discard_count()});
    const auto oracle =
        probabilities(apply_circuit(StateVector::basis(cc.num_qubits, input.kind), cc));
    std::vector<double> row;
    if (sweep) row.push_back(values[pt]);
    for (double f : log.steady_frequencies()) row.push_back(f);
    for (double p : oracle) row.push_back(p);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace dlmq
