// dlmq: run the canned experiments or arbitrary circuit files and write CSV.
//
// Exit status: 0 on success, 1 on usage errors (bad flags or parameter
// values), 2 on runtime errors (unreadable or malformed input files, I/O).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dlmq/dlmq.hpp"

namespace {

using namespace dlmq;

/// Bad parameter value detected after flag parsing; maps to exit status 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double alpha = 0.99;
  std::size_t events = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::string mode = "deterministic";
  double discard = 0.5;
  std::string out;

  std::string circuit_file;
  std::string sweep;
  std::size_t input = 0;
  double psi_deg = 0.0;
  double p0 = 1.0;
  std::size_t points = 36;
  std::uint64_t a = 7;
  std::size_t window = 100;
};

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--alpha", o.alpha, "DLM learning parameter in (0,1)")
      ->capture_default_str();
  cmd->add_option("--events", o.events, "Events per sweep point (>= 100)")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed (overrides DLMQ_SEED)")
      ->envname("DLMQ_SEED")
      ->capture_default_str();
  cmd->add_option("--mode", o.mode, "Back-end output mode")
      ->check(CLI::IsMember({"deterministic", "stochastic"}))
      ->capture_default_str();
  cmd->add_option("--discard", o.discard, "Leading fraction of events discarded")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output CSV path (default derived from parameters)");
}

ExperimentConfig make_config(const std::string& name, const Options& o) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.alpha = o.alpha;
  cfg.events_per_point = o.events;
  cfg.discard_fraction = o.discard;
  cfg.seed = o.seed;
  cfg.mode = o.mode == "stochastic" ? OutputMode::stochastic : OutputMode::deterministic;
  cfg.p0 = o.p0;
  cfg.points = o.points;
  cfg.a = o.a;
  cfg.window = o.window;
  try {
    cfg.validate();
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

Sweep parse_sweep_option(const std::string& text) {
  try {
    return parse_sweep(text);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

CircuitDescription load_circuit(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read circuit file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_circuit(ss.str());
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string output_path(const Options& o, const ExperimentConfig& cfg,
                        const std::string& param) {
  return o.out.empty() ? default_output_name(cfg.name, param, cfg.alpha, cfg.mode) : o.out;
}

void write(const Table& t, const std::string& path) {
  emit_csv(t, path);
  std::cout << "wrote " << path << " (" << t.rows.size() << " rows)\n";
}

int cmd_run_circuit(const Options& o) {
  const CircuitDescription c = load_circuit(o.circuit_file);
  const std::string stem = std::filesystem::path(o.circuit_file).stem().string();
  const ExperimentConfig cfg = make_config(stem, o);
  std::optional<Sweep> sweep;
  if (!o.sweep.empty()) sweep = parse_sweep_option(o.sweep);
  if (o.input >= (std::size_t{1} << c.num_qubits))
    throw UsageError("--input kind " + std::to_string(o.input) + " out of range for " +
                     std::to_string(c.num_qubits) + " qubit(s)");
  const Event input = Event::with_phase(o.input, deg2rad(o.psi_deg));
  write(run_circuit_sweep(c, cfg, input, sweep), output_path(o, cfg, ""));
  return 0;
}

int cmd_hadamard(const Options& o) {
  const ExperimentConfig cfg = make_config("hadamard", o);
  const auto pts = run_hadamard(cfg);
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, std::abs(p.f0 - p.oracle_b0));
  write(to_table(pts), output_path(o, cfg, format_number(cfg.p0)));
  std::cout << "max |n0_frac - oracle| = " << format_number(worst) << "\n";
  return 0;
}

int cmd_mzi(const Options& o) {
  ExperimentConfig cfg = make_config("mzi", o);
  if (!o.sweep.empty()) {
    cfg.sweep = parse_sweep_option(o.sweep);
    if (cfg.sweep.gate != GateKind::PHASESHIFT)
      throw UsageError("mzi sweeps the PHASESHIFT angle only");
  }
  const auto pts = run_mzi(cfg);
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, std::abs(p.n2_frac - p.oracle_sin2));
  write(to_table(pts), output_path(o, cfg, ""));
  std::cout << "max |n2_frac - sin^2(phi/2)| = " << format_number(worst) << "\n";
  return 0;
}

int cmd_cnot_reversed(const Options& o) {
  const ExperimentConfig cfg = make_config("cnot-reversed", o);
  const auto rows = run_reversed_cnot(cfg);
  write(to_table(rows), output_path(o, cfg, ""));
  std::printf("q1 q2     f0     f1     f2     f3\n");
  for (const auto& r : rows)
    std::printf("%2d %2d  %.3f  %.3f  %.3f  %.3f\n", r.q1, r.q2, r.f[0], r.f[1], r.f[2], r.f[3]);
  return 0;
}

int cmd_shor(const Options& o) {
  if (o.a != 7 && o.a != 11) throw UsageError("--a must be 7 or 11");
  const ExperimentConfig cfg = make_config("shor", o);
  const ShorResult r = run_shor(cfg);
  write(to_table(r), output_path(o, cfg, std::to_string(cfg.a)));
  std::cout << "estimate (Q1,Q2,Q3) = (" << format_number(r.estimate[0]) << ", "
            << format_number(r.estimate[1]) << ", " << format_number(r.estimate[2])
            << ")\nperiod = " << r.period << "\n";
  if (r.factors)
    std::cout << "factors = " << r.factors->first << ", " << r.factors->second << "\n";
  else
    std::cout << "no factors: " << r.failure << "\n";
  return 0;
}

int cmd_oracle(const Options& o) {
  const CircuitDescription c = load_circuit(o.circuit_file);
  if (o.input >= (std::size_t{1} << c.num_qubits))
    throw UsageError("--input kind " + std::to_string(o.input) + " out of range");
  const StateVector s = apply_circuit(StateVector::basis(c.num_qubits, o.input), c);
  const auto p = probabilities(s);
  std::cout << "kind,probability\n";
  for (std::size_t k = 0; k < p.size(); ++k)
    std::cout << k << "," << format_number(std::abs(p[k]) < 1e-15 ? 0.0 : p[k]) << "\n";
  const auto q = qubit_expectations(p, c.num_qubits);
  std::cout << "qubit,expectation\n";
  for (std::size_t k = 0; k < q.size(); ++k)
    std::cout << k + 1 << "," << format_number(std::abs(q[k]) < 1e-15 ? 0.0 : q[k]) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-by-event simulation of quantum circuits with learning machines"};
  app.name("dlmq");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  Options o;

  auto* run_circuit = app.add_subcommand("run-circuit", "Run a circuit file and write output frequencies");
  run_circuit->add_option("circuit", o.circuit_file, "Circuit description file")->required();
  run_circuit->add_option("--sweep", o.sweep, "Angle sweep GATE:start:stop:step in degrees");
  run_circuit->add_option("--input", o.input, "Input event kind")->capture_default_str();
  run_circuit->add_option("--psi", o.psi_deg, "Input message phase in degrees")->capture_default_str();
  add_run_options(run_circuit, o);

  auto* hadamard = app.add_subcommand("hadamard", "Hadamard interference sweep over random phases");
  hadamard->add_option("--p0", o.p0, "Probability of kind-0 input events")->capture_default_str();
  hadamard->add_option("--points", o.points, "Number of random phase points")->capture_default_str();
  add_run_options(hadamard, o);

  auto* mzi = app.add_subcommand("mzi", "Mach-Zehnder interferometer phase sweep");
  mzi->add_option("--sweep", o.sweep, "Phase sweep PHASESHIFT:start:stop:step in degrees")
      ->default_str("PHASESHIFT:0:360:10");
  add_run_options(mzi, o);

  auto* cnot = app.add_subcommand("cnot-reversed", "CNOT with exchanged control and target, all basis inputs");
  add_run_options(cnot, o);

  auto* shor = app.add_subcommand("shor", "Period finding for N = 15");
  shor->add_option("--a", o.a, "Base, 7 or 11")->capture_default_str();
  shor->add_option("--window", o.window, "Events per averaging window")->capture_default_str();
  add_run_options(shor, o);

  auto* oracle = app.add_subcommand("oracle", "Exact probabilities and qubit expectations of a circuit");
  oracle->add_option("circuit", o.circuit_file, "Circuit description file")->required();
  oracle->add_option("--input", o.input, "Input basis-state index")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run_circuit->parsed()) return cmd_run_circuit(o);
    if (hadamard->parsed()) return cmd_hadamard(o);
    if (mzi->parsed()) return cmd_mzi(o);
    if (cnot->parsed()) return cmd_cnot_reversed(o);
    if (shor->parsed()) return cmd_shor(o);
    if (oracle->parsed()) return cmd_oracle(o);
  } catch (const UsageError& e) {
    std::cerr << "dlmq: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "dlmq: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
