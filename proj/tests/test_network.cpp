#include <gtest/gtest.h>

#include <numbers>

#include "dlmq/experiments.hpp"
#include "dlmq/network.hpp"
#include "dlmq/oracle.hpp"
#include "test_support.hpp"

namespace {

using namespace dlmq;
constexpr double kPi = std::numbers::pi;

std::size_t count_shifters(const Network& n) {
  return n.stages().size() - n.num_processors();
}

TEST(BuildNetwork, InterferometerStructure) {
  const auto net = build_network(
      parse_circuit("QUBITS 1\nX 1\nPHASESHIFT 1 pi/3\nX 1"), 0.99,
      OutputMode::deterministic, 1);
  EXPECT_EQ(net.num_processors(), 2u);
  EXPECT_EQ(count_shifters(net), 1u);
  for (const Stage& s : net.stages()) {
    if (const auto* p = std::get_if<GateProcessor>(&s)) {
      EXPECT_EQ(p->dim(), 4u);
    }
  }
}

TEST(BuildNetwork, ReversedCnotHasTenVectors) {
  const auto net = build_network(reversed_cnot_circuit(), 0.99, OutputMode::deterministic, 1);
  EXPECT_EQ(net.num_processors(), 5u);
  std::size_t vectors = 0;
  for (const Stage& s : net.stages()) {
    const auto& p = std::get<GateProcessor>(s);
    EXPECT_EQ(p.dim(), 8u);
    EXPECT_EQ(p.front().dim(), 8u);
    EXPECT_EQ(p.back().dim(), 8u);
    vectors += 2;
  }
  EXPECT_EQ(vectors, 10u);
}

TEST(BuildNetwork, ShorVectorsHave256Elements) {
  const auto net = build_network(shor_circuit(7), 0.99, OutputMode::deterministic, 1);
  EXPECT_EQ(net.num_processors(), 17u);
  for (const Stage& s : net.stages()) EXPECT_EQ(std::get<GateProcessor>(s).dim(), 256u);
}

TEST(BuildNetwork, SeedDeterminesInternalVectors) {
  const auto c = reversed_cnot_circuit();
  const auto a = build_network(c, 0.99, OutputMode::deterministic, 5);
  const auto b = build_network(c, 0.99, OutputMode::deterministic, 5);
  const auto d = build_network(c, 0.99, OutputMode::deterministic, 6);
  const auto x = [](const Network& n) {
    const auto s = std::get<GateProcessor>(n.stages()[0]).front().x();
    return RealVector(s.begin(), s.end());
  };
  EXPECT_EQ(x(a), x(b));
  EXPECT_NE(x(a), x(d));
}

TEST(Network, RejectsMismatchedProcessor) {
  Network net(2, OutputMode::deterministic, 1);
  Rng rng(1);
  EXPECT_THROW(net.add(make_single_qubit_gate(unitary::hadamard(), 0.99,
                                              OutputMode::deterministic, rng)),
               DimensionError);
}

TEST(Run, EmptyNetworkPassesEventsThrough) {
  Network net(2, OutputMode::deterministic, 1);
  const EventLog log = run(net, mixed_source({0.1, 0.2, 0.3, 0.4}, {0.0, 1.0, 2.0, 3.0}, 7),
                           1000, {.full_trace = true});
  ASSERT_EQ(log.trace.size(), 1000u);
  for (const auto& [in, out] : log.trace) EXPECT_EQ(in, out);
  EXPECT_EQ(log.input_counts, log.output_counts);
}

TEST(Run, IdentityGateReproducesInputKinds) {
  const auto c = parse_circuit("QUBITS 1\nR 1 0\n");
  auto net = build_network(c, 0.99, OutputMode::deterministic, 3);
  const EventLog log = run(net, constant_source(Event(1, 0.6, 0.8)), 2000,
                           {.discard = 500, .keep_recent = 1500});
  EXPECT_EQ(log.steady_output_counts[1], 1500u);
  for (const auto& [in, out] : log.recent) {
    EXPECT_EQ(out.kind, in.kind);
    EXPECT_NEAR(out.m0, 0.6, 0.02);
    EXPECT_NEAR(out.m1, 0.8, 0.02);
  }
}

TEST(Run, InterferometerAtPiSendsEverythingToKindZero) {
  auto net = build_network(mzi_circuit(kPi), 0.99, OutputMode::deterministic, 17);
  const EventLog log = run(net, constant_source(Event(0, 1.0, 0.0)), 10000, {.discard = 5000});
  EXPECT_NEAR(log.steady_frequencies()[0], 1.0, 0.02);
}

TEST(Run, SameSeedGivesIdenticalLogs) {
  for (OutputMode mode : {OutputMode::deterministic, OutputMode::stochastic}) {
    const auto c = parse_circuit("QUBITS 2\nH 1\nCPHASE 1 2 pi/3\nY 2\nCNOT 2 1\n");
    auto a = build_network(c, 0.99, mode, 77);
    auto b = build_network(c, 0.99, mode, 77);
    const auto src_a = mixed_source({0.5, 0.5, 0, 0}, {0, 1, 0, 0}, 78);
    const auto src_b = mixed_source({0.5, 0.5, 0, 0}, {0, 1, 0, 0}, 78);
    const RunOptions opt{.discard = 100, .keep_recent = 5, .full_trace = true};
    EXPECT_EQ(run(a, src_a, 3000, opt), run(b, src_b, 3000, opt));
  }
}

TEST(Run, DiscardSplitsCounters) {
  auto net = build_network(parse_circuit("QUBITS 1\nH 1\n"), 0.99, OutputMode::deterministic, 2);
  const EventLog log = run(net, constant_source(Event(0, 1.0, 0.0)), 1000, {.discard = 300});
  EXPECT_EQ(log.total, 1000u);
  EXPECT_EQ(log.discarded, 300u);
  EXPECT_EQ(log.steady_output_counts[0] + log.steady_output_counts[1], 700u);
  EXPECT_THROW(run(net, constant_source(Event(0, 1.0, 0.0)), 0), PreconditionError);
  EXPECT_THROW(run(net, constant_source(Event(2, 1.0, 0.0)), 1), PreconditionError);
}

TEST(RunProperty, EventsAreConserved) {
  Rng gen(51);
  for (int i = 0; i < 20; ++i) {
    const auto c = reference::random_circuit(gen);
    auto net = build_network(c, 0.99, i % 2 ? OutputMode::stochastic : OutputMode::deterministic,
                             100 + i);
    const std::size_t D = net.num_kinds();
    std::vector<double> probs(D, 1.0 / double(D)), phases(D, 0.3);
    std::size_t observed = 0;
    const EventLog log = run(net, mixed_source(probs, phases, 200 + i), 500, {},
                             [&](std::size_t, const Event&, const Event&) { ++observed; });
    std::uint64_t in = 0, out = 0;
    for (std::size_t k = 0; k < D; ++k) {
      in += log.input_counts[k];
      out += log.output_counts[k];
    }
    EXPECT_EQ(in, 500u);
    EXPECT_EQ(out, 500u);
    EXPECT_EQ(observed, 500u);
    for (const auto& stage : log.steady_stage_counts) {
      std::uint64_t s = 0;
      for (auto n : stage) s += n;
      EXPECT_EQ(s, 500u);
    }
  }
}

TEST(RunProperty, RandomCircuitsMatchOracle) {
  // Ten circuits here; the acceptance runner covers fifty.
  Rng gen(52);
  for (int i = 0; i < 10; ++i) {
    const auto c = reference::random_circuit(gen);
    auto net = build_network(c, 0.999, OutputMode::deterministic, 300 + i);
    const EventLog log = run(net, constant_source(Event(0, 1.0, 0.0)), 20000, {.discard = 10000});
    const auto p = probabilities(apply_circuit(StateVector::basis(c.num_qubits, 0), c));
    EXPECT_TRUE(reference::within_multinomial_bounds(log.steady_frequencies(), p, 10000.0))
        << render_circuit(c);
  }
}

TEST(StreamSeed, DistinctStreams) {
  EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
  EXPECT_EQ(stream_seed(9, 3), stream_seed(9, 3));
}

TEST(MixedSource, FollowsProbabilities) {
  auto src = mixed_source({0.2, 0.0, 0.8}, {0.0, 0.0, kPi}, 61);
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 20000; ++i) {
    const Event e = src();
    ++counts[e.kind];
    if (e.kind == 2) {
      ASSERT_NEAR(e.m0, -1.0, 1e-15);
    }
  }
  EXPECT_EQ(counts[1], 0);
  EXPECT_NEAR(counts[0] / 20000.0, 0.2, 0.01);
  EXPECT_THROW(mixed_source({1.0}, {0.0, 1.0}, 1), PreconditionError);
}

}  // namespace
