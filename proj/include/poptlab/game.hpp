// game.hpp — The pairwise-distinguishability game: exact scoring and sampling.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "poptlab/catalog.hpp"
#include "poptlab/cones.hpp"
#include "poptlab/operators.hpp"

namespace poptlab {

// Referee distributions: a message η is drawn from messageDist and a distinct
// question partner η′ from row η of questionDist (zero diagonal, rows
// normalized).
struct GameSpec {
  int n = 2;
  std::vector<double> messageDist;
  std::vector<std::vector<double>> questionDist;
};

GameSpec uniform_game(int n);

// Throws GameError unless n ≥ 2, the sizes match n, the diagonal of
// questionDist vanishes, and every distribution is normalized within 1e-12.
void validate_game(const GameSpec& g);

enum class TheoryTag { Quantum, SepBar, Classical };

// Bob's plan for one unordered message pair: a two-outcome measurement and the
// message he answers on each outcome.
struct DecoderEntry {
  Measurement measurement;
  std::array<int, 2> answers;  // aligned with the measurement's effects
};

struct GameStrategy {
  std::vector<HermitianOperator> encoder;         // message → communicated state
  std::function<DecoderEntry(int, int)> decoder;  // unordered pair, i < j
  TheoryTag theory = TheoryTag::Quantum;
};

// Encoder states must be unit-trace members of the tagged theory's state set
// (PSD for Quantum, product-test positive for SepBar, diagonal PSD for
// Classical).  Decoders must be complete two-effect measurements whose answers
// name both messages of the pair, with verifying separable certificates when
// the tag is SepBar.
void validate_strategy(const GameStrategy& s, const GameSpec& g,
                       const PoptSearchConfig& cfg = {});

// Σ_η P(η) Σ_{η′≠η} P(η′|η) · P[answer = η | pair {η,η′}], with every outcome
// probability clamped to [0,1].
double exact_win_probability(const GameStrategy& s, const GameSpec& g);

struct GameResult {
  double exactWinProb = 0.0;
  std::optional<double> empiricalWinRate;
  long long rounds = 0;
  std::uint64_t seed = 0;
};

// Plays `rounds` independent rounds with counter-derived per-round seeds, so
// results reproduce regardless of execution order.  Outcome probabilities
// within 1e-9 below zero clamp to zero and the pair renormalizes; anything
// lower aborts with GameError.
GameResult simulate(const GameStrategy& s, const GameSpec& g, long long rounds,
                    std::uint64_t seed);

// Perfect eight-message strategy: the eight-state family in catalog order,
// decoded by the pair-measurement table with answers fixed by the verified
// outcome assignment.
GameStrategy builtin_sepbar8();

// Bell-state encoder reused cyclically past four messages; colliding pairs are
// answered by an unbiased guess.  Supports 2 ≤ n ≤ 8.
GameStrategy builtin_quantum_baseline(int n);

}  // namespace poptlab
