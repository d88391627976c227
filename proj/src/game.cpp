#include "poptlab/game.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>

#include "poptlab/distinguish.hpp"
#include "poptlab/errors.hpp"
#include "poptlab/sampling.hpp"

namespace poptlab {

namespace {

constexpr double kDistTol = 1e-12;
constexpr double kNegativityTol = 1e-9;

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

double outcome_probability(const HermitianOperator& state,
                           const HermitianOperator& effect) {
  if (state.dim() != effect.dim()) {
    throw ShapeError("decoder effect dimension does not match the encoded state");
  }
  return (state.matrix() * effect.matrix()).trace().real();
}

DecoderEntry decoder_entry(const GameStrategy& s, int eta, int etaPrime) {
  const int lo = std::min(eta, etaPrime);
  const int hi = std::max(eta, etaPrime);
  DecoderEntry entry = s.decoder(lo, hi);
  if (entry.measurement.effects.size() != 2) {
    throw GameError("decoder must answer pairs with a two-effect measurement");
  }
  return entry;
}

std::pair<int, int> canonical_pair(int a, int b) {
  if (a == b) throw GameError("decoder pair must name two distinct messages");
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

GameSpec uniform_game(int n) {
  if (n < 2) throw GameError("the game needs at least two messages");
  GameSpec g;
  g.n = n;
  g.messageDist.assign(n, 1.0 / n);
  g.questionDist.assign(n, std::vector<double>(n, 1.0 / (n - 1)));
  for (int i = 0; i < n; ++i) g.questionDist[i][i] = 0.0;
  return g;
}

void validate_game(const GameSpec& g) {
  if (g.n < 2) throw GameError("the game needs at least two messages");
  if (static_cast<int>(g.messageDist.size()) != g.n ||
      static_cast<int>(g.questionDist.size()) != g.n) {
    throw GameError("game distributions must cover every message");
  }
  double total = 0.0;
  for (double p : g.messageDist) {
    if (p < 0.0) throw GameError("message probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > kDistTol) {
    throw GameError("message distribution must be normalized");
  }
  for (int i = 0; i < g.n; ++i) {
    const std::vector<double>& row = g.questionDist[i];
    if (static_cast<int>(row.size()) != g.n) {
      throw GameError("question rows must cover every message");
    }
    if (row[i] != 0.0) throw GameError("questions must differ from the message");
    double rowTotal = 0.0;
    for (double p : row) {
      if (p < 0.0) throw GameError("question probabilities must be nonnegative");
      rowTotal += p;
    }
    if (std::abs(rowTotal - 1.0) > kDistTol) {
      throw GameError("question rows must be normalized");
    }
  }
}

void validate_strategy(const GameStrategy& s, const GameSpec& g,
                       const PoptSearchConfig& cfg) {
  validate_game(g);
  if (static_cast<int>(s.encoder.size()) < g.n) {
    throw GameError("encoder must cover every message");
  }
  for (int i = 0; i < g.n; ++i) {
    const HermitianOperator& state = s.encoder[i];
    if (std::abs(state.trace() - 1.0) > 1e-9) {
      throw NonUnitTraceError("encoded states must have unit trace");
    }
    switch (s.theory) {
      case TheoryTag::Quantum:
        if (!is_psd(state)) throw NotPsdError("quantum encoders must emit PSD states");
        break;
      case TheoryTag::SepBar:
        if (!is_popt(state, cfg).first) {
          throw NotPoptError("sep-bar encoders must emit product-test-positive states");
        }
        break;
      case TheoryTag::Classical: {
        if (!is_psd(state)) throw NotPsdError("classical encoders must emit PSD states");
        Matrix offDiagonal = state.matrix();
        offDiagonal.diagonal().setZero();
        if (offDiagonal.cwiseAbs().maxCoeff() > 1e-12) {
          throw GameError("classical encoders must emit diagonal states");
        }
        break;
      }
    }
  }
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      const DecoderEntry entry = decoder_entry(s, i, j);
      const Measurement& m = entry.measurement;
      Matrix sum = m.effects[0].matrix() + m.effects[1].matrix();
      if ((sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() >
          1e-9) {
        throw MeasurementError("decoder effects must sum to the identity");
      }
      const auto [lo, hi] = std::minmax(entry.answers[0], entry.answers[1]);
      if (lo != i || hi != j) {
        throw GameError("decoder answers must name both messages of the pair");
      }
      if (s.theory == TheoryTag::SepBar) {
        if (m.certificates.size() != m.effects.size()) {
          throw GameError("sep-bar decoders need a certificate per effect");
        }
        for (std::size_t k = 0; k < m.effects.size(); ++k) {
          if (!verify_separable_decomposition(m.certificates[k], m.effects[k])) {
            throw GameError("sep-bar decoder certificate does not reconstruct its effect");
          }
        }
      }
    }
  }
}

double exact_win_probability(const GameStrategy& s, const GameSpec& g) {
  validate_game(g);
  if (static_cast<int>(s.encoder.size()) < g.n) {
    throw GameError("encoder must cover every message");
  }
  double win = 0.0;
  for (int eta = 0; eta < g.n; ++eta) {
    for (int etaPrime = 0; etaPrime < g.n; ++etaPrime) {
      const double weight = g.messageDist[eta] * g.questionDist[eta][etaPrime];
      if (weight == 0.0) continue;
      const DecoderEntry entry = decoder_entry(s, eta, etaPrime);
      double correct = 0.0;
      for (int k = 0; k < 2; ++k) {
        if (entry.answers[k] != eta) continue;
        correct += clamp01(
            outcome_probability(s.encoder[eta], entry.measurement.effects[k]));
      }
      win += weight * correct;
    }
  }
  return clamp01(win);
}

GameResult simulate(const GameStrategy& s, const GameSpec& g, long long rounds,
                    std::uint64_t seed) {
  if (rounds < 1) throw GameError("simulation needs at least one round");
  validate_game(g);
  if (static_cast<int>(s.encoder.size()) < g.n) {
    throw GameError("encoder must cover every message");
  }

  long long successes = 0;
  for (long long round = 0; round < rounds; ++round) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(round)));
    std::discrete_distribution<int> messagePick(g.messageDist.begin(),
                                                g.messageDist.end());
    const int eta = messagePick(rng);
    std::discrete_distribution<int> questionPick(g.questionDist[eta].begin(),
                                                 g.questionDist[eta].end());
    const int etaPrime = questionPick(rng);

    const DecoderEntry entry = decoder_entry(s, eta, etaPrime);
    double p[2];
    for (int k = 0; k < 2; ++k) {
      p[k] = outcome_probability(s.encoder[eta], entry.measurement.effects[k]);
      if (p[k] < -kNegativityTol) {
        throw GameError("decoder produced a negative outcome probability");
      }
      p[k] = std::max(0.0, p[k]);
    }
    const double total = p[0] + p[1];
    if (total <= 0.0) {
      throw GameError("decoder outcome probabilities vanish for a sampled pair");
    }
    std::bernoulli_distribution firstOutcome(p[0] / total);
    const int outcome = firstOutcome(rng) ? 0 : 1;
    if (entry.answers[outcome] == eta) ++successes;
  }

  GameResult result;
  result.exactWinProb = exact_win_probability(s, g);
  result.empiricalWinRate = static_cast<double>(successes) / rounds;
  result.rounds = rounds;
  result.seed = seed;
  return result;
}

GameStrategy builtin_sepbar8() {
  const std::vector<CatalogState8> family = s8();
  auto table = std::make_shared<std::map<std::pair<int, int>, DecoderEntry>>();
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      Measurement m = table1_measurement(family[i].label, family[j].label);
      const DistinguishReport report =
          verify_pair(family[i].state, family[j].state, m);
      if (!report.pass) {
        throw GameError("pair measurement failed to separate " +
                        family[i].label.text() + " and " + family[j].label.text());
      }
      DecoderEntry entry{std::move(m), {0, 0}};
      entry.answers[report.outcomePermutation[0]] = i;
      entry.answers[report.outcomePermutation[1]] = j;
      (*table)[{i, j}] = std::move(entry);
    }
  }

  GameStrategy s;
  s.theory = TheoryTag::SepBar;
  for (const CatalogState8& cs : family) s.encoder.push_back(cs.state);
  s.decoder = [table](int a, int b) {
    const auto it = table->find(canonical_pair(a, b));
    if (it == table->end()) {
      throw GameError("decoder pair is outside the eight-message table");
    }
    return it->second;
  };
  return s;
}

GameStrategy builtin_quantum_baseline(int n) {
  if (n < 2 || n > 8) {
    throw GameError("the quantum baseline supports 2 to 8 messages");
  }
  GameStrategy s;
  s.theory = TheoryTag::Quantum;
  for (int i = 0; i < n; ++i) {
    s.encoder.push_back(bell_state(static_cast<BellLabel>(i % 4)));
  }
  s.decoder = [](int a, int b) {
    const auto [i, j] = canonical_pair(a, b);
    const SystemShape shape({2, 2});
    DecoderEntry entry;
    entry.answers = {i, j};
    if (i % 4 == j % 4) {
      const HermitianOperator coin{shape, 0.5 * Matrix::Identity(4, 4)};
      entry.measurement.label = "unbiased-guess";
      entry.measurement.outcomeLabels = {"first", "second"};
      entry.measurement.effects = {coin, coin};
      return entry;
    }
    const HermitianOperator projector = bell_state(static_cast<BellLabel>(i % 4));
    const HermitianOperator complement{
        shape, Matrix::Identity(4, 4) - projector.matrix()};
    entry.measurement.label = "pair-projector";
    entry.measurement.outcomeLabels = {"first", "second"};
    entry.measurement.effects = {projector, complement};
    return entry;
  };
  return s;
}

}  // namespace poptlab
