// test_game.cpp — Exact game scoring, sampling, and the built-in strategies.
#include <cmath>
#include <utility>

#include "doctest.h"
#include "poptlab/catalog.hpp"
#include "poptlab/distinguish.hpp"
#include "poptlab/errors.hpp"
#include "poptlab/game.hpp"

using namespace poptlab;

namespace {

PoptSearchConfig fast_config() {
  PoptSearchConfig cfg;
  cfg.restarts = 16;
  return cfg;
}

// Independent score for the Bell-reuse baseline: colliding unordered pairs
// {i, i+4} are coin flips, every other pair is answered perfectly.
double bell_reuse_score(int n) {
  const int collisions = n > 4 ? n - 4 : 0;
  return 1.0 - static_cast<double>(collisions) / (n * (n - 1));
}

GameStrategy classical_bit() {
  const SystemShape qubit({2});
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const Matrix p1 = Matrix::Identity(2, 2) - p0;

  GameStrategy s;
  s.theory = TheoryTag::Classical;
  s.encoder = {HermitianOperator{qubit, p0}, HermitianOperator{qubit, p1}};
  s.decoder = [qubit, p0, p1](int, int) {
    DecoderEntry entry;
    entry.answers = {0, 1};
    entry.measurement.label = "bit-readout";
    entry.measurement.outcomeLabels = {"0", "1"};
    entry.measurement.effects = {HermitianOperator{qubit, p0},
                                 HermitianOperator{qubit, p1}};
    return entry;
  };
  return s;
}

}  // namespace

TEST_CASE("the eight-state strategy wins every question exactly") {
  const GameStrategy s = builtin_sepbar8();
  for (int n = 2; n <= 8; ++n) {
    CHECK(std::abs(exact_win_probability(s, uniform_game(n)) - 1.0) <= 1e-12);
  }
  validate_strategy(s, uniform_game(8), fast_config());
}

TEST_CASE("the Bell-reuse baseline matches the collision count at every size") {
  for (int n = 2; n <= 8; ++n) {
    const GameStrategy s = builtin_quantum_baseline(n);
    const double p = exact_win_probability(s, uniform_game(n));
    CHECK(std::abs(p - bell_reuse_score(n)) <= 1e-12);
  }
  CHECK(std::abs(exact_win_probability(builtin_quantum_baseline(8), uniform_game(8)) -
                 13.0 / 14.0) <= 1e-12);
  CHECK(std::abs(exact_win_probability(builtin_quantum_baseline(5), uniform_game(5)) -
                 19.0 / 20.0) <= 1e-12);
  CHECK(std::abs(exact_win_probability(builtin_quantum_baseline(4), uniform_game(4)) -
                 1.0) <= 1e-12);
  validate_strategy(builtin_quantum_baseline(8), uniform_game(8), fast_config());
  CHECK_THROWS_AS(builtin_quantum_baseline(9), GameError);
  CHECK_THROWS_AS(builtin_quantum_baseline(1), GameError);
}

TEST_CASE("two orthogonal classical bits win the two-message game") {
  const GameStrategy s = classical_bit();
  const GameSpec g = uniform_game(2);
  validate_strategy(s, g, fast_config());
  CHECK(std::abs(exact_win_probability(s, g) - 1.0) <= 1e-12);
  const GameResult r = simulate(s, g, 500, 11);
  CHECK(r.empiricalWinRate.has_value());
  CHECK(*r.empiricalWinRate == 1.0);
}

TEST_CASE("perfect play coincides with a complete pairwise certificate") {
  const GameStrategy sepbar = builtin_sepbar8();
  std::vector<std::string> labels;
  for (const CatalogState8& cs : s8()) labels.push_back(cs.label.text());
  const auto lookup = [&sepbar](int i, int j) {
    return sepbar.decoder(i, j).measurement;
  };
  const PairwiseCertificate cert =
      verify_family(labels, sepbar.encoder, lookup);
  CHECK(cert.complete);
  CHECK(std::abs(exact_win_probability(sepbar, uniform_game(8)) - 1.0) <= 1e-12);

  const GameStrategy quantum = builtin_quantum_baseline(8);
  const auto quantumLookup = [&quantum](int i, int j) {
    return quantum.decoder(i, j).measurement;
  };
  const PairwiseCertificate quantumCert =
      verify_family(labels, quantum.encoder, quantumLookup);
  CHECK_FALSE(quantumCert.complete);
  CHECK(exact_win_probability(quantum, uniform_game(8)) < 1.0);
}

TEST_CASE("no eight-message quantum baseline can win: the state pool caps at four") {
  const GameStrategy quantum = builtin_quantum_baseline(8);
  const CliqueResult clique = quantum_information_dimension(quantum.encoder);
  CHECK(clique.size == 4);
  CHECK(exact_win_probability(quantum, uniform_game(8)) < 1.0);
}

TEST_CASE("sampling reproduces exact scores within the binomial bound") {
  const GameResult perfect = simulate(builtin_sepbar8(), uniform_game(8), 2000, 7);
  CHECK(perfect.exactWinProb == 1.0);
  CHECK(*perfect.empiricalWinRate == 1.0);
  CHECK(perfect.rounds == 2000);
  CHECK(perfect.seed == 7);

  const GameStrategy quantum = builtin_quantum_baseline(8);
  const GameSpec g = uniform_game(8);
  const long long rounds = 20000;
  const GameResult r = simulate(quantum, g, rounds, 7);
  const double p = r.exactWinProb;
  const double sigma = std::sqrt(p * (1.0 - p) / rounds);
  CHECK(std::abs(*r.empiricalWinRate - p) <= 3.0 * sigma);

  const GameResult again = simulate(quantum, g, rounds, 7);
  CHECK(*again.empiricalWinRate == *r.empiricalWinRate);
}

TEST_CASE("game specifications are validated") {
  CHECK_THROWS_AS(uniform_game(1), GameError);

  GameSpec skewed = uniform_game(3);
  skewed.messageDist[0] = 0.9;
  CHECK_THROWS_AS(validate_game(skewed), GameError);

  GameSpec selfQuestion = uniform_game(3);
  selfQuestion.questionDist[1][1] = 0.5;
  CHECK_THROWS_AS(validate_game(selfQuestion), GameError);

  GameSpec short_ = uniform_game(3);
  short_.messageDist.pop_back();
  CHECK_THROWS_AS(validate_game(short_), GameError);

  CHECK_THROWS_AS(simulate(builtin_sepbar8(), uniform_game(8), 0, 7), GameError);
}

TEST_CASE("strategy validation catches theory violations") {
  const GameSpec g = uniform_game(2);

  GameStrategy witnessAsQuantum = builtin_sepbar8();
  witnessAsQuantum.theory = TheoryTag::Quantum;
  CHECK_THROWS_AS(validate_strategy(witnessAsQuantum, uniform_game(8), fast_config()),
                  NotPsdError);

  GameStrategy offDiagonal = classical_bit();
  Matrix mixed = 0.5 * Matrix::Identity(2, 2);
  mixed(0, 1) = mixed(1, 0) = 0.5;
  offDiagonal.encoder[0] = HermitianOperator{SystemShape({2}), mixed};
  CHECK_THROWS_AS(validate_strategy(offDiagonal, g, fast_config()), GameError);

  GameStrategy unnormalized = classical_bit();
  unnormalized.encoder[0] = HermitianOperator{SystemShape({2}),
                                              2.0 * unnormalized.encoder[0].matrix()};
  CHECK_THROWS_AS(validate_strategy(unnormalized, g, fast_config()),
                  NonUnitTraceError);

  GameStrategy wrongAnswers = classical_bit();
  const auto inner = wrongAnswers.decoder;
  wrongAnswers.decoder = [inner](int i, int j) {
    DecoderEntry entry = inner(i, j);
    entry.answers = {0, 0};
    return entry;
  };
  CHECK_THROWS_AS(validate_strategy(wrongAnswers, g, fast_config()), GameError);

  GameStrategy strippedCertificates = builtin_sepbar8();
  const auto base = strippedCertificates.decoder;
  strippedCertificates.decoder = [base](int i, int j) {
    DecoderEntry entry = base(i, j);
    entry.measurement.certificates.clear();
    return entry;
  };
  CHECK_THROWS_AS(
      validate_strategy(strippedCertificates, uniform_game(8), fast_config()),
      GameError);
}

TEST_CASE("decoder misuse is reported") {
  const GameStrategy s = builtin_sepbar8();
  CHECK_THROWS_AS(s.decoder(3, 3), GameError);
  CHECK_THROWS_AS(s.decoder(0, 11), GameError);
  const DecoderEntry swapped = s.decoder(5, 2);
  const DecoderEntry canonical = s.decoder(2, 5);
  CHECK(swapped.answers == canonical.answers);
  CHECK(swapped.measurement.label == canonical.measurement.label);

  GameStrategy shortEncoder = builtin_quantum_baseline(4);
  CHECK_THROWS_AS(exact_win_probability(shortEncoder, uniform_game(8)), GameError);
}
