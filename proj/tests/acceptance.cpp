// acceptance.cpp — Release gate: one timed pass/fail line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "poptlab/catalog.hpp"
#include "poptlab/cones.hpp"
#include "poptlab/distinguish.hpp"
#include "poptlab/game.hpp"
#include "poptlab/operators.hpp"
#include "poptlab/realization.hpp"
#include "poptlab/sampling.hpp"

using namespace poptlab;

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

__attribute__((format(printf, 1, 2)))
std::string format(const char* pattern, ...) {
  char buf[768];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

struct Line {
  bool pass = false;
  std::string detail;
};

HermitianOperator basis_state(const SystemShape& shape, int k) {
  Vector v = Vector::Zero(shape.total());
  v(k) = 1.0;
  return HermitianOperator{shape, v * v.adjoint()};
}

// Product-basis measurement {(u⊗v)|ij⟩⟨ij|(u⊗v)†} with per-effect certificates.
Measurement product_basis_measurement(const Matrix& u, const Matrix& v) {
  const SystemShape shape({2, 2});
  const SystemShape qubit({2});
  Measurement m;
  m.label = "product-basis";
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const HermitianOperator fu = pure_state(qubit, u.col(i));
      const HermitianOperator fv = pure_state(qubit, v.col(j));
      m.outcomeLabels.push_back(std::to_string(i) + std::to_string(j));
      m.effects.emplace_back(shape, kron(fu.matrix(), fv.matrix()));
      SeparableDecomposition cert;
      cert.terms.push_back({1.0, {fu, fv}});
      m.certificates.push_back(std::move(cert));
    }
  }
  return m;
}

Measurement qubit_basis_measurement(const Vector& up, const std::string& name) {
  const SystemShape qubit({2});
  const HermitianOperator p0 = pure_state(qubit, up);
  const HermitianOperator p1{qubit, Matrix::Identity(2, 2) - p0.matrix()};
  Measurement m;
  m.label = name;
  m.outcomeLabels = {"0", "1"};
  m.effects = {p0, p1};
  for (const HermitianOperator& effect : m.effects) {
    SeparableDecomposition cert;
    cert.terms.push_back({1.0, {effect}});
    m.certificates.push_back(std::move(cert));
  }
  return m;
}

double min_eigenvalue(const HermitianOperator& w) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(w.matrix());
  return solver.eigenvalues().minCoeff();
}

// Reshape onto a first-qubit-versus-rest bipartition so the realization
// pipeline applies to the triple catalog states as well.
HermitianOperator as_bipartite(const HermitianOperator& w) {
  const int total = w.shape().total();
  return HermitianOperator{SystemShape({2, total / 2}), w.matrix()};
}

// Move one factor of a triple state to the front and group the other two, so
// the cut separates the transposed sites from the untransposed ones.
HermitianOperator front_factor_bipartite(const HermitianOperator& w,
                                         int front) {
  const SystemShape& shape = w.shape();
  const int total = shape.total();
  std::vector<int> order = {front};
  for (int f = 0; f < shape.factor_count(); ++f) {
    if (f != front) order.push_back(f);
  }
  std::vector<int> reordered(total);
  for (int r = 0; r < total; ++r) {
    std::vector<int> digits = shape.digits(r);
    std::vector<int> moved;
    for (int f : order) moved.push_back(digits[f]);
    int flat = 0;
    for (std::size_t f = 0; f < moved.size(); ++f) {
      flat = flat * shape.dim(order[f]) + moved[f];
    }
    reordered[r] = flat;
  }
  Matrix out = Matrix::Zero(total, total);
  for (int r = 0; r < total; ++r) {
    for (int c = 0; c < total; ++c) {
      out(reordered[r], reordered[c]) = w.matrix()(r, c);
    }
  }
  return HermitianOperator{SystemShape({shape.dim(front), total / shape.dim(front)}),
                           out};
}

// Criterion 1: every pair of the eight-state family is separated by its
// looked-up rotated parity measurement, deterministically and quickly.
Line criterion_pair_family8() {
  const auto start = Clock::now();
  std::vector<std::string> labels;
  std::vector<HermitianOperator> states;
  for (const CatalogState8& cs : s8()) {
    labels.push_back(cs.label.text());
    states.push_back(cs.state);
  }
  const PairwiseCertificate cert =
      verify_family(labels, states, [](int i, int j) {
        return table1_measurement(s8()[i].label, s8()[j].label);
      });
  int passing = 0;
  double maxDev = 0.0;
  for (const PairReport& pr : cert.perPairReports) {
    if (pr.report.pass) ++passing;
    maxDev = std::max(maxDev, pr.report.maxDeviation);
  }
  const long long elapsed = ms_since(start);
  Line line;
  line.pass = cert.complete && cert.perPairReports.size() == 28 &&
              passing == 28 && maxDev <= 1e-9 && elapsed < 1000;
  line.detail = format("%d/28 pairs, max deviation %.2e, %lld ms (budget 1000)",
                       passing, maxDev, elapsed);
  return line;
}

// Criterion 2: no quantum pool beats four pairwise-distinguishable two-qubit
// states, the reuse baseline scores 13/14 against an independent
// pair-enumeration oracle, and the eight-state strategy wins outright.
Line criterion_quantum_ceiling() {
  std::vector<HermitianOperator> pool;
  for (const CatalogState8& cs : s8()) {
    if (!cs.label.barred) pool.push_back(cs.state);
  }
  const SystemShape shape({2, 2});
  for (int k = 0; k < 20; ++k) {
    std::mt19937_64 rng(mix_seed(2024, k));
    pool.push_back(random_pure_density(shape, rng));
  }
  const CliqueResult clique = quantum_information_dimension(pool);

  const int n = 8;
  double oracle = 0.0;
  int pairs = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      oracle += (i % 4 == j % 4) ? 0.5 : 1.0;
      ++pairs;
    }
  }
  oracle /= pairs;

  const GameSpec game = uniform_game(n);
  const double quantum =
      exact_win_probability(builtin_quantum_baseline(n), game);
  const double sepbar = exact_win_probability(builtin_sepbar8(), game);

  Line line;
  line.pass = clique.size <= 4 && std::abs(quantum - oracle) <= 1e-12 &&
              sepbar == 1.0;
  line.detail = format(
      "clique %d of 24 states, baseline %.15f vs oracle %.15f, perfect %.1f",
      clique.size, quantum, oracle, sepbar);
  return line;
}

// Criterion 3: the 276 triple-state pairs are separated, the seven parity rows
// give 24 distinct codewords matching the recomputed partition, and printed
// reference divergences are confined to the (z,z,y) row.
Line criterion_pair_family24() {
  const auto start = Clock::now();
  std::vector<std::string> labels;
  std::vector<HermitianOperator> states;
  for (const CatalogState24& cs : s24()) {
    labels.push_back(cs.label.text());
    states.push_back(cs.state);
  }
  const PairwiseCertificate cert =
      verify_family(labels, states, [](int i, int j) {
        return table2_measurement(s24()[i].label, s24()[j].label).first;
      });
  int passing = 0;
  for (const PairReport& pr : cert.perPairReports) {
    if (pr.report.pass) ++passing;
  }

  std::set<std::string> codewords;
  const int rows = static_cast<int>(table2_rows().size());
  for (const HermitianOperator& st : states) {
    std::string word;
    for (int row = 0; row < rows; ++row) {
      word += table2_odd_column(row, st) ? '1' : '0';
    }
    codewords.insert(word);
  }

  const std::vector<Table2Divergence> divergences = table2_divergences();
  bool divergencesConfined = true;
  for (const Table2Divergence& d : divergences) {
    if (table2_rows()[d.row].text() != "(z,z,y)") divergencesConfined = false;
    std::fprintf(stderr,
                 "  reference divergence: row %s state %s printed odd=%d "
                 "even=%d computed odd=%d\n",
                 table2_rows()[d.row].text().c_str(), d.state.text().c_str(),
                 d.printedInOdd ? 1 : 0, d.printedInEven ? 1 : 0,
                 d.computedOdd ? 1 : 0);
  }

  const long long elapsed = ms_since(start);
  Line line;
  line.pass = cert.complete && cert.perPairReports.size() == 276 &&
              passing == 276 && rows == 7 && codewords.size() == 24 &&
              divergencesConfined && elapsed < 5000;
  line.detail = format(
      "%d/276 pairs, %zu/24 codewords, %zu printed divergences all on "
      "(z,z,y), %lld ms (budget 5000)",
      passing, codewords.size(), divergences.size(), elapsed);
  return line;
}

// Criterion 4: all catalog states pass the product test, every transposed
// state has an eigenvalue at or below -0.1, and the phi+_bar spectrum is
// {1/2, 1/2, 1/2, -1/2}.
Line criterion_cone_classification() {
  int members = 0;
  int total = 0;
  int barred = 0;
  int barredNegative = 0;
  double worstMin = 0.0;

  auto inspect = [&](const HermitianOperator& st, bool isBarred) {
    ++total;
    const auto [member, report] = is_popt(st);
    if (member && report.minValue >= -1e-9) ++members;
    worstMin = std::min(worstMin, report.minValue);
    if (isBarred) {
      ++barred;
      if (min_eigenvalue(st) <= -0.1) ++barredNegative;
    }
  };
  for (const CatalogState8& cs : s8()) inspect(cs.state, cs.label.barred);
  for (const CatalogState24& cs : s24()) inspect(cs.state, cs.label.barLevel > 0);

  const HermitianOperator phiPlusBar = s8()[4].state;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(phiPlusBar.matrix());
  Eigen::VectorXd expected(4);
  expected << -0.5, 0.5, 0.5, 0.5;
  const double spectrumDev =
      (solver.eigenvalues() - expected).cwiseAbs().maxCoeff();

  Line line;
  line.pass = members == total && total == 32 && barred == 20 &&
              barredNegative == barred && spectrumDev <= 1e-10 &&
              s8()[4].label.text() == "phi+_bar";
  line.detail = format(
      "%d/%d product-test positive (worst min %.2e), %d/%d transposed states "
      "below -0.1, phi+_bar spectrum deviation %.2e",
      members, total, worstMin, barredNegative, barred, spectrumDev);
  return line;
}

// Criterion 5: the realization pipeline reconstructs every transposed catalog
// state and fifty seeded random members with unital positive maps.
Line criterion_realizations() {
  const auto start = Clock::now();
  std::vector<HermitianOperator> targets;
  for (const CatalogState8& cs : s8()) {
    if (cs.label.barred) targets.push_back(cs.state);
  }
  for (const CatalogState24& cs : s24()) {
    if (cs.label.barLevel == 1) {
      targets.push_back(front_factor_bipartite(cs.state, 1));
    } else if (cs.label.barLevel == 2) {
      targets.push_back(as_bipartite(cs.state));
    }
  }
  for (int k = 0; k < 50; ++k) {
    std::mt19937_64 rng(mix_seed(2025, k));
    targets.push_back(random_popt_witness(rng));
  }

  PoptSearchConfig cfg;
  cfg.restarts = 16;
  int passing = 0;
  double worstReconstruction = 0.0;
  double worstUnitality = 0.0;
  int blockPositive = 0;
  for (const HermitianOperator& w : targets) {
    const PoptRealization r = realize_popt(w, cfg);
    const RealizationChecks checks = verify_realization(w, r, cfg);
    worstReconstruction =
        std::max(worstReconstruction, checks.reconstructionResidual);
    worstUnitality = std::max(worstUnitality, checks.unitalityResidual);
    if (checks.choiBlockPositive) ++blockPositive;
    if (checks.pass && checks.reconstructionResidual <= 1e-8 &&
        checks.unitalityResidual <= 1e-8) {
      ++passing;
    }
  }
  const long long elapsed = ms_since(start);
  const int total = static_cast<int>(targets.size());

  Line line;
  line.pass = total == 70 && passing == total && blockPositive == total &&
              elapsed < 10000;
  line.detail = format(
      "%d/%d realizations verified, worst reconstruction %.2e, worst "
      "unitality %.2e, %lld ms (budget 10000)",
      passing, total, worstReconstruction, worstUnitality, elapsed);
  return line;
}

// Criterion 6: for phi+_bar with two Pauli settings per side, probabilities
// from the state and from the realized map agree and stay inside [0, 1].
Line criterion_correlation_identity() {
  const HermitianOperator w = s8()[4].state;
  PoptSearchConfig cfg;
  cfg.restarts = 16;
  const PoptRealization r = realize_popt(w, cfg);

  Vector zUp(2);
  zUp << 1.0, 0.0;
  Vector xUp(2);
  xUp << 1.0, 1.0;
  const std::vector<Measurement> settings = {
      qubit_basis_measurement(zUp, "z"), qubit_basis_measurement(xUp, "x")};
  const CorrelationCheck check =
      correlation_identity_check(w, settings, settings, r);

  int probabilities = 0;
  for (const auto& perSetting : check.probsFromState) {
    for (const Eigen::MatrixXd& table : perSetting) {
      probabilities += static_cast<int>(table.size());
    }
  }

  Line line;
  line.pass = probabilities == 16 && check.maxDeviation <= 1e-8 &&
              check.minProbability >= -1e-12 &&
              check.maxProbability <= 1.0 + 1e-12;
  line.detail = format(
      "%d probabilities, route deviation %.2e, range [%.3f, %.3f]",
      probabilities, check.maxDeviation, check.minProbability,
      check.maxProbability);
  return line;
}

// Criterion 7: complements stay in the cone, trace accounting never books a
// negative slack on separable four-outcome instances, the dimension-bound
// slack is nonnegative on dominated tables, and the computational basis
// distinguishes its four states exactly.
Line criterion_accounting() {
  PoptSearchConfig cfg;
  cfg.restarts = 16;

  int complements = 0;
  int complementTotal = 0;
  auto checkComplement = [&](const HermitianOperator& st) {
    ++complementTotal;
    if (complement_in_popt_cone(st, cfg).first) ++complements;
  };
  for (const CatalogState8& cs : s8()) checkComplement(cs.state);
  for (const CatalogState24& cs : s24()) checkComplement(cs.state);
  for (int k = 0; k < 50; ++k) {
    std::mt19937_64 rng(mix_seed(2027, k));
    checkComplement(random_popt_witness(rng));
  }
  for (int k = 0; k < 50; ++k) {
    std::mt19937_64 rng(mix_seed(2027, 1000 + k));
    checkComplement(random_bell_mixture(rng));
  }

  double minAccountingSlack = 1e300;
  for (int rep = 0; rep < 100; ++rep) {
    std::mt19937_64 rng(mix_seed(2028, rep));
    std::vector<HermitianOperator> states;
    for (int k = 0; k < 4; ++k) states.push_back(random_popt_witness(rng));
    const Measurement m = product_basis_measurement(
        random_unitary(2, rng).matrix(), random_unitary(2, rng).matrix());
    minAccountingSlack =
        std::min(minAccountingSlack, trace_accounting(states, m).slack);
  }

  double minBoundSlack = 1e300;
  for (int rep = 0; rep < 100; ++rep) {
    std::mt19937_64 rng(mix_seed(2030, rep));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = 4;
    Eigen::MatrixXd table(n, n);
    Eigen::VectorXd reference(n);
    for (int i = 0; i < n; ++i) {
      double rowMax = 1.0;
      for (int j = 0; j < n; ++j) {
        table(i, j) = (i == j) ? 1.0 : unif(rng);
        rowMax = std::max(rowMax, table(i, j));
      }
      reference(i) =
          std::min(1.0, rowMax / 4.0 + unif(rng) * (1.0 - rowMax / 4.0));
    }
    minBoundSlack =
        std::min(minBoundSlack, dimension_bound_slack(table, reference, 2, 2));
  }

  const SystemShape shape({2, 2});
  std::vector<HermitianOperator> computational;
  for (int k = 0; k < 4; ++k) computational.push_back(basis_state(shape, k));
  const DistinguishReport basisReport = verify_single_measurement(
      computational, product_basis_measurement(Matrix::Identity(2, 2),
                                               Matrix::Identity(2, 2)));

  Line line;
  line.pass = complements == complementTotal && complementTotal == 132 &&
              minAccountingSlack >= -1e-8 && minBoundSlack >= 0.0 &&
              basisReport.pass && basisReport.maxDeviation == 0.0;
  line.detail = format(
      "%d/%d complements in cone, accounting slack >= %.2e, bound slack >= "
      "%.2e, basis readout deviation %.1f",
      complements, complementTotal, minAccountingSlack, minBoundSlack,
      basisReport.maxDeviation);
  return line;
}

// Criterion 8: randomized identities of the numeric substrate, plus the
// whole-suite time budget.
Line criterion_substrate(Clock::time_point suiteStart) {
  const std::vector<SystemShape> shapes = {
      SystemShape({2, 2}), SystemShape({2, 3}), SystemShape({3, 2}),
      SystemShape({2, 2, 2})};

  int involutions = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::mt19937_64 rng(mix_seed(2029, rep));
    const SystemShape& shape = shapes[rep % shapes.size()];
    const HermitianOperator m = random_hermitian(shape, rng);
    std::vector<int> transposed;
    for (int f = 0; f < shape.factor_count(); ++f) {
      if (rng() % 2 == 0) transposed.push_back(f);
    }
    if (transposed.empty()) transposed.push_back(rep % shape.factor_count());
    const HermitianOperator twice =
        partial_transpose(partial_transpose(m, transposed), transposed);
    if ((twice.matrix() - m.matrix()).cwiseAbs().maxCoeff() == 0.0) {
      ++involutions;
    }
  }

  int tensorTrace = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::mt19937_64 rng(mix_seed(2031, rep));
    const HermitianOperator a = random_hermitian(SystemShape({2, 2}), rng);
    const HermitianOperator b = random_hermitian(SystemShape({3}), rng);
    const HermitianOperator ab = tensor(a, b);
    const double traceDev =
        std::abs(ab.trace() - a.trace() * b.trace());
    const HermitianOperator back = partial_trace(ab, {0, 1});
    const double marginalDev =
        (back.matrix() - b.trace() * a.matrix()).cwiseAbs().maxCoeff();
    const HermitianOperator m = random_hermitian(SystemShape({2, 2, 2}), rng);
    const double preserved =
        std::abs(partial_trace(m, {1}).trace() - m.trace());
    if (traceDev <= 1e-10 && marginalDev <= 1e-10 && preserved <= 1e-10) {
      ++tensorTrace;
    }
  }

  int pairings = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::mt19937_64 rng(mix_seed(2032, rep));
    const int din = (rep % 2 == 0) ? 2 : 4;
    const int dout = (rep % 3 == 0) ? 3 : 2;
    const ChoiOperator choi(
        SystemShape::single(din), SystemShape::single(dout),
        random_hermitian(SystemShape({din, dout}), rng));
    const Matrix x = random_hermitian(SystemShape::single(din), rng).matrix();
    const Matrix y = random_hermitian(SystemShape::single(dout), rng).matrix();
    const std::complex<double> lhs =
        (apply_map_raw(choi, x) * y).trace();
    const std::complex<double> rhs =
        (x * apply_map_raw(choi_adjoint(choi), y)).trace();
    if (std::abs(lhs - rhs) <= 1e-10) ++pairings;
  }

  const long long suiteMs = ms_since(suiteStart);
  Line line;
  line.pass = involutions == 100 && tensorTrace == 100 && pairings == 100 &&
              suiteMs < 60000;
  line.detail = format(
      "involution %d/100, tensor-trace %d/100, adjoint pairing %d/100, suite "
      "%lld ms (budget 60000)",
      involutions, tensorTrace, pairings, suiteMs);
  return line;
}

}  // namespace

int main() {
  const auto suiteStart = Clock::now();
  std::vector<Line> lines;
  lines.push_back(criterion_pair_family8());
  lines.push_back(criterion_quantum_ceiling());
  lines.push_back(criterion_pair_family24());
  lines.push_back(criterion_cone_classification());
  lines.push_back(criterion_realizations());
  lines.push_back(criterion_correlation_identity());
  lines.push_back(criterion_accounting());
  lines.push_back(criterion_substrate(suiteStart));

  bool allPass = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::printf("criterion %zu: %s (%s)\n", i + 1,
                lines[i].pass ? "PASS" : "FAIL", lines[i].detail.c_str());
    if (!lines[i].pass) allPass = false;
  }
  std::printf("acceptance: %s\n", allPass ? "all criteria passed"
                                          : "at least one criterion failed");
  return allPass ? 0 : 1;
}
