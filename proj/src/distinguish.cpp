// distinguish.cpp — Deterministic discrimination checks and dimension witnesses.
#include "poptlab/distinguish.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "poptlab/errors.hpp"

namespace poptlab {

namespace {

double raw_probability(const HermitianOperator& w, const HermitianOperator& e) {
  return (w.matrix() * e.matrix()).trace().real();
}

void require_complete(const Measurement& m, double tol) {
  const int dim = m.effects.front().dim();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const HermitianOperator& e : m.effects) {
    if (e.dim() != dim) {
      throw ShapeError("measurement '" + m.label + "' mixes effect dimensions");
    }
    sum += e.matrix();
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol) {
    throw MeasurementError("measurement '" + m.label + "' is not complete");
  }
}

// Exhaustive maximum-clique search over a bitmask adjacency list.
struct CliqueSearch {
  const std::vector<std::uint64_t>& adj;
  int best = 0;
  std::uint64_t bestSet = 0;

  void expand(std::uint64_t clique, int size, std::uint64_t candidates) {
    if (candidates == 0) {
      if (size > best) {
        best = size;
        bestSet = clique;
      }
      return;
    }
    while (candidates != 0) {
      if (size + std::popcount(candidates) <= best) return;
      const int v = std::countr_zero(candidates);
      candidates &= candidates - 1;
      expand(clique | (std::uint64_t{1} << v), size + 1,
             candidates & adj[static_cast<std::size_t>(v)]);
    }
  }
};

CliqueResult max_clique(const std::vector<std::uint64_t>& adj) {
  CliqueSearch search{adj};
  search.expand(0, 0, (adj.size() == 64) ? ~std::uint64_t{0}
                                         : (std::uint64_t{1} << adj.size()) - 1);
  CliqueResult result;
  result.size = search.best;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (search.bestSet & (std::uint64_t{1} << v)) result.members.push_back(static_cast<int>(v));
  }
  return result;
}

}  // namespace

DistinguishReport verify_single_measurement(const std::vector<HermitianOperator>& states,
                                            const Measurement& m, double tol) {
  if (m.effects.empty()) throw MeasurementError("measurement has no effects");
  if (states.size() != m.effects.size()) {
    throw ShapeError("verify_single_measurement: need exactly one state per effect");
  }
  for (const HermitianOperator& w : states) {
    if (w.shape() != m.effects.front().shape()) {
      throw ShapeError("verify_single_measurement: state and effect shapes differ");
    }
  }
  require_complete(m, 1e-8);

  const int n = static_cast<int>(states.size());
  Eigen::MatrixXd raw(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) raw(i, k) = raw_probability(states[i], m.effects[k]);

  DistinguishReport report;
  report.probMatrix = raw.cwiseMax(0.0).cwiseMin(1.0);

  std::vector<int> assignment(n);
  std::vector<bool> taken(n, false);
  bool bijective = true;
  for (int i = 0; i < n; ++i) {
    int arg = 0;
    raw.row(i).maxCoeff(&arg);
    assignment[i] = arg;
    if (taken[arg]) bijective = false;
    taken[arg] = true;
  }
  if (!bijective) {
    report.pass = false;
    report.maxDeviation = 1.0;
    return report;
  }

  double dev = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double target = (k == assignment[i]) ? 1.0 : 0.0;
      dev = std::max(dev, std::abs(raw(i, k) - target));
    }
  }
  report.maxDeviation = dev;
  report.pass = dev <= tol;
  report.outcomePermutation = std::move(assignment);
  return report;
}

DistinguishReport verify_pair(const HermitianOperator& w1, const HermitianOperator& w2,
                              const Measurement& m, double tol) {
  if (m.effects.size() != 2) {
    throw MeasurementError("verify_pair: measurement '" + m.label +
                           "' must have exactly two effects");
  }
  return verify_single_measurement({w1, w2}, m, tol);
}

PairwiseCertificate verify_family(const std::vector<std::string>& labels,
                                  const std::vector<HermitianOperator>& states,
                                  const PairLookup& lookup, double tol) {
  if (labels.size() != states.size()) {
    throw ShapeError("verify_family: one label per state required");
  }
  PairwiseCertificate cert;
  cert.labels = labels;
  cert.complete = true;
  const int n = static_cast<int>(states.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Measurement m = lookup(i, j);
      PairReport pr;
      pr.i = i;
      pr.j = j;
      pr.measurementId = m.label;
      pr.report = verify_pair(states[i], states[j], m, tol);
      cert.complete = cert.complete && pr.report.pass;
      cert.perPairReports.push_back(std::move(pr));
    }
  }
  return cert;
}

CliqueResult quantum_information_dimension(const std::vector<HermitianOperator>& states,
                                           double tol) {
  const std::size_t n = states.size();
  if (n == 0) return {};
  if (n > 32) {
    throw ShapeError("quantum_information_dimension: pool capped at 32 states");
  }
  std::vector<HermitianOperator> supports;
  supports.reserve(n);
  for (const HermitianOperator& w : states) {
    if (!is_psd(w)) {
      throw NotPsdError("quantum_information_dimension: pool contains a non-PSD state");
    }
    supports.push_back(support_projector(w));
  }

  std::vector<std::uint64_t> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double overlap = raw_probability(states[i], states[j]);
      const Matrix product = supports[i].matrix() * supports[j].matrix();
      const double supportNorm =
          Eigen::JacobiSVD<Matrix>(product).singularValues()(0);
      if (std::abs(overlap) <= tol && supportNorm <= 1e-9) {
        adj[i] |= std::uint64_t{1} << j;
        adj[j] |= std::uint64_t{1} << i;
      }
    }
  }
  return max_clique(adj);
}

int info_dim_lower_bound(const std::vector<std::string>& labels,
                         const std::vector<HermitianOperator>& states,
                         const PairLookup& lookup, double tol) {
  if (labels.size() != states.size()) {
    throw ShapeError("info_dim_lower_bound: one label per state required");
  }
  const std::size_t n = states.size();
  if (n == 0) return 0;
  if (n > 32) throw ShapeError("info_dim_lower_bound: pool capped at 32 states");

  std::vector<std::uint64_t> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Measurement m = lookup(static_cast<int>(i), static_cast<int>(j));
      if (verify_pair(states[i], states[j], m, tol).pass) {
        adj[i] |= std::uint64_t{1} << j;
        adj[j] |= std::uint64_t{1} << i;
      }
    }
  }
  return max_clique(adj).size;
}

TraceAccounting trace_accounting(const std::vector<HermitianOperator>& states,
                                 const Measurement& m) {
  if (states.size() != m.effects.size()) {
    throw ShapeError("trace_accounting: need exactly one state per effect");
  }
  require_complete(m, 1e-8);

  TraceAccounting acc;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].shape() != m.effects[i].shape()) {
      throw ShapeError("trace_accounting: state and effect shapes differ");
    }
    acc.sumTrE += m.effects[i].trace();
    acc.sumDiag += raw_probability(states[i], m.effects[i]);
  }
  acc.slack = acc.sumTrE - acc.sumDiag;
  return acc;
}

double dimension_bound_slack(const Eigen::MatrixXd& effectTable,
                             const Eigen::VectorXd& referenceColumn, int nA, int nB) {
  if (effectTable.rows() != effectTable.cols()) {
    throw ShapeError("dimension_bound_slack: effect table must be square");
  }
  if (referenceColumn.size() != effectTable.rows()) {
    throw ShapeError("dimension_bound_slack: one reference entry per table row required");
  }
  if (nA < 1 || nB < 1) {
    throw ShapeError("dimension_bound_slack: subsystem counts must be positive");
  }
  for (Eigen::Index i = 0; i < effectTable.rows(); ++i) {
    if (std::abs(effectTable(i, i) - 1.0) > 1e-9) {
      throw MeasurementError("dimension_bound_slack: table diagonal must be 1");
    }
    if (referenceColumn(i) < -1e-9 || referenceColumn(i) > 1.0 + 1e-9) {
      throw MeasurementError("dimension_bound_slack: reference entries must be in [0,1]");
    }
  }
  return static_cast<double>(nA) * static_cast<double>(nB) * referenceColumn.sum() -
         effectTable.trace();
}

}  // namespace poptlab
