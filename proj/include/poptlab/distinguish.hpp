// distinguish.hpp — Deterministic discrimination checks and dimension witnesses.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "poptlab/catalog.hpp"
#include "poptlab/operators.hpp"

namespace poptlab {

// Outcome statistics of one measurement against a list of states.  Entries of
// probMatrix are Tr(W_i E_k) clamped to [0,1]; deviations are measured on the
// raw values.  The check passes when some bijective state-to-outcome assignment
// reproduces the identity within tolerance; rows summing to one make that
// assignment unique, so the per-row argmax decides it.
struct DistinguishReport {
  Eigen::MatrixXd probMatrix;
  bool pass = false;
  double maxDeviation = 1.0;
  std::vector<int> outcomePermutation;  // effect index per state; empty when no
                                        // bijective assignment exists
};

struct PairReport {
  int i = 0;
  int j = 0;
  std::string measurementId;
  DistinguishReport report;
};

// Pairwise discrimination transcript for a labeled family.
struct PairwiseCertificate {
  std::vector<std::string> labels;
  std::vector<PairReport> perPairReports;  // unordered pairs, i < j
  bool complete = false;                   // every pair passes
};

// One-shot discrimination of |states| = |effects| states by a single measurement.
DistinguishReport verify_single_measurement(const std::vector<HermitianOperator>& states,
                                            const Measurement& m, double tol = 1e-9);

// Two-state discrimination; the measurement must have exactly two effects.
DistinguishReport verify_pair(const HermitianOperator& w1, const HermitianOperator& w2,
                              const Measurement& m, double tol = 1e-9);

// Measurement chosen for an index pair (i, j) of a labeled family.
using PairLookup = std::function<Measurement(int, int)>;

// Runs verify_pair over every unordered pair of the family with the looked-up
// measurement per pair.
PairwiseCertificate verify_family(const std::vector<std::string>& labels,
                                  const std::vector<HermitianOperator>& states,
                                  const PairLookup& lookup, double tol = 1e-9);

struct CliqueResult {
  int size = 0;
  std::vector<int> members;  // indices of one maximum clique, ascending
};

// Largest subset of mutually perfectly distinguishable quantum states: maximum
// clique of the graph joining pairs with vanishing overlap and orthogonal
// supports.  Exhaustive search; pools are capped at 32 states.
CliqueResult quantum_information_dimension(const std::vector<HermitianOperator>& states,
                                           double tol = 1e-9);

// Largest subset whose pairs all pass verify_pair under the lookup.
int info_dim_lower_bound(const std::vector<std::string>& labels,
                         const std::vector<HermitianOperator>& states,
                         const PairLookup& lookup, double tol = 1e-9);

// Books the dimension count Σ Tr(E_i) of a complete measurement against the
// discrimination sum Σ Tr(E_i W_i).  The slack is nonnegative whenever each
// complement 1 - W_i stays inside the product-test-positive cone.
struct TraceAccounting {
  double sumTrE = 0.0;
  double sumDiag = 0.0;
  double slack = 0.0;
};

TraceAccounting trace_accounting(const std::vector<HermitianOperator>& states,
                                 const Measurement& m);

// Arithmetic slack nA·nB·Σ_i ref_i − Σ_i table_ii of a distinguishing effect
// table (unit diagonal) against a reference state column; nonnegative whenever
// nA·nB·ref_i dominates every entry of row i.
double dimension_bound_slack(const Eigen::MatrixXd& effectTable,
                             const Eigen::VectorXd& referenceColumn, int nA, int nB);

}  // namespace poptlab
