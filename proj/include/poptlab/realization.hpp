// realization.hpp — Expresses a product-test-positive state as (I ⊗ Λ)(ψ) with
// Λ a positive unital map and ψ a fixed pure state.
#pragma once

#include <vector>

#include "poptlab/catalog.hpp"
#include "poptlab/cones.hpp"
#include "poptlab/operators.hpp"

namespace poptlab {

// Intermediates of the constructive pipeline for W on A⊗B.  The padded state
// W′ = W + 1_A⊗P_B^perp is rescaled to W″ with identity second marginal, whose
// Choi map U feeds a two-branch compression back to B.  The branch operators
// satisfy vB†vB + vBPrime†vBPrime = 1_B, which makes Λ unital, and the input
// state ψ pairs a maximally entangled A-S state with a fixed control qubit.
struct PoptRealization {
  HermitianOperator wPrime;        // W + 1_A ⊗ P_B^perp
  HermitianOperator pB;            // support projector of the B marginal
  HermitianOperator pBPerp;
  HermitianOperator wPrimeB;       // second marginal of wPrime (full rank)
  HermitianOperator wDoublePrime;  // rescaled state with Tr_A = 1_B
  Matrix vB;                       // sqrt(dS) * (wPrimeB)^{1/2} P_B
  Matrix vBPrime;                  // positive root of 1_B - vB†vB
  ChoiOperator choiU;              // map S→B with Choi wDoublePrime
  ChoiOperator choiLambda;         // positive unital map R→B, R = S⊗C, dim C = 2
  HermitianOperator psiAR;         // fixed pure input state on A⊗R
};

// Runs the pipeline.  Requires a two-factor unit-trace member of the
// product-test-positive cone; throws NonUnitTraceError or NotPoptError
// otherwise.  Throws RealizationError when the branch split is infeasible
// because dS·W_B has an eigenvalue above 1.
PoptRealization realize_popt(const HermitianOperator& w,
                             const PoptSearchConfig& cfg = {});

// Applies the map given by `choi` to the second factor of a bipartite operator
// whose first factor has dimension dimFirst.
Matrix apply_map_second(const ChoiOperator& choi, const Matrix& x, int dimFirst);

struct RealizationChecks {
  double reconstructionResidual = 0.0;  // ‖(I⊗Λ)(ψ) − W‖_F
  double unitalityResidual = 0.0;       // ‖Λ(1_R) − 1_B‖_max
  double marginalResidual = 0.0;        // ‖Tr_A W″ − 1_B‖_max
  double krausResidual = 0.0;           // ‖vB†vB + vBPrime†vBPrime − 1_B‖_max
  double psiResidual = 0.0;             // rank-1 and unit-trace defect of ψ
  PoptReport choiReport;                // product-test search on Λ's Choi
  bool choiBlockPositive = false;
  bool pass = false;
};

// Re-derives every pipeline guarantee from the stored intermediates; all
// residuals must stay within 1e-8 and the Choi operator must pass the product
// test for the record to pass.
RealizationChecks verify_realization(const HermitianOperator& w,
                                     const PoptRealization& r,
                                     const PoptSearchConfig& cfg = {});

// Compares P(ab|xy) computed from W with product effects against the same
// probabilities computed from ψ and adjoint-mapped B effects.
struct CorrelationCheck {
  double maxDeviation = 0.0;
  double minProbability = 0.0;
  double maxProbability = 0.0;
  std::vector<std::vector<Eigen::MatrixXd>> probsFromState;        // [x][y](a,b)
  std::vector<std::vector<Eigen::MatrixXd>> probsFromRealization;  // [x][y](a,b)
  std::vector<Matrix> adjointEffectSums;  // Σ_b Λ*(π_b) per B setting
};

CorrelationCheck correlation_identity_check(const HermitianOperator& w,
                                            const std::vector<Measurement>& povmsA,
                                            const std::vector<Measurement>& povmsB,
                                            const PoptRealization& r);

}  // namespace poptlab
