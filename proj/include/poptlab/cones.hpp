// cones.hpp — Product-test positivity, state classification, separable certificates.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "poptlab/operators.hpp"

namespace poptlab {

struct PoptSearchConfig {
  int restarts = 64;             // seeded random starts of the alternating search
  int maxIters = 500;            // sweep cap per start
  double convergenceTol = 1e-12; // stop when a sweep improves by less than this
  double membershipTol = 1e-9;   // cone membership threshold on the minimum
  std::uint64_t seed = 0;
};

struct PoptReport {
  double minValue = 0.0;
  std::vector<Vector> argmin;        // one unit vector per factor
  bool isMember = false;             // minValue ≥ -membershipTol
  bool boundary = false;             // member with a (numerically) negative minimum
  std::vector<double> restartValues; // final value of every search start
};

enum class StateClass { Quantum, WitnessState, NotAState };

// Convex mixture of products of PSD single-subsystem factors.
struct SeparableTerm {
  double weight = 0.0;
  std::vector<HermitianOperator> factors;  // one per subsystem
};

struct SeparableDecomposition {
  std::vector<SeparableTerm> terms;
};

// Minimum of ⟨v₁…v_m| w |v₁…v_m⟩ over unit product vectors.  Alternating
// eigenvector descent from seeded random starts and from every computational
// product, floored by a deterministic Bloch grid over the qubit factors with the
// remaining factor minimized exactly.  Every reported value is an exact product
// expectation, so the result is an upper bound on the true minimum.
PoptReport min_product_expectation(const HermitianOperator& w,
                                   const PoptSearchConfig& cfg = {});

// Membership of w in the cone of operators nonnegative on product tests.  With
// requireUnitTrace set, membership additionally demands |Tr w - 1| ≤ 1e-9.
std::pair<bool, PoptReport> is_popt(const HermitianOperator& w,
                                    const PoptSearchConfig& cfg = {},
                                    bool requireUnitTrace = false);

// Quantum if PSD, WitnessState if only product-test positive, NotAState otherwise.
// Throws NonUnitTraceError unless |Tr w - 1| ≤ 1e-9.
StateClass classify_state(const HermitianOperator& w, const PoptSearchConfig& cfg = {});

// Σ weight · ⊗factors of the decomposition (shape taken from the factor dims).
HermitianOperator reconstruct(const SeparableDecomposition& d);

// True iff weights are nonnegative, every factor is PSD, and the reconstruction
// matches the target within `tol` in Frobenius norm.
bool verify_separable_decomposition(const SeparableDecomposition& d,
                                    const HermitianOperator& target,
                                    double tol = 1e-10);

// Membership of 1 - w in the product-test-positive cone (callers ensure w is a
// unit-trace member; the complement check itself needs neither).
std::pair<bool, PoptReport> complement_in_popt_cone(const HermitianOperator& w,
                                                    const PoptSearchConfig& cfg = {});

}  // namespace poptlab
