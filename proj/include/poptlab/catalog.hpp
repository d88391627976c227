// catalog.hpp — Named states, rotations, parity measurements, and pair lookup tables.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "poptlab/cones.hpp"
#include "poptlab/operators.hpp"

namespace poptlab {

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
enum class PauliAxis { X, Y, Z };

// One of the eight pair states: a maximally entangled state, optionally
// transposed on its second site ("_bar").
struct StateLabel8 {
  BellLabel bell = BellLabel::PhiPlus;
  bool barred = false;

  std::string text() const;  // "phi+", "psi-_bar", ...
  friend bool operator==(const StateLabel8&, const StateLabel8&) = default;
};

// One of the twenty-four triple states: a three-qubit pair-code state with an
// optional transpose on site 2 (barLevel 1) or on sites 2 and 3 (barLevel 2).
struct StateLabel24 {
  int ghzIndex = 0;  // 0..3 for codes 000, 001, 010, 011
  int sign = +1;     // +1 or -1
  int barLevel = 0;

  std::string text() const;  // "phi+_000", "phi-_011_barbar", ...
  friend bool operator==(const StateLabel24&, const StateLabel24&) = default;
};

// Finite-outcome measurement whose effects each carry a separable certificate.
struct Measurement {
  std::string label;
  std::vector<std::string> outcomeLabels;
  std::vector<HermitianOperator> effects;
  std::vector<SeparableDecomposition> certificates;  // aligned with effects

  int outcome_index(const std::string& name) const;  // throws MeasurementError
};

struct CatalogState8 {
  StateLabel8 label;
  HermitianOperator state;
};

struct CatalogState24 {
  StateLabel24 label;
  HermitianOperator state;
};

Vector bell_vector(BellLabel bell);
HermitianOperator bell_state(BellLabel bell);

// The four pair states followed by their second-site transposes, in label order
// phi+, phi-, psi+, psi-, phi+_bar, phi-_bar, psi+_bar, psi-_bar.
std::vector<CatalogState8> s8();

// Rotations taking the computational basis onto the measured bases.
UnitaryOperator rotation_identity();
UnitaryOperator rotation_ax();
UnitaryOperator rotation_ay();

// Computational-basis pair parity: "even" collects |00⟩,|11⟩ and "odd" |01⟩,|10⟩.
Measurement parity_measurement_2q();

// Pair parity conjugated by u⊗v, certificates rotating along.
Measurement rotated_measurement(const UnitaryOperator& u, const UnitaryOperator& v);

// The local rotations whose parity readout separates the two labeled pair
// states; throws SameStateError when the labels coincide.
Measurement table1_measurement(const StateLabel8& i, const StateLabel8& j);

// Triple states grouped by bar level (plain, then _bar, then _barbar), each
// group ordered phi+_000, phi-_000, phi+_001, ..., phi-_011.
std::vector<CatalogState24> s24();

// Triple parity along the given axes: "odd" projects onto an odd count of
// up eigenstates (|r⟩ is the +1 eigenstate of each axis).  When exactly two
// axes are z that projector is not deterministic on the triple catalog, so the
// readout coarse-grains to agreement of the two z outcomes ("odd" = agree).
Measurement parity_measurement_3q(PauliAxis m, PauliAxis n, PauliAxis p);

struct AxisTriple {
  PauliAxis m = PauliAxis::X;
  PauliAxis n = PauliAxis::X;
  PauliAxis p = PauliAxis::X;

  std::string text() const;  // "(y,y,x)"
};

// Scan order of the triple-state lookup rows.
const std::vector<AxisTriple>& table2_rows();

// Whether the state reads out in the "odd" column of the given row.  Throws
// MeasurementError when the readout is not deterministic within 1e-9.
bool table2_odd_column(int row, const HermitianOperator& state);

// First row (in scan order) whose columns separate the two labeled triple
// states, with its index.  Throws SameStateError or NoSeparatingRowError.
std::pair<Measurement, int> table2_measurement(const StateLabel24& i,
                                               const StateLabel24& j);

// Disagreement between the recomputed column partition and the reference
// column lists bundled with this catalog.
struct Table2Divergence {
  int row = 0;
  StateLabel24 state;
  bool printedInOdd = false;
  bool printedInEven = false;
  bool computedOdd = false;
};

// Scans every row and catalog state against the bundled reference lists and
// returns each entry whose printed column membership contradicts the computed
// readout (listed in both columns or in the wrong one).
std::vector<Table2Divergence> table2_divergences();

}  // namespace poptlab
