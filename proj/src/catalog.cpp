// catalog.cpp — Named states, rotations, parity measurements, and pair lookup tables.
#include "poptlab/catalog.hpp"

#include <array>
#include <cmath>
#include <cstring>

#include "poptlab/errors.hpp"

namespace poptlab {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Vector axis_up(PauliAxis a) {
  Vector v(2);
  switch (a) {
    case PauliAxis::Z: v << 1.0, 0.0; break;
    case PauliAxis::X: v << kInvSqrt2, kInvSqrt2; break;
    default: v << kInvSqrt2, Complex(0.0, kInvSqrt2); break;
  }
  return v;
}

Vector axis_down(PauliAxis a) {
  Vector v(2);
  switch (a) {
    case PauliAxis::Z: v << 0.0, 1.0; break;
    case PauliAxis::X: v << kInvSqrt2, -kInvSqrt2; break;
    default: v << kInvSqrt2, Complex(0.0, -kInvSqrt2); break;
  }
  return v;
}

char axis_char(PauliAxis a) {
  switch (a) {
    case PauliAxis::X: return 'x';
    case PauliAxis::Y: return 'y';
    default: return 'z';
  }
}

HermitianOperator qubit_projector(const Vector& v) {
  return pure_state(SystemShape::single(2), v);
}

// Builds a parity-style measurement from outcome term lists; each term names
// one single-site projector per slot.
Measurement from_terms(std::string label, std::vector<std::string> outcomes,
                       const std::vector<std::vector<std::vector<HermitianOperator>>>& terms) {
  Measurement m;
  m.label = std::move(label);
  m.outcomeLabels = std::move(outcomes);
  for (const auto& termList : terms) {
    SeparableDecomposition cert;
    Matrix sum;
    std::vector<int> dims;
    for (const auto& factors : termList) {
      Matrix prod = factors.front().matrix();
      for (std::size_t k = 1; k < factors.size(); ++k)
        prod = kron(prod, factors[k].matrix());
      if (sum.size() == 0) {
        sum = Matrix::Zero(prod.rows(), prod.cols());
        for (const auto& f : factors) dims.push_back(f.dim());
      }
      sum += prod;
      cert.terms.push_back({1.0, factors});
    }
    m.effects.emplace_back(SystemShape(dims), sum);
    m.certificates.push_back(std::move(cert));
  }
  return m;
}

enum class Rot { I, X, Y };

UnitaryOperator rotation(Rot r) {
  switch (r) {
    case Rot::X: return rotation_ax();
    case Rot::Y: return rotation_ay();
    default: return rotation_identity();
  }
}

const char* rotation_name(Rot r) {
  switch (r) {
    case Rot::X: return "ax";
    case Rot::Y: return "ay";
    default: return "1";
  }
}

bool same_doublet(BellLabel a, BellLabel b) {
  const bool aPhi = (a == BellLabel::PhiPlus || a == BellLabel::PhiMinus);
  const bool bPhi = (b == BellLabel::PhiPlus || b == BellLabel::PhiMinus);
  return aPhi == bPhi;
}

// Cross-bar rows of the pair lookup: entry [barred state][plain state].
constexpr Rot kCrossBar[4][4] = {
    {Rot::X, Rot::Y, Rot::I, Rot::I},
    {Rot::Y, Rot::X, Rot::I, Rot::I},
    {Rot::I, Rot::I, Rot::X, Rot::Y},
    {Rot::I, Rot::I, Rot::Y, Rot::X},
};

Vector ghz_vector(int ghzIndex, int sign) {
  Vector v = Vector::Zero(8);
  v(ghzIndex) = 1.0;
  v(7 - ghzIndex) = (sign >= 0) ? 1.0 : -1.0;
  return v;
}

HermitianOperator state_from_label24(const StateLabel24& label) {
  const SystemShape shape({2, 2, 2});
  HermitianOperator w = pure_state(shape, ghz_vector(label.ghzIndex, label.sign));
  if (label.barLevel == 1) return partial_transpose(w, {1});
  if (label.barLevel == 2) return partial_transpose(w, {1, 2});
  return w;
}

// Reference column lists the recomputed partition is checked against: one cell
// per (row, bar level), four "+000"-style labels per column as printed.
struct PrintedCell {
  const char* odd[4];
  const char* even[4];
};

constexpr PrintedCell kPrintedColumns[7][3] = {
    // (y,y,x)
    {{{"-000", "-001", "+010", "+011"}, {"+000", "+001", "-010", "-011"}},
     {{"+000", "+001", "-010", "-011"}, {"-000", "-001", "+010", "+011"}},
     {{"+000", "+001", "-010", "-011"}, {"-000", "-001", "+010", "+011"}}},
    // (y,x,y)
    {{{"-000", "+001", "-010", "+011"}, {"+000", "-001", "+010", "-011"}},
     {{"-000", "+001", "-010", "+011"}, {"+000", "-001", "+010", "-011"}},
     {{"+000", "-001", "+010", "-011"}, {"-000", "+001", "-010", "+011"}}},
    // (x,x,x)
    {{{"+000", "+001", "+010", "+011"}, {"-000", "-001", "-010", "-011"}},
     {{"+000", "+001", "+010", "+011"}, {"-000", "-001", "-010", "-011"}},
     {{"+000", "+001", "+010", "+011"}, {"-000", "-001", "-010", "-011"}}},
    // (x,y,y)
    {{{"-000", "+001", "+010", "-011"}, {"+000", "-001", "-010", "+011"}},
     {{"+000", "-001", "-010", "+011"}, {"-000", "+001", "+010", "-011"}},
     {{"-000", "+001", "+010", "-011"}, {"+000", "-001", "-010", "+011"}}},
    // (y,z,z)
    {{{"+000", "-000", "+011", "-011"}, {"+001", "-001", "+010", "-010"}},
     {{"+000", "-000", "+011", "-011"}, {"+001", "-001", "+010", "-010"}},
     {{"+000", "-000", "+011", "-011"}, {"+001", "-001", "+010", "-010"}}},
    // (z,z,y)
    {{{"+000", "-000", "+001", "-011"}, {"+010", "-010", "+011", "-011"}},
     {{"+000", "-000", "+001", "-001"}, {"+010", "-010", "+011", "-011"}},
     {{"+000", "-000", "+001", "-001"}, {"+010", "-010", "+011", "-011"}}},
    // (z,y,z)
    {{{"+000", "-000", "+010", "-010"}, {"+001", "-001", "+011", "-011"}},
     {{"+000", "-000", "+010", "-010"}, {"+001", "-001", "+011", "-011"}},
     {{"+000", "-000", "+010", "-010"}, {"+001", "-001", "+011", "-011"}}},
};

bool printed_matches(const char* code, const StateLabel24& label) {
  if ((code[0] == '+') != (label.sign >= 0)) return false;
  const int index = (code[1] - '0') * 4 + (code[2] - '0') * 2 + (code[3] - '0');
  return index == label.ghzIndex;
}

bool printed_contains(const char* const (&column)[4], const StateLabel24& label) {
  for (const char* code : column) {
    if (printed_matches(code, label)) return true;
  }
  return false;
}

}  // namespace

std::string StateLabel8::text() const {
  std::string out;
  switch (bell) {
    case BellLabel::PhiPlus: out = "phi+"; break;
    case BellLabel::PhiMinus: out = "phi-"; break;
    case BellLabel::PsiPlus: out = "psi+"; break;
    default: out = "psi-"; break;
  }
  if (barred) out += "_bar";
  return out;
}

std::string StateLabel24::text() const {
  static const char* codes[4] = {"000", "001", "010", "011"};
  std::string out = "phi";
  out += (sign >= 0) ? '+' : '-';
  out += '_';
  out += codes[ghzIndex];
  if (barLevel == 1) out += "_bar";
  if (barLevel == 2) out += "_barbar";
  return out;
}

std::string AxisTriple::text() const {
  std::string out = "(";
  out += axis_char(m);
  out += ',';
  out += axis_char(n);
  out += ',';
  out += axis_char(p);
  out += ')';
  return out;
}

int Measurement::outcome_index(const std::string& name) const {
  for (std::size_t i = 0; i < outcomeLabels.size(); ++i) {
    if (outcomeLabels[i] == name) return static_cast<int>(i);
  }
  throw MeasurementError("measurement '" + label + "' has no outcome '" + name + "'");
}

Vector bell_vector(BellLabel bell) {
  Vector v = Vector::Zero(4);
  switch (bell) {
    case BellLabel::PhiPlus: v(0) = kInvSqrt2; v(3) = kInvSqrt2; break;
    case BellLabel::PhiMinus: v(0) = kInvSqrt2; v(3) = -kInvSqrt2; break;
    case BellLabel::PsiPlus: v(1) = kInvSqrt2; v(2) = kInvSqrt2; break;
    default: v(1) = kInvSqrt2; v(2) = -kInvSqrt2; break;
  }
  return v;
}

HermitianOperator bell_state(BellLabel bell) {
  return pure_state(SystemShape({2, 2}), bell_vector(bell));
}

std::vector<CatalogState8> s8() {
  std::vector<CatalogState8> out;
  for (bool barred : {false, true}) {
    for (BellLabel bell : {BellLabel::PhiPlus, BellLabel::PhiMinus,
                           BellLabel::PsiPlus, BellLabel::PsiMinus}) {
      HermitianOperator w = bell_state(bell);
      if (barred) w = partial_transpose(w, {1});
      out.push_back({StateLabel8{bell, barred}, std::move(w)});
    }
  }
  return out;
}

UnitaryOperator rotation_identity() {
  return UnitaryOperator{Matrix::Identity(2, 2)};
}

UnitaryOperator rotation_ax() {
  Matrix m(2, 2);
  m << Complex(kInvSqrt2, 0.0), Complex(0.0, -kInvSqrt2),
       Complex(0.0, -kInvSqrt2), Complex(kInvSqrt2, 0.0);
  return UnitaryOperator{m};
}

UnitaryOperator rotation_ay() {
  Matrix m(2, 2);
  m << Complex(kInvSqrt2, 0.0), Complex(-kInvSqrt2, 0.0),
       Complex(kInvSqrt2, 0.0), Complex(kInvSqrt2, 0.0);
  return UnitaryOperator{m};
}

Measurement parity_measurement_2q() {
  const HermitianOperator p0 = qubit_projector(axis_up(PauliAxis::Z));
  const HermitianOperator p1 = qubit_projector(axis_down(PauliAxis::Z));
  return from_terms("parity(1,1)", {"even", "odd"},
                    {{{p0, p0}, {p1, p1}}, {{p0, p1}, {p1, p0}}});
}

Measurement rotated_measurement(const UnitaryOperator& u, const UnitaryOperator& v) {
  if (u.dim() != 2 || v.dim() != 2) {
    throw ShapeError("rotated_measurement: rotations must act on single qubits");
  }
  Measurement base = parity_measurement_2q();
  const Matrix local = kron(u.matrix(), v.matrix());
  Measurement out;
  out.label = "parity(rotated)";
  out.outcomeLabels = base.outcomeLabels;
  for (std::size_t e = 0; e < base.effects.size(); ++e) {
    out.effects.emplace_back(base.effects[e].shape(),
                             local * base.effects[e].matrix() * local.adjoint());
    SeparableDecomposition cert;
    for (const SeparableTerm& t : base.certificates[e].terms) {
      cert.terms.push_back({t.weight, {conjugate(u, t.factors[0]), conjugate(v, t.factors[1])}});
    }
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

Measurement table1_measurement(const StateLabel8& i, const StateLabel8& j) {
  if (i == j) {
    throw SameStateError("table1_measurement: cannot separate " + i.text() +
                         " from itself");
  }
  Rot entry;
  if (i.barred == j.barred) {
    if (i.bell == j.bell) {
      throw SameStateError("table1_measurement: labels name the same state");
    }
    entry = same_doublet(i.bell, j.bell) ? Rot::Y : Rot::I;
  } else {
    const BellLabel barredBell = i.barred ? i.bell : j.bell;
    const BellLabel plainBell = i.barred ? j.bell : i.bell;
    entry = kCrossBar[static_cast<int>(barredBell)][static_cast<int>(plainBell)];
  }
  const UnitaryOperator u = rotation(entry);
  Measurement m = rotated_measurement(u, u);
  m.label = std::string("parity(") + rotation_name(entry) + "," + rotation_name(entry) + ")";
  return m;
}

std::vector<CatalogState24> s24() {
  std::vector<CatalogState24> out;
  for (int barLevel = 0; barLevel < 3; ++barLevel) {
    for (int ghzIndex = 0; ghzIndex < 4; ++ghzIndex) {
      for (int sign : {+1, -1}) {
        const StateLabel24 label{ghzIndex, sign, barLevel};
        out.push_back({label, state_from_label24(label)});
      }
    }
  }
  return out;
}

Measurement parity_measurement_3q(PauliAxis m, PauliAxis n, PauliAxis p) {
  const PauliAxis axes[3] = {m, n, p};
  std::array<std::array<HermitianOperator, 2>, 3> proj = {{
      {qubit_projector(axis_up(axes[0])), qubit_projector(axis_down(axes[0]))},
      {qubit_projector(axis_up(axes[1])), qubit_projector(axis_down(axes[1]))},
      {qubit_projector(axis_up(axes[2])), qubit_projector(axis_down(axes[2]))},
  }};

  int zCount = 0;
  for (PauliAxis a : axes) {
    if (a == PauliAxis::Z) ++zCount;
  }

  std::vector<std::array<int, 3>> oddTerms;
  std::vector<std::array<int, 3>> evenTerms;
  if (zCount == 2) {
    int freeSlot = 0;
    while (axes[freeSlot] == PauliAxis::Z) ++freeSlot;
    const int z1 = (freeSlot == 0) ? 1 : 0;
    const int z2 = (freeSlot == 2) ? 1 : 2;
    for (int b = 0; b < 2; ++b) {
      for (int f = 0; f < 2; ++f) {
        std::array<int, 3> agree{};
        agree[z1] = b;
        agree[z2] = b;
        agree[freeSlot] = f;
        oddTerms.push_back(agree);
        std::array<int, 3> differ{};
        differ[z1] = b;
        differ[z2] = 1 - b;
        differ[freeSlot] = f;
        evenTerms.push_back(differ);
      }
    }
  } else {
    for (int mask = 0; mask < 8; ++mask) {
      const std::array<int, 3> bits = {(mask >> 2) & 1, (mask >> 1) & 1, mask & 1};
      const int ups = 3 - (bits[0] + bits[1] + bits[2]);
      if (ups % 2 == 1) {
        oddTerms.push_back(bits);
      } else {
        evenTerms.push_back(bits);
      }
    }
  }

  auto materialize = [&](const std::vector<std::array<int, 3>>& terms) {
    std::vector<std::vector<HermitianOperator>> out;
    for (const auto& t : terms)
      out.push_back({proj[0][t[0]], proj[1][t[1]], proj[2][t[2]]});
    return out;
  };

  const AxisTriple triple{m, n, p};
  return from_terms("parity" + triple.text(), {"odd", "even"},
                    {materialize(oddTerms), materialize(evenTerms)});
}

const std::vector<AxisTriple>& table2_rows() {
  static const std::vector<AxisTriple> rows = {
      {PauliAxis::Y, PauliAxis::Y, PauliAxis::X},
      {PauliAxis::Y, PauliAxis::X, PauliAxis::Y},
      {PauliAxis::X, PauliAxis::X, PauliAxis::X},
      {PauliAxis::X, PauliAxis::Y, PauliAxis::Y},
      {PauliAxis::Y, PauliAxis::Z, PauliAxis::Z},
      {PauliAxis::Z, PauliAxis::Z, PauliAxis::Y},
      {PauliAxis::Z, PauliAxis::Y, PauliAxis::Z},
  };
  return rows;
}

bool table2_odd_column(int row, const HermitianOperator& state) {
  const auto& rows = table2_rows();
  if (row < 0 || row >= static_cast<int>(rows.size())) {
    throw LookupError("table2_odd_column: row index out of range");
  }
  const Measurement m = parity_measurement_3q(rows[row].m, rows[row].n, rows[row].p);
  const HermitianOperator& odd = m.effects[m.outcome_index("odd")];
  const double p = (state.matrix() * odd.matrix()).trace().real();
  if (std::abs(p - 1.0) <= 1e-9) return true;
  if (std::abs(p) <= 1e-9) return false;
  throw MeasurementError("table2_odd_column: readout for row " + rows[row].text() +
                         " is not deterministic (p=" + std::to_string(p) + ")");
}

std::pair<Measurement, int> table2_measurement(const StateLabel24& i,
                                               const StateLabel24& j) {
  if (i == j) {
    throw SameStateError("table2_measurement: cannot separate " + i.text() +
                         " from itself");
  }
  const HermitianOperator wi = state_from_label24(i);
  const HermitianOperator wj = state_from_label24(j);
  const auto& rows = table2_rows();
  for (int row = 0; row < static_cast<int>(rows.size()); ++row) {
    if (table2_odd_column(row, wi) != table2_odd_column(row, wj)) {
      return {parity_measurement_3q(rows[row].m, rows[row].n, rows[row].p), row};
    }
  }
  throw NoSeparatingRowError("table2_measurement: no row separates " + i.text() +
                             " from " + j.text());
}

std::vector<Table2Divergence> table2_divergences() {
  std::vector<Table2Divergence> out;
  const std::vector<CatalogState24> states = s24();
  for (int row = 0; row < 7; ++row) {
    for (const CatalogState24& cs : states) {
      const PrintedCell& cell = kPrintedColumns[row][cs.label.barLevel];
      const bool computedOdd = table2_odd_column(row, cs.state);
      const bool inOdd = printed_contains(cell.odd, cs.label);
      const bool inEven = printed_contains(cell.even, cs.label);
      if (inOdd != computedOdd || inEven == computedOdd) {
        out.push_back({row, cs.label, inOdd, inEven, computedOdd});
      }
    }
  }
  return out;
}

}  // namespace poptlab
