// operators.hpp — Hermitian operators on tensor products of finite-dimensional systems.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "poptlab/errors.hpp"

namespace poptlab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Construction tolerance: max |M - M†| entry accepted before symmetrizing.
inline constexpr double kHermitianTol = 1e-12;
// Eigenvalues in [-kPsdTol, 0) are treated as numerical zeros of a PSD operator.
inline constexpr double kPsdTol = 1e-10;
// Unitarity residual accepted for rotation matrices.
inline constexpr double kUnitaryTol = 1e-12;

// --------------------------- System shape -----------------------------------

// Ordered subsystem dimensions; flat indices run row-major over the factors,
// so |i⟩⊗|j⟩ on dims {dA,dB} sits at flat index i*dB + j.
class SystemShape {
 public:
  explicit SystemShape(std::vector<int> dims);
  static SystemShape single(int dim) { return SystemShape({dim}); }

  const std::vector<int>& dims() const { return dims_; }
  int factor_count() const { return static_cast<int>(dims_.size()); }
  int dim(int factor) const;
  int total() const { return total_; }

  bool operator==(const SystemShape& other) const { return dims_ == other.dims_; }
  bool operator!=(const SystemShape& other) const { return dims_ != other.dims_; }

  std::vector<int> digits(int flat) const;
  int flat(const std::vector<int>& digits) const;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

// Concatenated shape of a composite a⊗b.
SystemShape merge(const SystemShape& a, const SystemShape& b);

// --------------------------- Hermitian operators ----------------------------

// Square operator kept exactly Hermitian: the constructor symmetrizes inputs whose
// anti-Hermitian residual is below kHermitianTol and rejects anything farther away.
class HermitianOperator {
 public:
  HermitianOperator(SystemShape shape, const Matrix& entries);

  const SystemShape& shape() const { return shape_; }
  const Matrix& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  double trace() const { return mat_.trace().real(); }

 private:
  SystemShape shape_;
  Matrix mat_;
};

HermitianOperator identity_operator(const SystemShape& shape);

// Single-factor state |v⟩⟨v| (v need not be normalized on input; it is normalized here).
HermitianOperator pure_state(const SystemShape& shape, const Vector& v);

// --------------------------- Unitaries --------------------------------------

class UnitaryOperator {
 public:
  explicit UnitaryOperator(const Matrix& entries);

  const Matrix& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

 private:
  Matrix mat_;
};

// U m U† with shapes preserved.
HermitianOperator conjugate(const UnitaryOperator& u, const HermitianOperator& m);

// --------------------------- Elementwise operations -------------------------

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

// Trace out every factor not listed in `keep`; kept factors retain their order.
HermitianOperator partial_trace(const HermitianOperator& m, const std::vector<int>& keep);

// Transpose the listed factors in place (computational basis).
HermitianOperator partial_transpose(const HermitianOperator& m,
                                    const std::vector<int>& transposed);

double frobenius_distance(const HermitianOperator& a, const HermitianOperator& b);

// --------------------------- Spectral operations ----------------------------

struct Eigensystem {
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // columns aligned with values
};

Eigensystem eig_hermitian(const HermitianOperator& m);

struct PsdRoots {
  HermitianOperator sqrt;      // PSD square root on the support
  HermitianOperator pinvSqrt;  // pseudo-inverse of the root, zero off the support
};

// Roots of a PSD operator; eigenvalues in [-kPsdTol, 0) clamp to zero and anything
// lower raises NotPsdError.
PsdRoots psd_sqrt_pinv(const HermitianOperator& m);

// Projector onto the span of eigenvectors with eigenvalue above `tol`.
HermitianOperator support_projector(const HermitianOperator& m, double tol = kPsdTol);

bool is_psd(const HermitianOperator& m, double tol = kPsdTol);

// --------------------------- Maps in Choi form ------------------------------

// Choi operator of a Hermiticity-preserving map Λ: in→out, stored on in⊗out with
// the unnormalized pair state: C = Σ_ij |i⟩⟨j| ⊗ Λ(|i⟩⟨j|).  Its operator shape
// has exactly two factors {dim in, dim out} so product tests match block positivity.
class ChoiOperator {
 public:
  ChoiOperator(SystemShape in, SystemShape out, const HermitianOperator& op);

  const SystemShape& in() const { return in_; }
  const SystemShape& out() const { return out_; }
  const HermitianOperator& op() const { return op_; }

 private:
  SystemShape in_;
  SystemShape out_;
  HermitianOperator op_;
};

// Λ(x) = Tr_in[(xᵀ ⊗ 1_out) C].
HermitianOperator apply_map(const ChoiOperator& choi, const HermitianOperator& x);
Matrix apply_map_raw(const ChoiOperator& choi, const Matrix& x);

// Choi operator of the adjoint map Λ*, satisfying Tr[Λ(x) y] = Tr[x Λ*(y)].
ChoiOperator choi_adjoint(const ChoiOperator& choi);

// Choi operator of x ↦ u x u†.
ChoiOperator choi_of_unitary(const UnitaryOperator& u);

// --------------------------- Raw-matrix helpers -----------------------------

// Kronecker product in the same factor order as `merge`.
Matrix kron(const Matrix& a, const Matrix& b);

// ⟨v| m |v⟩ for a contraction of factor `factor`, leaving the remaining factors.
Matrix contract_factor(const Matrix& m, const std::vector<int>& dims, int factor,
                       const Vector& v);

}  // namespace poptlab
