// operators.cpp — Shapes, Hermitian operators, spectral helpers, Choi-form maps.

#include "poptlab/operators.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace poptlab {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ShapeError(what);
}

// Strictly increasing, in-range factor indices.
void validate_factor_list(const SystemShape& shape, const std::vector<int>& factors,
                          const char* what) {
  require(!factors.empty(), what);
  int prev = -1;
  for (int f : factors) {
    if (f <= prev || f >= shape.factor_count()) throw ShapeError(what);
    prev = f;
  }
}

}  // namespace

// --------------------------- SystemShape ------------------------------------

SystemShape::SystemShape(std::vector<int> dims) : dims_(std::move(dims)) {
  require(!dims_.empty(), "shape needs at least one factor");
  for (int d : dims_) {
    require(d >= 2, "every subsystem dimension must be at least 2");
    total_ *= d;
  }
}

int SystemShape::dim(int factor) const {
  require(factor >= 0 && factor < factor_count(), "factor index out of range");
  return dims_[factor];
}

std::vector<int> SystemShape::digits(int flat) const {
  require(flat >= 0 && flat < total_, "flat index out of range");
  std::vector<int> out(dims_.size());
  for (int k = factor_count() - 1; k >= 0; --k) {
    out[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return out;
}

int SystemShape::flat(const std::vector<int>& digits) const {
  require(static_cast<int>(digits.size()) == factor_count(), "digit count mismatch");
  int out = 0;
  for (int k = 0; k < factor_count(); ++k) {
    require(digits[k] >= 0 && digits[k] < dims_[k], "digit out of range");
    out = out * dims_[k] + digits[k];
  }
  return out;
}

SystemShape merge(const SystemShape& a, const SystemShape& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return SystemShape(dims);
}

// --------------------------- HermitianOperator ------------------------------

HermitianOperator::HermitianOperator(SystemShape shape, const Matrix& entries)
    : shape_(std::move(shape)) {
  require(entries.rows() == entries.cols(), "operator matrix must be square");
  require(entries.rows() == shape_.total(), "matrix size does not match shape");
  const double residual = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (residual > kHermitianTol)
    throw NotHermitianError("matrix is not Hermitian (residual " +
                            std::to_string(residual) + ")");
  mat_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator identity_operator(const SystemShape& shape) {
  return HermitianOperator(shape, Matrix::Identity(shape.total(), shape.total()));
}

HermitianOperator pure_state(const SystemShape& shape, const Vector& v) {
  require(v.size() == shape.total(), "vector size does not match shape");
  const double n = v.norm();
  require(n > 0.0, "cannot normalize the zero vector");
  Vector u = v / n;
  return HermitianOperator(shape, u * u.adjoint());
}

// --------------------------- UnitaryOperator --------------------------------

UnitaryOperator::UnitaryOperator(const Matrix& entries) : mat_(entries) {
  require(entries.rows() == entries.cols(), "unitary matrix must be square");
  const Matrix gram = entries.adjoint() * entries;
  const double residual =
      (gram - Matrix::Identity(entries.rows(), entries.cols())).cwiseAbs().maxCoeff();
  if (residual > kUnitaryTol)
    throw NotUnitaryError("matrix is not unitary (residual " +
                          std::to_string(residual) + ")");
}

HermitianOperator conjugate(const UnitaryOperator& u, const HermitianOperator& m) {
  require(u.dim() == m.dim(), "unitary dimension does not match operator");
  return HermitianOperator(m.shape(), u.matrix() * m.matrix() * u.matrix().adjoint());
}

// --------------------------- Elementwise operations -------------------------

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(merge(a.shape(), b.shape()), kron(a.matrix(), b.matrix()));
}

HermitianOperator partial_trace(const HermitianOperator& m, const std::vector<int>& keep) {
  const SystemShape& shape = m.shape();
  validate_factor_list(shape, keep, "partial_trace: bad keep list");
  require(static_cast<int>(keep.size()) < shape.factor_count(),
          "partial_trace: must trace out at least one factor");

  std::vector<int> traced;
  for (int k = 0; k < shape.factor_count(); ++k)
    if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);

  std::vector<int> keptDims, tracedDims;
  for (int k : keep) keptDims.push_back(shape.dim(k));
  for (int k : traced) tracedDims.push_back(shape.dim(k));
  SystemShape outShape(keptDims);

  int tracedTotal = 1;
  for (int d : tracedDims) tracedTotal *= d;

  Matrix out = Matrix::Zero(outShape.total(), outShape.total());
  std::vector<int> full(shape.factor_count());
  for (int ro = 0; ro < outShape.total(); ++ro) {
    const std::vector<int> rk = outShape.digits(ro);
    for (int co = 0; co < outShape.total(); ++co) {
      const std::vector<int> ck = outShape.digits(co);
      Complex sum = 0.0;
      for (int t = 0; t < tracedTotal; ++t) {
        int rest = t;
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
          full[traced[i]] = rest % tracedDims[i];
          rest /= tracedDims[i];
        }
        for (size_t i = 0; i < keep.size(); ++i) full[keep[i]] = rk[i];
        const int row = shape.flat(full);
        for (size_t i = 0; i < keep.size(); ++i) full[keep[i]] = ck[i];
        sum += m.matrix()(row, shape.flat(full));
      }
      out(ro, co) = sum;
    }
  }
  return HermitianOperator(outShape, out);
}

HermitianOperator partial_transpose(const HermitianOperator& m,
                                    const std::vector<int>& transposed) {
  const SystemShape& shape = m.shape();
  validate_factor_list(shape, transposed, "partial_transpose: bad factor list");

  Matrix out(shape.total(), shape.total());
  for (int r = 0; r < shape.total(); ++r) {
    std::vector<int> rd = shape.digits(r);
    for (int c = 0; c < shape.total(); ++c) {
      std::vector<int> cd = shape.digits(c);
      std::vector<int> rs = rd, cs = cd;
      for (int k : transposed) std::swap(rs[k], cs[k]);
      out(shape.flat(rs), shape.flat(cs)) = m.matrix()(r, c);
    }
  }
  return HermitianOperator(shape, out);
}

double frobenius_distance(const HermitianOperator& a, const HermitianOperator& b) {
  require(a.shape() == b.shape(), "frobenius_distance: shape mismatch");
  return (a.matrix() - b.matrix()).norm();
}

// --------------------------- Spectral operations ----------------------------

Eigensystem eig_hermitian(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  const int n = m.dim();
  Eigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

PsdRoots psd_sqrt_pinv(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  const Eigen::VectorXd& vals = solver.eigenvalues();
  if (vals(0) < -kPsdTol)
    throw NotPsdError("operator has eigenvalue " + std::to_string(vals(0)) +
                      " below the PSD tolerance");
  const int n = m.dim();
  Eigen::VectorXd root(n), pinvRoot(n);
  for (int i = 0; i < n; ++i) {
    const double clamped = std::max(vals(i), 0.0);
    root(i) = std::sqrt(clamped);
    pinvRoot(i) = clamped > kPsdTol ? 1.0 / root(i) : 0.0;
  }
  const Matrix& v = solver.eigenvectors();
  return PsdRoots{
      HermitianOperator(m.shape(), v * root.asDiagonal() * v.adjoint()),
      HermitianOperator(m.shape(), v * pinvRoot.asDiagonal() * v.adjoint())};
}

HermitianOperator support_projector(const HermitianOperator& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  Matrix proj = Matrix::Zero(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    if (solver.eigenvalues()(i) > tol)
      proj += solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
  return HermitianOperator(m.shape(), proj);
}

bool is_psd(const HermitianOperator& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  return solver.eigenvalues()(0) >= -tol;
}

// --------------------------- Maps in Choi form ------------------------------

ChoiOperator::ChoiOperator(SystemShape in, SystemShape out, const HermitianOperator& op)
    : in_(std::move(in)), out_(std::move(out)), op_(op) {
  const SystemShape expected({in_.total(), out_.total()});
  require(op_.shape() == expected, "Choi operator shape must be {dim in, dim out}");
}

Matrix apply_map_raw(const ChoiOperator& choi, const Matrix& x) {
  const int dIn = choi.in().total();
  const int dOut = choi.out().total();
  require(x.rows() == dIn && x.cols() == dIn, "apply_map: input dimension mismatch");
  const Matrix& c = choi.op().matrix();
  Matrix out = Matrix::Zero(dOut, dOut);
  for (int s = 0; s < dIn; ++s)
    for (int t = 0; t < dIn; ++t) {
      const Complex w = x(t, s);
      if (w == Complex(0.0)) continue;
      out += w * c.block(t * dOut, s * dOut, dOut, dOut);
    }
  return out;
}

HermitianOperator apply_map(const ChoiOperator& choi, const HermitianOperator& x) {
  require(x.dim() == choi.in().total(), "apply_map: input dimension mismatch");
  return HermitianOperator(choi.out(), apply_map_raw(choi, x.matrix()));
}

ChoiOperator choi_adjoint(const ChoiOperator& choi) {
  const int dIn = choi.in().total();
  const int dOut = choi.out().total();
  const Matrix& c = choi.op().matrix();
  Matrix out(dIn * dOut, dIn * dOut);
  // Tr[Λ(x) y] = Tr[x Λ*(y)] pins C*[(k,j),(l,i)] = C[(i,l),(j,k)].
  for (int k = 0; k < dOut; ++k)
    for (int j = 0; j < dIn; ++j)
      for (int l = 0; l < dOut; ++l)
        for (int i = 0; i < dIn; ++i)
          out(k * dIn + j, l * dIn + i) = c(i * dOut + l, j * dOut + k);
  return ChoiOperator(choi.out(), choi.in(),
                      HermitianOperator(SystemShape({dOut, dIn}), out));
}

ChoiOperator choi_of_unitary(const UnitaryOperator& u) {
  const int d = u.dim();
  Matrix pair = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pair(i * d + i, j * d + j) = 1.0;
  const Matrix lift = kron(Matrix::Identity(d, d), u.matrix());
  const SystemShape dims({d, d});
  return ChoiOperator(SystemShape::single(d), SystemShape::single(d),
                      HermitianOperator(dims, lift * pair * lift.adjoint()));
}

// --------------------------- Raw-matrix helpers -----------------------------

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix contract_factor(const Matrix& m, const std::vector<int>& dims, int factor,
                       const Vector& v) {
  require(factor >= 0 && factor < static_cast<int>(dims.size()),
          "contract_factor: factor index out of range");
  int total = 1;
  for (int d : dims) total *= d;
  require(m.rows() == total && m.cols() == total, "contract_factor: size mismatch");
  const int d = dims[factor];
  require(v.size() == d, "contract_factor: vector length mismatch");

  // Removing factor k from a row-major index: full = hi·(d·sf) + a·sf + lo.
  int sf = 1;
  for (size_t k = factor + 1; k < dims.size(); ++k) sf *= dims[k];
  const int outTotal = total / d;

  Matrix out = Matrix::Zero(outTotal, outTotal);
  for (int ro = 0; ro < outTotal; ++ro) {
    const int rBase = (ro / sf) * (d * sf) + (ro % sf);
    for (int co = 0; co < outTotal; ++co) {
      const int cBase = (co / sf) * (d * sf) + (co % sf);
      Complex sum = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          sum += std::conj(v(a)) * v(b) * m(rBase + a * sf, cBase + b * sf);
      out(ro, co) = sum;
    }
  }
  return out;
}

}  // namespace poptlab
