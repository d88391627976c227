// sampling.cpp — Seeded random vectors, unitaries, and two-qubit state corpora.
#include "poptlab/sampling.hpp"

#include <cmath>

namespace poptlab {

namespace {

Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  return g;
}

Vector bell_vector(int which) {
  Vector v = Vector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0: v(0) = s; v(3) = s; break;   // (|00⟩+|11⟩)/√2
    case 1: v(0) = s; v(3) = -s; break;  // (|00⟩-|11⟩)/√2
    case 2: v(1) = s; v(2) = s; break;   // (|01⟩+|10⟩)/√2
    default: v(1) = s; v(2) = -s; break; // (|01⟩-|10⟩)/√2
  }
  return v;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vector random_unit_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

UnitaryOperator random_unitary(int dim, std::mt19937_64& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    const double a = std::abs(d);
    q.col(c) *= (a > 0.0) ? d / a : Complex(1.0);
  }
  return UnitaryOperator{q};
}

HermitianOperator random_hermitian(const SystemShape& shape, std::mt19937_64& rng) {
  const Matrix g = ginibre(shape.total(), shape.total(), rng);
  return HermitianOperator{shape, (g + g.adjoint()) / 2.0};
}

HermitianOperator random_density(const SystemShape& shape, std::mt19937_64& rng) {
  const Matrix g = ginibre(shape.total(), shape.total(), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermitianOperator{shape, rho};
}

HermitianOperator random_pure_density(const SystemShape& shape, std::mt19937_64& rng) {
  const Vector v = random_unit_vector(shape.total(), rng);
  return HermitianOperator{shape, v * v.adjoint()};
}

HermitianOperator random_popt_witness(std::mt19937_64& rng, double lambdaMax) {
  const SystemShape shape({2, 2});
  const Matrix u = random_unitary(2, rng).matrix();
  const Matrix v = random_unitary(2, rng).matrix();
  const Vector chi = kron(u, v) * bell_vector(0);
  const Matrix base =
      partial_transpose(HermitianOperator{shape, chi * chi.adjoint()}, {1}).matrix();
  std::uniform_real_distribution<double> mix(0.0, lambdaMax);
  const double lambda = mix(rng);
  const Matrix w =
      (1.0 - lambda) * base + lambda * Matrix::Identity(4, 4) / 4.0;
  return HermitianOperator{shape, w};
}

HermitianOperator random_bell_mixture(std::mt19937_64& rng) {
  const SystemShape shape({2, 2});
  const Matrix local =
      kron(random_unitary(2, rng).matrix(), random_unitary(2, rng).matrix());
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double weights[4];
  double total = 0.0;
  for (double& w : weights) {
    w = unif(rng);
    total += w;
  }
  Matrix rho = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const Vector chi = local * bell_vector(i);
    rho += (weights[i] / total) * (chi * chi.adjoint());
  }
  return HermitianOperator{shape, rho};
}

}  // namespace poptlab
