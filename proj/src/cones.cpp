// cones.cpp — Product-test positivity, state classification, separable certificates.
#include "poptlab/cones.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "poptlab/errors.hpp"
#include "poptlab/sampling.hpp"

namespace poptlab {

namespace {

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::vector<Vector> vectors;
};

double product_expectation(const Matrix& m, const std::vector<int>& dims,
                           const std::vector<Vector>& vecs) {
  Matrix cur = m;
  std::vector<int> curDims = dims;
  for (int j = static_cast<int>(curDims.size()) - 1; j >= 0; --j) {
    cur = contract_factor(cur, curDims, j, vecs[j]);
    curDims.pop_back();
  }
  return cur(0, 0).real();
}

// Contract every factor except `k` (descending order keeps indices stable).
Matrix effective_operator(const Matrix& m, const std::vector<int>& dims, int k,
                          const std::vector<Vector>& vecs) {
  Matrix cur = m;
  std::vector<int> curDims = dims;
  for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
    if (j == k) continue;
    cur = contract_factor(cur, curDims, j, vecs[j]);
    curDims.erase(curDims.begin() + j);
  }
  return (cur + cur.adjoint()) / 2.0;
}

std::pair<double, Vector> min_eigpair(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  if (d == 1) return {m(0, 0).real(), Vector::Ones(1)};
  if (d == 2) {
    const double a = m(0, 0).real();
    const double b = m(1, 1).real();
    const Complex c = m(0, 1);
    const double lo = 0.5 * (a + b) - std::hypot(0.5 * (a - b), std::abs(c));
    Vector v(2);
    if (std::abs(lo - a) >= std::abs(lo - b)) {
      v << c, Complex(lo - a);
    } else {
      v << Complex(lo - b), std::conj(c);
    }
    const double n = v.norm();
    if (n < 1e-150) {
      v << 1.0, 0.0;
    } else {
      v /= n;
    }
    return {lo, v};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

Candidate alternate(const Matrix& m, const std::vector<int>& dims,
                    std::vector<Vector> vecs, int maxIters, double tol) {
  const int nf = static_cast<int>(dims.size());
  double value = product_expectation(m, dims, vecs);
  for (int iter = 0; iter < maxIters; ++iter) {
    const double prev = value;
    for (int k = 0; k < nf; ++k) {
      auto [lo, v] = min_eigpair(effective_operator(m, dims, k, vecs));
      vecs[k] = std::move(v);
      value = lo;
    }
    if (prev - value < tol) break;
  }
  return {value, std::move(vecs)};
}

std::vector<Vector> bloch_grid() {
  constexpr int kPolar = 12;
  constexpr int kAzimuth = 24;
  std::vector<Vector> grid;
  grid.reserve(kPolar * kAzimuth);
  for (int i = 0; i < kPolar; ++i) {
    const double theta = (i + 0.5) * std::numbers::pi / kPolar;
    for (int j = 0; j < kAzimuth; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / kAzimuth;
      Vector v(2);
      v << Complex(std::cos(theta / 2.0), 0.0), std::polar(std::sin(theta / 2.0), phi);
      grid.push_back(std::move(v));
    }
  }
  return grid;
}

// Fixes grid vectors on every qubit factor while solving the pivot exactly.
void grid_scan(const Matrix& cur, const std::vector<int>& curDims,
               const std::vector<int>& orig, int pivotOrig,
               const std::vector<Vector>& grid, std::vector<Vector>& chosen,
               Candidate& best) {
  if (curDims.size() == 1) {
    auto [lo, v] = min_eigpair((cur + cur.adjoint()) / 2.0);
    if (lo < best.value) {
      chosen[orig[0]] = std::move(v);
      best.value = lo;
      best.vectors = chosen;
    }
    return;
  }
  const int j = (orig[0] == pivotOrig) ? 1 : 0;
  std::vector<int> nextDims = curDims;
  nextDims.erase(nextDims.begin() + j);
  std::vector<int> nextOrig = orig;
  nextOrig.erase(nextOrig.begin() + j);
  for (const Vector& g : grid) {
    chosen[orig[j]] = g;
    grid_scan(contract_factor(cur, curDims, j, g), nextDims, nextOrig, pivotOrig,
              grid, chosen, best);
  }
}

}  // namespace

PoptReport min_product_expectation(const HermitianOperator& w,
                                   const PoptSearchConfig& cfg) {
  const std::vector<int>& dims = w.shape().dims();
  const Matrix& m = w.matrix();
  const int nf = static_cast<int>(dims.size());

  Candidate best;
  std::vector<double> restartValues;
  auto consider = [&](Candidate c) {
    restartValues.push_back(c.value);
    if (c.value < best.value) best = std::move(c);
  };

  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    std::vector<Vector> vecs;
    vecs.reserve(nf);
    for (int d : dims) vecs.push_back(random_unit_vector(d, rng));
    consider(alternate(m, dims, std::move(vecs), cfg.maxIters, cfg.convergenceTol));
  }

  std::vector<int> digits(nf, 0);
  while (true) {
    std::vector<Vector> vecs;
    vecs.reserve(nf);
    for (int k = 0; k < nf; ++k) {
      Vector e = Vector::Zero(dims[k]);
      e(digits[k]) = 1.0;
      vecs.push_back(std::move(e));
    }
    consider(alternate(m, dims, std::move(vecs), cfg.maxIters, cfg.convergenceTol));
    int k = nf - 1;
    while (k >= 0 && ++digits[k] == dims[k]) {
      digits[k] = 0;
      --k;
    }
    if (k < 0) break;
  }

  int pivot = 0;
  for (int k = 1; k < nf; ++k) {
    if (dims[k] >= dims[pivot]) pivot = k;
  }
  bool gridApplies = nf >= 2;
  for (int k = 0; k < nf; ++k) {
    if (k != pivot && dims[k] != 2) gridApplies = false;
  }
  if (gridApplies) {
    static const std::vector<Vector> grid = bloch_grid();
    std::vector<int> orig(nf);
    for (int k = 0; k < nf; ++k) orig[k] = k;
    std::vector<Vector> chosen(nf);
    Candidate gridBest;
    grid_scan(m, dims, orig, pivot, grid, chosen, gridBest);
    consider(std::move(gridBest));
  }

  PoptReport report;
  report.minValue = product_expectation(m, dims, best.vectors);
  report.argmin = std::move(best.vectors);
  report.isMember = report.minValue >= -cfg.membershipTol;
  report.boundary = report.isMember && report.minValue < 0.0;
  report.restartValues = std::move(restartValues);
  return report;
}

std::pair<bool, PoptReport> is_popt(const HermitianOperator& w,
                                    const PoptSearchConfig& cfg,
                                    bool requireUnitTrace) {
  PoptReport report = min_product_expectation(w, cfg);
  bool member = report.isMember;
  if (requireUnitTrace && std::abs(w.trace() - 1.0) > 1e-9) member = false;
  return {member, std::move(report)};
}

StateClass classify_state(const HermitianOperator& w, const PoptSearchConfig& cfg) {
  if (std::abs(w.trace() - 1.0) > 1e-9) {
    throw NonUnitTraceError("classify_state: operator trace " +
                            std::to_string(w.trace()) + " is not 1");
  }
  if (is_psd(w)) return StateClass::Quantum;
  return min_product_expectation(w, cfg).isMember ? StateClass::WitnessState
                                                  : StateClass::NotAState;
}

HermitianOperator reconstruct(const SeparableDecomposition& d) {
  if (d.terms.empty()) throw ShapeError("reconstruct: decomposition has no terms");
  std::vector<int> dims;
  for (const HermitianOperator& f : d.terms.front().factors) dims.push_back(f.dim());
  const SystemShape shape(dims);
  Matrix acc = Matrix::Zero(shape.total(), shape.total());
  for (const SeparableTerm& t : d.terms) {
    if (t.factors.size() != dims.size()) {
      throw ShapeError("reconstruct: inconsistent factor counts across terms");
    }
    Matrix prod = t.factors.front().matrix();
    for (std::size_t k = 1; k < t.factors.size(); ++k) {
      if (t.factors[k].dim() != dims[k]) {
        throw ShapeError("reconstruct: inconsistent factor dims across terms");
      }
      prod = kron(prod, t.factors[k].matrix());
    }
    acc += t.weight * prod;
  }
  return HermitianOperator{shape, acc};
}

bool verify_separable_decomposition(const SeparableDecomposition& d,
                                    const HermitianOperator& target,
                                    double tol) {
  if (d.terms.empty()) return false;
  const std::vector<int>& dims = target.shape().dims();
  for (const SeparableTerm& t : d.terms) {
    if (!(t.weight >= 0.0)) return false;
    if (t.factors.size() != dims.size()) return false;
    for (std::size_t k = 0; k < t.factors.size(); ++k) {
      if (t.factors[k].dim() != dims[k]) return false;
      if (!is_psd(t.factors[k])) return false;
    }
  }
  return frobenius_distance(reconstruct(d), target) <= tol;
}

std::pair<bool, PoptReport> complement_in_popt_cone(const HermitianOperator& w,
                                                    const PoptSearchConfig& cfg) {
  const Matrix comp = Matrix::Identity(w.dim(), w.dim()) - w.matrix();
  return is_popt(HermitianOperator{w.shape(), comp}, cfg);
}

}  // namespace poptlab
