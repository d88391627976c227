#include "poptlab/realization.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "poptlab/errors.hpp"

namespace poptlab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ShapeError(what);
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Positive root of a Hermitian operator whose spectrum may dip a hair below
// zero; eigenvalues under -tol mean the two-branch split cannot exist.
// Eigenvalues within kPsdTol of zero clamp to zero so the root does not
// amplify noise-level values to their square roots.
Matrix branch_root(const HermitianOperator& m, double tol) {
  const Eigensystem es = eig_hermitian(m);
  Matrix root = Matrix::Zero(m.dim(), m.dim());
  for (int i = 0; i < es.values.size(); ++i) {
    const double v = es.values(i);
    if (v < -tol) {
      throw RealizationError(
          "branch split infeasible: dS * W_B has an eigenvalue above 1");
    }
    if (v > kPsdTol) {
      root += std::sqrt(v) * es.vectors.col(i) * es.vectors.col(i).adjoint();
    }
  }
  return root;
}

// Λ(M) for M on R = S⊗C: the two diagonal control blocks are mapped through U
// and compressed by the matching branch operator.  Off-diagonal control blocks
// never contribute, which is why positivity of U alone suffices.
Matrix lambda_apply(const ChoiOperator& choiU, const Matrix& vB,
                    const Matrix& vBPrime, const Matrix& m) {
  const int dS = choiU.in().total();
  Matrix block0(dS, dS);
  Matrix block1(dS, dS);
  for (int s = 0; s < dS; ++s) {
    for (int t = 0; t < dS; ++t) {
      block0(s, t) = m(2 * s, 2 * t);
      block1(s, t) = m(2 * s + 1, 2 * t + 1);
    }
  }
  return vB.adjoint() * apply_map_raw(choiU, block0) * vB +
         vBPrime.adjoint() * apply_map_raw(choiU, block1) * vBPrime;
}

}  // namespace

Matrix apply_map_second(const ChoiOperator& choi, const Matrix& x, int dimFirst) {
  const int dIn = choi.in().total();
  const int dOut = choi.out().total();
  require(dimFirst >= 1, "apply_map_second: first factor dimension must be positive");
  require(x.rows() == dimFirst * dIn && x.cols() == x.rows(),
          "apply_map_second: operator dimension mismatch");
  Matrix out = Matrix::Zero(dimFirst * dOut, dimFirst * dOut);
  for (int a = 0; a < dimFirst; ++a) {
    for (int b = 0; b < dimFirst; ++b) {
      out.block(a * dOut, b * dOut, dOut, dOut) =
          apply_map_raw(choi, x.block(a * dIn, b * dIn, dIn, dIn));
    }
  }
  return out;
}

PoptRealization realize_popt(const HermitianOperator& w, const PoptSearchConfig& cfg) {
  require(w.shape().factor_count() == 2, "realization needs a two-factor state");
  if (std::abs(w.trace() - 1.0) > 1e-9) {
    throw NonUnitTraceError("realization needs a unit-trace state");
  }
  const auto [member, report] = is_popt(w, cfg);
  if (!member) {
    throw NotPoptError("realization needs a product-test-positive state");
  }

  const int dA = w.shape().dim(0);
  const int dB = w.shape().dim(1);
  const int dS = dA;
  const SystemShape shapeB({dB});

  const HermitianOperator wB = partial_trace(w, {1});
  const HermitianOperator pB = support_projector(wB);
  const HermitianOperator pBPerp{
      shapeB, Matrix::Identity(dB, dB) - pB.matrix()};

  const HermitianOperator wPrime{
      w.shape(), w.matrix() + kron(Matrix::Identity(dA, dA), pBPerp.matrix())};
  const HermitianOperator wPrimeB = partial_trace(wPrime, {1});
  const PsdRoots roots = psd_sqrt_pinv(wPrimeB);

  const Matrix scalerDown = kron(Matrix::Identity(dA, dA), roots.pinvSqrt.matrix());
  const HermitianOperator wDoublePrime{
      w.shape(), scalerDown * wPrime.matrix() * scalerDown};
  const ChoiOperator choiU{SystemShape::single(dA), SystemShape::single(dB),
                           wDoublePrime};

  const Matrix vB = std::sqrt(double(dS)) * roots.sqrt.matrix() * pB.matrix();
  const HermitianOperator defect{
      shapeB, Matrix::Identity(dB, dB) - double(dS) * wB.matrix()};
  const Matrix vBPrime = branch_root(defect, 1e-9);

  const int dR = 2 * dS;
  Matrix choiMatrix = Matrix::Zero(dR * dB, dR * dB);
  for (int i = 0; i < dR; ++i) {
    for (int j = 0; j < dR; ++j) {
      Matrix unit = Matrix::Zero(dR, dR);
      unit(i, j) = 1.0;
      choiMatrix.block(i * dB, j * dB, dB, dB) =
          lambda_apply(choiU, vB, vBPrime, unit);
    }
  }
  const ChoiOperator choiLambda{SystemShape({dS, 2}), SystemShape::single(dB),
                                HermitianOperator{SystemShape({dR, dB}), choiMatrix}};

  Vector psi = Vector::Zero(dA * dR);
  for (int i = 0; i < dA; ++i) {
    psi(i * dR + 2 * i) = 1.0 / std::sqrt(double(dS));
  }
  const HermitianOperator psiAR = pure_state(SystemShape({dA, dR}), psi);

  return PoptRealization{wPrime, pB,      pBPerp, wPrimeB,    wDoublePrime,
                         vB,     vBPrime, choiU,  choiLambda, psiAR};
}

RealizationChecks verify_realization(const HermitianOperator& w,
                                     const PoptRealization& r,
                                     const PoptSearchConfig& cfg) {
  require(w.shape().factor_count() == 2, "realization needs a two-factor state");
  const int dA = w.shape().dim(0);
  const int dB = w.shape().dim(1);
  const int dR = r.choiLambda.in().total();
  require(r.choiLambda.out().total() == dB && dR == 2 * dA,
          "realization record does not match the state shape");
  require(r.psiAR.dim() == dA * dR, "realization input state has the wrong dimension");

  RealizationChecks checks;

  const Matrix rec = apply_map_second(r.choiLambda, r.psiAR.matrix(), dA);
  checks.reconstructionResidual = (rec - w.matrix()).norm();

  const Matrix lambdaOfIdentity =
      apply_map_raw(r.choiLambda, Matrix::Identity(dR, dR));
  checks.unitalityResidual =
      max_abs(lambdaOfIdentity - Matrix::Identity(dB, dB));

  checks.marginalResidual = max_abs(partial_trace(r.wDoublePrime, {1}).matrix() -
                                    Matrix::Identity(dB, dB));

  checks.krausResidual =
      max_abs(r.vB.adjoint() * r.vB + r.vBPrime.adjoint() * r.vBPrime -
              Matrix::Identity(dB, dB));

  const Matrix psi = r.psiAR.matrix();
  checks.psiResidual = std::max(max_abs(psi * psi - psi),
                                std::abs(r.psiAR.trace() - 1.0));

  const auto [member, report] = is_popt(r.choiLambda.op(), cfg);
  checks.choiReport = report;
  checks.choiBlockPositive = member;

  const double tol = 1e-8;
  checks.pass = checks.reconstructionResidual <= tol &&
                checks.unitalityResidual <= tol &&
                checks.marginalResidual <= tol && checks.krausResidual <= tol &&
                checks.psiResidual <= tol && checks.choiBlockPositive;
  return checks;
}

CorrelationCheck correlation_identity_check(const HermitianOperator& w,
                                            const std::vector<Measurement>& povmsA,
                                            const std::vector<Measurement>& povmsB,
                                            const PoptRealization& r) {
  require(w.shape().factor_count() == 2, "correlation check needs a two-factor state");
  const int dA = w.shape().dim(0);
  const int dB = w.shape().dim(1);
  const int dR = r.choiLambda.in().total();
  require(!povmsA.empty() && !povmsB.empty(),
          "correlation check needs at least one measurement per side");
  const auto check_side = [](const std::vector<Measurement>& povms, int dim,
                             const char* side) {
    for (const Measurement& m : povms) {
      require(!m.effects.empty() && m.effects.front().dim() == dim,
              std::string(side) + "-side effect dimension mismatch");
      Matrix sum = Matrix::Zero(dim, dim);
      for (const HermitianOperator& effect : m.effects) {
        sum += effect.matrix();
      }
      if (max_abs(sum - Matrix::Identity(dim, dim)) > 1e-8) {
        throw MeasurementError(std::string(side) +
                               "-side effects do not sum to the identity");
      }
    }
  };
  check_side(povmsA, dA, "A");
  check_side(povmsB, dB, "B");

  const ChoiOperator adjoint = choi_adjoint(r.choiLambda);

  CorrelationCheck check;
  check.minProbability = 1.0;
  check.maxProbability = 0.0;
  check.probsFromState.resize(povmsA.size());
  check.probsFromRealization.resize(povmsA.size());

  for (std::size_t y = 0; y < povmsB.size(); ++y) {
    Matrix sum = Matrix::Zero(dR, dR);
    for (const HermitianOperator& effect : povmsB[y].effects) {
      sum += apply_map_raw(adjoint, effect.matrix());
    }
    check.adjointEffectSums.push_back(sum);
  }

  for (std::size_t x = 0; x < povmsA.size(); ++x) {
    check.probsFromState[x].resize(povmsB.size());
    check.probsFromRealization[x].resize(povmsB.size());
    for (std::size_t y = 0; y < povmsB.size(); ++y) {
      const std::size_t nA = povmsA[x].effects.size();
      const std::size_t nB = povmsB[y].effects.size();
      Eigen::MatrixXd fromState(nA, nB);
      Eigen::MatrixXd fromRealization(nA, nB);
      for (std::size_t a = 0; a < nA; ++a) {
        const Matrix& piA = povmsA[x].effects[a].matrix();
        for (std::size_t b = 0; b < nB; ++b) {
          const Matrix& piB = povmsB[y].effects[b].matrix();
          const double pState =
              (w.matrix() * kron(piA, piB)).trace().real();
          const Matrix mapped = apply_map_raw(adjoint, piB);
          const double pRealized =
              (r.psiAR.matrix() * kron(piA, mapped)).trace().real();
          fromState(a, b) = pState;
          fromRealization(a, b) = pRealized;
          check.maxDeviation =
              std::max(check.maxDeviation, std::abs(pState - pRealized));
          check.minProbability = std::min(check.minProbability, pState);
          check.maxProbability = std::max(check.maxProbability, pState);
        }
      }
      check.probsFromState[x][y] = std::move(fromState);
      check.probsFromRealization[x][y] = std::move(fromRealization);
    }
  }
  return check;
}

}  // namespace poptlab
