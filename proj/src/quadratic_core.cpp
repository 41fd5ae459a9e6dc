// Copyright 2026 The qnf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnf/quadratic_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

namespace qnf {

namespace {

void RequireSquareEven(const RealMatrix& m, const char* stage) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    std::ostringstream os;
    os << "expected a non-empty square matrix of even dimension, got "
       << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::kInvalidDimension, stage, os.str());
  }
}

void RequireFinite(const RealMatrix& m, const char* stage) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kInvalidDimension, stage,
                "matrix contains non-finite entries");
  }
}

// J x without forming J.
RealMatrix ApplyJ(const RealMatrix& x) {
  const Eigen::Index n = x.rows() / 2;
  RealMatrix out(x.rows(), x.cols());
  out.topRows(n) = x.bottomRows(n);
  out.bottomRows(n) = -x.topRows(n);
  return out;
}

}  // namespace

HamiltonianMatrix HamiltonianMatrix::FromMatrix(const RealMatrix& m,
                                                const Tolerances& tol) {
  RequireSquareEven(m, "hamiltonian");
  RequireFinite(m, "hamiltonian");
  double asym = MaxNorm(m - m.transpose());
  double limit = tol.structure_atol + tol.structure_rtol * MaxNorm(m);
  if (asym > limit) {
    std::ostringstream os;
    os << "matrix is not symmetric: max |M - M^T| = " << asym
       << " exceeds " << limit;
    throw Error(ErrorCode::kNotSymmetric, "hamiltonian", os.str());
  }
  return HamiltonianMatrix(0.5 * (m + m.transpose()));
}

SymplecticForm::SymplecticForm(int n_modes) : n_(n_modes) {
  if (n_modes < 1) {
    throw Error(ErrorCode::kInvalidDimension, "symplectic_form",
                "n_modes must be at least 1");
  }
  j_ = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  j_.topRightCorner(n_modes, n_modes).setIdentity();
  j_.bottomLeftCorner(n_modes, n_modes) = -RealMatrix::Identity(n_modes, n_modes);
}

SymplecticForm standard_symplectic_form(int n_modes) {
  return SymplecticForm(n_modes);
}

EquationOfMotionMatrix EquationOfMotionMatrix::FromMatrix(const RealMatrix& k) {
  RequireSquareEven(k, "eom");
  RequireFinite(k, "eom");
  return EquationOfMotionMatrix(k);
}

RealMatrix EquationOfMotionMatrix::a_i() const {
  const int n = n_modes();
  return k_.topLeftCorner(n, n);
}

RealMatrix EquationOfMotionMatrix::a_r() const {
  const int n = n_modes();
  return k_.topRightCorner(n, n);
}

RealMatrix EquationOfMotionMatrix::a_l() const {
  const int n = n_modes();
  return k_.bottomLeftCorner(n, n);
}

EquationOfMotionMatrix build_eom(const HamiltonianMatrix& m) {
  return EquationOfMotionMatrix::FromMatrix(ApplyJ(m.entries()));
}

EomDiagnostics validate_eom_structure(const RealMatrix& k,
                                      const Tolerances& tol) {
  RequireSquareEven(k, "validate_eom");
  const Eigen::Index n = k.rows() / 2;
  EomDiagnostics d;
  // J K + K^T J = J K - (J K)^T.
  RealMatrix jk = ApplyJ(k);
  d.hamiltonian_residual = MaxNorm(jk - jk.transpose());
  RealMatrix ar = k.topRightCorner(n, n);
  RealMatrix al = k.bottomLeftCorner(n, n);
  d.a_r_asymmetry = MaxNorm(ar - ar.transpose());
  d.a_l_asymmetry = MaxNorm(al - al.transpose());
  d.diagonal_block_mismatch = MaxNorm(
      RealMatrix(k.bottomRightCorner(n, n) + k.topLeftCorner(n, n).transpose()));
  d.threshold = tol.structure_atol + tol.structure_rtol * MaxNorm(k);
  d.ok = d.hamiltonian_residual <= d.threshold &&
         d.a_r_asymmetry <= d.threshold && d.a_l_asymmetry <= d.threshold &&
         d.diagonal_block_mismatch <= d.threshold;
  return d;
}

double symplectic_residual(const RealMatrix& t) {
  RealMatrix j = standard_symplectic_form(static_cast<int>(t.rows() / 2)).entries();
  return MaxNorm(t * j * t.transpose() - j);
}

double symplectic_threshold(const RealMatrix& t, const Tolerances& tol) {
  double s = MaxNorm(t);
  return tol.symplectic * (1.0 + s * s);
}

double condition_number(const RealMatrix& t) {
  Eigen::JacobiSVD<RealMatrix> svd(t);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  double lo = s(s.size() - 1);
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / lo;
}

CanonicalTransform CanonicalTransform::FromMatrix(const RealMatrix& t,
                                                  const Tolerances& tol,
                                                  std::vector<ColumnTag> tags) {
  RequireSquareEven(t, "canonical_transform");
  RequireFinite(t, "canonical_transform");
  double res = symplectic_residual(t);
  double limit = symplectic_threshold(t, tol);
  if (!(res <= limit)) {
    std::ostringstream os;
    os << "T J T^T - J has max-norm " << res << " above " << limit;
    throw Error(ErrorCode::kContractViolation, "canonical_transform", os.str());
  }
  return CanonicalTransform(t, std::move(tags));
}

HamiltonianMatrix transform_hamiltonian(const HamiltonianMatrix& m,
                                        const CanonicalTransform& t,
                                        const Tolerances& tol) {
  const RealMatrix& tm = t.entries();
  if (tm.rows() != m.entries().rows()) {
    throw Error(ErrorCode::kInvalidDimension, "transform_hamiltonian",
                "T and M dimensions differ");
  }
  double res = symplectic_residual(tm);
  if (!(res <= symplectic_threshold(tm, tol))) {
    std::ostringstream os;
    os << "T is not symplectic (residual " << res << ")";
    throw Error(ErrorCode::kContractViolation, "transform_hamiltonian", os.str());
  }
  RealMatrix n = tm.transpose() * m.entries() * tm;
  // Exact symmetrization; the product is symmetric up to round-off.
  Tolerances loose = tol;
  loose.structure_atol = std::numeric_limits<double>::infinity();
  return HamiltonianMatrix::FromMatrix(0.5 * (n + n.transpose()), loose);
}

EquationOfMotionMatrix similarity(const EquationOfMotionMatrix& k,
                                  const RealMatrix& t,
                                  const Tolerances& tol) {
  if (t.rows() != k.entries().rows() || t.cols() != t.rows()) {
    throw Error(ErrorCode::kInvalidDimension, "similarity",
                "T and K dimensions differ");
  }
  double cond = condition_number(t);
  if (!(cond <= tol.max_condition)) {
    std::ostringstream os;
    os << "condition number " << cond << " exceeds " << tol.max_condition;
    throw Error(ErrorCode::kIllConditioned, "similarity", os.str());
  }
  Eigen::PartialPivLU<RealMatrix> lu(t);
  return EquationOfMotionMatrix::FromMatrix(lu.solve(k.entries() * t));
}

ComplexMatrix to_bosonic(const RealMatrix& t) {
  const Eigen::Index n = t.rows() / 2;
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  ComplexMatrix g(2 * n, 2 * n);
  g.setZero();
  for (Eigen::Index k = 0; k < n; ++k) {
    g(k, k) = h;
    g(k, n + k) = h;
    g(n + k, k) = -i * h;
    g(n + k, n + k) = i * h;
  }
  return g.adjoint() * t.cast<Complex>() * g;
}

BosonicTransform to_bosonic(const CanonicalTransform& t) {
  return BosonicTransform(to_bosonic(t.entries()));
}

RealMatrix propagate(const EquationOfMotionMatrix& k, double t) {
  if (!std::isfinite(t)) {
    throw Error(ErrorCode::kContractViolation, "propagate", "t must be finite");
  }
  return matrix_exponential(k.entries() * t);
}

bool stability_oracle(const EquationOfMotionMatrix& k,
                      const StabilityOptions& options) {
  if (!(options.t_max > 0) || options.samples < 1) {
    throw Error(ErrorCode::kContractViolation, "stability_oracle",
                "t_max must be positive and samples at least 1");
  }
  const double dt = options.t_max / options.samples;
  RealMatrix step;
  try {
    step = propagate(k, dt);
  } catch (const Error&) {
    return false;
  }
  RealMatrix p = RealMatrix::Identity(step.rows(), step.cols());
  for (int s = 0; s < options.samples; ++s) {
    p = p * step;
    if (!p.allFinite()) return false;
    Eigen::JacobiSVD<RealMatrix> svd(p);
    if (svd.singularValues()(0) > options.growth_threshold) return false;
  }
  return true;
}

}  // namespace qnf
