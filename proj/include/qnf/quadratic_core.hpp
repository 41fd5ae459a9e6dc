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

#ifndef QNF_QUADRATIC_CORE_HPP_
#define QNF_QUADRATIC_CORE_HPP_

#include <vector>

#include "qnf/types.hpp"

namespace qnf {

// Real symmetric 2N x 2N matrix M of H = 1/2 r^T M r, r = (x_1..x_N, p_1..p_N).
class HamiltonianMatrix {
 public:
  // Symmetrizes after checking the asymmetry is within atol + rtol*||M||.
  static HamiltonianMatrix FromMatrix(const RealMatrix& m,
                                      const Tolerances& tol = {});

  int n_modes() const { return static_cast<int>(m_.rows() / 2); }
  const RealMatrix& entries() const { return m_; }

 private:
  explicit HamiltonianMatrix(RealMatrix m) : m_(std::move(m)) {}
  RealMatrix m_;
};

// J = [[0, I], [-I, 0]].
class SymplecticForm {
 public:
  explicit SymplecticForm(int n_modes);

  int n_modes() const { return n_; }
  const RealMatrix& entries() const { return j_; }

 private:
  int n_;
  RealMatrix j_;
};

// K = J M. Blocks are K = [[A_I, A_R], [-A_L, -A_I^T]].
class EquationOfMotionMatrix {
 public:
  // Wraps an arbitrary even-dimensional square matrix without structure checks.
  static EquationOfMotionMatrix FromMatrix(const RealMatrix& k);

  int n_modes() const { return static_cast<int>(k_.rows() / 2); }
  const RealMatrix& entries() const { return k_; }

  RealMatrix a_i() const;
  RealMatrix a_r() const;
  RealMatrix a_l() const;

 private:
  explicit EquationOfMotionMatrix(RealMatrix k) : k_(std::move(k)) {}
  RealMatrix k_;
};

struct EomDiagnostics {
  // ||(J K)^T - J K||_max; zero iff K = J M for some symmetric M.
  double hamiltonian_residual = 0;
  double a_r_asymmetry = 0;
  double a_l_asymmetry = 0;
  double diagonal_block_mismatch = 0;
  double threshold = 0;
  bool ok = false;
};

// One column pair (t_k, s_k) of a canonical transform.
struct ColumnTag {
  int case_label = 0;
  Complex eigenvalue;
  int chain_rank = 0;
};

// Real 2N x 2N matrix with T J T^T = J.
class CanonicalTransform {
 public:
  // Rejects matrices failing the symplectic condition.
  static CanonicalTransform FromMatrix(const RealMatrix& t,
                                       const Tolerances& tol = {},
                                       std::vector<ColumnTag> tags = {});

  int n_modes() const { return static_cast<int>(t_.rows() / 2); }
  const RealMatrix& entries() const { return t_; }
  const std::vector<ColumnTag>& tags() const { return tags_; }

 private:
  CanonicalTransform(RealMatrix t, std::vector<ColumnTag> tags)
      : t_(std::move(t)), tags_(std::move(tags)) {}
  RealMatrix t_;
  std::vector<ColumnTag> tags_;
};

// T_C = G^dagger T G, G = 1/sqrt(2) [[I, I], [-iI, iI]].
class BosonicTransform {
 public:
  explicit BosonicTransform(ComplexMatrix tc) : tc_(std::move(tc)) {}
  const ComplexMatrix& entries() const { return tc_; }

 private:
  ComplexMatrix tc_;
};

SymplecticForm standard_symplectic_form(int n_modes);

// ||T J T^T - J||_max.
double symplectic_residual(const RealMatrix& t);

// Threshold used by the symplectic contract: tol * (1 + ||T||_max^2).
double symplectic_threshold(const RealMatrix& t, const Tolerances& tol);

// 2-norm condition number.
double condition_number(const RealMatrix& t);

EquationOfMotionMatrix build_eom(const HamiltonianMatrix& m);

EomDiagnostics validate_eom_structure(const RealMatrix& k,
                                      const Tolerances& tol = {});

// M' = T^T M T. Throws kContractViolation if T is not symplectic.
HamiltonianMatrix transform_hamiltonian(const HamiltonianMatrix& m,
                                        const CanonicalTransform& t,
                                        const Tolerances& tol = {});

// T^{-1} K T. Throws kIllConditioned above tol.max_condition.
EquationOfMotionMatrix similarity(const EquationOfMotionMatrix& k,
                                  const RealMatrix& t,
                                  const Tolerances& tol = {});

BosonicTransform to_bosonic(const CanonicalTransform& t);
ComplexMatrix to_bosonic(const RealMatrix& t);

// exp(K t) by scaling and squaring with a degree 13 Pade approximant.
// Throws kOverflow when the result is not finite.
RealMatrix matrix_exponential(const RealMatrix& a);
RealMatrix propagate(const EquationOfMotionMatrix& k, double t);

struct StabilityOptions {
  double t_max = 50.0;
  double growth_threshold = 1e3;
  int samples = 500;
};

// Independent boundedness check: true iff sup ||exp(K t)||_2 over sampled
// t in [0, t_max] stays below the threshold. Uses no spectral information.
bool stability_oracle(const EquationOfMotionMatrix& k,
                      const StabilityOptions& options = {});

}  // namespace qnf

#endif  // QNF_QUADRATIC_CORE_HPP_
