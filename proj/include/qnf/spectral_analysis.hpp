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

#ifndef QNF_SPECTRAL_ANALYSIS_HPP_
#define QNF_SPECTRAL_ANALYSIS_HPP_

#include <string>
#include <vector>

#include "qnf/quadratic_core.hpp"
#include "qnf/types.hpp"

namespace qnf {

enum class EigenKind {
  kRealPair,
  kComplexQuadruplet,
  kZero,
  kImaginaryPair,
};

const char* EigenKindName(EigenKind kind);

struct EigenCluster {
  Complex value;
  int multiplicity = 0;
  // Spread of the merged raw eigenvalues after axis snapping.
  double diameter = 0;
};

struct EigenvalueClass {
  EigenKind kind = EigenKind::kZero;
  // Member with Re > 0 (real pair, quadruplet with Im > 0), Im > 0 for
  // imaginary pairs, 0 for Zero.
  Complex representative;
  int algebraic_multiplicity = 0;
  int geometric_multiplicity = 0;
};

struct SpectrumReport {
  int n_modes = 0;
  std::vector<EigenvalueClass> classes;
  // 2N - (a_0 + 2 sum_R a + 4 sum_C a + 2 sum_I a). Zero on success.
  int sum_rule_residual = 0;
  std::vector<std::string> warnings;
};

struct JordanChain {
  Complex eigenvalue;
  ComplexVector generator;
  int rank = 0;
  int case_label = 0;
  // Entry k-1 holds (K - lambda)^{D-k} g for k = 1..D; the first is an
  // eigenvector, the last is the generator itself.
  std::vector<ComplexVector> chain_vectors;
};

struct ClassChains {
  EigenvalueClass eigen_class;
  std::vector<JordanChain> chains;
  // Chains of -lambda (real pairs, quadruplets) or exact conjugates
  // (imaginary pairs). Empty for the zero class.
  std::vector<JordanChain> partners;
  // Zero class: l_0 = #(c=3), n_0 = #(c=4) / 2. Imaginary: l = #(c=5),
  // n = #(c=6).
  int l = 0;
  int n = 0;
};

struct JordanChainSet {
  std::vector<ClassChains> classes;
};

// Absolute clustering threshold tol * (1 + ||K||_max).
double cluster_threshold(const RealMatrix& k, double tol);

std::vector<EigenCluster> cluster_eigenvalues(const EquationOfMotionMatrix& k,
                                              double tol);

SpectrumReport classify_spectrum(const std::vector<EigenCluster>& clusters,
                                 int n_modes);

// dim null(K - lambda). Sets *borderline when a singular value falls within
// a factor 10 of the threshold.
int geometric_multiplicity(const RealMatrix& k, Complex lambda, double tol,
                           bool* borderline = nullptr);

// Cluster, classify and fill geometric multiplicities.
SpectrumReport analyze_spectrum(const EquationOfMotionMatrix& k,
                                const Tolerances& tol = {});

// Jordan chains of lambda with algebraic multiplicity a, selected from the
// null-space filtration of (K - lambda) restricted to the invariant subspace.
std::vector<JordanChain> chains_for_eigenvalue(const RealMatrix& k,
                                               Complex lambda, int a,
                                               const Tolerances& tol,
                                               std::vector<std::string>* warnings =
                                                   nullptr);

ClassChains jordan_chains(const EquationOfMotionMatrix& k,
                          const EigenvalueClass& eigen_class,
                          const Tolerances& tol = {},
                          std::vector<std::string>* warnings = nullptr);

JordanChainSet assign_cases(JordanChainSet chains);

// Orthonormal basis (2N x a) of the invariant subspace of the a eigenvalues
// nearest to lambda, by reordering a complex Schur form.
ComplexMatrix invariant_subspace(const RealMatrix& k, Complex lambda, int a);

// Swaps adjacent diagonal entries p, p+1 of the upper triangular t and
// accumulates the rotation into q.
void swap_schur_diagonal(ComplexMatrix* t, ComplexMatrix* q, Eigen::Index p);

}  // namespace qnf

#endif  // QNF_SPECTRAL_ANALYSIS_HPP_
