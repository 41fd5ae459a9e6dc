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

#ifndef QNF_NORMAL_FORM_HPP_
#define QNF_NORMAL_FORM_HPP_

#include <string>
#include <vector>

#include "qnf/quadratic_core.hpp"
#include "qnf/spectral_analysis.hpp"
#include "qnf/symplectic_algebra.hpp"
#include "qnf/types.hpp"

namespace qnf {

// Shape of one normal-form block: case, eigenvalue, chain rank and sign.
struct BlockSpec {
  int case_label = 0;
  Complex eigenvalue;
  int rank = 0;
  Complex sigma = 1.0;
};

// Number of modes a block occupies: D, 2D, D/2, D, D, D for c = 1..6.
int block_modes(int case_label, int rank);

struct ColumnGroup {
  BlockSpec spec;
  std::vector<RealVector> plus;   // columns of T_+
  std::vector<RealVector> minus;  // columns of T_-
};

struct NormalFormBlock {
  BlockSpec spec;
  int first_mode = 0;  // zero-based offset in the assembled layout
  RealMatrix ii, ir, il;

  int modes() const { return static_cast<int>(ii.rows()); }
  // [[I_I, I_R], [I_L, -I_I^T]].
  RealMatrix assembled() const;
};

enum class TermKind {
  kHarmonicOscillator,              // c (X_a^2 + P_a^2)
  kFreeParticleX,                   // c X_a^2
  kFreeParticleP,                   // c P_a^2
  kSingleModeSqueeze,               // c X_a P_a
  kBeamSplitterXP,                  // c (X_a P_b - P_a X_b)
  kBeamSplitterXXPP,                // c (X_a X_b + P_a P_b)
  kBeamSplitterPlusTwoModeSqueeze,  // c X_a P_b
  kPositionCoupling,                // c X_a X_b
  kMomentumCoupling,                // c P_a P_b
};

const char* TermKindName(TermKind kind);

struct HamiltonianTerm {
  TermKind kind;
  double coefficient = 0;
  int mode_a = 0;  // one-based
  int mode_b = 0;  // one-based; equals mode_a for single-mode kinds
};

enum class Verdict { kStable, kMarginal, kUnstable };

const char* VerdictName(Verdict v);

struct GrowthAnnotation {
  int block = 0;
  // "bounded", "exponential" or "polynomial".
  std::string kind;
  double rate = 0;       // |Re lambda| for exponential growth
  int order = 0;         // polynomial order D - 1
};

struct Residuals {
  double symplectic = 0;
  double symplectic_threshold = 0;
  double block_match = 0;
  double block_threshold = 0;
  double n_reproduction = 0;
  double orthonormality = 0;
  double condition = 0;
};

struct NormalFormReport {
  int n_modes = 0;
  CanonicalTransform transform = CanonicalTransform::FromMatrix(
      RealMatrix::Identity(2, 2));
  RealMatrix k_normal;      // T^{-1} K T as computed
  RealMatrix k_expected;    // assembled block templates
  RealMatrix n_matrix;      // T^T M T
  SpectrumReport spectrum;
  std::vector<NormalFormBlock> blocks;
  std::vector<HamiltonianTerm> terms;
  int zero_frequency_modes = 0;
  Verdict verdict = Verdict::kStable;
  std::vector<std::string> reasons;
  std::vector<GrowthAnnotation> growth;
  Residuals residuals;
  bool fast_path = false;
  std::vector<std::string> warnings;
};

ColumnGroup build_case_columns(int case_label, const RealMatrix& k,
                               const OrthonormalChain& chain,
                               const Tolerances& tol = {});

// Bogoliubov columns t = sqrt2 Re e, s = i sigma sqrt2 Im e.
ColumnGroup bogoliubov_columns(const OrthonormalChain& chain);

CanonicalTransform assemble_transform(const std::vector<ColumnGroup>& groups,
                                      const Tolerances& tol = {});

std::vector<NormalFormBlock> expected_blocks(const std::vector<BlockSpec>& specs);

// Places block sub-matrices at their mode offsets.
RealMatrix assemble_k_normal(const std::vector<NormalFormBlock>& blocks,
                             int n_modes);

std::vector<HamiltonianTerm> emit_terms(const std::vector<NormalFormBlock>& blocks,
                                        int* zero_frequency_modes = nullptr);

// Symmetric N with H = 1/2 r^T N r equal to the sum of the terms.
RealMatrix terms_to_matrix(const std::vector<HamiltonianTerm>& terms, int n_modes);

// Canonical ordering of column groups: case, then |lambda| and Im lambda
// descending, then rank descending.
void sort_groups(std::vector<ColumnGroup>* groups);

Verdict classify_verdict(const std::vector<NormalFormBlock>& blocks,
                         std::vector<std::string>* reasons,
                         std::vector<GrowthAnnotation>* growth);

// True iff every eigenvalue is imaginary and K is diagonalizable.
bool bogoliubov_applicable(const SpectrumReport& spectrum);

NormalFormReport bogoliubov_transform(const HamiltonianMatrix& m,
                                      const AnalysisConfig& config = {});

NormalFormReport normal_form(const HamiltonianMatrix& m,
                             const AnalysisConfig& config = {});

}  // namespace qnf

#endif  // QNF_NORMAL_FORM_HPP_
