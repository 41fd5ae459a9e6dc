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

#include <algorithm>
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "qnf/normal_form.hpp"
#include "qnf/reporting.hpp"
#include "test_support.hpp"

namespace qnf {
namespace {

using testing::Rng;
const Complex kI(0, 1);

RealMatrix GoldenM() {
  return parse_matrix(
             "modes 4\n-21 -11 -17 -45 16 7 -3 22\n-11 2 -6 -15 3 6 -3 9\n"
             "-17 -6 -3 -29 8 4 0 16\n-45 -15 -29 -60 19 16 0 33\n"
             "16 3 8 19 -5 -6 0 -11\n7 6 4 16 -6 -1 0 -8\n-3 -3 0 0 0 0 3 0\n"
             "22 9 16 33 -11 -8 0 -17\n")
      .entries;
}

RealMatrix GoldenK() { return build_eom(HamiltonianMatrix::FromMatrix(GoldenM())).entries(); }

RealVector R(std::initializer_list<double> v) {
  RealVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) x(i++) = c;
  return x;
}

ComplexVector C(std::initializer_list<Complex> v) {
  ComplexVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex c : v) x(i++) = c;
  return x;
}

RealMatrix M(int rows, int cols, std::initializer_list<double> v) {
  RealMatrix m(rows, cols);
  auto it = v.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = *it++;
  return m;
}

TEST(BlockModesTest, TableDimensions) {
  EXPECT_EQ(block_modes(1, 3), 3);
  EXPECT_EQ(block_modes(2, 2), 4);
  EXPECT_EQ(block_modes(3, 4), 2);
  EXPECT_EQ(block_modes(4, 3), 3);
  EXPECT_EQ(block_modes(5, 2), 2);
  EXPECT_EQ(block_modes(6, 3), 3);
}

TEST(ExpectedBlocksTest, RealPairRankTwo) {
  auto b = expected_blocks({{1, 2.0, 2, 1.0}});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].ii, M(2, 2, {2, 0, 1, 2}));
  EXPECT_EQ(b[0].ir, RealMatrix::Zero(2, 2));
  EXPECT_EQ(b[0].il, RealMatrix::Zero(2, 2));
}

TEST(ExpectedBlocksTest, ImaginaryOscillator) {
  auto b = expected_blocks({{6, 3.0 * kI, 1, -kI}});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].ii, M(1, 1, {0}));
  EXPECT_EQ(b[0].ir, M(1, 1, {3}));
  EXPECT_EQ(b[0].il, M(1, 1, {-3}));
}

TEST(ExpectedBlocksTest, ZeroEvenRank) {
  auto b = expected_blocks({{3, 0.0, 2, 1.0}});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].ii, M(1, 1, {0}));
  EXPECT_EQ(b[0].ir, M(1, 1, {0}));
  EXPECT_EQ(b[0].il, M(1, 1, {-1}));
}

TEST(ExpectedBlocksTest, StructuralInvariantsAndSpectra) {
  const std::vector<BlockSpec> specs = {
      {1, 1.5, 3, 1.0},        {2, Complex(0.5, 1.2), 2, 1.0}, {3, 0.0, 4, -1.0},
      {4, 0.0, 3, 1.0},        {5, Complex(0, 0.8), 2, 1.0},   {5, Complex(0, 0.8), 4, -1.0},
      {6, Complex(0, 2), 3, kI}, {6, Complex(0, 2), 1, -kI}};
  auto blocks = expected_blocks(specs);
  ASSERT_EQ(blocks.size(), specs.size());
  int first = 0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    const int c = b.spec.case_label;
    EXPECT_EQ(b.first_mode, first);
    first += b.modes();
    EXPECT_EQ(b.modes(), block_modes(c, b.spec.rank));
    if (c == 1 || c == 2 || c == 4) {
      EXPECT_EQ(b.ir.cwiseAbs().maxCoeff(), 0.0) << c;
      EXPECT_EQ(b.il.cwiseAbs().maxCoeff(), 0.0) << c;
    }
    if (c == 5) EXPECT_EQ(b.ii.cwiseAbs().maxCoeff(), 0.0);
    // Block spectrum: every root of the characteristic polynomial sits in the
    // lambda family, with 2 * modes roots in total.
    const RealMatrix a = b.assembled();
    const RealMatrix ja = standard_symplectic_form(b.modes()).entries() * a;
    EXPECT_LE(MaxNorm(RealMatrix(ja - ja.transpose())), 1e-15) << "not Hamiltonian, case " << c;
    auto roots = testing::CharPolyRoots(a);
    const Complex l = b.spec.eigenvalue;
    for (const auto& rl : roots) {
      const Complex r(static_cast<double>(rl.real()), static_cast<double>(rl.imag()));
      double d = std::min({std::abs(r - l), std::abs(r + l), std::abs(r - std::conj(l)),
                           std::abs(r + std::conj(l))});
      EXPECT_LE(d, 0.05) << "case " << c << " root " << r;
    }
  }
}

TEST(ExpectedBlocksTest, AssembleLayout) {
  auto blocks = expected_blocks({{1, 2.0, 1, 1.0}, {6, 3.0 * kI, 1, -kI}});
  RealMatrix k = assemble_k_normal(blocks, 2);
  RealMatrix want = M(4, 4, {2, 0, 0, 0,  //
                             0, 0, 0, 3,  //
                             0, 0, -2, 0,  //
                             0, -3, 0, 0});
  EXPECT_EQ(k, want);
}

OrthonormalChain Chain(int c, Complex lambda, int d, ComplexVector e, ComplexVector partner,
                       Complex sigma = 1.0) {
  OrthonormalChain ch;
  ch.case_label = c;
  ch.eigenvalue = lambda;
  ch.rank = d;
  ch.e = std::move(e);
  ch.partner = std::move(partner);
  ch.sigma = sigma;
  return ch;
}

TEST(BuildCaseColumnsTest, GoldenRealPair) {
  const RealMatrix k = GoldenK();
  ComplexVector e = C({3, 20, 0, 23, 43, 3, 23, 26}) / -10.0;
  ComplexVector et = C({14, 37, 0, 34, 74, -6, 51, 65}) / -40.0;
  EXPECT_LE(MaxNorm((k.cast<Complex>() - 2.0 * ComplexMatrix::Identity(8, 8)).pow(2) * e), 1e-12);
  ColumnGroup g = build_case_columns(1, k, Chain(1, 2.0, 2, e, et));
  ASSERT_EQ(g.plus.size(), 2u);
  ASSERT_EQ(g.minus.size(), 2u);
  EXPECT_LE(MaxNorm(g.plus[0] - e.real()), 1e-14);
  EXPECT_LE(MaxNorm(g.plus[1] - R({-2, 0, 0, -2, -2, -2, -2, -4})), 1e-13);
  EXPECT_LE(MaxNorm(g.minus[0] - R({2, 1, 0, 2, 2, 2, 3, 5}) / -2.0), 1e-13);
  EXPECT_LE(MaxNorm(g.minus[1] - et.real()), 1e-14);
}

TEST(BuildCaseColumnsTest, GoldenZeroPair) {
  const RealMatrix k = GoldenK();
  ComplexVector f = C({2, 2, -1, 1, 1, 0, 4, 4});
  ComplexVector h = C({0, 0, 0.5, 0.5, 1.5, 1, 0, 0});
  ColumnGroup g = build_case_columns(4, k, Chain(4, 0.0, 1, f, h));
  ASSERT_EQ(g.plus.size(), 1u);
  EXPECT_EQ(g.plus[0], f.real());
  EXPECT_EQ(g.minus[0], h.real());
}

TEST(BuildCaseColumnsTest, GoldenImaginaryPair) {
  const RealMatrix k = GoldenK();
  ComplexVector e = C({1, 1, -kI, 1, 2.0 - kI, 1.0 - kI, 3, 2}) / std::sqrt(2.0);
  ColumnGroup g = build_case_columns(6, k, Chain(6, 3.0 * kI, 1, e, e.conjugate(), -kI));
  ASSERT_EQ(g.plus.size(), 1u);
  EXPECT_LE(MaxNorm(g.plus[0] - std::sqrt(2.0) * e.real()), 1e-15);
  // A minus sign on this column would make t^T J s = -1; the symplectic
  // pairing fixes it to +sqrt(2) Im(e).
  EXPECT_LE(MaxNorm(g.minus[0] - std::sqrt(2.0) * e.imag()), 1e-15);
  const RealMatrix j = standard_symplectic_form(4).entries();
  EXPECT_NEAR(g.plus[0].dot(j * g.minus[0]), 1.0, 1e-15);
}

TEST(BuildCaseColumnsTest, NonRealOutputRejected) {
  // A complex e for a real pair cannot yield real columns.
  const RealMatrix k = GoldenK();
  ComplexVector e = C({3, 20, 0, 23, 43, 3, 23, 26}) * Complex(0, -0.1);
  ComplexVector et = C({14, 37, 0, 34, 74, -6, 51, 65}) / -40.0;
  try {
    build_case_columns(1, k, Chain(1, 2.0, 2, e, et));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kConstruction);
  }
}

TEST(AssembleTransformTest, GoldenColumnsAreSymplectic) {
  const RealMatrix k = GoldenK();
  ComplexVector e = C({3, 20, 0, 23, 43, 3, 23, 26}) / -10.0;
  ComplexVector et = C({14, 37, 0, 34, 74, -6, 51, 65}) / -40.0;
  ComplexVector e21 = C({1, 1, -kI, 1, 2.0 - kI, 1.0 - kI, 3, 2}) / std::sqrt(2.0);
  std::vector<ColumnGroup> groups = {
      build_case_columns(6, k, Chain(6, 3.0 * kI, 1, e21, e21.conjugate(), -kI)),
      build_case_columns(4, k,
                         Chain(4, 0.0, 1, C({2, 2, -1, 1, 1, 0, 4, 4}),
                               C({0, 0, 0.5, 0.5, 1.5, 1, 0, 0}))),
      build_case_columns(1, k, Chain(1, 2.0, 2, e, et))};
  sort_groups(&groups);
  EXPECT_EQ(groups[0].spec.case_label, 1);
  EXPECT_EQ(groups[2].spec.case_label, 6);
  CanonicalTransform t = assemble_transform(groups);
  EXPECT_LE(symplectic_residual(t.entries()), 1e-12);
}

TEST(AssembleTransformTest, NonSymplecticRejected) {
  ColumnGroup g;
  g.spec = {6, kI, 1, -kI};
  g.plus = {R({2, 0})};
  g.minus = {R({0, 1})};
  try {
    assemble_transform({g});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kAssembly);
  }
}

std::string Render(const std::vector<HamiltonianTerm>& t) { return render_terms(t); }

TEST(EmitTermsTest, GoldenTerms) {
  auto blocks = expected_blocks({{1, 2.0, 2, 1.0}, {4, 0.0, 1, 1.0}, {6, 3.0 * kI, 1, -kI}});
  int zero = -1;
  auto terms = emit_terms(blocks, &zero);
  EXPECT_EQ(zero, 1);
  EXPECT_EQ(Render(terms), "2(X1 P1 + X2 P2) + X1 P2 + 1.5(X4^2 + P4^2)");
}

TEST(EmitTermsTest, GrayArea) {
  // (eta, Lambda) = (1, 2): lambda^2 = 1 and -3.
  auto blocks = expected_blocks({{1, 1.0, 1, 1.0}, {6, Complex(0, std::sqrt(3.0)), 1, -kI}});
  auto terms = emit_terms(blocks);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].kind, TermKind::kSingleModeSqueeze);
  EXPECT_DOUBLE_EQ(terms[0].coefficient, 1.0);
  EXPECT_EQ(terms[1].kind, TermKind::kHarmonicOscillator);
  EXPECT_DOUBLE_EQ(terms[1].coefficient, std::sqrt(3.0) / 2);
  EXPECT_EQ(terms[1].mode_a, 2);
}

TEST(EmitTermsTest, RedLine) {
  for (double sigma : {1.0, -1.0}) {
    const double nu = 0.7;
    auto blocks = expected_blocks({{5, Complex(0, nu), 2, sigma}});
    auto terms = emit_terms(blocks);
    RealMatrix n = terms_to_matrix(terms, 2);
    RealMatrix want = -standard_symplectic_form(2).entries() * assemble_k_normal(blocks, 2);
    EXPECT_LE(MaxNorm(n - want), 1e-15);
    bool free_x = false, free_p = false, bs = false;
    for (const auto& t : terms) {
      if (t.kind == TermKind::kFreeParticleX && t.mode_a == 1) {
        free_x = true;
        EXPECT_DOUBLE_EQ(t.coefficient, sigma / 2);
      }
      if (t.kind == TermKind::kFreeParticleP && t.mode_a == 2) {
        free_p = true;
        EXPECT_DOUBLE_EQ(t.coefficient, sigma / 2);
      }
      if (t.kind == TermKind::kBeamSplitterXXPP) {
        bs = true;
        EXPECT_DOUBLE_EQ(std::abs(t.coefficient), nu);
      }
    }
    EXPECT_TRUE(free_x && free_p && bs);
  }
}

TEST(EmitTermsTest, TermsReproduceBlockHamiltonian) {
  const std::vector<BlockSpec> specs = {
      {1, 1.5, 3, 1.0},         {2, Complex(0.5, 1.2), 2, 1.0}, {3, 0.0, 4, -1.0},
      {3, 0.0, 2, 1.0},         {4, 0.0, 3, 1.0},               {4, 0.0, 1, 1.0},
      {5, Complex(0, 0.8), 2, 1.0}, {5, Complex(0, 0.8), 6, -1.0},
      {6, Complex(0, 2), 3, kI},  {6, Complex(0, 2), 1, -kI}};
  auto blocks = expected_blocks(specs);
  int n = 0;
  for (const auto& b : blocks) n += b.modes();
  int zero = 0;
  auto terms = emit_terms(blocks, &zero);
  EXPECT_EQ(zero, 1);
  RealMatrix k = assemble_k_normal(blocks, n);
  RealMatrix want = -standard_symplectic_form(n).entries() * k;
  EXPECT_LE(MaxNorm(terms_to_matrix(terms, n) - want), 1e-14);
}

TEST(VerdictTest, Classification) {
  std::vector<std::string> reasons;
  std::vector<GrowthAnnotation> growth;
  EXPECT_EQ(classify_verdict(expected_blocks({{6, kI, 1, -kI}}), &reasons, &growth),
            Verdict::kStable);
  EXPECT_EQ(classify_verdict(expected_blocks({{6, kI, 1, -kI}, {4, 0.0, 1, 1.0}}), &reasons,
                             &growth),
            Verdict::kMarginal);
  EXPECT_EQ(classify_verdict(expected_blocks({{6, kI, 3, kI}}), &reasons, &growth),
            Verdict::kUnstable);
  EXPECT_EQ(classify_verdict(expected_blocks({{3, 0.0, 2, 1.0}}), &reasons, &growth),
            Verdict::kUnstable);
  reasons.clear();
  growth.clear();
  EXPECT_EQ(classify_verdict(expected_blocks({{1, 2.0, 1, 1.0}}), &reasons, &growth),
            Verdict::kUnstable);
  EXPECT_FALSE(reasons.empty());
  ASSERT_EQ(growth.size(), 1u);
  EXPECT_EQ(growth[0].kind, "exponential");
  EXPECT_DOUBLE_EQ(growth[0].rate, 2.0);
}

TEST(NormalFormTest, GoldenPipeline) {
  NormalFormReport r = normal_form(HamiltonianMatrix::FromMatrix(GoldenM()));
  EXPECT_EQ(r.verdict, Verdict::kUnstable);
  EXPECT_EQ(r.zero_frequency_modes, 1);
  EXPECT_FALSE(r.fast_path);
  EXPECT_LE(symplectic_residual(r.transform.entries()), 1e-10);
  EXPECT_LE(MaxNorm(r.n_matrix - terms_to_matrix(r.terms, 4)), 1e-8);
  EXPECT_EQ(render_terms(r.terms), "2(X1 P1 + X2 P2) + X1 P2 + 1.5(X4^2 + P4^2)");
  EXPECT_LE(MaxNorm(r.n_matrix - (-standard_symplectic_form(4).entries() * r.k_normal)), 1e-8);
}

TEST(NormalFormTest, ZeroHamiltonianIsMarginal) {
  NormalFormReport r = normal_form(HamiltonianMatrix::FromMatrix(RealMatrix::Zero(6, 6)));
  EXPECT_EQ(r.verdict, Verdict::kMarginal);
  EXPECT_TRUE(r.terms.empty());
  EXPECT_EQ(r.zero_frequency_modes, 3);
}

TEST(NormalFormTest, StableTwoModeUsesFastPath) {
  NormalFormReport r = normal_form(HamiltonianMatrix::FromMatrix(two_mode_hamiltonian(1, 0.5)));
  EXPECT_EQ(r.verdict, Verdict::kStable);
  EXPECT_TRUE(r.fast_path);
  ASSERT_EQ(r.terms.size(), 2u);
  for (const auto& t : r.terms) EXPECT_EQ(t.kind, TermKind::kHarmonicOscillator);
  RealVector want(4);
  want << std::sqrt(1.5), std::sqrt(0.5), std::sqrt(1.5), std::sqrt(0.5);
  RealVector got = r.n_matrix.diagonal();
  std::sort(want.data(), want.data() + 4);
  std::sort(got.data(), got.data() + 4);
  EXPECT_LE(MaxNorm(got - want), 1e-12);
  EXPECT_LE(MaxNorm(RealMatrix(r.n_matrix - RealMatrix(r.n_matrix.diagonal().asDiagonal()))),
            1e-12);
}

TEST(NormalFormTest, FastPathAndGeneralPathAgree) {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 4;
    auto m = HamiltonianMatrix::FromMatrix(testing::RandomPositiveDefinite(rng, 2 * n));
    AnalysisConfig slow;
    slow.allow_fast_path = false;
    NormalFormReport a = normal_form(m), b = normal_form(m, slow);
    EXPECT_TRUE(a.fast_path);
    EXPECT_FALSE(b.fast_path);
    EXPECT_EQ(a.verdict, b.verdict);
    ASSERT_EQ(a.terms.size(), b.terms.size());
    for (size_t i = 0; i < a.terms.size(); ++i) {
      EXPECT_EQ(a.terms[i].kind, b.terms[i].kind);
      EXPECT_NEAR(a.terms[i].coefficient, b.terms[i].coefficient, 1e-8);
    }
  }
}

TEST(NormalFormTest, WrongPathRejected) {
  try {
    bogoliubov_transform(HamiltonianMatrix::FromMatrix(GoldenM()));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kWrongPath);
  }
}

TEST(NormalFormTest, BogoliubovDiagonalM) {
  RealMatrix m = RealMatrix::Zero(4, 4);
  m.diagonal() << 2, 0.5, 8, 2;
  NormalFormReport r = bogoliubov_transform(HamiltonianMatrix::FromMatrix(m));
  EXPECT_LE(symplectic_residual(r.transform.entries()), 1e-14);
  // Frequencies sqrt(2 * 8) = 4 and sqrt(0.5 * 2) = 1.
  RealVector d = r.n_matrix.diagonal();
  EXPECT_NEAR(d(0), d(2), 1e-14);
  EXPECT_NEAR(d(1), d(3), 1e-14);
  std::vector<double> w = {d(0), d(1)};
  std::sort(w.begin(), w.end());
  EXPECT_NEAR(w[0], 1.0, 1e-14);
  EXPECT_NEAR(w[1], 4.0, 1e-14);
}

TEST(NormalFormTest, SyntheticStructuresEndToEnd) {
  Rng rng(42);
  const std::vector<std::vector<BlockSpec>> cases = {
      {{1, 1.3, 2, 1.0}, {6, Complex(0, 0.9), 1, -kI}},
      {{2, Complex(0.4, 1.1), 1, 1.0}},
      {{3, 0.0, 2, -1.0}, {4, 0.0, 1, 1.0}},
      {{5, Complex(0, 1.2), 2, 1.0}, {6, Complex(0, 0.5), 1, kI}},
      {{6, Complex(0, 1.1), 3, -kI}},
      {{4, 0.0, 3, 1.0}},
  };
  AnalysisConfig cfg;
  cfg.tol.cluster = 1e-4;
  for (const auto& specs : cases) {
    auto sys = testing::MakeSynthetic(rng, specs, 0.2);
    HamiltonianMatrix m = HamiltonianMatrix::FromMatrix(
        -standard_symplectic_form(sys.n_modes).entries() * sys.k);
    NormalFormReport r = normal_form(m, cfg);
    int modes = 0;
    for (const auto& b : r.blocks) modes += b.modes();
    EXPECT_EQ(modes, sys.n_modes);
    EXPECT_EQ(r.blocks.size(), specs.size());
    EXPECT_LE(r.residuals.block_match, r.residuals.block_threshold);
    EXPECT_LE(symplectic_residual(r.transform.entries()),
              1e-8 * (1 + std::pow(MaxNorm(r.transform.entries()), 2)));
    EXPECT_LE(MaxNorm(terms_to_matrix(r.terms, sys.n_modes) -
                      (-standard_symplectic_form(sys.n_modes).entries() * r.k_expected)),
              1e-12);
  }
}

}  // namespace
}  // namespace qnf
