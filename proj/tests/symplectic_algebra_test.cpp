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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "qnf/reporting.hpp"
#include "qnf/spectral_analysis.hpp"
#include "qnf/symplectic_algebra.hpp"
#include "test_support.hpp"

namespace qnf {
namespace {

using testing::Rng;
const Complex kI(0, 1);

NilpotentPolynomial P(Complex lambda, std::vector<Complex> c) {
  return NilpotentPolynomial(lambda, std::move(c));
}

double Dist(const NilpotentPolynomial& a, const std::vector<Complex>& b) {
  double d = 0;
  for (size_t i = 0; i < b.size(); ++i) d = std::max(d, std::abs(a[static_cast<int>(i)] - b[i]));
  return d;
}

double Dist(const SymplecticGram& a, const std::vector<Complex>& b) {
  return Dist(a.polynomial(), b);
}

std::vector<Complex> Unit(int d, Complex lead = 1.0) {
  std::vector<Complex> v(d, 0.0);
  v[0] = lead;
  return v;
}

RealMatrix GoldenK() {
  RealMatrix m = parse_matrix(
                     "modes 4\n-21 -11 -17 -45 16 7 -3 22\n-11 2 -6 -15 3 6 -3 9\n"
                     "-17 -6 -3 -29 8 4 0 16\n-45 -15 -29 -60 19 16 0 33\n"
                     "16 3 8 19 -5 -6 0 -11\n7 6 4 16 -6 -1 0 -8\n-3 -3 0 0 0 0 3 0\n"
                     "22 9 16 33 -11 -8 0 -17\n")
                     .entries;
  return build_eom(HamiltonianMatrix::FromMatrix(m)).entries();
}

ComplexVector Vec(std::initializer_list<Complex> v) {
  ComplexVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex c : v) x(i++) = c;
  return x;
}

const ComplexVector kG11 = Vec({-1, 2, 0, 1, 3, -1, 1, 0});
const ComplexVector kGt11 = Vec({3, -6, 0, -2, -12, 8, -3, 0});
const ComplexVector kG01 = Vec({2, 2, -1, 1, 1, 0, 4, 4});
const ComplexVector kG02 = Vec({0, 0, 1, 1, 3, 2, 0, 0});
const ComplexVector kG21 = Vec({1, 1, -kI, 1, 2.0 - kI, 1.0 - kI, 3, 2});

TEST(PolyProductTest, Identity) {
  EXPECT_EQ(Dist(poly_product(P(2, {1, 0}), P(2, {1, 0})), {1, 0}), 0.0);
}

TEST(PolyProductTest, GoldenSquare) {
  EXPECT_EQ(Dist(poly_product(P(2, {-10, 13}), P(2, {-10, 13})), {100, -260}), 0.0);
}

TEST(PolyProductTest, SymbolicRankTwo) {
  const Complex a(1.5, 2), b(-0.5, 1), c(3, -1), d(0.25, 4);
  EXPECT_LE(Dist(poly_product(P(kI, {a, b}), P(kI, {c, d})), {a * c, a * d + b * c}), 1e-15);
}

TEST(PolyProductTest, MismatchRejected) {
  try {
    poly_product(P(2, {1, 0}), P(3, {1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContractViolation);
  }
  EXPECT_THROW(poly_product(P(2, {1, 0}), P(2, {1, 0, 0})), Error);
}

TEST(PolyProductTest, AssociativeAndCommutative) {
  Rng rng(31);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + t % 5;
    auto rnd = [&] {
      std::vector<Complex> c(d);
      for (auto& x : c) x = Complex(u(rng), u(rng));
      return P(0.5, c);
    };
    auto a = rnd(), b = rnd(), c = rnd();
    EXPECT_LE(Dist(poly_product(a, b), poly_product(b, a).coefficients()), 1e-15);
    EXPECT_LE(Dist(poly_product(poly_product(a, b), c),
                   poly_product(a, poly_product(b, c)).coefficients()),
              1e-14);
  }
}

TEST(PolySqrtTest, Examples) {
  EXPECT_EQ(Dist(poly_sqrt(P(1, Unit(4))), Unit(4)), 0.0);
  EXPECT_LE(Dist(poly_sqrt(P(1, {4, 4})), {2, 1}), 1e-15);
}

TEST(PolySqrtTest, GoldenNegativeLeadUsesPrincipalBranch) {
  NilpotentPolynomial s = poly_sqrt(P(2, {-10, 13}));
  EXPECT_LE(std::abs(s[0] - Complex(0, std::sqrt(10.0))), 1e-15);
  EXPECT_LE(Dist(poly_product(s, s), {-10, 13}), 1e-12);
}

TEST(PolySqrtTest, ZeroLeadRejected) {
  try {
    poly_sqrt(P(1, {0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonInvertible);
  }
}

TEST(PolyInverseTest, Examples) {
  EXPECT_LE(Dist(poly_inverse(P(1, {2, 0})), {0.5, 0}), 1e-16);
  EXPECT_LE(Dist(poly_inverse(P(1, {1, 3})), {1, -3}), 1e-16);
  NilpotentPolynomial p = P(2, {-10, 13});
  EXPECT_LE(Dist(poly_product(p, poly_inverse(p)), {1, 0}), 1e-14);
  EXPECT_THROW(poly_inverse(P(1, {0, 3})), Error);
}

TEST(PolyStarTest, SignAlternation) {
  EXPECT_EQ(Dist(poly_star(P(2, {1.5, 2.5, -3})), {1.5, -2.5, -3}), 0.0);
}

TEST(PolyStarTest, ImaginaryConjugates) {
  const Complex a(1, 2), b(3, -4);
  EXPECT_EQ(Dist(poly_star(P(Complex(0, 3), {a, b})), {std::conj(a), -std::conj(b)}), 0.0);
}

TEST(PolyStarTest, ZeroDoesNotConjugate) {
  const Complex a(1, 2), b(3, -4);
  EXPECT_EQ(Dist(poly_star(P(0.0, {a, b})), {a, -b}), 0.0);
  EXPECT_FALSE(is_imaginary(0.0));
  EXPECT_TRUE(is_imaginary(Complex(0, -2)));
  EXPECT_FALSE(is_imaginary(Complex(1, 2)));
}

TEST(PolyStarTest, Involution) {
  NilpotentPolynomial p = P(0.7, {1.0, -2.0, 0.5, 3.0});
  EXPECT_EQ(Dist(poly_star(poly_star(p)), p.coefficients()), 0.0);
}

TEST(ApplyPolyTest, IdentityAndShift) {
  const RealMatrix k = GoldenK();
  EXPECT_EQ(apply_poly(P(2, Unit(2)), k, kG11), kG11);
  ComplexVector shifted = apply_poly(P(2, {0, 1}), k, kG11);
  EXPECT_LE((shifted - (k.cast<Complex>() * kG11 - 2.0 * kG11)).norm(), 1e-13);
}

TEST(ApplyPolyTest, GoldenOmegaPolynomial) {
  const RealMatrix k = GoldenK();
  ComplexVector got = apply_poly(P(2, {-10, 13}), k, kG11);
  ComplexVector want = -10.0 * kG11 + 13.0 * (k.cast<Complex>() * kG11 - 2.0 * kG11);
  EXPECT_LE((got - want).norm(), 1e-12);
}

TEST(OmegaTest, GoldenValues) {
  const RealMatrix k = GoldenK();
  EXPECT_LE(Dist(omega(k, 2.0, kG11, 2, kGt11), {-10, 13}), 1e-12);
  EXPECT_LE(std::abs(omega(k, 0.0, kG01, 1, kG02).alpha() - 2.0), 1e-12);
  EXPECT_LE(std::abs(omega(k, 0.0, kG01, 1, kG01).alpha()), 1e-12);
  EXPECT_LE(std::abs(omega(k, 0.0, kG02, 1, kG02).alpha()), 1e-12);
  EXPECT_LE(std::abs(omega(k, 3.0 * kI, kG21, 1, kG21.conjugate()).alpha() + 2.0 * kI), 1e-12);
}

TEST(SymplecticProductTest, StandardPair) {
  ComplexVector x = Vec({1, 0}), p = Vec({0, 1});
  EXPECT_EQ(symplectic_product(x, p), Complex(1));
  EXPECT_EQ(symplectic_product(p, x), Complex(-1));
}

// Gram checks written directly against omega.
Complex Alpha(const RealMatrix& k, Complex lambda, const ComplexVector& x, int d,
              const ComplexVector& y) {
  return omega(k, lambda, x, d, y).alpha();
}

TEST(OrthonormalizeRealComplexTest, GoldenPair) {
  const RealMatrix k = GoldenK();
  OrthonormalizedSet set =
      orthonormalize_real_complex(k, 2.0, {{kG11, 2}}, {{kGt11, 2}});
  ASSERT_EQ(set.chains.size(), 1u);
  const auto& c = set.chains[0];
  EXPECT_EQ(c.rank, 2);
  EXPECT_LE(Dist(omega(k, 2.0, c.e, 2, c.partner), {1, 0}), 1e-10);
  // The output spans the same chain: e is a rank-2 gGEV of 2.
  ComplexVector r = c.e;
  for (int i = 0; i < 2; ++i) r = k.cast<Complex>() * r - 2.0 * r;
  EXPECT_LE(r.norm(), 1e-10);
  EXPECT_LE(orthonormality_residual(k, set), 1e-10);
}

TEST(OrthonormalizeRealComplexTest, ScalarCase) {
  // One mode, M = diag(-1, 1): K has the real pair +-1.
  RealMatrix m = RealMatrix::Zero(2, 2);
  m(0, 0) = -1;
  m(1, 1) = 1;
  const RealMatrix k = build_eom(HamiltonianMatrix::FromMatrix(m)).entries();
  ComplexVector g = Vec({1, 1}), gt = Vec({3, -3});
  EXPECT_LE((k.cast<Complex>() * g - g).norm(), 1e-15);
  EXPECT_LE((k.cast<Complex>() * gt + gt).norm(), 1e-15);
  const Complex c = Alpha(k, 1.0, g, 1, gt);
  OrthonormalizedSet set = orthonormalize_real_complex(k, 1.0, {{g, 1}}, {{gt, 1}});
  ASSERT_EQ(set.chains.size(), 1u);
  EXPECT_LE(std::abs(Alpha(k, 1.0, set.chains[0].e, 1, set.chains[0].partner) - 1.0), 1e-14);
  // e ~ g and e~ ~ g~, with product of scales 1/c.
  const auto& e = set.chains[0].e;
  const auto& et = set.chains[0].partner;
  EXPECT_LE(std::abs((e(0) / g(0)) * (et(0) / gt(0)) - 1.0 / c), 1e-14);
}

TEST(OrthonormalizeRealComplexTest, RandomSyntheticSets) {
  Rng rng(32);
  for (int t = 0; t < 30; ++t) {
    const int d = 1 + t % 3;
    const bool quad = t % 2 == 1;
    const Complex lambda = quad ? Complex(0.6, 1.1) : Complex(1.3, 0);
    std::vector<BlockSpec> specs = {{quad ? 2 : 1, lambda, d, 1.0},
                                    {quad ? 2 : 1, lambda, d, 1.0}};
    auto sys = testing::MakeSynthetic(rng, specs, 0.2);
    std::vector<GeneratorVector> g, gt;
    for (int i = 0; i < 2; ++i) {
      g.push_back({sys.s.cast<Complex>() * testing::RandomKernelVector(rng, sys.k_normal, lambda, d), d});
      gt.push_back({sys.s.cast<Complex>() * testing::RandomKernelVector(rng, sys.k_normal, -lambda, d), d});
    }
    OrthonormalizedSet set = orthonormalize_real_complex(sys.k, lambda, g, gt);
    ASSERT_EQ(set.chains.size(), 2u);
    for (size_t a = 0; a < 2; ++a)
      for (size_t b = 0; b < 2; ++b)
        EXPECT_LE(Dist(omega(sys.k, lambda, set.chains[a].e, d, set.chains[b].partner),
                       Unit(d, a == b ? 1.0 : 0.0)),
                  1e-9 * std::pow(1 + MaxNorm(sys.k), d));
  }
}

TEST(OrthonormalizeZeroTest, BoundaryPointSigmaPositive) {
  const RealMatrix k =
      build_eom(HamiltonianMatrix::FromMatrix(two_mode_hamiltonian(1, 1))).entries();
  EquationOfMotionMatrix km = EquationOfMotionMatrix::FromMatrix(k);
  SpectrumReport s = analyze_spectrum(km);
  for (const auto& c : s.classes) {
    if (c.kind != EigenKind::kZero) continue;
    ClassChains cc = jordan_chains(km, c);
    ZeroSplit split = orthonormalize_zero(k, {{cc.chains[0].generator, cc.chains[0].rank}});
    ASSERT_EQ(split.even.chains.size(), 1u);
    EXPECT_TRUE(split.odd.empty());
    EXPECT_EQ(split.even.chains[0].sigma, Complex(1));
    const auto& e = split.even.chains[0].e;
    EXPECT_LE(Dist(omega(k, 0.0, e, 2, e), {1, 0}), 1e-10);
  }
}

TEST(OrthonormalizeZeroTest, NegativeSelfProduct) {
  Rng rng(33);
  auto sys = testing::MakeSynthetic(rng, {{3, 0.0, 2, -1.0}}, 0.2);
  ComplexVector g = sys.s.cast<Complex>() * testing::RandomKernelVector(rng, sys.k_normal, 0.0, 2);
  // Real generator, as the chain extraction produces for the zero class.
  g = g.real().cast<Complex>();
  ASSERT_LT(Alpha(sys.k, 0.0, g, 2, g).real(), 0);
  ZeroSplit split = orthonormalize_zero(sys.k, {{g, 2}});
  ASSERT_EQ(split.even.chains.size(), 1u);
  EXPECT_EQ(split.even.chains[0].sigma, Complex(-1));
  const auto& e = split.even.chains[0].e;
  EXPECT_LE(Dist(omega(sys.k, 0.0, e, 2, e), {-1, 0}), 1e-10);
  // e = Phi^-1 g with Phi^2 = -Omega(g, g).
  NilpotentPolynomial phi = poly_sqrt(omega(sys.k, 0.0, g, 2, g).polynomial().scaled(-1.0));
  ComplexVector want = apply_poly(poly_inverse(phi), sys.k, g);
  Complex ratio = want.dot(e) / want.squaredNorm();
  EXPECT_LE((e - ratio * want).norm(), 1e-9 * e.norm());
}

TEST(OrthonormalizeZeroTest, SuperpositionFixForVanishingSelfProducts) {
  Rng rng(34);
  auto sys = testing::MakeSynthetic(rng, {{3, 0.0, 2, 1.0}, {3, 0.0, 2, -1.0}}, 0.2);
  auto gen = [&] {
    return ComplexVector(
        (sys.s.cast<Complex>() * testing::RandomKernelVector(rng, sys.k_normal, 0.0, 2))
            .real()
            .cast<Complex>());
  };
  ComplexVector g1 = gen(), g2 = gen();
  // alpha(x, x) = a11 + 2 t a12 + t^2 a22 for x = g1 + t g2; pick the two roots.
  const double a11 = Alpha(sys.k, 0.0, g1, 2, g1).real();
  const double a12 = Alpha(sys.k, 0.0, g1, 2, g2).real();
  const double a22 = Alpha(sys.k, 0.0, g2, 2, g2).real();
  const double disc = a12 * a12 - a11 * a22;
  ASSERT_GT(disc, 0);
  const double t1 = (-a12 + std::sqrt(disc)) / a22, t2 = (-a12 - std::sqrt(disc)) / a22;
  ComplexVector x = g1 + t1 * g2, y = g1 + t2 * g2;
  ASSERT_LE(std::abs(Alpha(sys.k, 0.0, x, 2, x)), 1e-9 * x.squaredNorm());
  ASSERT_LE(std::abs(Alpha(sys.k, 0.0, y, 2, y)), 1e-9 * y.squaredNorm());
  ZeroSplit split = orthonormalize_zero(sys.k, {{x, 2}, {y, 2}});
  ASSERT_EQ(split.even.chains.size(), 2u);
  std::multiset<double> sigmas;
  for (const auto& c : split.even.chains) sigmas.insert(c.sigma.real());
  EXPECT_EQ(sigmas, (std::multiset<double>{-1.0, 1.0}));
  EXPECT_LE(orthonormality_residual(sys.k, split.even), 1e-9 * std::pow(1 + MaxNorm(sys.k), 2));
  for (size_t a = 0; a < 2; ++a)
    for (size_t b = 0; b < 2; ++b)
      EXPECT_LE(Dist(omega(sys.k, 0.0, split.even.chains[a].e, 2, split.even.chains[b].e),
                     Unit(2, a == b ? split.even.chains[a].sigma : 0.0)),
                1e-8);
}

TEST(ZeroOddPairingTest, GoldenPair) {
  const RealMatrix k = GoldenK();
  ZeroSplit split = orthonormalize_zero(k, {{kG01, 1}, {kG02, 1}});
  EXPECT_TRUE(split.even.chains.empty());
  ASSERT_EQ(split.odd.size(), 2u);
  EXPECT_EQ(split.odd[0].v, kG01);
  EXPECT_EQ(split.odd[1].v, kG02);
  OrthonormalizedSet set = zero_odd_pairing(k, split.odd);
  ASSERT_EQ(set.chains.size(), 1u);
  const auto& f = set.chains[0].e;
  const auto& h = set.chains[0].partner;
  EXPECT_LE((f - kG01).norm(), 1e-14);
  EXPECT_LE((h - kG02 / 2.0).norm(), 1e-14);
  EXPECT_LE(std::abs(Alpha(k, 0.0, f, 1, h) - 1.0), 1e-14);
  EXPECT_LE(std::abs(Alpha(k, 0.0, f, 1, f)), 1e-14);
  EXPECT_LE(std::abs(Alpha(k, 0.0, h, 1, h)), 1e-14);
}

TEST(ZeroOddPairingTest, RankThreePsiCorrection) {
  Rng rng(35);
  for (int t = 0; t < 10; ++t) {
    auto sys = testing::MakeSynthetic(rng, {{4, 0.0, 3, 1.0}}, 0.2);
    auto gen = [&] {
      return ComplexVector(
          (sys.s.cast<Complex>() * testing::RandomKernelVector(rng, sys.k_normal, 0.0, 3))
              .real()
              .cast<Complex>());
    };
    ZeroSplit split = orthonormalize_zero(sys.k, {{gen(), 3}, {gen(), 3}});
    ASSERT_EQ(split.odd.size(), 2u);
    OrthonormalizedSet set = zero_odd_pairing(sys.k, split.odd);
    ASSERT_EQ(set.chains.size(), 1u);
    const auto& f = set.chains[0].e;
    const auto& h = set.chains[0].partner;
    const double tol = 1e-9 * std::pow(1 + MaxNorm(sys.k), 3);
    EXPECT_LE(Dist(omega(sys.k, 0.0, f, 3, h), Unit(3)), tol);
    EXPECT_LE(Dist(omega(sys.k, 0.0, f, 3, f), Unit(3, 0.0)), tol);
    EXPECT_LE(Dist(omega(sys.k, 0.0, h, 3, h), Unit(3, 0.0)), tol);
  }
}

TEST(ZeroOddPairingTest, DegenerateRejected) {
  // Two copies of the same eigenvector cannot pair.
  const RealMatrix k = GoldenK();
  try {
    zero_odd_pairing(k, {{kG01, 1}, {2.0 * kG01, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNondegeneracy);
  }
}

TEST(OrthonormalizeImaginaryTest, GoldenChain) {
  const RealMatrix k = GoldenK();
  OrthonormalizedSet set = orthonormalize_imaginary(k, 3.0 * kI, {{kG21, 1}});
  ASSERT_EQ(set.chains.size(), 1u);
  EXPECT_EQ(set.chains[0].sigma, -kI);
  EXPECT_LE((set.chains[0].e - kG21 / std::sqrt(2.0)).norm(), 1e-14);
  EXPECT_LE(std::abs(Alpha(k, 3.0 * kI, set.chains[0].e, 1, set.chains[0].e.conjugate()) + kI),
            1e-14);
}

OrthonormalizedSet TwoModeImaginary(double eta, double lam, bool fast) {
  const RealMatrix k =
      build_eom(HamiltonianMatrix::FromMatrix(two_mode_hamiltonian(eta, lam))).entries();
  EquationOfMotionMatrix km = EquationOfMotionMatrix::FromMatrix(k);
  SpectrumReport s = analyze_spectrum(km);
  OrthonormalizedSet all;
  for (const auto& c : s.classes) {
    ClassChains cc = jordan_chains(km, c);
    std::vector<GeneratorVector> g;
    for (const auto& ch : cc.chains) g.push_back({ch.generator, ch.rank});
    OrthonormalizedSet set = fast ? bogoliubov_orthonormalize(k, c.representative, g)
                                  : orthonormalize_imaginary(k, c.representative, g);
    for (auto& ch : set.chains) all.chains.push_back(ch);
  }
  return all;
}

TEST(OrthonormalizeImaginaryTest, StableRegionSigmas) {
  for (bool fast : {false, true}) {
    OrthonormalizedSet set = TwoModeImaginary(1, 0.5, fast);
    ASSERT_EQ(set.chains.size(), 2u);
    for (const auto& c : set.chains) EXPECT_EQ(c.sigma, -kI);
  }
}

TEST(OrthonormalizeImaginaryTest, SpecialPointSigmas) {
  for (bool fast : {false, true}) {
    OrthonormalizedSet set = TwoModeImaginary(-1, 0, fast);
    ASSERT_EQ(set.chains.size(), 2u);
    std::multiset<double> s;
    for (const auto& c : set.chains) s.insert(c.sigma.imag());
    EXPECT_EQ(s, (std::multiset<double>{-1.0, 1.0}));
  }
}

TEST(OrthonormalizeImaginaryTest, SuperpositionFixForVanishingSelfProducts) {
  // M = diag(1, -1, 1, -1): modes of opposite sign at +-i.
  RealMatrix m = RealMatrix::Zero(4, 4);
  m.diagonal() << 1, -1, 1, -1;
  const RealMatrix k = build_eom(HamiltonianMatrix::FromMatrix(m)).entries();
  ComplexVector u1 = Vec({1, 0, kI, 0}), u2 = Vec({0, 1, 0, -kI});
  ComplexVector g1 = u1 + u2, g2 = u1 - u2;
  ASSERT_EQ(Alpha(k, kI, g1, 1, g1.conjugate()), Complex(0));
  ASSERT_EQ(Alpha(k, kI, g2, 1, g2.conjugate()), Complex(0));
  for (bool fast : {false, true}) {
    OrthonormalizedSet set = fast ? bogoliubov_orthonormalize(k, kI, {{g1, 1}, {g2, 1}})
                                  : orthonormalize_imaginary(k, kI, {{g1, 1}, {g2, 1}});
    ASSERT_EQ(set.chains.size(), 2u);
    std::multiset<double> s;
    for (const auto& c : set.chains) s.insert(c.sigma.imag());
    EXPECT_EQ(s, (std::multiset<double>{-1.0, 1.0}));
    for (size_t a = 0; a < 2; ++a)
      for (size_t b = 0; b < 2; ++b)
        EXPECT_LE(std::abs(Alpha(k, kI, set.chains[a].e, 1, set.chains[b].e.conjugate()) -
                           (a == b ? set.chains[a].sigma : 0.0)),
                  1e-12);
  }
}

TEST(OrthonormalizeImaginaryTest, EvenRankSynthetic) {
  Rng rng(36);
  for (double sigma : {1.0, -1.0}) {
    const Complex lambda(0, 1.2);
    auto sys = testing::MakeSynthetic(rng, {{5, lambda, 2, sigma}}, 0.2);
    ComplexVector g = sys.s.cast<Complex>() * testing::RandomKernelVector(rng, sys.k_normal, lambda, 2);
    OrthonormalizedSet set = orthonormalize_imaginary(sys.k, lambda, {{g, 2}});
    ASSERT_EQ(set.chains.size(), 1u);
    EXPECT_EQ(set.chains[0].sigma, Complex(sigma));
    const auto& e = set.chains[0].e;
    EXPECT_LE(Dist(omega(sys.k, lambda, e, 2, e.conjugate()), Unit(2, sigma)), 1e-9);
  }
}

TEST(BogoliubovOrthonormalizeTest, SingleOscillator) {
  const RealMatrix k = standard_symplectic_form(1).entries();
  OrthonormalizedSet set = bogoliubov_orthonormalize(k, kI, {{Vec({1.0, kI}) / 3.0, 1}});
  ASSERT_EQ(set.chains.size(), 1u);
  EXPECT_EQ(set.chains[0].sigma, -kI);
  const auto& e = set.chains[0].e;
  EXPECT_LE(std::abs(Alpha(k, kI, e, 1, e.conjugate()) + kI), 1e-15);
}

TEST(BogoliubovOrthonormalizeTest, RandomPositiveDefinite) {
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    RealMatrix m = testing::RandomPositiveDefinite(rng, 4);
    const RealMatrix k = build_eom(HamiltonianMatrix::FromMatrix(m)).entries();
    EquationOfMotionMatrix km = EquationOfMotionMatrix::FromMatrix(k);
    SpectrumReport s = analyze_spectrum(km);
    std::vector<std::pair<Complex, OrthonormalChain>> all;
    for (const auto& c : s.classes) {
      ClassChains cc = jordan_chains(km, c);
      std::vector<GeneratorVector> g;
      for (const auto& ch : cc.chains) g.push_back({ch.generator, ch.rank});
      for (auto& ch : bogoliubov_orthonormalize(k, c.representative, g).chains)
        all.push_back({c.representative, ch});
    }
    ASSERT_EQ(all.size(), 2u);
    for (size_t a = 0; a < 2; ++a)
      for (size_t b = 0; b < 2; ++b)
        EXPECT_LE(std::abs(Alpha(k, all[a].first, all[a].second.e, 1,
                                 all[b].second.e.conjugate()) -
                           (a == b ? all[a].second.sigma : 0.0)),
                  1e-10);
  }
}

}  // namespace
}  // namespace qnf
