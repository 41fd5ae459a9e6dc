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

#include "qnf/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace qnf {

namespace {

int Find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Index of an unused cluster with value within tol of target and the given
// multiplicity, or -1.
int FindMirror(const std::vector<EigenCluster>& c, const std::vector<char>& used,
               Complex target, int multiplicity, double tol) {
  int best = -1;
  double best_d = tol;
  for (size_t j = 0; j < c.size(); ++j) {
    if (used[j] || c[j].multiplicity != multiplicity) continue;
    double d = std::abs(c[j].value - target);
    if (d <= best_d) {
      best = static_cast<int>(j);
      best_d = d;
    }
  }
  return best;
}

std::string FormatComplex(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

int KindOrder(EigenKind k) {
  switch (k) {
    case EigenKind::kRealPair: return 0;
    case EigenKind::kComplexQuadruplet: return 1;
    case EigenKind::kZero: return 2;
    case EigenKind::kImaginaryPair: return 3;
  }
  return 4;
}

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct Generator {
  Vec<Scalar> y;
  int rank;
};

// Chains of the nilpotent (up to round-off) a x a matrix b, top-down through
// the filtration null(b) c null(b^2) c ... . Returned in descending rank.
template <typename Scalar>
std::vector<Generator<Scalar>> NilpotentChains(const Mat<Scalar>& b,
                                               double scale, double rank_tol,
                                               std::vector<std::string>* warnings) {
  const Eigen::Index a = b.rows();
  std::vector<Mat<Scalar>> null_basis{Mat<Scalar>(a, 0)};
  std::vector<Eigen::Index> dims{0};
  Mat<Scalar> p = Mat<Scalar>::Identity(a, a);
  bool borderline = false;
  for (Eigen::Index k = 1; k <= a; ++k) {
    p = p * b;
    const double thr = rank_tol * std::pow(scale, static_cast<double>(k));
    Eigen::JacobiSVD<Mat<Scalar>> svd(p, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index nullity = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) <= thr) ++nullity;
      if (sv(i) > thr / 10 && sv(i) < thr * 10) borderline = true;
    }
    dims.push_back(nullity);
    null_basis.push_back(svd.matrixV().rightCols(nullity));
    if (nullity == a) break;
  }
  if (borderline && warnings) {
    warnings->push_back("borderline rank decision in null-space filtration");
  }
  const Eigen::Index kmax = static_cast<Eigen::Index>(dims.size()) - 1;
  if (dims.back() != a) {
    std::ostringstream os;
    os << "restricted operator is not nilpotent: filtration stops at dimension "
       << dims.back() << " of " << a;
    throw Error(ErrorCode::kChainExtraction, "jordan_chains", os.str());
  }
  for (Eigen::Index k = 1; k <= kmax; ++k) {
    Eigen::Index inc = dims[k] - dims[k - 1];
    Eigen::Index next = k < kmax ? dims[k + 1] - dims[k] : 0;
    if (inc <= 0 || next > inc) {
      std::ostringstream os;
      os << "inconsistent filtration dimensions:";
      for (auto d : dims) os << " " << d;
      throw Error(ErrorCode::kChainExtraction, "jordan_chains", os.str());
    }
  }

  std::vector<Generator<Scalar>> chosen;
  for (Eigen::Index k = kmax; k >= 1; --k) {
    const Eigen::Index need =
        dims[k] - dims[k - 1] - static_cast<Eigen::Index>(chosen.size());
    if (need < 0) {
      throw Error(ErrorCode::kChainExtraction, "jordan_chains",
                  "more chains than filtration level admits");
    }
    if (need == 0) continue;
    // Space to avoid: the lower level plus images of longer chains.
    const Eigen::Index lower = dims[k - 1] + static_cast<Eigen::Index>(chosen.size());
    Mat<Scalar> s(a, lower);
    s.leftCols(dims[k - 1]) = null_basis[k - 1];
    for (size_t c = 0; c < chosen.size(); ++c) {
      Vec<Scalar> v = chosen[c].y;
      for (int r = 0; r < chosen[c].rank - k; ++r) v = b * v;
      s.col(dims[k - 1] + static_cast<Eigen::Index>(c)) = v;
    }
    Mat<Scalar> residual = null_basis[k];
    if (lower > 0) {
      Eigen::JacobiSVD<Mat<Scalar>> svd(s, Eigen::ComputeThinU);
      Mat<Scalar> qs = svd.matrixU().leftCols(lower);
      residual -= qs * (qs.adjoint() * residual);
    }
    Eigen::ColPivHouseholderQR<Mat<Scalar>> qr(residual);
    const double pivot = std::abs(qr.matrixQR()(need - 1, need - 1));
    if (pivot <= 1e-8) {
      std::ostringstream os;
      os << "no complement of dimension " << need << " at level " << k
         << " (pivot " << pivot << ")";
      throw Error(ErrorCode::kChainExtraction, "jordan_chains", os.str());
    }
    Mat<Scalar> q = qr.householderQ() * Mat<Scalar>::Identity(a, need);
    for (Eigen::Index j = 0; j < need; ++j) {
      chosen.push_back({q.col(j), static_cast<int>(k)});
    }
  }
  return chosen;
}

// Unit norm; largest component made real positive (first index on ties).
void NormalizeGenerator(ComplexVector* g) {
  *g /= g->norm();
  double top = g->cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < g->size(); ++i) {
    double m = std::abs((*g)(i));
    if (m >= top * (1 - 1e-9)) {
      *g *= std::conj((*g)(i)) / m;
      (*g)(i) = m;
      return;
    }
  }
}

JordanChain MakeChain(const RealMatrix& k, Complex lambda, ComplexVector g,
                      int rank) {
  JordanChain c;
  c.eigenvalue = lambda;
  c.rank = rank;
  c.generator = std::move(g);
  c.chain_vectors.assign(rank, ComplexVector());
  ComplexVector v = c.generator;
  for (int r = rank - 1; r >= 0; --r) {
    c.chain_vectors[r] = v;
    if (r > 0) v = k * v - lambda * v;
  }
  return c;
}

}  // namespace

const char* EigenKindName(EigenKind kind) {
  switch (kind) {
    case EigenKind::kRealPair: return "RealPair";
    case EigenKind::kComplexQuadruplet: return "ComplexQuadruplet";
    case EigenKind::kZero: return "Zero";
    case EigenKind::kImaginaryPair: return "ImaginaryPair";
  }
  return "Unknown";
}

double cluster_threshold(const RealMatrix& k, double tol) {
  return tol * (1.0 + MaxNorm(k));
}

std::vector<EigenCluster> cluster_eigenvalues(const EquationOfMotionMatrix& k,
                                              double tol) {
  const RealMatrix& km = k.entries();
  const double eps = cluster_threshold(km, tol);
  Eigen::ComplexSchur<ComplexMatrix> schur(km.cast<Complex>(), false);
  ComplexVector ev = schur.matrixT().diagonal();
  const int n = static_cast<int>(ev.size());

  auto snap = [eps](Complex z) {
    double re = std::abs(z.real()) <= eps ? 0.0 : z.real();
    double im = std::abs(z.imag()) <= eps ? 0.0 : z.imag();
    return Complex(re, im);
  };
  for (int i = 0; i < n; ++i) ev(i) = snap(ev(i));

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(ev(i) - ev(j)) <= eps) parent[Find(parent, i)] = Find(parent, j);
    }
  }
  std::vector<int> root_index(n, -1);
  std::vector<std::vector<int>> members;
  for (int i = 0; i < n; ++i) {
    int r = Find(parent, i);
    if (root_index[r] < 0) {
      root_index[r] = static_cast<int>(members.size());
      members.emplace_back();
    }
    members[root_index[r]].push_back(i);
  }

  std::vector<EigenCluster> clusters;
  for (const auto& m : members) {
    EigenCluster c;
    Complex sum = 0;
    for (int i : m) sum += ev(i);
    c.value = snap(sum / static_cast<double>(m.size()));
    c.multiplicity = static_cast<int>(m.size());
    for (int i : m)
      for (int j : m) c.diameter = std::max(c.diameter, std::abs(ev(i) - ev(j)));
    if (c.diameter > 10 * eps) {
      std::ostringstream os;
      os << "cluster near " << FormatComplex(c.value) << " of size "
         << c.multiplicity << " has diameter " << c.diameter
         << " above 10x threshold " << eps;
      throw Error(ErrorCode::kAmbiguousSpectrum, "cluster_eigenvalues", os.str());
    }
    clusters.push_back(c);
  }

  // Symmetrize mirror clusters so the pairing rules hold exactly.
  std::vector<char> used(clusters.size(), 0);
  const double match = 10 * eps;
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (used[i]) continue;
    Complex z = clusters[i].value;
    int m = clusters[i].multiplicity;
    if (z == Complex(0.0)) {
      used[i] = 1;
      continue;
    }
    used[i] = 1;
    if (z.imag() == 0.0) {
      int j = FindMirror(clusters, used, -z, m, match);
      if (j < 0) {
        used[i] = 0;
        continue;
      }
      used[j] = 1;
      double r = 0.5 * (z.real() - clusters[j].value.real());
      clusters[i].value = r;
      clusters[j].value = -r;
    } else if (z.real() == 0.0) {
      int j = FindMirror(clusters, used, std::conj(z), m, match);
      if (j < 0) {
        used[i] = 0;
        continue;
      }
      used[j] = 1;
      double v = 0.5 * (z.imag() - clusters[j].value.imag());
      clusters[i].value = Complex(0.0, v);
      clusters[j].value = Complex(0.0, -v);
    } else {
      int j1 = FindMirror(clusters, used, -z, m, match);
      if (j1 >= 0) used[j1] = 1;
      int j2 = FindMirror(clusters, used, std::conj(z), m, match);
      if (j2 >= 0) used[j2] = 1;
      int j3 = FindMirror(clusters, used, -std::conj(z), m, match);
      if (j1 < 0 || j2 < 0 || j3 < 0) {
        used[i] = 0;
        if (j1 >= 0) used[j1] = 0;
        if (j2 >= 0) used[j2] = 0;
        continue;
      }
      used[j3] = 1;
      int idx[4] = {static_cast<int>(i), j1, j2, j3};
      double mu = 0, nu = 0;
      for (int q : idx) {
        mu += std::abs(clusters[q].value.real()) / 4;
        nu += std::abs(clusters[q].value.imag()) / 4;
      }
      for (int q : idx) {
        const Complex& v = clusters[q].value;
        clusters[q].value = Complex(std::copysign(mu, v.real()),
                                    std::copysign(nu, v.imag()));
      }
    }
  }

  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const EigenCluster& x, const EigenCluster& y) {
                     if (x.value.real() != y.value.real())
                       return x.value.real() > y.value.real();
                     return x.value.imag() > y.value.imag();
                   });
  return clusters;
}

SpectrumReport classify_spectrum(const std::vector<EigenCluster>& clusters,
                                 int n_modes) {
  SpectrumReport report;
  report.n_modes = n_modes;
  std::vector<char> used(clusters.size(), 0);
  auto find_exact = [&](Complex target, int mult) {
    for (size_t j = 0; j < clusters.size(); ++j) {
      if (used[j] || clusters[j].multiplicity != mult) continue;
      if (std::abs(clusters[j].value - target) <= 1e-12 * (1 + std::abs(target)))
        return static_cast<int>(j);
    }
    return -1;
  };
  auto unpaired = [](Complex z) {
    throw Error(ErrorCode::kSpectrumStructure, "classify_spectrum",
                "eigenvalue " + FormatComplex(z) + " has no mirror partner");
  };

  int total = 0;
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    const Complex z = clusters[i].value;
    const int m = clusters[i].multiplicity;
    EigenvalueClass c;
    c.algebraic_multiplicity = m;
    if (z == Complex(0.0)) {
      if (m % 2 != 0) {
        throw Error(ErrorCode::kSpectrumStructure, "classify_spectrum",
                    "zero eigenvalue has odd algebraic multiplicity");
      }
      c.kind = EigenKind::kZero;
      c.representative = 0.0;
      total += m;
    } else if (z.imag() == 0.0) {
      int j = find_exact(-z, m);
      if (j < 0) unpaired(z);
      used[j] = 1;
      c.kind = EigenKind::kRealPair;
      c.representative = std::abs(z.real());
      total += 2 * m;
    } else if (z.real() == 0.0) {
      int j = find_exact(std::conj(z), m);
      if (j < 0) unpaired(z);
      used[j] = 1;
      c.kind = EigenKind::kImaginaryPair;
      c.representative = Complex(0.0, std::abs(z.imag()));
      total += 2 * m;
    } else {
      int j1 = find_exact(-z, m);
      if (j1 < 0) unpaired(z);
      used[j1] = 1;
      int j2 = find_exact(std::conj(z), m);
      if (j2 < 0) unpaired(z);
      used[j2] = 1;
      int j3 = find_exact(-std::conj(z), m);
      if (j3 < 0) unpaired(z);
      used[j3] = 1;
      c.kind = EigenKind::kComplexQuadruplet;
      c.representative = Complex(std::abs(z.real()), std::abs(z.imag()));
      total += 4 * m;
    }
    report.classes.push_back(c);
  }
  std::stable_sort(report.classes.begin(), report.classes.end(),
                   [](const EigenvalueClass& x, const EigenvalueClass& y) {
                     if (x.kind != y.kind) return KindOrder(x.kind) < KindOrder(y.kind);
                     double ax = std::abs(x.representative);
                     double ay = std::abs(y.representative);
                     if (ax != ay) return ax > ay;
                     return x.representative.imag() > y.representative.imag();
                   });
  report.sum_rule_residual = 2 * n_modes - total;
  if (report.sum_rule_residual != 0) {
    throw Error(ErrorCode::kSpectrumStructure, "classify_spectrum",
                "multiplicities violate the sum rule");
  }
  return report;
}

int geometric_multiplicity(const RealMatrix& k, Complex lambda, double tol,
                           bool* borderline) {
  const double thr = tol * (1.0 + MaxNorm(k));
  ComplexMatrix shifted = k.cast<Complex>();
  shifted.diagonal().array() -= lambda;
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
  const auto& sv = svd.singularValues();
  int nullity = 0;
  bool border = false;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= thr) ++nullity;
    if (sv(i) > thr / 10 && sv(i) < thr * 10) border = true;
  }
  if (borderline) *borderline = border;
  return nullity;
}

SpectrumReport analyze_spectrum(const EquationOfMotionMatrix& k,
                                const Tolerances& tol) {
  SpectrumReport report =
      classify_spectrum(cluster_eigenvalues(k, tol.cluster), k.n_modes());
  for (auto& c : report.classes) {
    bool borderline = false;
    c.geometric_multiplicity =
        geometric_multiplicity(k.entries(), c.representative, tol.rank, &borderline);
    if (borderline) {
      report.warnings.push_back("borderline rank decision for eigenvalue " +
                                FormatComplex(c.representative));
    }
    if (c.geometric_multiplicity < 1 ||
        c.geometric_multiplicity > c.algebraic_multiplicity) {
      std::ostringstream os;
      os << "geometric multiplicity " << c.geometric_multiplicity
         << " inconsistent with algebraic multiplicity "
         << c.algebraic_multiplicity << " at " << FormatComplex(c.representative);
      throw Error(ErrorCode::kChainExtraction, "geometric_multiplicity", os.str());
    }
  }
  return report;
}

std::vector<JordanChain> chains_for_eigenvalue(const RealMatrix& k,
                                               Complex lambda, int a,
                                               const Tolerances& tol,
                                               std::vector<std::string>* warnings) {
  const Eigen::Index dim = k.rows();
  const double scale = 1.0 + MaxNorm(k);
  ComplexMatrix v = invariant_subspace(k, lambda, a);
  std::vector<JordanChain> out;
  if (lambda.imag() == 0.0) {
    // The subspace is closed under conjugation; use a real basis.
    RealMatrix stacked(dim, 2 * a);
    stacked << v.real(), v.imag();
    Eigen::JacobiSVD<RealMatrix> svd(stacked, Eigen::ComputeThinU);
    RealMatrix basis = svd.matrixU().leftCols(a);
    RealMatrix b = basis.transpose() * k * basis;
    b.diagonal().array() -= lambda.real();
    for (const auto& gen : NilpotentChains<double>(b, scale, tol.rank, warnings)) {
      RealVector g = basis * gen.y;
      g /= g.norm();
      Eigen::Index top;
      g.cwiseAbs().maxCoeff(&top);
      if (g(top) < 0) g = -g;
      out.push_back(MakeChain(k, lambda, g.cast<Complex>(), gen.rank));
    }
  } else {
    ComplexMatrix b = v.adjoint() * k * v;
    b.diagonal().array() -= lambda;
    for (const auto& gen : NilpotentChains<Complex>(b, scale, tol.rank, warnings)) {
      ComplexVector g = v * gen.y;
      NormalizeGenerator(&g);
      out.push_back(MakeChain(k, lambda, g, gen.rank));
    }
  }
  return out;
}

ClassChains jordan_chains(const EquationOfMotionMatrix& k,
                          const EigenvalueClass& eigen_class,
                          const Tolerances& tol,
                          std::vector<std::string>* warnings) {
  const RealMatrix& km = k.entries();
  ClassChains cc;
  cc.eigen_class = eigen_class;
  const Complex lambda = eigen_class.representative;
  const int a = eigen_class.algebraic_multiplicity;
  cc.chains = chains_for_eigenvalue(km, lambda, a, tol, warnings);

  const int m = static_cast<int>(cc.chains.size());
  if (eigen_class.geometric_multiplicity > 0 &&
      m != eigen_class.geometric_multiplicity) {
    std::ostringstream os;
    os << "filtration gives " << m << " chains but null(K - lambda) has dimension "
       << eigen_class.geometric_multiplicity;
    throw Error(ErrorCode::kChainExtraction, "jordan_chains", os.str());
  }
  cc.eigen_class.geometric_multiplicity = m;

  switch (eigen_class.kind) {
    case EigenKind::kRealPair:
    case EigenKind::kComplexQuadruplet: {
      cc.partners = chains_for_eigenvalue(km, -lambda, a, tol, warnings);
      std::vector<int> r1, r2;
      for (const auto& c : cc.chains) r1.push_back(c.rank);
      for (const auto& c : cc.partners) r2.push_back(c.rank);
      if (r1 != r2) {
        throw Error(ErrorCode::kChainExtraction, "jordan_chains",
                    "chain ranks of lambda and -lambda differ");
      }
      break;
    }
    case EigenKind::kImaginaryPair:
      for (const auto& c : cc.chains) {
        JordanChain p;
        p.eigenvalue = std::conj(c.eigenvalue);
        p.rank = c.rank;
        p.generator = c.generator.conjugate();
        for (const auto& v : c.chain_vectors) p.chain_vectors.push_back(v.conjugate());
        cc.partners.push_back(std::move(p));
      }
      break;
    case EigenKind::kZero:
      break;
  }
  return cc;
}

JordanChainSet assign_cases(JordanChainSet set) {
  for (auto& cc : set.classes) {
    cc.l = 0;
    cc.n = 0;
    int odd_zero = 0;
    auto label = [&](JordanChain& c) {
      const bool even = c.rank % 2 == 0;
      switch (cc.eigen_class.kind) {
        case EigenKind::kRealPair: return 1;
        case EigenKind::kComplexQuadruplet: return 2;
        case EigenKind::kZero: return even ? 3 : 4;
        case EigenKind::kImaginaryPair: return even ? 5 : 6;
      }
      return 0;
    };
    for (auto& c : cc.chains) {
      c.case_label = label(c);
      if (c.case_label == 3 || c.case_label == 5) ++cc.l;
      if (c.case_label == 6) ++cc.n;
      if (c.case_label == 4) ++odd_zero;
    }
    for (auto& c : cc.partners) c.case_label = label(c);
    if (cc.eigen_class.kind == EigenKind::kZero) {
      if (odd_zero % 2 != 0) {
        throw Error(ErrorCode::kSpectrumStructure, "assign_cases",
                    "the number of odd-rank zero chains must be even");
      }
      cc.n = odd_zero / 2;
    }
  }
  return set;
}

}  // namespace qnf
