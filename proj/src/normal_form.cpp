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

#include "qnf/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qnf {

namespace {

const double kSqrt2 = std::sqrt(2.0);

ComplexVector Shift(const RealMatrix& k, Complex mu, const ComplexVector& x) {
  return k * x - mu * x;
}

RealVector RealColumn(const ComplexVector& v, int case_label) {
  double im = v.imag().norm();
  if (im > 1e-8 * (1.0 + v.norm())) {
    std::ostringstream os;
    os << "case " << case_label << " column has imaginary part of norm " << im;
    throw Error(ErrorCode::kConstruction, "build_case_columns", os.str());
  }
  return v.real();
}

std::vector<GeneratorVector> Generators(const std::vector<JordanChain>& chains) {
  std::vector<GeneratorVector> g;
  for (const auto& c : chains) g.push_back({c.generator, c.rank});
  return g;
}

// z^(k) = (K - mu)^{k-1} e, k = 1..d.
std::vector<ComplexVector> Powers(const RealMatrix& k, Complex mu,
                                  const ComplexVector& e, int d) {
  std::vector<ComplexVector> z{e};
  for (int i = 1; i < d; ++i) z.push_back(Shift(k, mu, z.back()));
  return z;
}

}  // namespace

int block_modes(int case_label, int rank) {
  switch (case_label) {
    case 2: return 2 * rank;
    case 3: return rank / 2;
    default: return rank;
  }
}

RealMatrix NormalFormBlock::assembled() const {
  const int n = modes();
  RealMatrix b(2 * n, 2 * n);
  b << ii, ir, il, -ii.transpose();
  return b;
}

ColumnGroup build_case_columns(int case_label, const RealMatrix& k,
                               const OrthonormalChain& chain,
                               const Tolerances&) {
  ColumnGroup g;
  g.spec = {case_label, chain.eigenvalue, chain.rank, chain.sigma};
  const int d = chain.rank;
  const Complex lambda = chain.eigenvalue;
  switch (case_label) {
    case 1: {
      auto z = Powers(k, lambda, chain.e, d);
      for (int i = 0; i < d; ++i) g.plus.push_back(RealColumn(z[i], 1));
      // s^(k) = (-1)^{D-k} (K + lambda)^{D-k} e~.
      auto w = Powers(k, -lambda, chain.partner, d);
      for (int i = 0; i < d; ++i) {
        const int p = d - 1 - i;
        ComplexVector s = (p % 2 == 0 ? 1.0 : -1.0) * w[p];
        g.minus.push_back(RealColumn(s, 1));
      }
      break;
    }
    case 2: {
      auto z = Powers(k, lambda, chain.e, d);
      auto wp = Powers(k, -lambda, chain.partner, d);
      for (int i = 0; i < d; ++i) {
        const int p = d - 1 - i;
        ComplexVector w = (p % 2 == 0 ? 1.0 : -1.0) * wp[p];
        g.plus.push_back(kSqrt2 * z[i].real());
        g.plus.push_back(kSqrt2 * z[i].imag());
        g.minus.push_back(kSqrt2 * w.real());
        g.minus.push_back(-kSqrt2 * w.imag());
      }
      break;
    }
    case 3: {
      const double sigma = chain.sigma.real();
      auto z = Powers(k, 0.0, chain.e, d);
      for (int i = 0; i < d / 2; ++i) {
        // t^(k) = sigma^{k-1} K^{k-1} e, s^(k) = (-sigma)^{D-k} K^{D-k} e.
        g.plus.push_back(RealColumn(std::pow(sigma, i) * z[i], 3));
        const int p = d - 1 - i;
        g.minus.push_back(RealColumn(std::pow(-sigma, p) * z[p], 3));
      }
      break;
    }
    case 4: {
      auto f = Powers(k, 0.0, chain.e, d);
      auto h = Powers(k, 0.0, chain.partner, d);
      for (int i = 0; i < d; ++i) {
        const int p = d - 1 - i;
        g.plus.push_back(RealColumn(f[i], 4));
        g.minus.push_back(RealColumn((p % 2 == 0 ? 1.0 : -1.0) * h[p], 4));
      }
      break;
    }
    case 5:
    case 6: {
      auto z = Powers(k, lambda, chain.e, d);
      for (int i = 0; i < d; ++i) {
        const int kk = i + 1;
        // w^(k) = sigma (-1)^k conj(z^(D+1-k)).
        ComplexVector w = chain.sigma * (kk % 2 == 0 ? 1.0 : -1.0) *
                          z[d - kk].conjugate();
        if (case_label == 5) {
          g.plus.push_back(kk % 2 == 1 ? RealVector(kSqrt2 * z[i].real())
                                       : RealVector(kSqrt2 * z[i].imag()));
          g.minus.push_back(kk % 2 == 1 ? RealVector(kSqrt2 * w.real())
                                        : RealVector(-kSqrt2 * w.imag()));
        } else {
          g.plus.push_back(kSqrt2 * z[i].real());
          g.minus.push_back(kSqrt2 * w.real());
        }
      }
      break;
    }
    default:
      throw Error(ErrorCode::kContractViolation, "build_case_columns",
                  "case label must be in 1..6");
  }
  return g;
}

ColumnGroup bogoliubov_columns(const OrthonormalChain& chain) {
  ColumnGroup g;
  g.spec = {6, chain.eigenvalue, 1, chain.sigma};
  g.plus.push_back(kSqrt2 * chain.e.real());
  // i sigma is real (+-1).
  const double is = (Complex(0.0, 1.0) * chain.sigma).real();
  g.minus.push_back(is * kSqrt2 * chain.e.imag());
  return g;
}

void sort_groups(std::vector<ColumnGroup>* groups) {
  std::stable_sort(groups->begin(), groups->end(),
                   [](const ColumnGroup& a, const ColumnGroup& b) {
                     if (a.spec.case_label != b.spec.case_label)
                       return a.spec.case_label < b.spec.case_label;
                     double ma = std::abs(a.spec.eigenvalue);
                     double mb = std::abs(b.spec.eigenvalue);
                     if (ma != mb) return ma > mb;
                     if (a.spec.eigenvalue.imag() != b.spec.eigenvalue.imag())
                       return a.spec.eigenvalue.imag() > b.spec.eigenvalue.imag();
                     return a.spec.rank > b.spec.rank;
                   });
}

CanonicalTransform assemble_transform(const std::vector<ColumnGroup>& groups,
                                      const Tolerances& tol) {
  int n = 0;
  Eigen::Index dim = -1;
  for (const auto& g : groups) {
    if (g.plus.size() != g.minus.size()) {
      throw Error(ErrorCode::kAssembly, "assemble_transform",
                  "column group has unequal T+ and T- counts");
    }
    n += static_cast<int>(g.plus.size());
    for (const auto& c : g.plus) dim = c.size();
  }
  if (n == 0 || dim != 2 * n) {
    std::ostringstream os;
    os << "column pairs (" << n << ") do not match the mode count";
    throw Error(ErrorCode::kAssembly, "assemble_transform", os.str());
  }
  RealMatrix t(2 * n, 2 * n);
  std::vector<ColumnTag> tags;
  int col = 0;
  for (const auto& g : groups) {
    for (size_t i = 0; i < g.plus.size(); ++i, ++col) {
      t.col(col) = g.plus[i];
      t.col(n + col) = g.minus[i];
      tags.push_back({g.spec.case_label, g.spec.eigenvalue, g.spec.rank});
    }
  }
  const double res = symplectic_residual(t);
  const double limit = symplectic_threshold(t, tol);
  if (!(res <= limit)) {
    // Per-column-pair Gram diagnostics: |t_a^T J s_a - 1|.
    std::ostringstream os;
    os << "T J T^T - J has max-norm " << res << " above " << limit
       << "; pair deviations:";
    RealMatrix j = standard_symplectic_form(n).entries();
    for (int a = 0; a < n; ++a) {
      double dev = std::abs((t.col(a).transpose() * j * t.col(n + a))(0) - 1.0);
      os << " " << dev;
    }
    throw Error(ErrorCode::kAssembly, "assemble_transform", os.str());
  }
  return CanonicalTransform::FromMatrix(t, tol, std::move(tags));
}

std::vector<NormalFormBlock> expected_blocks(const std::vector<BlockSpec>& specs) {
  std::vector<NormalFormBlock> blocks;
  int offset = 0;
  for (const auto& s : specs) {
    NormalFormBlock b;
    b.spec = s;
    b.first_mode = offset;
    const int d = s.rank;
    const int n = block_modes(s.case_label, d);
    offset += n;
    b.ii = RealMatrix::Zero(n, n);
    b.ir = RealMatrix::Zero(n, n);
    b.il = RealMatrix::Zero(n, n);
    const double mu = s.eigenvalue.real();
    const double nu = s.eigenvalue.imag();
    switch (s.case_label) {
      case 1:
        b.ii.diagonal().setConstant(mu);
        for (int r = 1; r < n; ++r) b.ii(r, r - 1) = 1.0;
        break;
      case 2:
        for (int q = 0; q < d; ++q) {
          b.ii(2 * q, 2 * q) = mu;
          b.ii(2 * q, 2 * q + 1) = nu;
          b.ii(2 * q + 1, 2 * q) = -nu;
          b.ii(2 * q + 1, 2 * q + 1) = mu;
          if (q > 0) {
            b.ii(2 * q, 2 * q - 2) = 1.0;
            b.ii(2 * q + 1, 2 * q - 1) = 1.0;
          }
        }
        break;
      case 3: {
        const double sigma = s.sigma.real();
        for (int r = 1; r < n; ++r) b.ii(r, r - 1) = sigma;
        b.il(n - 1, n - 1) = sigma * ((n % 2 == 0) ? 1.0 : -1.0);
        break;
      }
      case 4:
        for (int r = 1; r < n; ++r) b.ii(r, r - 1) = 1.0;
        break;
      case 5: {
        const double sigma = s.sigma.real();
        // One-based r: I_R(r, D+1-r) = sigma nu, I_R(r, D+2-r) = sigma (-1)^r,
        // I_L(r, D+1-r) = -sigma nu, I_L(r, D-r) = sigma (-1)^r.
        for (int r = 1; r <= d; ++r) {
          const double sr = (r % 2 == 0) ? sigma : -sigma;
          b.ir(r - 1, d - r) = sigma * nu;
          b.il(r - 1, d - r) = -sigma * nu;
          if (r >= 2) b.ir(r - 1, d + 1 - r) = sr;
          if (r <= d - 1) b.il(r - 1, d - r - 1) = sr;
        }
        break;
      }
      case 6: {
        const double rho = (Complex(0.0, 1.0) * s.sigma).real();
        for (int r = 1; r < n; ++r) b.ii(r, r - 1) = 1.0;
        for (int r = 1; r <= d; ++r) {
          const double v = rho * nu * ((r % 2 == 1) ? 1.0 : -1.0);
          b.ir(r - 1, d - r) = v;
          b.il(r - 1, d - r) = -v;
        }
        break;
      }
      default:
        throw Error(ErrorCode::kContractViolation, "expected_blocks",
                    "case label must be in 1..6");
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

RealMatrix assemble_k_normal(const std::vector<NormalFormBlock>& blocks,
                             int n_modes) {
  RealMatrix k = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (const auto& b : blocks) {
    const int o = b.first_mode;
    const int n = b.modes();
    k.block(o, o, n, n) = b.ii;
    k.block(o, n_modes + o, n, n) = b.ir;
    k.block(n_modes + o, o, n, n) = b.il;
    k.block(n_modes + o, n_modes + o, n, n) = -b.ii.transpose();
  }
  return k;
}

Verdict classify_verdict(const std::vector<NormalFormBlock>& blocks,
                         std::vector<std::string>* reasons,
                         std::vector<GrowthAnnotation>* growth) {
  bool unstable = false, zero_modes = false;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const auto& s = blocks[i].spec;
    GrowthAnnotation g;
    g.block = static_cast<int>(i);
    std::ostringstream why;
    if (s.case_label == 1 || s.case_label == 2) {
      g.kind = "exponential";
      g.rate = std::abs(s.eigenvalue.real());
      g.order = s.rank - 1;
      unstable = true;
      why << "block " << i << " (case " << s.case_label
          << "): exponential growth at rate " << g.rate;
    } else if (s.rank > 1) {
      g.kind = "polynomial";
      g.order = s.rank - 1;
      unstable = true;
      why << "block " << i << " (case " << s.case_label << ", D=" << s.rank
          << "): polynomial growth of order " << g.order;
    } else {
      g.kind = "bounded";
      if (s.case_label == 4) zero_modes = true;
    }
    if (reasons && !why.str().empty()) reasons->push_back(why.str());
    if (growth) growth->push_back(g);
  }
  if (unstable) return Verdict::kUnstable;
  if (zero_modes) {
    if (reasons) reasons->push_back("zero-frequency modes present");
    return Verdict::kMarginal;
  }
  return Verdict::kStable;
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kStable: return "Stable";
    case Verdict::kMarginal: return "Marginal";
    case Verdict::kUnstable: return "Unstable";
  }
  return "Unknown";
}

bool bogoliubov_applicable(const SpectrumReport& spectrum) {
  if (spectrum.classes.empty()) return false;
  for (const auto& c : spectrum.classes) {
    if (c.kind != EigenKind::kImaginaryPair) return false;
    if (c.geometric_multiplicity != c.algebraic_multiplicity) return false;
  }
  return true;
}

namespace {

NormalFormReport Finish(const HamiltonianMatrix& m, const EquationOfMotionMatrix& k,
                        SpectrumReport spectrum, std::vector<ColumnGroup> groups,
                        double orthonormality, const AnalysisConfig& config) {
  const Tolerances& tol = config.tol;
  NormalFormReport report;
  report.n_modes = m.n_modes();
  report.spectrum = std::move(spectrum);
  report.residuals.orthonormality = orthonormality;

  sort_groups(&groups);
  report.transform = assemble_transform(groups, tol);
  const RealMatrix& t = report.transform.entries();
  report.residuals.symplectic = symplectic_residual(t);
  report.residuals.symplectic_threshold = symplectic_threshold(t, tol);

  std::vector<BlockSpec> specs;
  for (const auto& g : groups) specs.push_back(g.spec);
  report.blocks = expected_blocks(specs);
  report.k_expected = assemble_k_normal(report.blocks, report.n_modes);

  report.residuals.condition = condition_number(t);
  report.k_normal = similarity(k, t, tol).entries();
  const double knorm = MaxNorm(k.entries());
  // Loosened only for transforms beyond 1e6 in condition number.
  const double cond_factor = std::max(1.0, report.residuals.condition * 1e-6);
  report.residuals.block_match = MaxNorm(report.k_normal - report.k_expected);
  report.residuals.block_threshold = tol.verification * (1.0 + knorm) * cond_factor;

  report.n_matrix = transform_hamiltonian(m, report.transform, tol).entries();
  RealMatrix j = standard_symplectic_form(report.n_modes).entries();
  report.residuals.n_reproduction =
      MaxNorm(RealMatrix(report.n_matrix + j * report.k_normal));

  if (!(report.residuals.block_match <= report.residuals.block_threshold)) {
    std::ostringstream os;
    os << "T^-1 K T deviates from the expected normal form by "
       << report.residuals.block_match << " (threshold "
       << report.residuals.block_threshold << "); residual map:";
    RealMatrix diff = (report.k_normal - report.k_expected).cwiseAbs();
    for (Eigen::Index r = 0; r < diff.rows(); ++r) {
      for (Eigen::Index c = 0; c < diff.cols(); ++c) {
        if (diff(r, c) > report.residuals.block_threshold)
          os << " (" << r << "," << c << ")=" << diff(r, c);
      }
    }
    throw Error(ErrorCode::kVerification, "normal_form", os.str());
  }

  report.terms = emit_terms(report.blocks, &report.zero_frequency_modes);
  report.verdict = classify_verdict(report.blocks, &report.reasons, &report.growth);
  report.warnings = report.spectrum.warnings;
  return report;
}

}  // namespace

NormalFormReport bogoliubov_transform(const HamiltonianMatrix& m,
                                      const AnalysisConfig& config) {
  EquationOfMotionMatrix k = build_eom(m);
  SpectrumReport spectrum = analyze_spectrum(k, config.tol);
  if (!bogoliubov_applicable(spectrum)) {
    throw Error(ErrorCode::kWrongPath, "bogoliubov_transform",
                "spectrum is not purely imaginary and semisimple; use the "
                "general pipeline");
  }
  std::vector<ColumnGroup> groups;
  double ortho = 0;
  for (const auto& c : spectrum.classes) {
    ClassChains cc = jordan_chains(k, c, config.tol, &spectrum.warnings);
    OrthonormalizedSet set = bogoliubov_orthonormalize(
        k.entries(), c.representative, Generators(cc.chains), config.tol);
    ortho = std::max(ortho, orthonormality_residual(k.entries(), set));
    for (const auto& ch : set.chains) groups.push_back(bogoliubov_columns(ch));
  }
  NormalFormReport r =
      Finish(m, k, std::move(spectrum), std::move(groups), ortho, config);
  r.fast_path = true;
  return r;
}

NormalFormReport normal_form(const HamiltonianMatrix& m,
                             const AnalysisConfig& config) {
  const Tolerances& tol = config.tol;
  EquationOfMotionMatrix k = build_eom(m);
  EomDiagnostics diag = validate_eom_structure(k.entries(), tol);
  if (!diag.ok) {
    throw Error(ErrorCode::kStructureViolation, "build_eom",
                "K = J M violates the Hamiltonian structure");
  }
  SpectrumReport spectrum = analyze_spectrum(k, tol);
  if (config.allow_fast_path && bogoliubov_applicable(spectrum)) {
    return bogoliubov_transform(m, config);
  }

  JordanChainSet set;
  for (const auto& c : spectrum.classes) {
    set.classes.push_back(jordan_chains(k, c, tol, &spectrum.warnings));
  }
  set = assign_cases(std::move(set));

  const RealMatrix& km = k.entries();
  std::vector<ColumnGroup> groups;
  double ortho = 0;
  auto add = [&](const OrthonormalizedSet& os) {
    ortho = std::max(ortho, orthonormality_residual(km, os));
    for (const auto& ch : os.chains)
      groups.push_back(build_case_columns(ch.case_label, km, ch, tol));
  };
  for (const auto& cc : set.classes) {
    const Complex lambda = cc.eigen_class.representative;
    switch (cc.eigen_class.kind) {
      case EigenKind::kRealPair:
      case EigenKind::kComplexQuadruplet:
        add(orthonormalize_real_complex(km, lambda, Generators(cc.chains),
                                        Generators(cc.partners), tol));
        break;
      case EigenKind::kZero: {
        ZeroSplit split = orthonormalize_zero(km, Generators(cc.chains), tol);
        OrthonormalizedSet pairs = zero_odd_pairing(km, std::move(split.odd), tol);
        OrthonormalizedSet all = split.even;
        for (auto& ch : pairs.chains) all.chains.push_back(ch);
        add(all);
        break;
      }
      case EigenKind::kImaginaryPair:
        add(orthonormalize_imaginary(km, lambda, Generators(cc.chains), tol));
        break;
    }
  }
  return Finish(m, k, std::move(spectrum), std::move(groups), ortho, config);
}

}  // namespace qnf
