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

#include "qnf/normal_form.hpp"

namespace qnf {

const char* TermKindName(TermKind kind) {
  switch (kind) {
    case TermKind::kHarmonicOscillator: return "HarmonicOscillator";
    case TermKind::kFreeParticleX: return "FreeParticleX";
    case TermKind::kFreeParticleP: return "FreeParticleP";
    case TermKind::kSingleModeSqueeze: return "SingleModeSqueeze";
    case TermKind::kBeamSplitterXP: return "BeamSplitterXP";
    case TermKind::kBeamSplitterXXPP: return "BeamSplitterXXPP";
    case TermKind::kBeamSplitterPlusTwoModeSqueeze:
      return "BeamSplitterPlusTwoModeSqueeze";
    case TermKind::kPositionCoupling: return "PositionCoupling";
    case TermKind::kMomentumCoupling: return "MomentumCoupling";
  }
  return "Unknown";
}

std::vector<HamiltonianTerm> emit_terms(const std::vector<NormalFormBlock>& blocks,
                                        int* zero_frequency_modes) {
  std::vector<HamiltonianTerm> out;
  int zero_modes = 0;
  auto add = [&](TermKind kind, double c, int a, int b) {
    if (c != 0.0) out.push_back({kind, c, a, b});
  };
  auto sign = [](int p) { return p % 2 == 0 ? 1.0 : -1.0; };  // (-1)^p
  for (const auto& blk : blocks) {
    const auto& s = blk.spec;
    const int o = blk.first_mode;  // mode k of the block is o + k (one-based)
    const int d = s.rank;
    const double mu = s.eigenvalue.real();
    const double nu = s.eigenvalue.imag();
    switch (s.case_label) {
      case 1:
        for (int q = 1; q <= d; ++q) add(TermKind::kSingleModeSqueeze, mu, o + q, o + q);
        for (int q = 1; q < d; ++q)
          add(TermKind::kBeamSplitterPlusTwoModeSqueeze, 1.0, o + q, o + q + 1);
        break;
      case 2:
        for (int q = 1; q <= 2 * d; ++q)
          add(TermKind::kSingleModeSqueeze, mu, o + q, o + q);
        for (int q = 1; q <= d; ++q)
          add(TermKind::kBeamSplitterXP, nu, o + 2 * q, o + 2 * q - 1);
        for (int q = 1; q <= 2 * d - 2; ++q)
          add(TermKind::kBeamSplitterPlusTwoModeSqueeze, 1.0, o + q, o + q + 2);
        break;
      case 3: {
        const double sigma = s.sigma.real();
        const int h = d / 2;
        for (int q = 1; q < h; ++q)
          add(TermKind::kBeamSplitterPlusTwoModeSqueeze, sigma, o + q, o + q + 1);
        add(TermKind::kFreeParticleX, sign(h + 1) * sigma / 2, o + h, o + h);
        break;
      }
      case 4:
        if (d == 1) ++zero_modes;
        for (int q = 1; q < d; ++q)
          add(TermKind::kBeamSplitterPlusTwoModeSqueeze, 1.0, o + q, o + q + 1);
        break;
      case 5: {
        const double sigma = s.sigma.real();
        const int h = d / 2;
        for (int q = 1; q <= h; ++q)
          add(TermKind::kBeamSplitterXXPP, sigma * nu, o + q, o + d + 1 - q);
        // X_k X_{D-k}: diagonal at k = D/2, couplings for k < D/2.
        for (int q = 1; q < h; ++q)
          add(TermKind::kPositionCoupling, sigma * sign(q + 1), o + q, o + d - q);
        add(TermKind::kFreeParticleX, sigma * sign(h + 1) / 2, o + h, o + h);
        // P_r P_{D+2-r}: diagonal at r = D/2 + 1, couplings for 2 <= r <= D/2.
        for (int r = 2; r <= h; ++r)
          add(TermKind::kMomentumCoupling, sigma * sign(r), o + r, o + d + 2 - r);
        add(TermKind::kFreeParticleP, sigma * sign(h + 1) / 2, o + h + 1, o + h + 1);
        break;
      }
      case 6: {
        const double rho = (Complex(0.0, 1.0) * s.sigma).real();
        const int c = (d + 1) / 2;
        for (int q = 1; q < c; ++q)
          add(TermKind::kBeamSplitterXXPP, rho * nu * sign(q + 1), o + q, o + d + 1 - q);
        add(TermKind::kHarmonicOscillator, rho * nu * sign(c + 1) / 2, o + c, o + c);
        for (int q = 1; q < d; ++q)
          add(TermKind::kBeamSplitterPlusTwoModeSqueeze, 1.0, o + q, o + q + 1);
        break;
      }
      default:
        break;
    }
  }
  if (zero_frequency_modes) *zero_frequency_modes = zero_modes;
  return out;
}

RealMatrix terms_to_matrix(const std::vector<HamiltonianTerm>& terms, int n_modes) {
  RealMatrix n = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  // Adds c * r_i r_j (symmetrized) to H = 1/2 r^T N r.
  auto pair = [&](int i, int j, double c) {
    if (i == j) {
      n(i, i) += 2 * c;
    } else {
      n(i, j) += c;
      n(j, i) += c;
    }
  };
  for (const auto& t : terms) {
    const int xa = t.mode_a - 1, xb = t.mode_b - 1;
    const int pa = n_modes + xa, pb = n_modes + xb;
    const double c = t.coefficient;
    switch (t.kind) {
      case TermKind::kHarmonicOscillator:
        pair(xa, xa, c);
        pair(pa, pa, c);
        break;
      case TermKind::kFreeParticleX: pair(xa, xa, c); break;
      case TermKind::kFreeParticleP: pair(pa, pa, c); break;
      case TermKind::kSingleModeSqueeze: pair(xa, pa, c); break;
      case TermKind::kBeamSplitterXP:
        pair(xa, pb, c);
        pair(pa, xb, -c);
        break;
      case TermKind::kBeamSplitterXXPP:
        pair(xa, xb, c);
        pair(pa, pb, c);
        break;
      case TermKind::kBeamSplitterPlusTwoModeSqueeze: pair(xa, pb, c); break;
      case TermKind::kPositionCoupling: pair(xa, xb, c); break;
      case TermKind::kMomentumCoupling: pair(pa, pb, c); break;
    }
  }
  return n;
}

}  // namespace qnf
