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
#include <sstream>

#include "qnf/symplectic_algebra.hpp"

namespace qnf {

namespace {

constexpr Complex kI(0.0, 1.0);

double Sign(double x) { return x < 0 ? -1.0 : 1.0; }

// ||(K - lambda)^{D-1} x||.
double TopNorm(const RealMatrix& k, Complex lambda, const ComplexVector& x,
               int rank) {
  ComplexVector v = x;
  for (int j = 1; j < rank; ++j) v = k * v - lambda * v;
  return v.norm();
}

// |alpha| relative to the operand norms; zero if either operand vanishes.
double Relative(Complex alpha, double top, double other) {
  double s = top * other;
  return s > 0 ? std::abs(alpha) / s : 0.0;
}

// Sesquilinear form used for imaginary eigenvalues.
SymplecticGram OmegaS(const RealMatrix& k, Complex lambda, const ComplexVector& x,
                      int rank, const ComplexVector& y) {
  return omega(k, lambda, x, rank, y.conjugate());
}

[[noreturn]] void Degenerate(const char* stage, int rank) {
  std::ostringstream os;
  os << "no non-vanishing symplectic pairing among rank-" << rank
     << " chains; the spectral decomposition is numerically unreliable";
  throw Error(ErrorCode::kNondegeneracy, stage, os.str());
}

int MaxRank(const std::vector<GeneratorVector>& g) {
  int d = 0;
  for (const auto& x : g) d = std::max(d, x.rank);
  return d;
}

}  // namespace

OrthonormalizedSet orthonormalize_real_complex(const RealMatrix& k,
                                               Complex lambda,
                                               std::vector<GeneratorVector> g,
                                               std::vector<GeneratorVector> gt,
                                               const Tolerances& tol) {
  const char* stage = "orthonormalize_real_complex";
  if (g.size() != gt.size()) {
    throw Error(ErrorCode::kContractViolation, stage,
                "chain and partner counts differ");
  }
  const int label = lambda.imag() == 0.0 ? 1 : 2;
  OrthonormalizedSet out;
  out.eigenvalue = lambda;
  while (!g.empty()) {
    const int d = MaxRank(g);
    int bj = -1, bl = -1;
    double best = -1;
    Complex alpha = 0;
    for (size_t j = 0; j < g.size(); ++j) {
      if (g[j].rank != d) continue;
      const double top = TopNorm(k, lambda, g[j].v, d);
      for (size_t l = 0; l < gt.size(); ++l) {
        if (gt[l].rank != d) continue;
        Complex a = omega(k, lambda, g[j].v, d, gt[l].v).alpha();
        double r = Relative(a, top, gt[l].v.norm());
        if (r > best) {
          best = r;
          bj = static_cast<int>(j);
          bl = static_cast<int>(l);
          alpha = a;
        }
      }
    }
    if (bj < 0 || best <= tol.vanishing_alpha) Degenerate(stage, d);

    ComplexVector x = g[bj].v;
    ComplexVector y = gt[bl].v / alpha;
    g.erase(g.begin() + bj);
    gt.erase(gt.begin() + bl);

    NilpotentPolynomial phi = poly_sqrt(omega(k, lambda, x, d, y).polynomial());
    ComplexVector e = apply_poly(poly_inverse(phi), k, x);
    ComplexVector et =
        apply_poly(poly_inverse(poly_star(phi)).with_eigenvalue(-lambda), k, y);

    // Remove the new pair from the remaining chains on both sides.
    const double parity = d % 2 == 0 ? 1.0 : -1.0;
    for (auto& r : g) {
      NilpotentPolynomial theta =
          poly_star(omega(k, -lambda, et, d, r.v).polynomial()).scaled(parity);
      r.v -= apply_poly(theta.with_eigenvalue(lambda), k, e);
    }
    for (auto& r : gt) {
      NilpotentPolynomial theta = poly_star(omega(k, lambda, e, d, r.v).polynomial());
      r.v -= apply_poly(theta.with_eigenvalue(-lambda), k, et);
    }

    OrthonormalChain c;
    c.case_label = label;
    c.eigenvalue = lambda;
    c.rank = d;
    c.e = std::move(e);
    c.partner = std::move(et);
    out.chains.push_back(std::move(c));
  }
  return out;
}

ZeroSplit orthonormalize_zero(const RealMatrix& k,
                              std::vector<GeneratorVector> chains,
                              const Tolerances& tol) {
  const char* stage = "orthonormalize_zero";
  const Complex zero = 0.0;
  ZeroSplit out;
  out.even.eigenvalue = zero;
  std::vector<GeneratorVector> even, odd;
  for (auto& c : chains) (c.rank % 2 == 0 ? even : odd).push_back(std::move(c));

  while (!even.empty()) {
    const int d = MaxRank(even);
    int pick = -1;
    double best = tol.vanishing_alpha;
    Complex alpha = 0;
    for (size_t j = 0; j < even.size(); ++j) {
      if (even[j].rank != d) continue;
      Complex a = omega(k, zero, even[j].v, d, even[j].v).alpha();
      double r = Relative(a, TopNorm(k, zero, even[j].v, d), even[j].v.norm());
      if (r > best) {
        best = r;
        pick = static_cast<int>(j);
        alpha = a;
      }
    }
    if (pick < 0) {
      // All self-pairings vanish: recombine the best equal-rank pair.
      int bj = -1, bl = -1;
      double bp = tol.vanishing_alpha;
      for (size_t j = 0; j < even.size(); ++j) {
        if (even[j].rank != d) continue;
        const double top = TopNorm(k, zero, even[j].v, d);
        for (size_t l = j + 1; l < even.size(); ++l) {
          if (even[l].rank != d) continue;
          Complex a = omega(k, zero, even[j].v, d, even[l].v).alpha();
          double r = Relative(a, top, even[l].v.norm());
          if (r > bp) {
            bp = r;
            bj = static_cast<int>(j);
            bl = static_cast<int>(l);
          }
        }
      }
      if (bj < 0) Degenerate(stage, d);
      ComplexVector s = even[bj].v + even[bl].v;
      ComplexVector t = even[bj].v - even[bl].v;
      even[bj].v = std::move(s);
      even[bl].v = std::move(t);
      continue;
    }

    const double sigma = Sign(alpha.real());
    ComplexVector x = even[pick].v;
    even.erase(even.begin() + pick);
    NilpotentPolynomial phi =
        poly_sqrt(omega(k, zero, x, d, x).polynomial().scaled(sigma));
    ComplexVector e = apply_poly(poly_inverse(phi), k, x);

    auto deflate = [&](GeneratorVector& r) {
      NilpotentPolynomial theta =
          poly_star(omega(k, zero, e, d, r.v).polynomial()).scaled(sigma);
      r.v -= apply_poly(theta, k, e);
    };
    for (auto& r : even) deflate(r);
    for (auto& r : odd) deflate(r);

    OrthonormalChain c;
    c.case_label = 3;
    c.eigenvalue = zero;
    c.rank = d;
    c.e = std::move(e);
    c.sigma = sigma;
    out.even.chains.push_back(std::move(c));
  }
  out.odd = std::move(odd);
  return out;
}

OrthonormalizedSet zero_odd_pairing(const RealMatrix& k,
                                    std::vector<GeneratorVector> chains,
                                    const Tolerances& tol) {
  const char* stage = "zero_odd_pairing";
  const Complex zero = 0.0;
  OrthonormalizedSet out;
  out.eigenvalue = zero;
  if (chains.size() % 2 != 0) {
    throw Error(ErrorCode::kContractViolation, stage,
                "odd number of odd-rank zero chains");
  }
  while (!chains.empty()) {
    const int d = MaxRank(chains);
    int bj = -1, bl = -1;
    double best = tol.vanishing_alpha;
    Complex alpha = 0;
    for (size_t j = 0; j < chains.size(); ++j) {
      if (chains[j].rank != d) continue;
      const double top = TopNorm(k, zero, chains[j].v, d);
      for (size_t l = j + 1; l < chains.size(); ++l) {
        if (chains[l].rank != d) continue;
        Complex a = omega(k, zero, chains[j].v, d, chains[l].v).alpha();
        double r = Relative(a, top, chains[l].v.norm());
        if (r > best) {
          best = r;
          bj = static_cast<int>(j);
          bl = static_cast<int>(l);
          alpha = a;
        }
      }
    }
    if (bj < 0) Degenerate(stage, d);
    ComplexVector e1 = chains[bj].v;
    ComplexVector e2 = chains[bl].v / alpha;
    chains.erase(chains.begin() + bl);
    chains.erase(chains.begin() + bj);

    NilpotentPolynomial phi = poly_sqrt(omega(k, zero, e1, d, e2).polynomial());
    e1 = apply_poly(poly_inverse(phi), k, e1);
    e2 = apply_poly(poly_inverse(poly_star(phi)), k, e2);

    // Solve W11 - 2 Psi - Psi^2 W22 = 0 coefficient by coefficient.
    const NilpotentPolynomial w11 = omega(k, zero, e1, d, e1).polynomial();
    const NilpotentPolynomial w22 = omega(k, zero, e2, d, e2).polynomial();
    std::vector<Complex> psi(d, 0.0);
    {
      const Complex p = w11[0] * w22[0];
      psi[0] = w11[0] / (1.0 + std::sqrt(1.0 + p));
      for (int i = 1; i < d; ++i) {
        psi[i] = 0.0;
        NilpotentPolynomial ps(zero, psi);
        Complex rest = poly_product(poly_product(ps, ps), w22)[i];
        psi[i] = (w11[i] - rest) / (2.0 + 2.0 * psi[0] * w22[0]);
      }
    }
    ComplexVector f = e1 + apply_poly(NilpotentPolynomial(zero, psi), k, e2);

    const SymplecticGram wf = omega(k, zero, f, d, e2);
    e2 /= wf.alpha();
    NilpotentPolynomial phi2 = poly_sqrt(omega(k, zero, f, d, e2).polynomial());
    f = apply_poly(poly_inverse(phi2), k, f);
    e2 = apply_poly(poly_inverse(poly_star(phi2)), k, e2);

    NilpotentPolynomial half = omega(k, zero, e2, d, e2).polynomial().scaled(0.5);
    ComplexVector h = e2 - apply_poly(half, k, f);

    for (auto& r : chains) {
      NilpotentPolynomial a = poly_star(omega(k, zero, h, d, r.v).polynomial());
      NilpotentPolynomial b = poly_star(omega(k, zero, f, d, r.v).polynomial());
      r.v += apply_poly(a, k, f) - apply_poly(b, k, h);
    }

    OrthonormalChain c;
    c.case_label = 4;
    c.eigenvalue = zero;
    c.rank = d;
    c.e = std::move(f);
    c.partner = std::move(h);
    out.chains.push_back(std::move(c));
  }
  return out;
}

OrthonormalizedSet orthonormalize_imaginary(const RealMatrix& k, Complex lambda,
                                            std::vector<GeneratorVector> g,
                                            const Tolerances& tol) {
  const char* stage = "orthonormalize_imaginary";
  if (!is_imaginary(lambda)) {
    throw Error(ErrorCode::kContractViolation, stage,
                "eigenvalue is not purely imaginary");
  }
  OrthonormalizedSet out;
  out.eigenvalue = lambda;
  while (!g.empty()) {
    const int d = MaxRank(g);
    const bool even = d % 2 == 0;
    int pick = -1;
    double best = tol.vanishing_alpha;
    Complex alpha = 0;
    for (size_t j = 0; j < g.size(); ++j) {
      if (g[j].rank != d) continue;
      Complex a = OmegaS(k, lambda, g[j].v, d, g[j].v).alpha();
      double r = Relative(a, TopNorm(k, lambda, g[j].v, d), g[j].v.norm());
      if (r > best) {
        best = r;
        pick = static_cast<int>(j);
        alpha = a;
      }
    }
    if (pick < 0) {
      int bj = -1, bl = -1;
      double bp = tol.vanishing_alpha;
      Complex ba = 0;
      for (size_t j = 0; j < g.size(); ++j) {
        if (g[j].rank != d) continue;
        const double top = TopNorm(k, lambda, g[j].v, d);
        for (size_t l = j + 1; l < g.size(); ++l) {
          if (g[l].rank != d) continue;
          Complex a = OmegaS(k, lambda, g[j].v, d, g[l].v).alpha();
          double r = Relative(a, top, g[l].v.norm());
          if (r > bp) {
            bp = r;
            bj = static_cast<int>(j);
            bl = static_cast<int>(l);
            ba = a;
          }
        }
      }
      if (bj < 0) Degenerate(stage, d);
      // Phase making the new self-pairings +-2|a| (even) or +-2i|a| (odd).
      Complex c = ba / std::abs(ba);
      if (!even) c *= -kI;
      ComplexVector s = g[bj].v + c * g[bl].v;
      ComplexVector t = g[bj].v - c * g[bl].v;
      g[bj].v = std::move(s);
      g[bl].v = std::move(t);
      continue;
    }

    const Complex sigma = even ? Complex(Sign(alpha.real()), 0.0)
                               : Complex(0.0, Sign(alpha.imag()));
    ComplexVector x = g[pick].v;
    g.erase(g.begin() + pick);
    NilpotentPolynomial phi =
        poly_sqrt(OmegaS(k, lambda, x, d, x).polynomial().scaled(std::conj(sigma)));
    ComplexVector e = apply_poly(poly_inverse(phi), k, x);
    for (auto& r : g) {
      NilpotentPolynomial theta =
          poly_star(OmegaS(k, lambda, e, d, r.v).polynomial()).scaled(sigma);
      r.v -= apply_poly(theta, k, e);
    }

    OrthonormalChain c;
    c.case_label = even ? 5 : 6;
    c.eigenvalue = lambda;
    c.rank = d;
    c.e = std::move(e);
    c.sigma = sigma;
    out.chains.push_back(std::move(c));
  }
  return out;
}

OrthonormalizedSet bogoliubov_orthonormalize(const RealMatrix& /*k*/, Complex lambda,
                                             std::vector<GeneratorVector> g,
                                             const Tolerances& tol) {
  const char* stage = "bogoliubov_orthonormalize";
  if (!is_imaginary(lambda)) {
    throw Error(ErrorCode::kWrongPath, stage,
                "eigenvalue is not purely imaginary; use the general pipeline");
  }
  for (const auto& x : g) {
    if (x.rank != 1) {
      throw Error(ErrorCode::kWrongPath, stage,
                  "K is not diagonalizable; use the general pipeline");
    }
  }
  OrthonormalizedSet out;
  out.eigenvalue = lambda;
  auto alpha_of = [](const ComplexVector& x, const ComplexVector& y) {
    return symplectic_product(x, y.conjugate());
  };
  while (!g.empty()) {
    int pick = -1;
    double best = tol.vanishing_alpha;
    Complex alpha = 0;
    for (size_t j = 0; j < g.size(); ++j) {
      Complex a = alpha_of(g[j].v, g[j].v);
      double r = Relative(a, g[j].v.norm(), g[j].v.norm());
      if (r > best) {
        best = r;
        pick = static_cast<int>(j);
        alpha = a;
      }
    }
    if (pick < 0) {
      int bj = -1, bl = -1;
      double bp = tol.vanishing_alpha;
      Complex ba = 0;
      for (size_t j = 0; j < g.size(); ++j) {
        for (size_t l = j + 1; l < g.size(); ++l) {
          Complex a = alpha_of(g[j].v, g[l].v);
          double r = Relative(a, g[j].v.norm(), g[l].v.norm());
          if (r > bp) {
            bp = r;
            bj = static_cast<int>(j);
            bl = static_cast<int>(l);
            ba = a;
          }
        }
      }
      if (bj < 0) Degenerate(stage, 1);
      Complex c = -kI * ba / std::abs(ba);
      ComplexVector s = g[bj].v + c * g[bl].v;
      ComplexVector t = g[bj].v - c * g[bl].v;
      g[bj].v = std::move(s);
      g[bl].v = std::move(t);
      continue;
    }
    const Complex sigma(0.0, Sign(alpha.imag()));
    ComplexVector e = g[pick].v / std::sqrt(std::abs(alpha.imag()));
    g.erase(g.begin() + pick);
    for (auto& r : g) r.v -= sigma * std::conj(alpha_of(e, r.v)) * e;

    OrthonormalChain c;
    c.case_label = 6;
    c.eigenvalue = lambda;
    c.rank = 1;
    c.e = std::move(e);
    c.sigma = sigma;
    out.chains.push_back(std::move(c));
  }
  return out;
}

double orthonormality_residual(const RealMatrix& k, const OrthonormalizedSet& set) {
  const Complex lambda = set.eigenvalue;
  double worst = 0;
  auto check = [&](const SymplecticGram& w, Complex expected) {
    for (size_t i = 0; i < w.coefficients.size(); ++i) {
      Complex target = i == 0 ? expected : Complex(0.0);
      worst = std::max(worst, std::abs(w.coefficients[i] - target));
    }
  };
  const auto& c = set.chains;
  for (size_t a = 0; a < c.size(); ++a) {
    for (size_t b = 0; b < c.size(); ++b) {
      const int d = c[a].rank;
      const Complex delta = a == b ? 1.0 : 0.0;
      const int la = c[a].case_label, lb = c[b].case_label;
      if ((la == 1 || la == 2) && la == lb) {
        check(omega(k, lambda, c[a].e, d, c[b].partner), delta);
      } else if (la == 5 || la == 6) {
        check(OmegaS(k, lambda, c[a].e, d, c[b].e), delta * c[a].sigma);
      } else if (la == 3 || la == 4) {
        // Zero class: every e, f, h against every other.
        auto vecs = [](const OrthonormalChain& x) {
          std::vector<std::pair<const ComplexVector*, int>> v{{&x.e, 0}};
          if (x.case_label == 4) v.push_back({&x.partner, 1});
          return v;
        };
        for (auto [xa, ia] : vecs(c[a])) {
          for (auto [xb, ib] : vecs(c[b])) {
            Complex expected = 0.0;
            if (a == b) {
              if (la == 3) expected = c[a].sigma;
              else if (ia == 0 && ib == 1) expected = 1.0;
              else if (ia == 1 && ib == 0) expected = d % 2 == 0 ? 1.0 : -1.0;
            }
            check(omega(k, lambda, *xa, d, *xb), expected);
          }
        }
      }
    }
  }
  return worst;
}

}  // namespace qnf
