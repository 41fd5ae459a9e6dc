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
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qnf/spectral_analysis.hpp"

namespace qnf {

namespace {

// Plane rotation [c s; -conj(s) c] with c real that maps (f, g) to (r, 0).
void Lartg(Complex f, Complex g, double* c, Complex* s) {
  if (g == Complex(0.0)) {
    *c = 1.0;
    *s = 0.0;
    return;
  }
  if (f == Complex(0.0)) {
    *c = 0.0;
    *s = std::conj(g) / std::abs(g);
    return;
  }
  double af = std::abs(f);
  double ag = std::abs(g);
  double norm = std::hypot(af, ag);
  *c = af / norm;
  *s = (f / af) * std::conj(g) / norm;
}

}  // namespace

void swap_schur_diagonal(ComplexMatrix* t, ComplexMatrix* q, Eigen::Index p) {
  ComplexMatrix& tm = *t;
  const Eigen::Index n = tm.rows();
  Complex t11 = tm(p, p);
  Complex t22 = tm(p + 1, p + 1);
  double c;
  Complex s;
  Lartg(tm(p, p + 1), t22 - t11, &c, &s);
  for (Eigen::Index j = p + 2; j < n; ++j) {
    Complex x = tm(p, j);
    Complex y = tm(p + 1, j);
    tm(p, j) = c * x + s * y;
    tm(p + 1, j) = c * y - std::conj(s) * x;
  }
  for (Eigen::Index i = 0; i < p; ++i) {
    Complex x = tm(i, p);
    Complex y = tm(i, p + 1);
    tm(i, p) = c * x + std::conj(s) * y;
    tm(i, p + 1) = c * y - s * x;
  }
  tm(p, p) = t22;
  tm(p + 1, p + 1) = t11;
  ComplexMatrix& qm = *q;
  for (Eigen::Index i = 0; i < qm.rows(); ++i) {
    Complex x = qm(i, p);
    Complex y = qm(i, p + 1);
    qm(i, p) = c * x + std::conj(s) * y;
    qm(i, p + 1) = c * y - s * x;
  }
}

ComplexMatrix invariant_subspace(const RealMatrix& k, Complex lambda, int a) {
  const Eigen::Index n = k.rows();
  Eigen::ComplexSchur<ComplexMatrix> schur(k.cast<Complex>());
  ComplexMatrix t = schur.matrixT();
  ComplexMatrix q = schur.matrixU();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::abs(t(x, x) - lambda) < std::abs(t(y, y) - lambda);
  });
  std::vector<char> selected(n, 0);
  for (int i = 0; i < a && i < n; ++i) selected[order[i]] = 1;

  // Bubble every selected entry to the front, preserving relative order.
  Eigen::Index front = 0;
  for (Eigen::Index j = 0; j < n && front < a; ++j) {
    if (!selected[j]) continue;
    for (Eigen::Index p = j; p > front; --p) {
      swap_schur_diagonal(&t, &q, p - 1);
      std::swap(selected[p], selected[p - 1]);
    }
    ++front;
  }
  return q.leftCols(a);
}

}  // namespace qnf
