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

#include "qnf/symplectic_algebra.hpp"

#include <cmath>
#include <sstream>

namespace qnf {

NilpotentPolynomial::NilpotentPolynomial(Complex eigenvalue,
                                         std::vector<Complex> coefficients)
    : lambda_(eigenvalue), c_(std::move(coefficients)) {}

NilpotentPolynomial NilpotentPolynomial::Identity(Complex eigenvalue, int rank) {
  std::vector<Complex> c(rank, 0.0);
  if (rank > 0) c[0] = 1.0;
  return NilpotentPolynomial(eigenvalue, std::move(c));
}

NilpotentPolynomial NilpotentPolynomial::scaled(Complex s) const {
  std::vector<Complex> c = c_;
  for (auto& x : c) x *= s;
  return NilpotentPolynomial(lambda_, std::move(c));
}

NilpotentPolynomial NilpotentPolynomial::with_eigenvalue(Complex eigenvalue) const {
  return NilpotentPolynomial(eigenvalue, c_);
}

bool is_imaginary(Complex lambda) {
  return lambda.real() == 0.0 && lambda.imag() != 0.0;
}

NilpotentPolynomial poly_product(const NilpotentPolynomial& a,
                                 const NilpotentPolynomial& b) {
  const Complex la = a.eigenvalue(), lb = b.eigenvalue();
  if (std::abs(la - lb) > 1e-12 * (1 + std::abs(la)) || a.rank() != b.rank()) {
    throw Error(ErrorCode::kContractViolation, "poly_product",
                "operands differ in eigenvalue or rank");
  }
  const int d = a.rank();
  std::vector<Complex> c(d, 0.0);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l <= k; ++l) c[k] += a[l] * b[k - l];
  return NilpotentPolynomial(la, std::move(c));
}

NilpotentPolynomial poly_sqrt(const NilpotentPolynomial& w) {
  const int d = w.rank();
  if (d == 0 || w[0] == Complex(0.0)) {
    throw Error(ErrorCode::kNonInvertible, "poly_sqrt",
                "leading coefficient is zero");
  }
  std::vector<Complex> phi(d, 0.0);
  const Complex w0 = w[0];
  // Principal branch, with +i sqrt(|w|) on the negative real axis.
  if (w0.imag() == 0.0 && w0.real() < 0.0) {
    phi[0] = Complex(0.0, std::sqrt(-w0.real()));
  } else {
    phi[0] = std::sqrt(w0);
  }
  for (int k = 1; k < d; ++k) {
    Complex s = w[k];
    for (int l = 1; l < k; ++l) s -= phi[l] * phi[k - l];
    phi[k] = s / (2.0 * phi[0]);
  }
  return NilpotentPolynomial(w.eigenvalue(), std::move(phi));
}

NilpotentPolynomial poly_inverse(const NilpotentPolynomial& p) {
  const int d = p.rank();
  if (d == 0 || p[0] == Complex(0.0)) {
    throw Error(ErrorCode::kNonInvertible, "poly_inverse",
                "leading coefficient is zero");
  }
  std::vector<Complex> q(d, 0.0);
  q[0] = 1.0 / p[0];
  for (int k = 1; k < d; ++k) {
    Complex s = 0.0;
    for (int l = 1; l <= k; ++l) s += p[l] * q[k - l];
    q[k] = -s / p[0];
  }
  return NilpotentPolynomial(p.eigenvalue(), std::move(q));
}

NilpotentPolynomial poly_star(const NilpotentPolynomial& p) {
  const bool conj = is_imaginary(p.eigenvalue());
  std::vector<Complex> c = p.coefficients();
  for (size_t k = 0; k < c.size(); ++k) {
    if (conj) c[k] = std::conj(c[k]);
    if (k % 2 == 1) c[k] = -c[k];
  }
  return NilpotentPolynomial(p.eigenvalue(), std::move(c));
}

ComplexVector apply_poly(const NilpotentPolynomial& p, const RealMatrix& k,
                         const ComplexVector& x) {
  const int d = p.rank();
  if (d == 0) return ComplexVector::Zero(x.size());
  const Complex lambda = p.eigenvalue();
  ComplexVector y = p[d - 1] * x;
  for (int i = d - 2; i >= 0; --i) {
    ComplexVector shifted = k * y - lambda * y;
    y = shifted + p[i] * x;
  }
  return y;
}

Complex symplectic_product(const ComplexVector& x, const ComplexVector& y) {
  const Eigen::Index n = x.size() / 2;
  // x^T J y = x_top . y_bottom - x_bottom . y_top, without conjugation.
  return (x.head(n).transpose() * y.tail(n))(0) -
         (x.tail(n).transpose() * y.head(n))(0);
}

SymplecticGram omega(const RealMatrix& k, Complex lambda, const ComplexVector& x,
                     int rank, const ComplexVector& y) {
  SymplecticGram g;
  g.eigenvalue = lambda;
  g.coefficients.assign(rank, 0.0);
  ComplexVector v = x;
  // v = (K - lambda)^j x feeds omega_{D-j}.
  for (int j = 0; j < rank; ++j) {
    g.coefficients[rank - 1 - j] = symplectic_product(v, y);
    if (j + 1 < rank) v = k * v - lambda * v;
  }
  return g;
}

}  // namespace qnf
