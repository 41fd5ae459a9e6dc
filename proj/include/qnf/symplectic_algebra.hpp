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

#ifndef QNF_SYMPLECTIC_ALGEBRA_HPP_
#define QNF_SYMPLECTIC_ALGEBRA_HPP_

#include <vector>

#include "qnf/types.hpp"

namespace qnf {

// Phi = sum_k phi_k (K - lambda)^{k-1}, truncated at rank D.
class NilpotentPolynomial {
 public:
  NilpotentPolynomial() = default;
  NilpotentPolynomial(Complex eigenvalue, std::vector<Complex> coefficients);

  static NilpotentPolynomial Identity(Complex eigenvalue, int rank);

  Complex eigenvalue() const { return lambda_; }
  int rank() const { return static_cast<int>(c_.size()); }
  const std::vector<Complex>& coefficients() const { return c_; }
  Complex operator[](int k) const { return c_[k]; }

  NilpotentPolynomial scaled(Complex s) const;
  NilpotentPolynomial with_eigenvalue(Complex eigenvalue) const;

 private:
  Complex lambda_ = 0;
  std::vector<Complex> c_;
};

// Coefficients omega_k = [(K - lambda)^{D-k} x]^T J y, k = 1..D.
struct SymplecticGram {
  Complex eigenvalue;
  std::vector<Complex> coefficients;

  Complex alpha() const { return coefficients.front(); }
  NilpotentPolynomial polynomial() const {
    return NilpotentPolynomial(eigenvalue, coefficients);
  }
};

// Conjugation in the star operation applies iff lambda is purely imaginary.
bool is_imaginary(Complex lambda);

NilpotentPolynomial poly_product(const NilpotentPolynomial& a,
                                 const NilpotentPolynomial& b);
NilpotentPolynomial poly_sqrt(const NilpotentPolynomial& w);
NilpotentPolynomial poly_inverse(const NilpotentPolynomial& p);
NilpotentPolynomial poly_star(const NilpotentPolynomial& p);
ComplexVector apply_poly(const NilpotentPolynomial& p, const RealMatrix& k,
                         const ComplexVector& x);

// Bilinear: no conjugation of y.
SymplecticGram omega(const RealMatrix& k, Complex lambda, const ComplexVector& x,
                     int rank, const ComplexVector& y);

// x^T J y.
Complex symplectic_product(const ComplexVector& x, const ComplexVector& y);

// A chain handed to orthonormalization: generator and its rank.
struct GeneratorVector {
  ComplexVector v;
  int rank = 0;
};

struct OrthonormalChain {
  int case_label = 0;
  Complex eigenvalue;
  int rank = 0;
  // c=1,2: e and e~ (at -lambda). c=3: e. c=4: f and h. c=5,6: e.
  ComplexVector e;
  ComplexVector partner;
  // +-1 for c=3,5; +-i for c=6; 1 otherwise.
  Complex sigma = 1.0;
};

struct OrthonormalizedSet {
  Complex eigenvalue;
  std::vector<OrthonormalChain> chains;
};

struct ZeroSplit {
  OrthonormalizedSet even;
  std::vector<GeneratorVector> odd;
};

OrthonormalizedSet orthonormalize_real_complex(const RealMatrix& k,
                                               Complex lambda,
                                               std::vector<GeneratorVector> chains,
                                               std::vector<GeneratorVector> partners,
                                               const Tolerances& tol = {});

ZeroSplit orthonormalize_zero(const RealMatrix& k,
                              std::vector<GeneratorVector> chains,
                              const Tolerances& tol = {});

OrthonormalizedSet zero_odd_pairing(const RealMatrix& k,
                                    std::vector<GeneratorVector> chains,
                                    const Tolerances& tol = {});

OrthonormalizedSet orthonormalize_imaginary(const RealMatrix& k, Complex lambda,
                                            std::vector<GeneratorVector> chains,
                                            const Tolerances& tol = {});

OrthonormalizedSet bogoliubov_orthonormalize(const RealMatrix& k, Complex lambda,
                                             std::vector<GeneratorVector> chains,
                                             const Tolerances& tol = {});

// Largest deviation of the set from its defining Gram relations.
double orthonormality_residual(const RealMatrix& k, const OrthonormalizedSet& set);

}  // namespace qnf

#endif  // QNF_SYMPLECTIC_ALGEBRA_HPP_
