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

// Scaling and squaring with diagonal Pade approximants of degree 3..13
// (Higham, SIAM J. Matrix Anal. Appl. 26, 2005).

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qnf/quadratic_core.hpp"

namespace qnf {

namespace {

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double OneNorm(const RealMatrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator/denominator halves for degrees 3, 5, 7, 9.
void LowDegree(const RealMatrix& a, int m, RealMatrix* u, RealMatrix* v) {
  static const double b3[] = {120., 60., 12., 1.};
  static const double b5[] = {30240., 15120., 3360., 420., 30., 1.};
  static const double b7[] = {17297280., 8648640., 1995840., 277200.,
                              25200.,    1512.,    56.,      1.};
  static const double b9[] = {17643225600., 8821612800., 2075673600.,
                              302702400.,   30270240.,   2162160.,
                              110880.,      3960.,       90.,
                              1.};
  const double* b = m == 3 ? b3 : m == 5 ? b5 : m == 7 ? b7 : b9;
  const Eigen::Index n = a.rows();
  RealMatrix a2 = a * a;
  RealMatrix pow = RealMatrix::Identity(n, n);
  RealMatrix uu = RealMatrix::Zero(n, n);
  RealMatrix vv = RealMatrix::Zero(n, n);
  for (int k = 0; k <= m; k += 2) {
    vv += b[k] * pow;
    uu += b[k + 1] * pow;
    pow = pow * a2;
  }
  *u = a * uu;
  *v = vv;
}

void Degree13(const RealMatrix& a, RealMatrix* u, RealMatrix* v) {
  static const double b[] = {64764752532480000., 32382376266240000.,
                             7771770303897600.,  1187353796428800.,
                             129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,
                             1323241920.,        40840800.,
                             960960.,            16380.,
                             182.,               1.};
  const Eigen::Index n = a.rows();
  RealMatrix id = RealMatrix::Identity(n, n);
  RealMatrix a2 = a * a;
  RealMatrix a4 = a2 * a2;
  RealMatrix a6 = a4 * a2;
  RealMatrix inner_u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                       b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  *u = a * inner_u;
  *v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
       b[2] * a2 + b[0] * id;
}

[[noreturn]] void Overflow(double norm, int squarings) {
  std::ostringstream os;
  os << "exp(K t) is not representable: ||K t||_1 = " << norm << " after "
     << squarings << " squarings";
  throw Error(ErrorCode::kOverflow, "propagate", os.str());
}

}  // namespace

RealMatrix matrix_exponential(const RealMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kInvalidDimension, "propagate", "matrix not square");
  }
  if (a.size() == 0) return a;
  if (!a.allFinite()) Overflow(std::numeric_limits<double>::infinity(), 0);
  const double norm = OneNorm(a);
  RealMatrix u, v;
  int s = 0;
  if (norm <= kTheta3) {
    LowDegree(a, 3, &u, &v);
  } else if (norm <= kTheta5) {
    LowDegree(a, 5, &u, &v);
  } else if (norm <= kTheta7) {
    LowDegree(a, 7, &u, &v);
  } else if (norm <= kTheta9) {
    LowDegree(a, 9, &u, &v);
  } else {
    s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    Degree13(a / std::ldexp(1.0, s), &u, &v);
  }
  RealMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) {
    r = r * r;
    if (!r.allFinite()) Overflow(norm, k + 1);
  }
  if (!r.allFinite()) Overflow(norm, s);
  return r;
}

}  // namespace qnf
