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

#ifndef QNF_TYPES_HPP_
#define QNF_TYPES_HPP_

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qnf {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Errors are grouped into three categories; the CLI maps them to exit codes.
enum class ErrorCategory {
  kValidation = 1,
  kPipeline = 2,
  kVerification = 3,
};

enum class ErrorCode {
  // Validation.
  kParse,
  kInvalidDimension,
  kNotSymmetric,
  kStructureViolation,
  kContractViolation,
  kIllConditioned,
  kOverflow,
  // Pipeline.
  kAmbiguousSpectrum,
  kSpectrumStructure,
  kChainExtraction,
  kNonInvertible,
  kNondegeneracy,
  kWrongPath,
  kConstruction,
  kAssembly,
  // Verification.
  kVerification,
};

ErrorCategory CategoryOf(ErrorCode code);
const char* ErrorCodeName(ErrorCode code);
const char* ErrorCategoryName(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string stage, const std::string& message);

  ErrorCode code() const { return code_; }
  ErrorCategory category() const { return CategoryOf(code_); }
  const std::string& stage() const { return stage_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string stage_;
  std::string detail_;
};

// Numerical thresholds. Absolute thresholds are scaled by (1 + ||K||) or by
// the operand norms at the point of use.
struct Tolerances {
  double structure_atol = 1e-10;
  double structure_rtol = 1e-10;
  double symplectic = 1e-8;
  double cluster = 1e-7;
  double rank = 1e-9;
  double vanishing_alpha = 1e-9;
  double max_condition = 1e12;
  double verification = 1e-7;
};

struct AnalysisConfig {
  Tolerances tol;
  // When false the diagonalizable stable shortcut is never taken.
  bool allow_fast_path = true;
};

// Max-abs entry norm.
template <typename Derived>
double MaxNorm(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace qnf

#endif  // QNF_TYPES_HPP_
