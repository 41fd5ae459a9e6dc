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

#include "qnf/types.hpp"

#include <utility>

namespace qnf {

ErrorCategory CategoryOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kInvalidDimension:
    case ErrorCode::kNotSymmetric:
    case ErrorCode::kStructureViolation:
    case ErrorCode::kContractViolation:
    case ErrorCode::kIllConditioned:
    case ErrorCode::kOverflow:
      return ErrorCategory::kValidation;
    case ErrorCode::kVerification:
      return ErrorCategory::kVerification;
    default:
      return ErrorCategory::kPipeline;
  }
}

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kInvalidDimension: return "invalid_dimension";
    case ErrorCode::kNotSymmetric: return "not_symmetric";
    case ErrorCode::kStructureViolation: return "structure_violation";
    case ErrorCode::kContractViolation: return "contract_violation";
    case ErrorCode::kIllConditioned: return "ill_conditioned";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kAmbiguousSpectrum: return "ambiguous_spectrum";
    case ErrorCode::kSpectrumStructure: return "spectrum_structure";
    case ErrorCode::kChainExtraction: return "chain_extraction";
    case ErrorCode::kNonInvertible: return "non_invertible";
    case ErrorCode::kNondegeneracy: return "nondegeneracy";
    case ErrorCode::kWrongPath: return "wrong_path";
    case ErrorCode::kConstruction: return "construction";
    case ErrorCode::kAssembly: return "assembly";
    case ErrorCode::kVerification: return "verification";
  }
  return "unknown";
}

const char* ErrorCategoryName(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kValidation: return "validation";
    case ErrorCategory::kPipeline: return "pipeline";
    case ErrorCategory::kVerification: return "verification";
  }
  return "unknown";
}

Error::Error(ErrorCode code, std::string stage, const std::string& message)
    : std::runtime_error(stage + ": " + message),
      code_(code),
      stage_(std::move(stage)),
      detail_(message) {}

}  // namespace qnf
