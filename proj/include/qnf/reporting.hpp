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

#ifndef QNF_REPORTING_HPP_
#define QNF_REPORTING_HPP_

#include <map>
#include <string>
#include <vector>

#include "qnf/normal_form.hpp"
#include "qnf/types.hpp"

namespace qnf {

struct MatrixDocument {
  int n_modes = 0;
  RealMatrix entries;
  std::vector<std::string> labels;
  std::map<std::string, double> tolerances;
};

// Accepts the line format ("modes N", optional "labels ..." and
// "tolerance <key> <value>" lines, then 2N rows) or a JSON object with
// modes/matrix/labels/tolerances. Errors carry line and column.
MatrixDocument parse_matrix(const std::string& text);

// Line format; numbers use the shortest representation that round-trips.
std::string serialize_matrix(const MatrixDocument& doc);

// Applies document-level tolerance overrides on top of config.
AnalysisConfig apply_overrides(const AnalysisConfig& config,
                               const std::map<std::string, double>& overrides);

enum class ReportFormat { kText, kJson };

// Shortest round-trip decimal.
std::string format_number(double x);

// "2(X1 P1 + X2 P2) + X1 P2 + 1.5(X4^2 + P4^2)"; "0" when empty.
std::string render_terms(const std::vector<HamiltonianTerm>& terms);

std::string render_report(const NormalFormReport& report, ReportFormat format,
                          const std::vector<std::string>& labels = {});

// Structured error object {"error": {code, category, stage, message}}.
std::string render_error(const Error& error, ReportFormat format);

// Runs the pipeline on a document.
NormalFormReport analyze_document(const MatrixDocument& doc,
                                  const AnalysisConfig& config);

std::string analyze(const MatrixDocument& doc, const AnalysisConfig& config,
                    ReportFormat format);

// Validation and spectrum diagnostics only. Throws on validation failure.
std::string check_document(const MatrixDocument& doc, const AnalysisConfig& config);

// Built-in two-mode model with position coupling Lambda and frequency eta.
RealMatrix two_mode_hamiltonian(double eta, double lambda);

struct ScanRange {
  double min = 0;
  double max = 0;
  int steps = 1;

  // Exact endpoints; interior points by weighted average.
  double at(int i) const;
};

struct ScanCell {
  double eta = 0;
  double lambda = 0;
  std::string verdict;     // Stable / Marginal / Unstable / Error
  std::string signature;   // with eigenvalues, for display
  std::string structure;   // eigenvalue-free, for boundary detection
  bool boundary = false;
};

struct ScanGrid {
  std::string first_parameter = "eta";
  std::string second_parameter = "lambda";
  ScanRange eta;
  ScanRange lambda;
  // Row-major with eta outer: cells[i * lambda.steps + j].
  std::vector<ScanCell> cells;

  const ScanCell& at(int i, int j) const { return cells[i * lambda.steps + j]; }
};

// Per-point signature of a finished report.
std::string class_signature(const NormalFormReport& report, bool with_values);

ScanGrid scan_two_mode(const ScanRange& eta, const ScanRange& lambda,
                       const AnalysisConfig& config, int threads = 0);

// "# eta lambda verdict signature" followed by one row per point.
std::string render_scan(const ScanGrid& grid);
// Boundary-flagged points only, same columns.
std::string render_scan_boundary(const ScanGrid& grid);

}  // namespace qnf

#endif  // QNF_REPORTING_HPP_
