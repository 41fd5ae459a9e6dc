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

// qnf: normal forms of quadratic Hamiltonians from the command line.
//
//   qnf analyze input.txt [--format text|json] [--tol key=value ...]
//   qnf scan --eta-min -2 --eta-max 2 --lambda-min -2 --lambda-max 2 --steps 41
//   qnf check input.txt
//
// Exit codes: 0 ok, 1 validation, 2 pipeline, 3 verification.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnf/qnf.h"

namespace {

int ExitCode(qnf_status s) {
  switch (s) {
    case QNF_OK: return 0;
    case QNF_ERR_PIPELINE: return 2;
    case QNF_ERR_VERIFICATION: return 3;
    default: return 1;
  }
}

struct StringDeleter {
  void operator()(char* s) const { qnf_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

int ReportFailure(qnf_status s, qnf_format format) {
  char* text = nullptr;
  qnf_render_last_error(format, &text);
  OwnedString owned(text);
  (format == QNF_FORMAT_JSON ? std::cout : std::cerr) << (text ? text : "error\n");
  return ExitCode(s);
}

bool ReadInput(const std::string& path, std::string* out) {
  if (path == "-") {
    out->assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  out->assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

bool ApplyTolerance(const std::string& key, double v, qnf_options* o) {
  static const std::map<std::string, double qnf_options::*> kFields = {
      {"structure_atol", &qnf_options::structure_atol},
      {"structure_rtol", &qnf_options::structure_rtol},
      {"symplectic", &qnf_options::symplectic},
      {"cluster", &qnf_options::cluster},
      {"rank", &qnf_options::rank},
      {"vanishing_alpha", &qnf_options::vanishing_alpha},
      {"max_condition", &qnf_options::max_condition},
      {"verification", &qnf_options::verification}};
  auto it = kFields.find(key);
  if (it == kFields.end() || !(v > 0)) return false;
  o->*(it->second) = v;
  return true;
}

bool ParseTolerances(const std::vector<std::string>& items, qnf_options* o) {
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --tol expects key=value, got \"" << item << "\"\n";
      return false;
    }
    double v = 0;
    try {
      v = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      v = -1;
    }
    if (!ApplyTolerance(item.substr(0, eq), v, o)) {
      std::cerr << "error: invalid tolerance override \"" << item << "\"\n";
      return false;
    }
  }
  return true;
}

bool WriteFile(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms and stability of quadratic bosonic Hamiltonians"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string format = "text";
  std::vector<std::string> tolerances;
  bool general_only = false;
  auto* analyze = app.add_subcommand("analyze", "Compute the normal form of a document");
  analyze->add_option("input", input, "Matrix document, or - for stdin");
  analyze->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--tol", tolerances, "Tolerance override key=value (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  analyze->add_flag("--no-fast-path", general_only, "Always use the general pipeline");

  auto* check = app.add_subcommand("check", "Validate a document and print diagnostics");
  check->add_option("input", input, "Matrix document, or - for stdin");
  check->add_option("--tol", tolerances, "Tolerance override key=value (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  double eta_min = -2, eta_max = 2, lambda_min = -2, lambda_max = 2;
  int steps = 41, threads = 0;
  std::string output, boundary_output;
  auto* scan = app.add_subcommand("scan", "Stability diagram of the two-mode model");
  scan->add_option("--eta-min", eta_min, "Lower eta");
  scan->add_option("--eta-max", eta_max, "Upper eta");
  scan->add_option("--lambda-min", lambda_min, "Lower coupling");
  scan->add_option("--lambda-max", lambda_max, "Upper coupling");
  scan->add_option("--steps", steps, "Grid points per axis")->check(CLI::Range(1, 100000));
  scan->add_option("--threads", threads, "Worker threads, 0 for all cores");
  scan->add_option("--output,-o", output, "Write the grid table here instead of stdout");
  scan->add_option("--boundary-output", boundary_output,
                   "Write boundary-flagged rows here");
  scan->add_option("--tol", tolerances, "Tolerance override key=value (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  qnf_options options;
  qnf_options_default(&options);
  if (!ParseTolerances(tolerances, &options)) return 1;
  const qnf_format fmt = format == "json" ? QNF_FORMAT_JSON : QNF_FORMAT_TEXT;

  if (*scan) {
    char* grid = nullptr;
    char* boundary = nullptr;
    qnf_status s = qnf_scan_two_mode(eta_min, eta_max, steps, lambda_min, lambda_max,
                                     steps, &options, threads, &grid,
                                     boundary_output.empty() ? nullptr : &boundary);
    if (s != QNF_OK) return ReportFailure(s, QNF_FORMAT_TEXT);
    OwnedString g(grid), b(boundary);
    if (output.empty()) {
      std::cout << grid;
    } else if (!WriteFile(output, grid)) {
      std::cerr << "error: cannot write " << output << "\n";
      return 1;
    }
    if (boundary && !WriteFile(boundary_output, boundary)) {
      std::cerr << "error: cannot write " << boundary_output << "\n";
      return 1;
    }
    return 0;
  }

  std::string text;
  if (!ReadInput(input, &text)) {
    std::cerr << "error: cannot read " << input << "\n";
    return 1;
  }
  qnf_matrix* raw = nullptr;
  qnf_status s = qnf_matrix_parse(text.c_str(), &raw);
  if (s != QNF_OK) return ReportFailure(s, *analyze ? fmt : QNF_FORMAT_TEXT);
  std::unique_ptr<qnf_matrix, void (*)(qnf_matrix*)> matrix(raw, qnf_matrix_free);

  if (*check) {
    char* out = nullptr;
    s = qnf_check(matrix.get(), &options, &out);
    if (s != QNF_OK) return ReportFailure(s, QNF_FORMAT_TEXT);
    OwnedString owned(out);
    std::cout << out;
    return 0;
  }

  if (general_only) options.allow_fast_path = 0;
  qnf_report* report = nullptr;
  s = qnf_analyze(matrix.get(), &options, &report);
  if (s != QNF_OK) return ReportFailure(s, fmt);
  std::unique_ptr<qnf_report, void (*)(qnf_report*)> owned_report(report, qnf_report_free);
  char* out = nullptr;
  s = qnf_report_render(report, fmt, &out);
  if (s != QNF_OK) return ReportFailure(s, fmt);
  OwnedString owned(out);
  std::cout << out;
  return 0;
}
