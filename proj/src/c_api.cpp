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

#include "qnf/qnf.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <optional>
#include <string>

#include "qnf/reporting.hpp"

struct qnf_matrix {
  qnf::MatrixDocument doc;
};

struct qnf_report {
  qnf::NormalFormReport report;
  std::vector<std::string> labels;
};

namespace {

thread_local std::string g_message;
thread_local std::string g_code;
thread_local std::optional<qnf::Error> g_error;

qnf_status Fail(const qnf::Error& e) {
  g_message = e.what();
  g_code = qnf::ErrorCodeName(e.code());
  g_error = e;
  switch (e.category()) {
    case qnf::ErrorCategory::kValidation: return QNF_ERR_VALIDATION;
    case qnf::ErrorCategory::kPipeline: return QNF_ERR_PIPELINE;
    case qnf::ErrorCategory::kVerification: return QNF_ERR_VERIFICATION;
  }
  return QNF_ERR_INTERNAL;
}

qnf_status Fail(qnf_status s, const char* code, const std::string& msg) {
  g_message = msg;
  g_code = code;
  g_error.reset();
  return s;
}

void Clear() {
  g_message.clear();
  g_code.clear();
  g_error.reset();
}

char* Dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

qnf::AnalysisConfig Config(const qnf_options* o) {
  qnf::AnalysisConfig c;
  if (!o) return c;
  auto set = [](double v, double* field) {
    if (v > 0) *field = v;
  };
  set(o->structure_atol, &c.tol.structure_atol);
  set(o->structure_rtol, &c.tol.structure_rtol);
  set(o->symplectic, &c.tol.symplectic);
  set(o->cluster, &c.tol.cluster);
  set(o->rank, &c.tol.rank);
  set(o->vanishing_alpha, &c.tol.vanishing_alpha);
  set(o->max_condition, &c.tol.max_condition);
  set(o->verification, &c.tol.verification);
  c.allow_fast_path = o->allow_fast_path != 0;
  return c;
}

// Runs f, mapping exceptions to status codes.
template <typename F>
qnf_status Guard(F&& f) {
  Clear();
  try {
    f();
    return QNF_OK;
  } catch (const qnf::Error& e) {
    return Fail(e);
  } catch (const std::bad_alloc&) {
    return Fail(QNF_ERR_INTERNAL, "out_of_memory", "out of memory");
  } catch (const std::exception& e) {
    return Fail(QNF_ERR_INTERNAL, "internal", e.what());
  }
}

qnf_status CopyMatrix(const qnf_report* r, const qnf::RealMatrix& m, double* out) {
  if (!r || !out) return Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out, m.rows(), m.cols()) = m;
  return QNF_OK;
}

}  // namespace

extern "C" {

void qnf_options_default(qnf_options* o) {
  if (!o) return;
  qnf::Tolerances t;
  o->structure_atol = t.structure_atol;
  o->structure_rtol = t.structure_rtol;
  o->symplectic = t.symplectic;
  o->cluster = t.cluster;
  o->rank = t.rank;
  o->vanishing_alpha = t.vanishing_alpha;
  o->max_condition = t.max_condition;
  o->verification = t.verification;
  o->allow_fast_path = 1;
}

const char* qnf_last_error(void) { return g_message.c_str(); }

const char* qnf_last_error_code(void) { return g_code.c_str(); }

qnf_status qnf_matrix_parse(const char* text, qnf_matrix** out) {
  if (!text || !out) return Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
  return Guard([&] {
    auto m = std::make_unique<qnf_matrix>();
    m->doc = qnf::parse_matrix(text);
    *out = m.release();
  });
}

qnf_status qnf_matrix_create(int n_modes, const double* entries, qnf_matrix** out) {
  if (!entries || !out || n_modes < 1)
    return Fail(QNF_ERR_ARGUMENT, "argument", "invalid argument");
  return Guard([&] {
    const int d = 2 * n_modes;
    auto m = std::make_unique<qnf_matrix>();
    m->doc.n_modes = n_modes;
    m->doc.entries = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                    Eigen::Dynamic, Eigen::RowMajor>>(
        entries, d, d);
    // Same validation as parsed input.
    qnf::HamiltonianMatrix::FromMatrix(m->doc.entries);
    *out = m.release();
  });
}

void qnf_matrix_free(qnf_matrix* m) { delete m; }

int qnf_matrix_modes(const qnf_matrix* m) { return m ? m->doc.n_modes : 0; }

qnf_status qnf_matrix_serialize(const qnf_matrix* m, char** out) {
  if (!m || !out) return Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
  return Guard([&] { *out = Dup(qnf::serialize_matrix(m->doc)); });
}

qnf_status qnf_analyze(const qnf_matrix* m, const qnf_options* options,
                       qnf_report** out) {
  if (!m || !out) return Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
  return Guard([&] {
    auto r = std::make_unique<qnf_report>();
    r->report = qnf::analyze_document(m->doc, Config(options));
    r->labels = m->doc.labels;
    *out = r.release();
  });
}

void qnf_report_free(qnf_report* r) { delete r; }

qnf_status qnf_report_render(const qnf_report* r, qnf_format format, char** out) {
  if (!r || !out) return Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
  return Guard([&] {
    *out = Dup(qnf::render_report(
        r->report, format == QNF_FORMAT_JSON ? qnf::ReportFormat::kJson
                                             : qnf::ReportFormat::kText,
        r->labels));
  });
}

int qnf_report_modes(const qnf_report* r) { return r ? r->report.n_modes : 0; }

qnf_verdict qnf_report_verdict(const qnf_report* r) {
  if (!r) return QNF_VERDICT_UNSTABLE;
  switch (r->report.verdict) {
    case qnf::Verdict::kStable: return QNF_VERDICT_STABLE;
    case qnf::Verdict::kMarginal: return QNF_VERDICT_MARGINAL;
    case qnf::Verdict::kUnstable: return QNF_VERDICT_UNSTABLE;
  }
  return QNF_VERDICT_UNSTABLE;
}

int qnf_report_zero_frequency_modes(const qnf_report* r) {
  return r ? r->report.zero_frequency_modes : 0;
}

int qnf_report_fast_path(const qnf_report* r) { return r && r->report.fast_path; }

qnf_status qnf_report_transform(const qnf_report* r, double* out) {
  return r ? CopyMatrix(r, r->report.transform.entries(), out)
           : Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
}

qnf_status qnf_report_k_normal(const qnf_report* r, double* out) {
  return r ? CopyMatrix(r, r->report.k_normal, out)
           : Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
}

qnf_status qnf_report_n_matrix(const qnf_report* r, double* out) {
  return r ? CopyMatrix(r, r->report.n_matrix, out)
           : Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
}

qnf_status qnf_report_terms(const qnf_report* r, char** out) {
  if (!r || !out) return Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
  return Guard([&] { *out = Dup(qnf::render_terms(r->report.terms)); });
}

qnf_status qnf_render_last_error(qnf_format format, char** out) {
  if (!out) return Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
  // Not through Guard: that would clear the error being rendered.
  qnf::Error e = g_error ? *g_error
                         : qnf::Error(qnf::ErrorCode::kContractViolation, "api",
                                      g_message.empty() ? "no error" : g_message);
  *out = Dup(qnf::render_error(
      e, format == QNF_FORMAT_JSON ? qnf::ReportFormat::kJson : qnf::ReportFormat::kText));
  return QNF_OK;
}

qnf_status qnf_check(const qnf_matrix* m, const qnf_options* options, char** out) {
  if (!m || !out) return Fail(QNF_ERR_ARGUMENT, "argument", "null argument");
  return Guard([&] { *out = Dup(qnf::check_document(m->doc, Config(options))); });
}

qnf_status qnf_scan_two_mode(double eta_min, double eta_max, int eta_steps,
                             double lambda_min, double lambda_max, int lambda_steps,
                             const qnf_options* options, int threads, char** grid,
                             char** boundary) {
  if (!grid || eta_steps < 1 || lambda_steps < 1)
    return Fail(QNF_ERR_ARGUMENT, "argument", "invalid argument");
  return Guard([&] {
    qnf::ScanGrid g = qnf::scan_two_mode({eta_min, eta_max, eta_steps},
                                         {lambda_min, lambda_max, lambda_steps},
                                         Config(options), threads);
    *grid = Dup(qnf::render_scan(g));
    if (boundary) *boundary = Dup(qnf::render_scan_boundary(g));
  });
}

void qnf_string_free(char* s) { std::free(s); }

}  // extern "C"
