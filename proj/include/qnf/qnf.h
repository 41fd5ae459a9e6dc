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

/* Stable C interface. All objects are opaque; every call returns a status. */
#ifndef QNF_QNF_H_
#define QNF_QNF_H_

#include <stddef.h>

#if defined(QNF_BUILDING_LIBRARY)
#define QNF_API __attribute__((visibility("default")))
#else
#define QNF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  QNF_OK = 0,
  QNF_ERR_VALIDATION = 1,
  QNF_ERR_PIPELINE = 2,
  QNF_ERR_VERIFICATION = 3,
  QNF_ERR_ARGUMENT = 4,
  QNF_ERR_INTERNAL = 5
} qnf_status;

typedef enum { QNF_FORMAT_TEXT = 0, QNF_FORMAT_JSON = 1 } qnf_format;

typedef enum {
  QNF_VERDICT_STABLE = 0,
  QNF_VERDICT_MARGINAL = 1,
  QNF_VERDICT_UNSTABLE = 2
} qnf_verdict;

typedef struct qnf_matrix qnf_matrix;
typedef struct qnf_report qnf_report;

/* Zero or negative fields keep the built-in default. */
typedef struct {
  double structure_atol;
  double structure_rtol;
  double symplectic;
  double cluster;
  double rank;
  double vanishing_alpha;
  double max_condition;
  double verification;
  int allow_fast_path;
} qnf_options;

QNF_API void qnf_options_default(qnf_options* options);

/* Message of the last failure on this thread; valid until the next call. */
QNF_API const char* qnf_last_error(void);
/* snake_case code of the last failure, e.g. "not_symmetric". */
QNF_API const char* qnf_last_error_code(void);

QNF_API qnf_status qnf_matrix_parse(const char* text, qnf_matrix** out);
/* Row-major 2N x 2N entries. */
QNF_API qnf_status qnf_matrix_create(int n_modes, const double* entries,
                                     qnf_matrix** out);
QNF_API void qnf_matrix_free(qnf_matrix* m);
QNF_API int qnf_matrix_modes(const qnf_matrix* m);
QNF_API qnf_status qnf_matrix_serialize(const qnf_matrix* m, char** out);

QNF_API qnf_status qnf_analyze(const qnf_matrix* m, const qnf_options* options,
                               qnf_report** out);
QNF_API void qnf_report_free(qnf_report* r);
QNF_API qnf_status qnf_report_render(const qnf_report* r, qnf_format format,
                                     char** out);
QNF_API int qnf_report_modes(const qnf_report* r);
QNF_API qnf_verdict qnf_report_verdict(const qnf_report* r);
QNF_API int qnf_report_zero_frequency_modes(const qnf_report* r);
QNF_API int qnf_report_fast_path(const qnf_report* r);
/* 2N x 2N row-major copies into caller storage of 4N^2 doubles. */
QNF_API qnf_status qnf_report_transform(const qnf_report* r, double* out);
QNF_API qnf_status qnf_report_k_normal(const qnf_report* r, double* out);
QNF_API qnf_status qnf_report_n_matrix(const qnf_report* r, double* out);
QNF_API qnf_status qnf_report_terms(const qnf_report* r, char** out);

/* Renders a failure of the last call as text or JSON. */
QNF_API qnf_status qnf_render_last_error(qnf_format format, char** out);

QNF_API qnf_status qnf_check(const qnf_matrix* m, const qnf_options* options,
                             char** out);

/* Scan of the built-in two-mode model. The boundary listing may be NULL. */
QNF_API qnf_status qnf_scan_two_mode(double eta_min, double eta_max,
                                     int eta_steps, double lambda_min,
                                     double lambda_max, int lambda_steps,
                                     const qnf_options* options, int threads,
                                     char** grid, char** boundary);

QNF_API void qnf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QNF_QNF_H_ */
