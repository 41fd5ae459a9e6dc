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

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "qnf/reporting.hpp"

namespace qnf {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Coefficients in symbolic output: ten significant digits is plenty and
// keeps 1.5 as "1.5" rather than a 17-digit expansion.
std::string Coef(double c) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", c);
  return buf;
}

std::string Mode(char q, int a) { return std::string(1, q) + std::to_string(a); }

// Summands of one term with unit coefficient. Compound kinds yield several.
std::vector<std::string> Summands(const HamiltonianTerm& t) {
  const int a = t.mode_a, b = t.mode_b;
  switch (t.kind) {
    case TermKind::kHarmonicOscillator:
      return {Mode('X', a) + "^2", "+", Mode('P', a) + "^2"};
    case TermKind::kFreeParticleX: return {Mode('X', a) + "^2"};
    case TermKind::kFreeParticleP: return {Mode('P', a) + "^2"};
    case TermKind::kSingleModeSqueeze: return {Mode('X', a) + " " + Mode('P', a)};
    case TermKind::kBeamSplitterXP:
      return {Mode('X', a) + " " + Mode('P', b), "-", Mode('P', a) + " " + Mode('X', b)};
    case TermKind::kBeamSplitterXXPP:
      return {Mode('X', a) + " " + Mode('X', b), "+", Mode('P', a) + " " + Mode('P', b)};
    case TermKind::kBeamSplitterPlusTwoModeSqueeze:
      return {Mode('X', a) + " " + Mode('P', b)};
    case TermKind::kPositionCoupling: return {Mode('X', a) + " " + Mode('X', b)};
    case TermKind::kMomentumCoupling: return {Mode('P', a) + " " + Mode('P', b)};
  }
  return {"?"};
}

std::string Join(const std::vector<std::string>& parts) {
  std::string s = parts[0];
  for (size_t i = 1; i + 1 < parts.size(); i += 2) s += " " + parts[i] + " " + parts[i + 1];
  return s;
}

std::string TermText(const HamiltonianTerm& t) {
  std::vector<std::string> s = Summands(t);
  std::string body = Join(s);
  if (t.coefficient == 1.0) return body;
  return Coef(t.coefficient) + (s.size() > 1 ? "(" + body + ")" : " " + body);
}

ordered_json ComplexJson(Complex z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json MatrixJson(const RealMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

std::string ComplexText(Complex z) {
  if (z.imag() == 0.0) return Coef(z.real());
  if (z.real() == 0.0) {
    if (z.imag() == 1.0) return "i";
    if (z.imag() == -1.0) return "-i";
    return Coef(z.imag()) + "i";
  }
  return Coef(z.real()) + (z.imag() < 0 ? "-" : "+") + Coef(std::abs(z.imag())) + "i";
}

void MatrixText(std::ostringstream& os, const RealMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << " ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), " %12.6g", m(r, c));
      os << buf;
    }
    os << "\n";
  }
}

std::string RenderJson(const NormalFormReport& r, const std::vector<std::string>& labels) {
  ordered_json j;
  j["n_modes"] = r.n_modes;
  if (!labels.empty()) j["labels"] = labels;
  j["verdict"] = VerdictName(r.verdict);
  j["reasons"] = r.reasons;
  ordered_json growth = ordered_json::array();
  for (const auto& g : r.growth) {
    ordered_json e{{"block", g.block}, {"kind", g.kind}};
    if (g.kind == "exponential") e["rate"] = g.rate;
    if (g.kind != "bounded") e["order"] = g.order;
    growth.push_back(e);
  }
  j["growth"] = growth;
  j["zero_frequency_modes"] = r.zero_frequency_modes;
  j["fast_path"] = r.fast_path;
  ordered_json spectrum = ordered_json::array();
  for (const auto& c : r.spectrum.classes) {
    spectrum.push_back({{"kind", EigenKindName(c.kind)},
                        {"eigenvalue", ComplexJson(c.representative)},
                        {"algebraic_multiplicity", c.algebraic_multiplicity},
                        {"geometric_multiplicity", c.geometric_multiplicity}});
  }
  j["spectrum"] = spectrum;
  ordered_json blocks = ordered_json::array();
  for (const auto& b : r.blocks) {
    ordered_json e{{"case", b.spec.case_label},
                   {"eigenvalue", ComplexJson(b.spec.eigenvalue)},
                   {"rank", b.spec.rank}};
    if (b.spec.case_label == 3 || b.spec.case_label >= 5) e["sigma"] = ComplexJson(b.spec.sigma);
    e["first_mode"] = b.first_mode + 1;
    e["modes"] = b.modes();
    e["I_I"] = MatrixJson(b.ii);
    e["I_R"] = MatrixJson(b.ir);
    e["I_L"] = MatrixJson(b.il);
    blocks.push_back(e);
  }
  j["blocks"] = blocks;
  ordered_json terms = ordered_json::array();
  for (const auto& t : r.terms) {
    terms.push_back({{"kind", TermKindName(t.kind)},
                     {"coefficient", t.coefficient},
                     {"modes", {t.mode_a, t.mode_b}},
                     {"text", TermText(t)}});
  }
  j["hamiltonian"] = render_terms(r.terms);
  j["terms"] = terms;
  j["transform"] = MatrixJson(r.transform.entries());
  j["k_normal"] = MatrixJson(r.k_normal);
  j["n_matrix"] = MatrixJson(r.n_matrix);
  const Residuals& res = r.residuals;
  j["residuals"] = {{"symplectic", res.symplectic},
                    {"symplectic_threshold", res.symplectic_threshold},
                    {"block_match", res.block_match},
                    {"block_threshold", res.block_threshold},
                    {"n_reproduction", res.n_reproduction},
                    {"orthonormality", res.orthonormality},
                    {"condition", res.condition}};
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string RenderText(const NormalFormReport& r, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "modes: " << r.n_modes << "\n";
  if (!labels.empty()) {
    os << "labels:";
    for (const auto& l : labels) os << " " << l;
    os << "\n";
  }
  os << "verdict: " << VerdictName(r.verdict) << "\n";
  for (const auto& why : r.reasons) os << "  " << why << "\n";
  os << "spectrum:\n";
  for (const auto& c : r.spectrum.classes) {
    os << "  " << EigenKindName(c.kind) << " lambda=" << ComplexText(c.representative)
       << " a=" << c.algebraic_multiplicity << " m=" << c.geometric_multiplicity << "\n";
  }
  os << "blocks:\n";
  for (size_t i = 0; i < r.blocks.size(); ++i) {
    const auto& b = r.blocks[i];
    os << "  [" << i << "] case " << b.spec.case_label
       << " lambda=" << ComplexText(b.spec.eigenvalue) << " D=" << b.spec.rank;
    if (b.spec.case_label == 3 || b.spec.case_label >= 5)
      os << " sigma=" << ComplexText(b.spec.sigma);
    os << " modes " << b.first_mode + 1 << ".." << b.first_mode + b.modes() << "\n";
  }
  os << "hamiltonian: " << render_terms(r.terms) << "\n";
  os << "zero-frequency modes: " << r.zero_frequency_modes << "\n";
  os << "path: " << (r.fast_path ? "bogoliubov" : "general") << "\n";
  os << "transform T:\n";
  MatrixText(os, r.transform.entries());
  os << "normal form K_N:\n";
  MatrixText(os, r.k_normal);
  os << "N = T^T M T:\n";
  MatrixText(os, r.n_matrix);
  const Residuals& res = r.residuals;
  os << "residuals:\n"
     << "  symplectic " << res.symplectic << " (threshold " << res.symplectic_threshold << ")\n"
     << "  block match " << res.block_match << " (threshold " << res.block_threshold << ")\n"
     << "  N reproduction " << res.n_reproduction << "\n"
     << "  orthonormality " << res.orthonormality << "\n"
     << "  condition " << res.condition << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace

std::string render_terms(const std::vector<HamiltonianTerm>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  size_t i = 0;
  while (i < terms.size()) {
    size_t j = i + 1;
    while (j < terms.size() && terms[j].kind == terms[i].kind &&
           terms[j].coefficient == terms[i].coefficient)
      ++j;
    std::vector<std::string> parts;
    for (size_t t = i; t < j; ++t) {
      std::vector<std::string> s = Summands(terms[t]);
      if (!parts.empty()) parts.push_back("+");
      parts.insert(parts.end(), s.begin(), s.end());
    }
    const double c = terms[i].coefficient;
    const std::string body = Join(parts);
    const bool compound = parts.size() > 1;
    std::string piece;
    double mag = std::abs(c);
    if (mag == 1.0) {
      piece = body;
      // A bare sum after a minus sign still needs grouping.
      if (c < 0 && compound) piece = "(" + body + ")";
    } else {
      piece = Coef(mag) + (compound ? "(" + body + ")" : " " + body);
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + piece;
    } else {
      out += (c < 0 ? " - " : " + ") + piece;
    }
    i = j;
  }
  return out;
}

std::string render_report(const NormalFormReport& report, ReportFormat format,
                          const std::vector<std::string>& labels) {
  return format == ReportFormat::kJson ? RenderJson(report, labels)
                                       : RenderText(report, labels);
}

std::string render_error(const Error& error, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    ordered_json j;
    j["error"] = {{"code", ErrorCodeName(error.code())},
                  {"category", ErrorCategoryName(error.category())},
                  {"stage", error.stage()},
                  {"message", error.detail()}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "error [" << ErrorCategoryName(error.category()) << "/"
     << ErrorCodeName(error.code()) << "] in " << error.stage() << ": "
     << error.detail() << "\n";
  return os.str();
}

NormalFormReport analyze_document(const MatrixDocument& doc,
                                  const AnalysisConfig& config) {
  AnalysisConfig effective = apply_overrides(config, doc.tolerances);
  HamiltonianMatrix m = HamiltonianMatrix::FromMatrix(doc.entries, effective.tol);
  return normal_form(m, effective);
}

std::string analyze(const MatrixDocument& doc, const AnalysisConfig& config,
                    ReportFormat format) {
  return render_report(analyze_document(doc, config), format, doc.labels);
}

std::string check_document(const MatrixDocument& doc, const AnalysisConfig& config) {
  AnalysisConfig effective = apply_overrides(config, doc.tolerances);
  const Tolerances& tol = effective.tol;
  HamiltonianMatrix m = HamiltonianMatrix::FromMatrix(doc.entries, tol);
  EquationOfMotionMatrix k = build_eom(m);
  EomDiagnostics d = validate_eom_structure(k.entries(), tol);
  std::ostringstream os;
  os << "modes: " << doc.n_modes << "\n"
     << "symmetric: yes (max |M - M^T| = " << MaxNorm(RealMatrix(doc.entries - doc.entries.transpose()))
     << ")\n"
     << "eom structure: " << (d.ok ? "ok" : "violated") << " (hamiltonian "
     << d.hamiltonian_residual << ", A_R " << d.a_r_asymmetry << ", A_L "
     << d.a_l_asymmetry << ", diagonal " << d.diagonal_block_mismatch
     << ", threshold " << d.threshold << ")\n";
  if (!d.ok) {
    throw Error(ErrorCode::kStructureViolation, "check", os.str());
  }
  SpectrumReport s = analyze_spectrum(k, tol);
  os << "spectrum:\n";
  for (const auto& c : s.classes) {
    os << "  " << EigenKindName(c.kind) << " lambda=" << ComplexText(c.representative)
       << " a=" << c.algebraic_multiplicity << " m=" << c.geometric_multiplicity << "\n";
  }
  os << "sum rule residual: " << s.sum_rule_residual << "\n";
  os << "fast path applicable: " << (bogoliubov_applicable(s) ? "yes" : "no") << "\n";
  for (const auto& w : s.warnings) os << "warning: " << w << "\n";
  return os.str();
}

RealMatrix two_mode_hamiltonian(double eta, double lambda) {
  RealMatrix m = RealMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(0, 1) = m(1, 0) = lambda;
  m(1, 1) = eta;
  m(2, 2) = 1.0;
  m(3, 3) = eta;
  return m;
}

}  // namespace qnf
