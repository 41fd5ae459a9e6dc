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

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include "qnf/reporting.hpp"

namespace qnf {

namespace {

char KindLetter(EigenKind k) {
  switch (k) {
    case EigenKind::kRealPair: return 'R';
    case EigenKind::kComplexQuadruplet: return 'C';
    case EigenKind::kZero: return 'Z';
    case EigenKind::kImaginaryPair: return 'I';
  }
  return '?';
}

EigenKind KindOfCase(int c) {
  switch (c) {
    case 1: return EigenKind::kRealPair;
    case 2: return EigenKind::kComplexQuadruplet;
    case 3:
    case 4: return EigenKind::kZero;
    default: return EigenKind::kImaginaryPair;
  }
}

std::string Short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string SigmaText(Complex s) {
  if (std::abs(s.imag()) > std::abs(s.real())) return s.imag() > 0 ? "i" : "-i";
  return s.real() > 0 ? "1" : "-1";
}

std::string ValueText(const EigenvalueClass& c) {
  const Complex z = c.representative;
  switch (c.kind) {
    case EigenKind::kRealPair: return Short(z.real());
    case EigenKind::kZero: return "0";
    case EigenKind::kImaginaryPair: return Short(z.imag()) + "i";
    case EigenKind::kComplexQuadruplet:
      return Short(z.real()) + "+" + Short(z.imag()) + "i";
  }
  return "?";
}

// Distance from a block eigenvalue to a class, up to the class symmetries.
double ClassDistance(Complex b, Complex rep) {
  return std::min({std::abs(b - rep), std::abs(b - std::conj(rep)),
                   std::abs(b + rep), std::abs(b + std::conj(rep))});
}

}  // namespace

double ScanRange::at(int i) const {
  if (steps <= 1) return min;
  if (i == 0) return min;
  if (i == steps - 1) return max;
  return (min * (steps - 1 - i) + max * i) / (steps - 1);
}

std::string class_signature(const NormalFormReport& report, bool with_values) {
  const auto& classes = report.spectrum.classes;
  // (rank, sigma) per chain, grouped by class.
  std::vector<std::vector<std::pair<int, std::string>>> chains(classes.size());
  for (const auto& b : report.blocks) {
    const EigenKind kind = KindOfCase(b.spec.case_label);
    int best = -1;
    double best_d = 0;
    for (size_t c = 0; c < classes.size(); ++c) {
      if (classes[c].kind != kind) continue;
      double d = ClassDistance(b.spec.eigenvalue, classes[c].representative);
      if (best < 0 || d < best_d) {
        best = static_cast<int>(c);
        best_d = d;
      }
    }
    if (best < 0) continue;
    const int c = b.spec.case_label;
    const std::string s = (c == 3 || c >= 5) ? SigmaText(b.spec.sigma) : "";
    chains[best].push_back({b.spec.rank, s});
    // A case-4 block stands for a pair of chains of equal rank.
    if (c == 4) chains[best].push_back({b.spec.rank, s});
  }
  std::vector<std::string> tokens;
  for (size_t c = 0; c < classes.size(); ++c) {
    auto& ch = chains[c];
    std::sort(ch.begin(), ch.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::ostringstream os;
    os << KindLetter(classes[c].kind) << "(";
    if (with_values) os << ValueText(classes[c]) << ",";
    os << "a" << classes[c].algebraic_multiplicity << ",m"
       << classes[c].geometric_multiplicity << ",D";
    bool any_sigma = false;
    for (size_t i = 0; i < ch.size(); ++i) {
      os << (i ? "/" : "") << ch[i].first;
      if (!ch[i].second.empty()) any_sigma = true;
    }
    if (any_sigma) {
      os << ",s";
      bool first = true;
      for (const auto& p : ch) {
        if (p.second.empty()) continue;
        os << (first ? "" : "/") << p.second;
        first = false;
      }
    }
    os << ")";
    tokens.push_back(os.str());
  }
  std::sort(tokens.begin(), tokens.end());
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) out += (i ? ";" : "") + tokens[i];
  return out;
}

ScanGrid scan_two_mode(const ScanRange& eta, const ScanRange& lambda,
                       const AnalysisConfig& config, int threads) {
  if (eta.steps < 1 || lambda.steps < 1) {
    throw Error(ErrorCode::kContractViolation, "scan", "steps must be at least 1");
  }
  ScanGrid grid;
  grid.eta = eta;
  grid.lambda = lambda;
  const int total = eta.steps * lambda.steps;
  grid.cells.resize(total);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int idx = next++; idx < total; idx = next++) {
      ScanCell& cell = grid.cells[idx];
      cell.eta = eta.at(idx / lambda.steps);
      cell.lambda = lambda.at(idx % lambda.steps);
      try {
        HamiltonianMatrix m = HamiltonianMatrix::FromMatrix(
            two_mode_hamiltonian(cell.eta, cell.lambda), config.tol);
        NormalFormReport r = normal_form(m, config);
        cell.verdict = VerdictName(r.verdict);
        cell.signature = class_signature(r, true);
        cell.structure = class_signature(r, false);
      } catch (const Error& e) {
        cell.verdict = "Error";
        cell.signature = std::string("error:") + ErrorCodeName(e.code());
        cell.structure = cell.signature;
      }
    }
  };
  int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n = std::clamp(n, 1, total);
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (int i = 0; i < eta.steps; ++i) {
    for (int j = 0; j < lambda.steps; ++j) {
      ScanCell& c = grid.cells[i * lambda.steps + j];
      const int di[] = {-1, 1, 0, 0}, dj[] = {0, 0, -1, 1};
      for (int q = 0; q < 4; ++q) {
        int a = i + di[q], b = j + dj[q];
        if (a < 0 || b < 0 || a >= eta.steps || b >= lambda.steps) continue;
        if (grid.at(a, b).structure != c.structure) c.boundary = true;
      }
    }
  }
  return grid;
}

namespace {

std::string Render(const ScanGrid& grid, bool boundary_only) {
  std::ostringstream os;
  os << "# " << grid.first_parameter << " " << grid.second_parameter
     << " verdict signature\n";
  for (const auto& c : grid.cells) {
    if (boundary_only && !c.boundary) continue;
    os << format_number(c.eta) << " " << format_number(c.lambda) << " " << c.verdict
       << " " << c.signature << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_scan(const ScanGrid& grid) { return Render(grid, false); }

std::string render_scan_boundary(const ScanGrid& grid) { return Render(grid, true); }

}  // namespace qnf
