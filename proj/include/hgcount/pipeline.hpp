// Copyright 2026 The hgcount Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HGCOUNT_PIPELINE_HPP
#define HGCOUNT_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hgcount/coarse_estimation.hpp"
#include "hgcount/oracle.hpp"
#include "hgcount/sparsify.hpp"

namespace hgcount {

/// Accumulator Psi plus the live weighted tuples.
struct DataStructureD {
  double psi = 0.0;
  std::vector<WeightedTuple> tuples;
};

struct PipelineConfig {
  double epsilon = 0.3;
  int k = 4;
  /// 0 selects 2d.
  int theta = 0;
  /// Exact-count threshold; 0 selects the preset value.
  double tau = 0.0;
  /// Population threshold N; 0 selects the preset value.
  double population = 0.0;
  /// Full-constant preset: N = kappa * log^{4d} n / eps^2; 0 derives kappa from the
  /// importance-sampling sample-size envelope.
  double kappa = 0.0;
  /// Band factor fed to importance sampling; 0 selects the preset value.
  double alpha = 0.0;
  double importance_c = 1.0;
  RoughConfig rough = RoughConfig::desk(2);
  Preset preset = Preset::kDesk;
  /// Route to brute force when eps <= (n^-d log^{5d+5} n)^{1/4}.
  bool epsilon_fallback = true;
  /// Route to brute force when C(n, d) is below the projected pipeline cost.
  bool cost_fallback = false;
  /// Keep a copy of D after every iteration (needed by trace_diagnostics).
  bool record_tuples = false;

  static PipelineConfig paper(int d, double epsilon);
  /// tau = max(64, 2^{d+2} log n), N = 2^d, alpha = 8, Gamma multiplier 64,
  /// no brute-force fallbacks.
  static PipelineConfig desk(int d, double epsilon);

  double resolved_tau(int d, std::size_t n) const;
  double resolved_population(int d, std::size_t n) const;
  double resolved_alpha(int d, std::size_t n) const;
  double lambda(int d, std::size_t n) const;
  double delta(int d, std::size_t n) const;
  double epsilon_cutoff(int d, std::size_t n) const;
};

enum class StepKind { kExactOnly, kSparsify, kImportance, kDone, kBruteForce, kAborted };

std::string to_string(StepKind kind);

struct TraceEntry {
  int iteration = 0;
  StepKind step = StepKind::kExactOnly;
  /// State of D after the iteration (entry 0 is the initial state).
  double psi = 0.0;
  std::size_t tuple_count = 0;
  /// Psi gained in this iteration's exact-count step.
  double exact_gain = 0.0;
  /// Sum of w * e over live tuples after coarse estimation (importance steps).
  double coarse_proxy = 0.0;
  /// Importance-sampling rescale factors applied in this iteration.
  std::vector<double> rescale_factors;
  QueryLedger queries;
  std::vector<WeightedTuple> tuples;  // filled when record_tuples is set
};

struct EstimateReport {
  double m_hat = 0.0;
  double m_hat_o = 0.0;
  int iterations = 0;
  bool brute_force = false;
  bool aborted = false;
  std::string diagnostic;
  std::vector<TraceEntry> trace;
  QueryLedger queries;
  PipelineConfig config;
  double resolved_tau = 0.0;
  double resolved_population = 0.0;
  std::size_t max_tuples = 0;
};

/// Runs the exact-count / sparsify / coarse + importance loop. The hard
/// iteration cap is 4 d ceil(log n) + 4.
EstimateReport estimate(OracleHandle& o, const PipelineConfig& cfg, std::uint64_t seed);

/// Exact unordered m via one CID query per d-subset of singletons.
std::uint64_t brute_force_estimate(OracleHandle& o);

struct TraceCheck {
  std::vector<double> est;  // Est_i = Psi_i + sum w m_o
  std::vector<double> act;  // Act_i = sum m_o
  /// Iterations i (>= 1) with |Est_i - Est_{i-1}| > lambda * Est_{i-1}.
  std::vector<int> drift_violations;
  /// Pairs i with Act_{i+2} > Act_i / 2.
  std::vector<int> halving_violations;
  std::size_t drift_checks = 0;
  std::size_t halving_checks = 0;
};

/// Recomputes Est and Act from ground truth; needs record_tuples.
TraceCheck trace_diagnostics(const EstimateReport& report, const Hypergraph& h);

}  // namespace hgcount

#endif  // HGCOUNT_PIPELINE_HPP
