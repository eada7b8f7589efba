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

#include "hgcount/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "hgcount/exact_count.hpp"
#include "hgcount/math.hpp"

namespace hgcount {

namespace {

double log_n(std::size_t n) { return std::max(1, ceil_log2(n)); }

}  // namespace

PipelineConfig PipelineConfig::paper(int d, double epsilon) {
  PipelineConfig cfg;
  cfg.epsilon = epsilon;
  cfg.rough = RoughConfig::paper(d);
  cfg.preset = Preset::kPaper;
  cfg.cost_fallback = true;
  return cfg;
}

PipelineConfig PipelineConfig::desk(int d, double epsilon) {
  PipelineConfig cfg;
  cfg.epsilon = epsilon;
  cfg.rough = RoughConfig::desk(d);
  cfg.preset = Preset::kDesk;
  cfg.epsilon_fallback = false;
  cfg.cost_fallback = false;
  return cfg;
}

double PipelineConfig::resolved_tau(int d, std::size_t n) const {
  if (tau > 0.0) {
    return tau;
  }
  const double L = log_n(n);
  if (preset == Preset::kDesk) {
    return std::max(64.0, ipow(2.0, d + 2) * L);
  }
  const double th = theta > 0 ? theta : 2.0 * d;
  return ipow(k, 2) * ipow(4.0, 2 * d) * ipow(th, 2 * d) * 16.0 * d * d * static_cast<double>(factorial(d)) *
         ipow(L, d + 2) / (epsilon * epsilon);
}

double PipelineConfig::resolved_alpha(int d, std::size_t n) const {
  if (alpha > 0.0) {
    return alpha;
  }
  if (preset == Preset::kDesk) {
    return 8.0;
  }
  return 20.0 * ipow(2.0, d) * ipow(d, d - 1) * ipow(log_n(n), d - 1);
}

double PipelineConfig::lambda(int d, std::size_t n) const { return epsilon / (4.0 * d * log_n(n)); }

double PipelineConfig::delta(int d, std::size_t n) const {
  return std::max(std::pow(static_cast<double>(n), -6.0 * d), 1e-300);
}

double PipelineConfig::resolved_population(int d, std::size_t n) const {
  if (population > 0.0) {
    return population;
  }
  const double L = log_n(n);
  if (preset == Preset::kDesk) {
    return ipow(2.0, d);
  }
  double kap = kappa;
  if (kap <= 0.0) {
    // r' envelope lambda^-2 alpha^4 ln M (ln ln M + ln 1/delta) with M = n^{2d}.
    const double lam = lambda(d, n);
    const double a = resolved_alpha(d, n);
    const double ln_m = 2.0 * d * std::log(static_cast<double>(n));
    const double r_prime = a * a * a * a * ln_m * (std::log(ln_m) + 6.0 * d * std::log(static_cast<double>(n))) /
                           (lam * lam);
    kap = r_prime * epsilon * epsilon / ipow(L, 4 * d);
  }
  return kap * ipow(L, 4 * d) / (epsilon * epsilon);
}

double PipelineConfig::epsilon_cutoff(int d, std::size_t n) const {
  const double L = log_n(n);
  return std::pow(std::pow(static_cast<double>(n), -d) * ipow(L, 5 * d + 5), 0.25);
}

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::kExactOnly:
      return "exact";
    case StepKind::kSparsify:
      return "sparsify";
    case StepKind::kImportance:
      return "coarse+importance";
    case StepKind::kDone:
      return "done";
    case StepKind::kBruteForce:
      return "brute-force";
    case StepKind::kAborted:
      return "aborted";
  }
  return "unknown";
}

std::uint64_t brute_force_estimate(OracleHandle& o) {
  const int d = o.arity();
  const std::size_t n = o.vertex_count();
  std::vector<Vertex> c(static_cast<std::size_t>(d));
  std::iota(c.begin(), c.end(), 0);
  std::vector<VertexSet> sets(static_cast<std::size_t>(d), VertexSet(n));
  std::uint64_t found = 0;
  while (true) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      sets[i].clear();
      sets[i].insert(c[i]);
    }
    found += o.cid(sets) ? 1 : 0;
    int i = d - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - static_cast<std::size_t>(d - i)) {
      --i;
    }
    if (i < 0) {
      return found;
    }
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < d; ++j) {
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

EstimateReport estimate(OracleHandle& o, const PipelineConfig& cfg, std::uint64_t seed) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw InputError("epsilon must lie in (0, 1)");
  }
  if (cfg.k < 1) {
    throw InputError("color count k must be >= 1");
  }
  const int d = o.arity();
  const std::size_t n = o.vertex_count();
  const double L = log_n(n);
  const double d_fact = static_cast<double>(factorial(d));

  EstimateReport report;
  report.config = cfg;
  report.resolved_tau = cfg.resolved_tau(d, n);
  report.resolved_population = cfg.resolved_population(d, n);
  if (report.resolved_tau < 1.0 || report.resolved_population < 1.0) {
    throw InputError("tau and N must be >= 1");
  }
  const auto tau = static_cast<std::uint64_t>(std::min(report.resolved_tau, 1e18));
  const auto population = static_cast<std::size_t>(std::min(report.resolved_population, 1e18));
  const auto start = o.snapshot();

  const double subsets = static_cast<double>(binomial(n, static_cast<std::uint64_t>(d)));
  const double projected = (2.0 * d * L + 2.0) * ipow(4.0, d) * report.resolved_population *
                           static_cast<double>(exact_node_budget(d, n, tau));
  if ((cfg.epsilon_fallback && cfg.epsilon <= cfg.epsilon_cutoff(d, n)) || (cfg.cost_fallback && subsets < projected)) {
    spdlog::info("pipeline: brute force over {} singleton patterns", subsets);
    TraceEntry first;
    first.tuple_count = 1;
    report.trace.push_back(first);
    const auto m = brute_force_estimate(o);
    report.brute_force = true;
    report.m_hat = static_cast<double>(m);
    report.m_hat_o = d_fact * static_cast<double>(m);
    report.iterations = 1;
    report.max_tuples = 1;
    TraceEntry last;
    last.iteration = 1;
    last.step = StepKind::kBruteForce;
    last.psi = report.m_hat_o;
    last.exact_gain = report.m_hat_o;
    last.queries = o.snapshot() - start;
    report.trace.push_back(last);
    report.queries = last.queries;
    return report;
  }

  auto rng = make_rng(seed, StreamTag::kPipeline);
  DataStructureD D;
  D.tuples.push_back(WeightedTuple{PartedTuple::whole(n, d), 1.0, 0, 1.0});
  report.max_tuples = 1;
  {
    TraceEntry first;
    first.tuple_count = 1;
    if (cfg.record_tuples) {
      first.tuples = D.tuples;
    }
    report.trace.push_back(std::move(first));
  }

  ImportanceConfig icfg;
  icfg.lambda = cfg.lambda(d, n);
  icfg.delta = cfg.delta(d, n);
  icfg.alpha = cfg.resolved_alpha(d, n);
  icfg.c = cfg.importance_c;
  icfg.max_output = population;

  const int cap = 4 * d * static_cast<int>(L) + 4;
  for (int iteration = 1;; ++iteration) {
    if (iteration > cap) {
      report.aborted = true;
      report.diagnostic = "iteration cap " + std::to_string(cap) + " reached with " +
                          std::to_string(D.tuples.size()) + " live tuples";
      spdlog::warn("pipeline: {}", report.diagnostic);
      report.trace.back().step = StepKind::kAborted;
      break;
    }
    const auto before = o.snapshot();
    TraceEntry entry;
    entry.iteration = iteration;

    std::vector<WeightedTuple> heavy;
    for (auto& t : D.tuples) {
      const auto r = exact_count(o, t.tuple, tau);
      if (r.at_most()) {
        const double gain = t.weight * static_cast<double>(r.count);
        D.psi += gain;
        entry.exact_gain += gain;
      } else {
        heavy.push_back(std::move(t));
      }
    }
    D.tuples = std::move(heavy);

    if (D.tuples.empty()) {
      entry.step = StepKind::kDone;
    } else if (D.tuples.size() <= population) {
      entry.step = StepKind::kSparsify;
      std::vector<WeightedTuple> next;
      for (const auto& t : D.tuples) {
        auto children = sparsify(t, cfg.k, rng);
        std::move(children.begin(), children.end(), std::back_inserter(next));
      }
      D.tuples = std::move(next);
    } else {
      entry.step = StepKind::kImportance;
      std::vector<CoarseTag> tags;
      tags.reserve(D.tuples.size());
      for (const auto& t : D.tuples) {
        const auto rough = rough_estimation(o, cfg.rough, t.tuple, rng);
        const double e = rough.found ? std::max(1.0, rough.m_hat_o) : 1.0;
        tags.push_back(CoarseTag{e, icfg.alpha});
        entry.coarse_proxy += t.weight * e;
      }
      auto sampled = importance_sample(D.tuples, tags, icfg, rng);
      for (const auto& t : sampled) {
        if (t.rescale != 1.0) {
          entry.rescale_factors.push_back(t.rescale);
        }
      }
      D.tuples = std::move(sampled);
    }

    report.max_tuples = std::max(report.max_tuples, D.tuples.size());
    entry.psi = D.psi;
    entry.tuple_count = D.tuples.size();
    entry.queries = o.snapshot() - before;
    if (cfg.record_tuples) {
      entry.tuples = D.tuples;
    }
    spdlog::debug("pipeline iteration {}: {} psi={} tuples={}", iteration, to_string(entry.step), entry.psi,
                  entry.tuple_count);
    report.trace.push_back(std::move(entry));
    report.iterations = iteration;
    if (report.trace.back().step == StepKind::kDone) {
      break;
    }
  }
  report.m_hat_o = D.psi;
  report.m_hat = D.psi / d_fact;
  report.queries = o.snapshot() - start;
  return report;
}

TraceCheck trace_diagnostics(const EstimateReport& report, const Hypergraph& h) {
  TraceCheck check;
  if (report.brute_force) {
    return check;
  }
  if (!report.config.record_tuples) {
    throw InputError("trace_diagnostics needs a report produced with record_tuples");
  }
  for (const auto& entry : report.trace) {
    double est = entry.psi;
    double act = 0.0;
    for (const auto& t : entry.tuples) {
      const auto m = static_cast<double>(count_ordered(h, t.tuple));
      est += t.weight * m;
      act += m;
    }
    check.est.push_back(est);
    check.act.push_back(act);
  }
  const double lambda = report.config.lambda(h.arity(), h.vertex_count());
  for (std::size_t i = 1; i < check.est.size(); ++i) {
    ++check.drift_checks;
    if (std::abs(check.est[i] - check.est[i - 1]) > lambda * check.est[i - 1]) {
      check.drift_violations.push_back(static_cast<int>(i));
    }
  }
  for (std::size_t i = 0; i + 2 < check.act.size(); ++i) {
    ++check.halving_checks;
    if (check.act[i + 2] > check.act[i] / 2.0) {
      check.halving_violations.push_back(static_cast<int>(i));
    }
  }
  return check;
}

}  // namespace hgcount
