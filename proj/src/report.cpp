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

#include "hgcount/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace hgcount {

namespace {

std::string preset_name(Preset p) { return p == Preset::kPaper ? "paper" : "desk"; }

void flatten(const Json& value, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (value.is_object()) {
    for (const auto& [key, child] : value.items()) {
      flatten(child, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (value.is_string()) {
    out.emplace_back(prefix, value.get<std::string>());
  } else {
    out.emplace_back(prefix, value.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string quoted = "\"";
  for (char c : s) {
    quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return quoted + "\"";
}

}  // namespace

Aggregate aggregate(std::span<const double> values, const std::vector<bool>& hits) {
  Aggregate agg;
  if (!values.empty()) {
    agg.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  }
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) {
      ss += (v - agg.mean) * (v - agg.mean);
    }
    agg.stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  if (!hits.empty()) {
    const auto count = std::count(hits.begin(), hits.end(), true);
    agg.band_hit_rate = static_cast<double>(count) / static_cast<double>(hits.size());
  }
  return agg;
}

Json to_json(const QueryLedger& ledger) {
  Json j;
  j["cid"] = ledger.cid;
  j["cid1"] = ledger.cid1;
  j["cid2"] = ledger.cid2;
  j["cid2o"] = ledger.cid2o;
  j["cid_equivalent"] = ledger.cid_equivalent();
  return j;
}

Json to_json(const SimulationConfig& config) {
  Json j;
  j["cid1_repetitions"] = config.cid1_repetitions;
  j["exact_cid1"] = config.exact_cid1;
  j["exact_cid2"] = config.exact_cid2;
  j["cid2o_route"] = config.cid2o_route == Cid2oRoute::kDelegated ? "delegated" : "ground-truth";
  return j;
}

Json to_json(const RoughConfig& config) {
  Json j;
  j["preset"] = preset_name(config.preset);
  j["gamma_multiplier"] = config.gamma_multiplier;
  j["acceptance_fraction"] = config.acceptance_fraction;
  j["ladder_top_exponent"] = config.ladder_top_exponent;
  j["output_divisor"] = config.output_divisor;
  return j;
}

Json to_json(const PipelineConfig& config) {
  Json j;
  j["preset"] = preset_name(config.preset);
  j["epsilon"] = config.epsilon;
  j["k"] = config.k;
  j["theta"] = config.theta;
  j["tau"] = config.tau;
  j["population"] = config.population;
  j["kappa"] = config.kappa;
  j["alpha"] = config.alpha;
  j["importance_c"] = config.importance_c;
  j["epsilon_fallback"] = config.epsilon_fallback;
  j["cost_fallback"] = config.cost_fallback;
  j["rough"] = to_json(config.rough);
  return j;
}

Json to_json(const TraceEntry& entry) {
  Json j;
  j["iteration"] = entry.iteration;
  j["step"] = to_string(entry.step);
  j["psi"] = entry.psi;
  j["tuples"] = entry.tuple_count;
  j["exact_gain"] = entry.exact_gain;
  j["coarse_proxy"] = entry.coarse_proxy;
  j["rescale_factors"] = entry.rescale_factors;
  j["ledger"] = to_json(entry.queries);
  return j;
}

Json instance_summary(const Hypergraph& h) {
  Json j;
  j["d"] = h.arity();
  j["n"] = h.vertex_count();
  j["m"] = h.edge_count();
  j["m_o"] = h.ordered_edge_count();
  std::size_t max_degree = 0;
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    max_degree = std::max(max_degree, h.degree(v));
  }
  j["max_degree"] = max_degree;
  return j;
}

Json make_report(Json config, Json summary, Json per_trial, const Aggregate& agg, const QueryLedger& ledger) {
  Json j;
  j["config"] = std::move(config);
  j["instance_summary"] = std::move(summary);
  j["per_trial"] = std::move(per_trial);
  j["aggregate"] = Json{{"mean", agg.mean}, {"stdev", agg.stdev}, {"band_hit_rate", agg.band_hit_rate}};
  j["ledger"] = to_json(ledger);
  return j;
}

std::string to_csv(const Json& report) {
  std::vector<std::pair<std::string, std::string>> fixed;
  flatten(report.at("config"), "config", fixed);
  flatten(report.at("instance_summary"), "instance", fixed);
  std::ostringstream out;
  bool header_done = false;
  for (const auto& trial : report.at("per_trial")) {
    std::vector<std::pair<std::string, std::string>> row = fixed;
    flatten(trial, "trial", row);
    if (!header_done) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << csv_field(row[i].first);
      }
      out << '\n';
      header_done = true;
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_field(row[i].second);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace hgcount
