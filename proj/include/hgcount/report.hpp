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

#ifndef HGCOUNT_REPORT_HPP
#define HGCOUNT_REPORT_HPP

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "hgcount/hypergraph.hpp"
#include "hgcount/oracle.hpp"
#include "hgcount/pipeline.hpp"

namespace hgcount {

using Json = nlohmann::ordered_json;

struct Aggregate {
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation; 0 for fewer than 2 values
  double band_hit_rate = 0.0;
};

Aggregate aggregate(std::span<const double> values, const std::vector<bool>& hits);

Json to_json(const QueryLedger& ledger);
Json to_json(const SimulationConfig& config);
Json to_json(const RoughConfig& config);
Json to_json(const PipelineConfig& config);
Json to_json(const TraceEntry& entry);
Json instance_summary(const Hypergraph& h);

/// {config, instance_summary, per_trial, aggregate, ledger} in that order.
Json make_report(Json config, Json summary, Json per_trial, const Aggregate& agg, const QueryLedger& ledger);

/// One header row plus one row per trial. Every config field is repeated on
/// each row (nested keys joined with '.'); nested per-trial values are
/// flattened the same way and arrays are serialized as JSON text.
std::string to_csv(const Json& report);

}  // namespace hgcount

#endif  // HGCOUNT_REPORT_HPP
