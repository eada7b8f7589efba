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

#include "hgcount/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace hgcount {

std::size_t importance_quota(const ImportanceConfig& cfg, std::size_t buckets) {
  if (!(cfg.lambda > 0.0)) {
    throw InputError("importance sampling needs lambda > 0");
  }
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw InputError("importance sampling needs delta in (0, 1)");
  }
  if (!(cfg.alpha >= 1.0) || !(cfg.c > 0.0)) {
    throw InputError("importance sampling needs alpha >= 1 and c > 0");
  }
  const double b = static_cast<double>(std::max<std::size_t>(buckets, 1));
  const double raw = std::ceil(cfg.c * cfg.alpha * cfg.alpha * std::log(b / cfg.delta) / (cfg.lambda * cfg.lambda));
  std::size_t quota = raw >= 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(std::max(1.0, raw));
  if (cfg.max_output > 0) {
    quota = std::min(quota, std::max<std::size_t>(1, cfg.max_output / static_cast<std::size_t>(b)));
  }
  return quota;
}

std::vector<ImportanceChoice> importance_sample_indices(std::span<const double> weights,
                                                        std::span<const double> estimates,
                                                        const ImportanceConfig& cfg, Rng& rng) {
  if (weights.size() != estimates.size()) {
    throw InputError("importance sampling needs one estimate per weight");
  }
  std::map<int, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !(estimates[i] > 0.0)) {
      throw InputError("importance sampling needs positive weights and estimates");
    }
    buckets[static_cast<int>(std::floor(std::log2(weights[i] * estimates[i])))].push_back(i);
  }
  const std::size_t quota = importance_quota(cfg, buckets.size());
  std::vector<ImportanceChoice> out;
  for (auto& [key, members] : buckets) {
    if (members.size() <= quota) {
      for (auto i : members) {
        out.push_back({i, 1.0});
      }
      continue;
    }
    // Partial Fisher-Yates: the first `quota` slots become a uniform sample.
    for (std::size_t s = 0; s < quota; ++s) {
      std::uniform_int_distribution<std::size_t> pick(s, members.size() - 1);
      std::swap(members[s], members[pick(rng)]);
    }
    const double factor = static_cast<double>(members.size()) / static_cast<double>(quota);
    for (std::size_t s = 0; s < quota; ++s) {
      out.push_back({members[s], factor});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  return out;
}

std::vector<WeightedTuple> importance_sample(std::span<const WeightedTuple> tuples, std::span<const CoarseTag> tags,
                                             const ImportanceConfig& cfg, Rng& rng) {
  if (tuples.size() != tags.size()) {
    throw InputError("importance sampling needs one tag per tuple");
  }
  std::vector<double> weights(tuples.size());
  std::vector<double> estimates(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    weights[i] = tuples[i].weight;
    estimates[i] = tags[i].estimate;
  }
  std::vector<WeightedTuple> out;
  for (const auto& choice : importance_sample_indices(weights, estimates, cfg, rng)) {
    auto t = tuples[choice.index];
    t.weight *= choice.factor;
    t.rescale *= choice.factor;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace hgcount
