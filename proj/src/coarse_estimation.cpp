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

#include "hgcount/coarse_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "hgcount/exact_count.hpp"
#include "hgcount/math.hpp"

namespace hgcount {

RoughConfig RoughConfig::paper(int d) {
  RoughConfig cfg;
  cfg.gamma_multiplier = d * ipow(4.0, d) * 2000.0;
  cfg.acceptance_fraction = 1.0 / (10.0 * ipow(2.0, d));
  cfg.preset = Preset::kPaper;
  return cfg;
}

RoughConfig RoughConfig::desk(int d) {
  RoughConfig cfg;
  cfg.gamma_multiplier = 64.0;
  cfg.acceptance_fraction = 1.0 / (10.0 * ipow(2.0, d));
  cfg.preset = Preset::kDesk;
  return cfg;
}

int RoughConfig::gamma(std::size_t n) const {
  const int log_n = std::max(1, ceil_log2(n));
  return std::max(1, static_cast<int>(std::ceil(gamma_multiplier * log_n)));
}

int RoughConfig::top_exponent(int d, std::size_t n) const {
  return ladder_top_exponent >= 0 ? ladder_top_exponent : d * ceil_log2(n);
}

double RoughConfig::divisor(int d, std::size_t n) const {
  if (output_divisor > 0.0) {
    return output_divisor;
  }
  const double log_n = std::max(1, ceil_log2(n));
  return ipow(d, d - 2) * ipow(2.0, d) * ipow(log_n, d - 2);
}

namespace {

class Verifier {
 public:
  Verifier(OracleHandle& o, double r_hat, Rng& rng, std::span<const VertexSet> universe)
      : o_(o), rng_(rng), r_hat_(r_hat), d_(o.arity()), n_(o.vertex_count()) {
    const int log_n = ceil_log2(n_);
    top_ = d_ * log_n;
    boost_ = static_cast<double>(d_ * log_n);
    for (const auto& u : universe) {
      members_.push_back(u.to_vector());
    }
    b_.assign(static_cast<std::size_t>(d_), VertexSet(n_));
    j_.assign(static_cast<std::size_t>(d_ - 1), 0);
  }

  VerifyOutcome run() {
    VerifyOutcome out;
    out.accepted = level(0, 0, false);
    out.queries = queries_;
    if (out.accepted) {
      out.guess = j_;
    }
    return out;
  }

 private:
  VertexSet draw(std::size_t i, double p, bool skip) {
    if (skip) {
      return VertexSet(n_);
    }
    return sample_subset(members_[i], n_, p, rng_);
  }

  bool level(int i, int prev_j, bool any_empty) {
    const auto iu = static_cast<std::size_t>(i);
    for (int j = top_; j >= 0; --j) {
      const double p = i == 0 ? std::min(std::ldexp(1.0, j) / r_hat_, 1.0)
                              : std::min(std::ldexp(boost_, j - prev_j), 1.0);
      b_[iu] = draw(iu, p, any_empty);
      j_[iu] = j;
      const bool empty_here = any_empty || b_[iu].empty();
      if (i == d_ - 2) {
        const auto last = static_cast<std::size_t>(d_ - 1);
        b_[last] = draw(last, std::min(std::ldexp(1.0, -j), 1.0), empty_here);
        ++queries_;
        if (o_.cid2o(b_)) {
          return true;
        }
      } else if (level(i + 1, j, empty_here)) {
        return true;
      }
    }
    return false;
  }

  OracleHandle& o_;
  Rng& rng_;
  double r_hat_;
  int d_;
  std::size_t n_;
  int top_ = 0;
  double boost_ = 1.0;
  std::vector<std::vector<Vertex>> members_;
  std::vector<VertexSet> b_;
  GuessVector j_;
  std::uint64_t queries_ = 0;
};

std::string guess_string(const GuessVector& j) {
  std::string s = "(";
  for (std::size_t i = 0; i < j.size(); ++i) {
    s += (i ? "," : "") + std::to_string(j[i]);
  }
  return s + ")";
}

RoughResult run_ladder(OracleHandle& o, const RoughConfig& cfg, std::span<const VertexSet> universe, int top,
                       Rng& rng) {
  const int d = o.arity();
  const std::size_t n = o.vertex_count();
  const auto before = o.snapshot();
  RoughResult result;
  result.gamma = cfg.gamma(n);
  const double threshold = cfg.acceptance_fraction * result.gamma;
  for (int e = top; e >= 0; --e) {
    const double r_hat = std::ldexp(1.0, e);
    ++result.rungs_tried;
    int accepted = 0;
    for (int t = 0; t < result.gamma; ++t) {
      auto outcome = verify_estimate(o, r_hat, rng, universe);
      if (outcome.accepted) {
        ++accepted;
        if (spdlog::should_log(spdlog::level::trace)) {
          spdlog::trace("verify-estimate accepted R=2^{} at j={}", e, guess_string(*outcome.guess));
        }
      }
    }
    if (static_cast<double>(accepted) > threshold) {
      result.found = true;
      result.r_hat = r_hat;
      result.accepted_exponent = e;
      result.acceptances = accepted;
      result.m_hat_o = r_hat / cfg.divisor(d, n);
      break;
    }
  }
  result.queries = o.snapshot() - before;
  spdlog::debug("rough estimation: found={} R=2^{} after {} rungs", result.found, result.accepted_exponent,
                result.rungs_tried);
  return result;
}

}  // namespace

VerifyOutcome verify_estimate(OracleHandle& o, double r_hat, Rng& rng, std::span<const VertexSet> universe) {
  if (!(r_hat >= 1.0)) {
    throw InputError("verify_estimate needs R_hat >= 1");
  }
  if (universe.size() != static_cast<std::size_t>(o.arity())) {
    throw InputError("verify_estimate needs one universe set per position");
  }
  return Verifier(o, r_hat, rng, universe).run();
}

VerifyOutcome verify_estimate(OracleHandle& o, double r_hat, Rng& rng) {
  const std::vector<VertexSet> universe(static_cast<std::size_t>(o.arity()), VertexSet::full(o.vertex_count()));
  return verify_estimate(o, r_hat, rng, universe);
}

RoughResult rough_estimation(OracleHandle& o, const RoughConfig& cfg, Rng& rng) {
  const std::vector<VertexSet> universe(static_cast<std::size_t>(o.arity()), VertexSet::full(o.vertex_count()));
  return run_ladder(o, cfg, universe, cfg.top_exponent(o.arity(), o.vertex_count()), rng);
}

RoughResult rough_estimation(OracleHandle& o, const RoughConfig& cfg, const PartedTuple& t, Rng& rng) {
  if (t.arity() != o.arity() || t.universe() != o.vertex_count()) {
    throw InputError("parted tuple does not match the oracle's d and n");
  }
  int top = cfg.ladder_top_exponent;
  if (top < 0) {
    top = 0;
    const double volume = t.position_volume();
    while (std::ldexp(1.0, top) < volume) {
      ++top;
    }
  }
  const auto positions = t.positions();
  return run_ladder(o, cfg, positions, top, rng);
}

UnorderedRough rough_estimation_unordered(OracleHandle& o, const RoughConfig& cfg, Rng& rng) {
  UnorderedRough out;
  out.ordered = rough_estimation(o, cfg, rng);
  const double d_fact = static_cast<double>(factorial(o.arity()));
  if (out.ordered.found) {
    out.m_hat = out.ordered.m_hat_o / d_fact;
    return out;
  }
  const auto check = exact_count(o, PartedTuple::whole(o.vertex_count(), o.arity()), 0);
  out.confirmed_empty = check.at_most();
  out.m_hat = out.confirmed_empty ? 0.0 : 1.0;
  return out;
}

}  // namespace hgcount
