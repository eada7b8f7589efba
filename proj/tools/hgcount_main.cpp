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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "hgcount/claims.hpp"
#include "hgcount/coarse_estimation.hpp"
#include "hgcount/exact_count.hpp"
#include "hgcount/generators.hpp"
#include "hgcount/hypergraph_io.hpp"
#include "hgcount/math.hpp"
#include "hgcount/pipeline.hpp"
#include "hgcount/report.hpp"

namespace {

using namespace hgcount;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct InstanceSource {
  std::string path;
  std::string kind = "random";
  std::size_t n = 0;
  int d = 2;
  std::size_t m = 0;
  double skew = 1.0;
  std::optional<std::uint64_t> seed;

  void add_options(CLI::App* app) {
    app->add_option("--instance", path, ".hg file to load");
    app->add_option("--kind", kind, "generator when no file is given")
        ->check(CLI::IsMember({"random", "skewed", "star", "complete"}));
    app->add_option("--n", n, "generator vertex count");
    app->add_option("--d", d, "generator arity");
    app->add_option("--m", m, "generator edge count");
    app->add_option("--skew", skew, "skew exponent for --kind skewed");
    app->add_option("--instance-seed", seed, "generator seed (required for generated instances)");
  }

  Hypergraph load() const {
    if (!path.empty()) {
      return load_hypergraph(path);
    }
    if (n == 0) {
      throw CLI::ValidationError("instance", "give --instance FILE or generator parameters --n/--d/--m");
    }
    if (kind == "complete") {
      return complete(n, d);
    }
    if (!seed) {
      throw CLI::ValidationError("--instance-seed", "generated instances need an explicit seed");
    }
    if (kind == "skewed") {
      return generate_skewed(n, d, m, skew, *seed);
    }
    if (kind == "star") {
      return star(n, d, m, *seed);
    }
    return generate_random(n, d, m, *seed);
  }

  Json describe() const {
    Json j;
    if (!path.empty()) {
      j["file"] = path;
    } else {
      j["kind"] = kind;
      j["n"] = n;
      j["d"] = d;
      j["m"] = m;
      if (kind == "skewed") {
        j["skew"] = skew;
      }
      if (seed) {
        j["seed"] = *seed;
      }
    }
    return j;
  }
};

struct OracleFlags {
  std::string route = "delegated";
  bool exact_cid1 = false;
  bool exact_cid2 = false;
  int repetitions = 0;

  void add_options(CLI::App* app) {
    app->add_option("--route", route, "CID2o routing")->check(CLI::IsMember({"delegated", "ground-truth"}));
    app->add_flag("--exact-cid1", exact_cid1, "answer CID1 from ground truth");
    app->add_flag("--exact-cid2", exact_cid2, "answer CID2 from ground truth (meeting semantics)");
    app->add_option("--repetitions", repetitions, "CID1 partition rounds (0 = default)")->check(CLI::NonNegativeNumber);
  }

  SimulationConfig config() const {
    SimulationConfig c;
    c.cid1_repetitions = repetitions;
    c.exact_cid1 = exact_cid1;
    c.exact_cid2 = exact_cid2;
    c.cid2o_route = route == "ground-truth" ? Cid2oRoute::kGroundTruth : Cid2oRoute::kDelegated;
    return c;
  }
};

struct OutputFlags {
  std::string format = "json";
  std::string out;

  void add_options(CLI::App* app) {
    app->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", out, "write the report here instead of stdout");
  }

  void emit(const Json& report) const {
    const std::string text = format == "csv" ? to_csv(report) : report.dump(2) + "\n";
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) {
      throw InputError("cannot write " + out);
    }
    file << text;
  }
};

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("hgcount");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("HGCOUNT_LOG");
  const std::string level = env != nullptr ? env : "";
  if (level == "quiet") {
    spdlog::set_level(spdlog::level::off);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "trace") {
    spdlog::set_level(spdlog::level::trace);
  } else {
    spdlog::set_level(spdlog::level::warn);
  }
}

// Accepted band for the coarse estimate of m_o.
bool in_rough_band(double m_hat_o, double m_o, int d, std::size_t n) {
  const double L = std::max(1, ceil_log2(n));
  const double spread = ipow(d, d - 1) * ipow(2.0, d) * ipow(L, d - 1);
  return m_hat_o >= m_o / (8.0 * spread) && m_hat_o <= 20.0 * spread * m_o;
}

PartedTuple parse_parts(const std::string& spec, std::size_t n, int d) {
  std::vector<Part> parts;
  std::stringstream entries(spec);
  std::string entry;
  while (std::getline(entries, entry, ';')) {
    if (entry.empty()) {
      continue;
    }
    const auto colon = entry.rfind(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--parts", "entry '" + entry + "' lacks ':multiplicity'");
    }
    Part part{VertexSet(n), 0};
    try {
      part.multiplicity = std::stoi(entry.substr(colon + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--parts", "bad multiplicity in '" + entry + "'");
    }
    const std::string sets = entry.substr(0, colon);
    if (sets == "all") {
      part.set = VertexSet::full(n);
    } else {
      std::stringstream ranges(sets);
      std::string range;
      while (std::getline(ranges, range, '+')) {
        try {
          const auto dash = range.find('-');
          const auto lo = static_cast<Vertex>(std::stoul(range.substr(0, dash)));
          const auto hi = dash == std::string::npos ? lo : static_cast<Vertex>(std::stoul(range.substr(dash + 1)));
          if (hi < lo) {
            throw CLI::ValidationError("--parts", "empty range '" + range + "'");
          }
          part.set |= VertexSet::range(n, lo, hi + 1);
        } catch (const std::logic_error&) {
          throw CLI::ValidationError("--parts", "bad range '" + range + "'");
        }
      }
    }
    parts.push_back(std::move(part));
  }
  return PartedTuple(d, std::move(parts));
}

Json base_config(const std::string& command, const InstanceSource& src, std::uint64_t seed) {
  Json j;
  j["command"] = command;
  j["instance"] = src.describe();
  j["seed"] = seed;
  return j;
}

// Runs fn(0..trials-1) on up to `jobs` threads. Results keep trial order, so
// the report does not depend on scheduling.
template <class Fn>
auto run_trials(int trials, int jobs, Fn fn) -> std::vector<decltype(fn(0))> {
  std::vector<decltype(fn(0))> results(static_cast<std::size_t>(trials));
  const int workers = std::clamp(jobs, 1, std::max(trials, 1));
  if (workers == 1) {
    for (int t = 0; t < trials; ++t) {
      results[static_cast<std::size_t>(t)] = fn(t);
    }
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int t = next++; t < trials; t = next++) {
          results[static_cast<std::size_t>(t)] = fn(t);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
        next = trials;
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return results;
}

int cmd_gen(const InstanceSource& src, const std::string& out) {
  const auto h = src.load();
  if (out.empty()) {
    write_hypergraph(h, std::cout);
  } else {
    store_hypergraph(h, out);
  }
  return kExitPass;
}

int cmd_rough(const InstanceSource& src, const OracleFlags& oracle, const OutputFlags& output, std::uint64_t seed,
              const std::string& preset, int trials, int jobs, double min_band_rate) {
  auto h = std::make_shared<const Hypergraph>(src.load());
  const int d = h->arity();
  const auto rough = preset == "paper" ? RoughConfig::paper(d) : RoughConfig::desk(d);
  const double m_o = static_cast<double>(h->ordered_edge_count());
  Json per_trial = Json::array();
  std::vector<double> values;
  std::vector<bool> hits;
  QueryLedger total;
  const auto results = run_trials(trials, jobs, [&](int t) {
    const auto trial_seed = derive(seed, static_cast<std::uint64_t>(StreamTag::kTrial), static_cast<std::uint64_t>(t));
    OracleHandle o(h, oracle.config(), trial_seed);
    auto rng = make_rng(trial_seed, StreamTag::kRough);
    return rough_estimation(o, rough, rng);
  });
  for (int t = 0; t < trials; ++t) {
    const auto& r = results[static_cast<std::size_t>(t)];
    const bool hit = r.found && in_rough_band(r.m_hat_o, m_o, d, h->vertex_count());
    Json row;
    row["trial"] = t;
    row["verdict"] = r.found ? "estimate" : "NotFound";
    row["m_hat_o"] = r.found ? Json(r.m_hat_o) : Json(nullptr);
    row["r_hat_exponent"] = r.accepted_exponent;
    row["acceptances"] = r.acceptances;
    row["gamma"] = r.gamma;
    row["rungs_tried"] = r.rungs_tried;
    row["band_hit"] = hit;
    row["ledger"] = to_json(r.queries);
    per_trial.push_back(std::move(row));
    if (r.found) {
      values.push_back(r.m_hat_o);
    }
    hits.push_back(hit);
    total += r.queries;
  }
  Json config = base_config("rough", src, seed);
  config["trials"] = trials;
  config["rough"] = to_json(rough);
  config["oracle"] = to_json(oracle.config());
  const auto agg = aggregate(values, hits);
  output.emit(make_report(std::move(config), instance_summary(*h), std::move(per_trial), agg, total));
  return agg.band_hit_rate >= min_band_rate ? kExitPass : kExitCheckFailed;
}

int cmd_exact(const InstanceSource& src, const OracleFlags& oracle, const OutputFlags& output, std::uint64_t seed,
              const std::string& parts_spec, std::uint64_t tau, std::optional<std::uint64_t> expect) {
  auto h = std::make_shared<const Hypergraph>(src.load());
  const auto tuple = parse_parts(parts_spec, h->vertex_count(), h->arity());
  OracleHandle o(h, oracle.config(), derive(seed, static_cast<std::uint64_t>(StreamTag::kTrial), 0));
  const auto r = exact_count(o, tuple, tau);
  Json row;
  row["verdict"] = r.at_most() ? "AtMost" : "Exceeds";
  row["count"] = r.at_most() ? Json(r.count) : Json(nullptr);
  row["nodes"] = r.nodes;
  row["budget"] = r.budget;
  Json config = base_config("exact", src, seed);
  config["parts"] = parts_spec;
  config["tau"] = tau;
  config["oracle"] = to_json(oracle.config());
  const double value = r.at_most() ? static_cast<double>(r.count) : 0.0;
  bool ok = true;
  if (expect) {
    ok = r.at_most() && r.count == *expect;
    row["expected"] = *expect;
  }
  const std::vector<double> values{value};
  const std::vector<bool> hits{ok};
  const auto ledger = o.snapshot();
  output.emit(make_report(std::move(config), instance_summary(*h), Json::array({row}), aggregate(values, hits),
                          ledger));
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_estimate(const InstanceSource& src, const OracleFlags& oracle, const OutputFlags& output, std::uint64_t seed,
                 const std::string& preset, int trials, int jobs, double eps, bool with_trace,
                 double min_hit_rate) {
  auto h = std::make_shared<const Hypergraph>(src.load());
  const int d = h->arity();
  auto cfg = preset == "paper" ? PipelineConfig::paper(d, eps) : PipelineConfig::desk(d, eps);
  const double m = static_cast<double>(h->edge_count());
  Json per_trial = Json::array();
  std::vector<double> values;
  std::vector<bool> hits;
  QueryLedger total;
  const auto reports = run_trials(trials, jobs, [&](int t) {
    const auto trial_seed = derive(seed, static_cast<std::uint64_t>(StreamTag::kTrial), static_cast<std::uint64_t>(t));
    OracleHandle o(h, oracle.config(), trial_seed);
    return estimate(o, cfg, trial_seed);
  });
  for (int t = 0; t < trials; ++t) {
    const auto& report = reports[static_cast<std::size_t>(t)];
    const double rel = m == 0 ? (report.m_hat == 0 ? 0.0 : 1.0) : std::abs(report.m_hat - m) / m;
    const bool hit = rel <= eps;
    Json row;
    row["trial"] = t;
    row["m_hat"] = report.m_hat;
    row["m_hat_o"] = report.m_hat_o;
    row["relative_error"] = rel;
    row["hit"] = hit;
    row["iterations"] = report.iterations;
    row["brute_force"] = report.brute_force;
    row["aborted"] = report.aborted;
    row["max_tuples"] = report.max_tuples;
    row["ledger"] = to_json(report.queries);
    if (with_trace) {
      Json trace = Json::array();
      for (const auto& e : report.trace) {
        trace.push_back(to_json(e));
      }
      row["trace"] = std::move(trace);
    }
    per_trial.push_back(std::move(row));
    values.push_back(report.m_hat);
    hits.push_back(hit);
    total += report.queries;
  }
  Json config = base_config("estimate", src, seed);
  config["trials"] = trials;
  config["pipeline"] = to_json(cfg);
  config["resolved"] = Json{{"tau", cfg.resolved_tau(d, h->vertex_count())},
                            {"population", cfg.resolved_population(d, h->vertex_count())},
                            {"lambda", cfg.lambda(d, h->vertex_count())}};
  config["oracle"] = to_json(oracle.config());
  const auto agg = aggregate(values, hits);
  output.emit(make_report(std::move(config), instance_summary(*h), std::move(per_trial), agg, total));
  return agg.band_hit_rate >= min_hit_rate ? kExitPass : kExitCheckFailed;
}

int cmd_verify_claims(const InstanceSource& src, const OracleFlags& oracle, const OutputFlags& output,
                      std::uint64_t seed, const std::string& suite, int trials) {
  auto h = std::make_shared<const Hypergraph>(src.load());
  std::vector<ClaimResult> results;
  const auto want = [&](const std::string& name) { return suite == "all" || suite == name; };
  if (want("upper")) {
    results.push_back(check_upper_acceptance(h, oracle.config(), trials, seed));
  }
  if (want("lower")) {
    results.push_back(check_lower_acceptance(h, oracle.config(), trials, seed));
  }
  if (want("simulation")) {
    results.push_back(check_simulation_soundness(h, trials, seed));
  }
  if (want("buckets")) {
    results.push_back(check_bucket_claim(*h));
  }
  if (want("sparsify")) {
    results.push_back(check_sparsify_unbiased(*h, 4, trials, seed));
  }
  Json per_trial = Json::array();
  std::vector<double> values;
  std::vector<bool> hits;
  bool all_pass = true;
  for (const auto& r : results) {
    Json row;
    row["check"] = r.name;
    row["applicable"] = r.applicable;
    row["passed"] = r.passed;
    row["measured"] = r.measured;
    row["bound"] = r.bound;
    row["sigma"] = r.sigma;
    row["ci_low"] = r.measured - 3.0 * r.sigma;
    row["ci_high"] = r.measured + 3.0 * r.sigma;
    row["trials"] = r.trials;
    row["detail"] = r.detail;
    per_trial.push_back(std::move(row));
    if (r.applicable) {
      values.push_back(r.measured);
      hits.push_back(r.passed);
      all_pass = all_pass && r.passed;
    }
    spdlog::info("{}: {} (measured {}, bound {})", r.name, r.applicable ? (r.passed ? "pass" : "FAIL") : "n/a",
                 r.measured, r.bound);
  }
  Json config = base_config("verify-claims", src, seed);
  config["suite"] = suite;
  config["trials"] = trials;
  config["oracle"] = to_json(oracle.config());
  output.emit(make_report(std::move(config), instance_summary(*h), std::move(per_trial), aggregate(values, hits),
                          QueryLedger{}));
  return all_pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Hyperedge counting with colorful independence oracles"};
  app.require_subcommand(1);

  InstanceSource src;
  OracleFlags oracle;
  OutputFlags output;
  std::uint64_t seed = 1;
  std::string preset = "desk";
  int trials = 1;
  int jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));

  auto* gen = app.add_subcommand("gen", "generate a .hg instance");
  src.add_options(gen);
  std::string gen_out;
  gen->add_option("--out", gen_out, "output path (stdout when omitted)");

  auto common = [&](CLI::App* sub, bool with_trials) {
    src.add_options(sub);
    oracle.add_options(sub);
    output.add_options(sub);
    sub->add_option("--seed", seed, "master seed");
    if (with_trials) {
      sub->add_option("--trials", trials, "independent trials")->check(CLI::PositiveNumber);
      sub->add_option("--jobs", jobs, "worker threads for trials (default: hardware threads)")
          ->check(CLI::PositiveNumber);
    }
  };

  auto* rough = app.add_subcommand("rough", "run the coarse estimator");
  common(rough, true);
  rough->add_option("--preset", preset)->check(CLI::IsMember({"desk", "paper"}));
  double min_band_rate = 0.0;
  rough->add_option("--min-band-rate", min_band_rate, "exit 1 when the band hit rate is lower");

  auto* exact = app.add_subcommand("exact", "run the exact counter on a parted tuple");
  common(exact, false);
  std::string parts = "all:2";
  std::uint64_t tau = 64;
  std::optional<std::uint64_t> expect;
  exact->add_option("--parts", parts, "parts, e.g. '0-31:1;32-63:1' or 'all:3'");
  exact->add_option("--tau", tau, "threshold");
  exact->add_option("--expect", expect, "exit 1 unless AtMost(expect)");

  auto* est = app.add_subcommand("estimate", "run the full estimator");
  common(est, true);
  est->add_option("--preset", preset)->check(CLI::IsMember({"desk", "paper"}));
  double eps = 0.3;
  bool with_trace = false;
  double min_hit_rate = 0.0;
  est->add_option("--eps", eps, "target relative error")->check(CLI::Range(0.0, 1.0));
  est->add_flag("--trace", with_trace, "include iteration traces");
  est->add_option("--min-hit-rate", min_hit_rate, "exit 1 when fewer trials land within eps");

  auto* claims = app.add_subcommand("verify-claims", "Monte Carlo and exhaustive claim checks");
  common(claims, true);
  std::string suite = "all";
  claims->add_option("--suite", suite)->check(CLI::IsMember({"all", "upper", "lower", "simulation", "buckets",
                                                             "sparsify"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*gen) {
      return cmd_gen(src, gen_out);
    }
    if (*rough) {
      return cmd_rough(src, oracle, output, seed, preset, trials, jobs, min_band_rate);
    }
    if (*exact) {
      if (!exact->count("--parts")) {
        parts = "all:" + std::to_string(src.path.empty() ? src.d : load_hypergraph(src.path).arity());
      }
      return cmd_exact(src, oracle, output, seed, parts, tau, expect);
    }
    if (*est) {
      return cmd_estimate(src, oracle, output, seed, preset, trials, jobs, eps, with_trace, min_hit_rate);
    }
    if (*claims) {
      if (!claims->count("--trials")) {
        trials = 2000;
      }
      return cmd_verify_claims(src, oracle, output, seed, suite, trials);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitPass;
}
