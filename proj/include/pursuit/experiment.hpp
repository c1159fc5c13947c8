#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pursuit/errors.hpp"
#include "pursuit/omp.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/sensing.hpp"

// Monte-Carlo phase sweep over sparsity levels. Every (K, trial) cell is
// seeded independently via rng::combine, so cells are reproducible in
// isolation and the sweep is order-independent.

namespace pursuit::experiment {

struct ExperimentConfig {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k_min = 0;  // inclusive
  std::size_t k_max = 0;  // inclusive
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string ensemble;  // "gaussian"
  std::string output_path;
};

struct PhaseCell {
  std::size_t k;
  std::size_t success_count;
  std::size_t trials;
  double mean_mu;
  double condition_fraction;  // share of trials with mu < 1/(2K-1)
};

// Strict parse: exactly the fields m, n, k_range, trials, seed, ensemble,
// output_path, with k_range a two-element inclusive [lo, hi] array.
inline ExperimentConfig parse_config(const nlohmann::json& j) {
  static const std::vector<std::string> kFields = {
      "m", "n", "k_range", "trials", "seed", "ensemble", "output_path"};
  if (!j.is_object()) throw ValueError("config must be a JSON object");
  for (const auto& field : kFields)
    if (!j.contains(field))
      throw ValueError("config missing field '" + field + "'");
  for (const auto& [key, value] : j.items())
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end())
      throw ValueError("config has unknown field '" + key + "'");

  ExperimentConfig cfg;
  try {
    cfg.m = j.at("m").get<std::size_t>();
    cfg.n = j.at("n").get<std::size_t>();
    const auto range = j.at("k_range");
    if (!range.is_array() || range.size() != 2)
      throw ValueError("k_range must be [lo, hi]");
    cfg.k_min = range[0].get<std::size_t>();
    cfg.k_max = range[1].get<std::size_t>();
    cfg.trials = j.at("trials").get<std::size_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.ensemble = j.at("ensemble").get<std::string>();
    cfg.output_path = j.at("output_path").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ValueError(std::string("config field has wrong type: ") + e.what());
  }

  if (cfg.m == 0 || cfg.n == 0) throw ValueError("config: m, n must be positive");
  if (cfg.trials < 1) throw ValueError("config: trials must be >= 1");
  const std::size_t k_cap = std::min(cfg.m, cfg.n);
  if (cfg.k_min < 1 || cfg.k_max < cfg.k_min || cfg.k_max > k_cap)
    throw ValueError("config: k_range must lie within [1, min(m, n)]");
  if (cfg.ensemble != "gaussian")
    throw ValueError("config: ensemble must be 'gaussian'");
  return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValueError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

// K-sparse test signal: support drawn uniformly without replacement by
// partial Fisher-Yates, values i.i.d. standard normal with |v| < 1e-6
// redrawn so the sparsity level is exact.
inline sensing::SparseSignal random_sparse_signal(std::size_t n, std::size_t k,
                                                  rng::Xorshift64Star& gen) {
  if (k == 0 || k > n)
    throw DimensionError("random_sparse_signal: need 1 <= K <= n");
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + gen.next_below(n - i);
    std::swap(indices[i], indices[j]);
  }
  std::vector<std::size_t> support(indices.begin(), indices.begin() + k);
  std::sort(support.begin(), support.end());

  std::vector<double> values(k);
  for (double& v : values) {
    do {
      v = gen.next_gaussian();
    } while (std::abs(v) < 1e-6);
  }
  return sensing::SparseSignal(n, std::move(support), std::move(values));
}

// One seeded trial: a fresh matrix and signal, recovery success, and the
// measured coherence.
struct TrialOutcome {
  bool success;
  double mu;
  bool condition_holds;
};

// Seed chain, fixed for reproducibility: cell = combine(combine(seed, K), i),
// matrix stream seeded with combine(cell, 0), signal stream with
// combine(cell, 1).
inline TrialOutcome run_trial(const ExperimentConfig& cfg, std::size_t k,
                              std::size_t trial_index) {
  const std::uint64_t cell = rng::combine(rng::combine(cfg.seed, k), trial_index);
  const sensing::SensingMatrix phi =
      sensing::gaussian_ensemble(cfg.m, cfg.n, rng::combine(cell, 0));
  rng::Xorshift64Star signal_gen(rng::combine(cell, 1));
  const sensing::SparseSignal x = random_sparse_signal(cfg.n, k, signal_gen);

  const double mu = sensing::coherence(phi).mu;
  const bool condition = mu < 1.0 / (2.0 * static_cast<double>(k) - 1.0);
  const bool success = omp::exact_recovery(phi, x).success;
  return {success, mu, condition};
}

inline std::vector<PhaseCell> run_phase(const ExperimentConfig& cfg) {
  std::vector<PhaseCell> cells;
  for (std::size_t k = cfg.k_min; k <= cfg.k_max; ++k) {
    PhaseCell cell{k, 0, cfg.trials, 0.0, 0.0};
    double mu_sum = 0.0;
    std::size_t condition_count = 0;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const TrialOutcome outcome = run_trial(cfg, k, i);
      if (outcome.success) ++cell.success_count;
      if (outcome.condition_holds) ++condition_count;
      mu_sum += outcome.mu;
    }
    cell.mean_mu = mu_sum / static_cast<double>(cfg.trials);
    cell.condition_fraction =
        static_cast<double>(condition_count) / static_cast<double>(cfg.trials);
    cells.push_back(cell);
  }
  return cells;
}

inline std::string phase_csv(const std::vector<PhaseCell>& cells) {
  std::string csv = "K,trials,successes,mean_mu,theorem1_fraction\n";
  char buf[128];
  for (const PhaseCell& c : cells) {
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%zu,%.17g,%.17g\n", c.k, c.trials,
                  c.success_count, c.mean_mu, c.condition_fraction);
    csv += buf;
  }
  return csv;
}

}  // namespace pursuit::experiment
