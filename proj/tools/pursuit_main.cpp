// Command-line front end: coherence audits, recovery runs with trace dumps,
// brute-force isometry constants, boundary counterexamples, and Monte-Carlo
// phase sweeps.
//
// Exit codes: 0 ok, 2 input error, 3 normalization error, 4 rank deficiency,
// 5 construction failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pursuit/pursuit.hpp"

namespace {

using nlohmann::json;
namespace la = pursuit::la;
namespace sensing = pursuit::sensing;
namespace omp = pursuit::omp;
namespace guarantees = pursuit::guarantees;
namespace experiment = pursuit::experiment;
namespace io = pursuit::io;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNormalization = 3;
constexpr int kExitRank = 4;
constexpr int kExitConstruction = 5;

struct GlobalFlags {
  bool json_output = false;
  bool normalize = false;
  bool seed_given = false;
  std::uint64_t seed = 0;
};

sensing::SensingMatrix load_sensing_matrix(const std::string& path,
                                           const GlobalFlags& flags) {
  la::Matrix raw = io::read_matrix_file(path);
  if (flags.normalize) return sensing::normalize_columns(raw);
  return sensing::SensingMatrix(std::move(raw));
}

std::string fmt(double v) { return io::format_double(v); }

int cmd_coherence(const std::string& matrix_file, const GlobalFlags& flags) {
  const sensing::SensingMatrix phi = load_sensing_matrix(matrix_file, flags);
  const sensing::CoherenceReport report = sensing::coherence(phi);

  const bool has_welch = phi.n() > phi.m();
  const double welch =
      has_welch ? sensing::welch_bound(phi.m(), phi.n()) : 0.0;

  std::size_t k_max = phi.n();
  if (report.mu > 0.0) {
    const double boundary = (1.0 / report.mu + 1.0) / 2.0;
    k_max = std::min<std::size_t>(
        k_max, static_cast<std::size_t>(std::ceil(boundary - 1e-9)));
  }
  k_max = std::max<std::size_t>(k_max, 1);

  std::vector<guarantees::GuaranteeReport> verdicts;
  for (std::size_t k = 1; k <= k_max; ++k)
    verdicts.push_back(guarantees::evaluate_guarantees(phi, k, false));

  if (flags.json_output) {
    json out = {
        {"m", phi.m()},
        {"n", phi.n()},
        {"mu", report.mu},
        {"argpair", {report.argpair.first, report.argpair.second}},
        {"gram_offdiag_max", report.gram_offdiag_max},
        {"welch_bound", has_welch ? json(welch) : json(nullptr)},
    };
    json conditions = json::array();
    for (const auto& v : verdicts)
      conditions.push_back({{"K", v.k},
                            {"threshold", v.mu_threshold},
                            {"holds", v.condition_holds}});
    out["recovery_condition"] = conditions;
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }

  std::cout << "matrix            " << phi.m() << " x " << phi.n() << '\n';
  std::cout << "mu                " << fmt(report.mu) << '\n';
  std::cout << "argmax pair       (" << report.argpair.first << ", "
            << report.argpair.second << ")\n";
  std::cout << "gram offdiag max  " << fmt(report.gram_offdiag_max) << '\n';
  if (has_welch)
    std::cout << "welch bound       " << fmt(welch) << '\n';
  else
    std::cout << "welch bound       n/a (n <= m)\n";
  std::cout << "recovery condition mu < 1/(2K-1):\n";
  for (const auto& v : verdicts)
    std::cout << "  K=" << v.k << "  threshold " << fmt(v.mu_threshold)
              << (v.condition_holds ? "  holds" : "  fails") << '\n';
  return kExitOk;
}

int cmd_ric(const std::string& matrix_file, std::size_t k,
            const GlobalFlags& flags) {
  const sensing::SensingMatrix phi = load_sensing_matrix(matrix_file, flags);
  const double delta = sensing::ric_bruteforce(phi, k);
  const double mu = phi.n() >= 2 ? sensing::coherence(phi).mu : 0.0;
  const double bound = (static_cast<double>(k) - 1.0) * mu;

  if (flags.json_output) {
    json out = {{"K", k},
                {"delta", delta},
                {"mu", mu},
                {"coherence_bound", bound}};
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "delta_" << k << "           " << fmt(delta) << '\n';
  std::cout << "(K-1)*mu bound    " << fmt(bound) << '\n';
  return kExitOk;
}

int cmd_run(const std::string& matrix_file, const std::string& signal_file,
            std::size_t k, bool trace, const GlobalFlags& flags) {
  const sensing::SensingMatrix phi = load_sensing_matrix(matrix_file, flags);
  const la::Vector x = io::read_vector_file(signal_file);
  if (x.size() != phi.n())
    throw pursuit::DimensionError("signal length " + std::to_string(x.size()) +
                                  " does not match n = " +
                                  std::to_string(phi.n()));
  const la::Vector y = la::matvec(phi.phi(), x);
  const omp::RecoveryResult result = omp::omp_recover(phi, y, k);

  std::vector<std::size_t> input_support;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) input_support.push_back(i);

  if (trace)
    for (const auto& rec : result.trace)
      std::cout << io::iteration_record_json(rec).dump() << '\n';

  if (flags.json_output) {
    json out = {{"support", result.support},
                {"estimate", result.estimate.entries()},
                {"residual_norm", result.residual_norm},
                {"input_support", input_support},
                {"support_matches_input", result.support == input_support}};
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }

  std::cout << "support        ";
  for (std::size_t i = 0; i < result.support.size(); ++i)
    std::cout << (i ? " " : "") << result.support[i];
  std::cout << '\n';
  std::cout << "estimate      ";
  for (std::size_t j : result.support)
    std::cout << ' ' << fmt(result.estimate[j]);
  std::cout << '\n';
  std::cout << "residual_norm  " << fmt(result.residual_norm) << '\n';
  std::cout << "support matches input: "
            << (result.support == input_support ? "yes" : "no") << '\n';
  return kExitOk;
}

const char* outcome_name(guarantees::MatchOutcome o) {
  switch (o) {
    case guarantees::MatchOutcome::kMatchedX1:
      return "x1";
    case guarantees::MatchOutcome::kMatchedX2:
      return "x2";
    default:
      return "neither";
  }
}

int cmd_counterexample(std::size_t k, const std::string& out_dir, bool full,
                       const GlobalFlags& flags) {
  const guarantees::CounterexampleBundle bundle =
      guarantees::construct_counterexample(k, !full);
  const guarantees::FailureReport failure =
      guarantees::demonstrate_failure(bundle);

  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string stem = "boundary_K" + std::to_string(k);
  const std::string phi_path = (dir / (stem + "_phi.txt")).string();
  const std::string json_path = (dir / (stem + ".json")).string();

  io::write_matrix_file(phi_path, bundle.phi.phi());
  {
    std::ofstream out(json_path);
    if (!out)
      throw pursuit::Error("cannot open '" + json_path + "' for writing");
    out << io::bundle_json(bundle).dump(2) << '\n';
  }

  if (flags.json_output) {
    json out = io::bundle_json(bundle);
    out["rank"] = bundle.rank;
    out["gram_error"] = bundle.gram_error;
    out["phi_file"] = phi_path;
    out["bundle_file"] = json_path;
    out["measurement_gap"] = failure.measurement_gap;
    out["omp_on_y1"] = outcome_name(failure.outcome_y1);
    out["omp_on_y2"] = outcome_name(failure.outcome_y2);
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }

  std::cout << "K                " << bundle.k << '\n';
  std::cout << "mu               " << fmt(bundle.mu) << '\n';
  std::cout << "rank             " << bundle.rank << '\n';
  std::cout << "gram error       " << fmt(bundle.gram_error) << '\n';
  std::cout << "null residual    " << fmt(bundle.null_residual) << '\n';
  std::cout << "ambiguity gap    " << fmt(bundle.ambiguity_gap) << '\n';
  std::cout << "measurement gap  " << fmt(failure.measurement_gap) << '\n';
  std::cout << "omp on y1        returned " << outcome_name(failure.outcome_y1)
            << '\n';
  std::cout << "omp on y2        returned " << outcome_name(failure.outcome_y2)
            << '\n';
  std::cout << "wrote " << phi_path << '\n';
  std::cout << "wrote " << json_path << '\n';
  return kExitOk;
}

int cmd_phase(const std::string& config_file, const GlobalFlags& flags) {
  std::ifstream in(config_file);
  if (!in)
    throw pursuit::Error("cannot open '" + config_file + "' for reading");
  std::stringstream buffer;
  buffer << in.rdbuf();
  experiment::ExperimentConfig cfg =
      experiment::parse_config_text(buffer.str());
  if (flags.seed_given) cfg.seed = flags.seed;

  const std::vector<experiment::PhaseCell> cells = experiment::run_phase(cfg);
  const std::string csv = experiment::phase_csv(cells);

  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out)
    throw pursuit::Error("cannot open '" + cfg.output_path + "' for writing");
  out << csv;
  if (!out) throw pursuit::Error("write failed for '" + cfg.output_path + "'");

  std::cout << csv;
  std::cerr << "wrote " << cfg.output_path << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse recovery toolkit: coherence audits, orthogonal "
               "matching pursuit, and boundary counterexamples"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_flag("--json", flags.json_output, "emit JSON instead of text");
  app.add_flag("--normalize", flags.normalize,
               "normalize matrix columns before analysis");
  auto* seed_opt = app.add_option("--seed", flags.seed,
                                  "override the experiment seed (phase only)");

  std::string matrix_file, signal_file, config_file, out_dir;
  std::size_t k = 1;
  bool trace = false, full = false;

  auto* coherence =
      app.add_subcommand("coherence", "coherence and recovery-condition audit");
  coherence->add_option("matrix", matrix_file, "matrix file")->required();

  auto* run = app.add_subcommand("run", "recover a sparse signal with OMP");
  run->add_option("matrix", matrix_file, "matrix file")->required();
  run->add_option("signal", signal_file, "sparse signal file (length n)")
      ->required();
  run->add_option("K", k, "number of iterations")->required();
  run->add_flag("--trace", trace, "dump one JSON line per iteration");

  auto* ric = app.add_subcommand(
      "ric", "brute-force restricted isometry constant of order K");
  ric->add_option("matrix", matrix_file, "matrix file")->required();
  ric->add_option("K", k, "order")->required();

  auto* counterexample = app.add_subcommand(
      "counterexample", "construct the boundary matrix at mu = 1/(2K-1)");
  counterexample->add_option("K", k, "sparsity level (1..64)")->required();
  counterexample->add_option("out_dir", out_dir, "output directory")
      ->required();
  counterexample->add_flag("--full", full,
                           "keep the zero-eigenvalue row (square matrix)");

  auto* phase =
      app.add_subcommand("phase", "Monte-Carlo phase sweep from a JSON config");
  phase->add_option("config", config_file, "experiment config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  flags.seed_given = seed_opt->count() > 0;

  try {
    if (coherence->parsed()) return cmd_coherence(matrix_file, flags);
    if (run->parsed()) return cmd_run(matrix_file, signal_file, k, trace, flags);
    if (ric->parsed()) return cmd_ric(matrix_file, k, flags);
    if (counterexample->parsed())
      return cmd_counterexample(k, out_dir, full, flags);
    if (phase->parsed()) return cmd_phase(config_file, flags);
  } catch (const pursuit::ParseError& e) {
    std::cerr << "error: line " << e.line << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const pursuit::NormalizationError& e) {
    std::cerr << "error: " << e.what()
              << " (pass --normalize to normalize columns)\n";
    return kExitNormalization;
  } catch (const pursuit::RankDeficiencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRank;
  } catch (const pursuit::ConstructionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConstruction;
  } catch (const pursuit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
