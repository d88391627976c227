// poptlab_cli.cpp — Command-line frontend: table verification, cone membership,
// state realization, catalog export, and game simulation with JSON reports.
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poptlab/catalog.hpp"
#include "poptlab/cones.hpp"
#include "poptlab/distinguish.hpp"
#include "poptlab/errors.hpp"
#include "poptlab/game.hpp"
#include "poptlab/json_io.hpp"
#include "poptlab/realization.hpp"

using namespace poptlab;

namespace {

struct CommonFlags {
  double tol = 1e-9;
  int restarts = 64;
  std::optional<std::uint64_t> seed;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--tol", flags.tol, "Membership / verification tolerance");
  cmd->add_option("--restarts", flags.restarts, "Search restarts");
  cmd->add_option("--seed", flags.seed, "Search seed (falls back to POPTLAB_SEED)");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag.has_value()) return *flag;
  if (const char* env = std::getenv("POPTLAB_SEED")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return parsed;
    throw ParseError("POPTLAB_SEED must be an unsigned integer");
  }
  return 0;
}

PoptSearchConfig make_config(const CommonFlags& flags) {
  PoptSearchConfig cfg;
  cfg.restarts = flags.restarts;
  cfg.membershipTol = flags.tol;
  cfg.seed = resolve_seed(flags.seed);
  return cfg;
}

class Stopwatch {
 public:
  long long elapsed_ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::milliseconds>(now - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Prints the report to stdout and mirrors it to `jsonPath` when given.
void emit(const RunReport& report, const std::string& jsonPath) {
  const std::string text = run_report_to_json(report).dump(2) + "\n";
  std::cout << text;
  if (!jsonPath.empty()) atomic_write(jsonPath, text);
}

int run_verify_tables(int which, double tol, const std::string& jsonPath) {
  const Stopwatch watch;
  std::vector<std::string> labels;
  std::vector<HermitianOperator> states;
  PairLookup lookup;
  if (which == 1) {
    for (const CatalogState8& cs : s8()) {
      labels.push_back(cs.label.text());
      states.push_back(cs.state);
    }
    lookup = [](int i, int j) {
      return table1_measurement(s8()[i].label, s8()[j].label);
    };
  } else {
    for (const CatalogState24& cs : s24()) {
      labels.push_back(cs.label.text());
      states.push_back(cs.state);
    }
    lookup = [](int i, int j) {
      return table2_measurement(s24()[i].label, s24()[j].label).first;
    };
  }

  const PairwiseCertificate cert = verify_family(labels, states, lookup, tol);
  double maxDeviation = 0.0;
  for (const PairReport& pr : cert.perPairReports) {
    maxDeviation = std::max(maxDeviation, pr.report.maxDeviation);
  }

  RunReport report;
  report.command = "verify tables";
  report.inputsDigest =
      fnv1a_hex("tables:" + std::to_string(which) + ":" + std::to_string(tol));
  report.pass = cert.complete;
  report.details = Json{{"which", which},
                        {"tol", tol},
                        {"maxDeviation", maxDeviation},
                        {"certificate", certificate_to_json(cert)}};
  report.wallTimeMs = watch.elapsed_ms();
  emit(report, jsonPath);
  return cert.complete ? 0 : 1;
}

int run_popt_check(const std::string& inPath, const CommonFlags& flags,
                   const std::string& jsonPath) {
  const Stopwatch watch;
  const std::string raw = read_file(inPath);
  const HermitianOperator w = operator_from_json(parse_json(raw));
  const PoptSearchConfig cfg = make_config(flags);

  const auto [member, searchReport] = is_popt(w, cfg, /*requireUnitTrace=*/true);
  std::string className = "not-a-state";
  try {
    className = state_class_name(classify_state(w, cfg));
  } catch (const NonUnitTraceError&) {
  }

  RunReport report;
  report.command = "popt-check";
  report.inputsDigest = fnv1a_hex(raw);
  report.pass = member;
  report.details = Json{{"class", className},
                        {"trace", w.trace()},
                        {"report", popt_report_to_json(searchReport)}};
  report.wallTimeMs = watch.elapsed_ms();
  emit(report, jsonPath);
  return member ? 0 : 1;
}

int run_decompose(const std::string& inPath, const std::string& outPath,
                  bool verify, const CommonFlags& flags,
                  const std::string& jsonPath) {
  const Stopwatch watch;
  const std::string raw = read_file(inPath);
  const HermitianOperator w = operator_from_json(parse_json(raw));
  const PoptSearchConfig cfg = make_config(flags);

  RunReport report;
  report.command = "decompose";
  report.inputsDigest = fnv1a_hex(raw);

  const auto finish = [&](bool pass, Json details) {
    report.pass = pass;
    report.details = std::move(details);
    report.wallTimeMs = watch.elapsed_ms();
    emit(report, jsonPath);
    return pass ? 0 : 1;
  };

  const auto [member, searchReport] = is_popt(w, cfg, /*requireUnitTrace=*/true);
  if (!member) {
    return finish(false, Json{{"error", "input is not a product-test-positive state"},
                              {"report", popt_report_to_json(searchReport)}});
  }

  std::optional<PoptRealization> realization;
  try {
    realization = realize_popt(w, cfg);
  } catch (const RealizationError& e) {
    return finish(false, Json{{"error", e.what()}});
  }

  if (!outPath.empty()) {
    atomic_write(outPath, realization_to_json(*realization).dump(2) + "\n");
  }

  Json details{{"out", outPath}};
  bool pass = true;
  if (verify) {
    const PoptRealization reloaded =
        outPath.empty() ? *realization
                        : realization_from_json(parse_json(read_file(outPath)));
    const RealizationChecks checks = verify_realization(w, reloaded, cfg);
    pass = checks.pass;
    details["checks"] = Json{{"reconstructionResidual", checks.reconstructionResidual},
                             {"unitalityResidual", checks.unitalityResidual},
                             {"marginalResidual", checks.marginalResidual},
                             {"krausResidual", checks.krausResidual},
                             {"psiResidual", checks.psiResidual},
                             {"choiBlockPositive", checks.choiBlockPositive},
                             {"choiMinValue", checks.choiReport.minValue}};
  }
  return finish(pass, std::move(details));
}

int run_game(const std::string& strategyName, int n, long long rounds,
             const CommonFlags& flags, const std::string& jsonPath) {
  const Stopwatch watch;
  GameStrategy strategy;
  if (strategyName == "sepbar8") {
    strategy = builtin_sepbar8();
  } else if (strategyName == "quantum-baseline") {
    strategy = builtin_quantum_baseline(n);
  } else {
    throw ParseError("unknown strategy: " + strategyName);
  }
  const GameSpec g = uniform_game(n);
  const std::uint64_t seed = resolve_seed(flags.seed);

  GameResult result;
  if (rounds > 0) {
    result = simulate(strategy, g, rounds, seed);
  } else {
    result.exactWinProb = exact_win_probability(strategy, g);
    result.rounds = 0;
    result.seed = seed;
  }

  RunReport report;
  report.command = "game run";
  report.inputsDigest =
      fnv1a_hex("game:" + strategyName + ":" + std::to_string(n) + ":" +
                std::to_string(rounds) + ":" + std::to_string(seed));
  report.pass = true;
  report.details = game_result_to_json(result);
  report.wallTimeMs = watch.elapsed_ms();
  emit(report, jsonPath);
  return 0;
}

int run_catalog_export(const std::string& setName, const std::string& outDir,
                       const CommonFlags& flags) {
  const Stopwatch watch;
  const PoptSearchConfig cfg = make_config(flags);

  std::vector<std::string> labels;
  std::vector<HermitianOperator> states;
  if (setName == "s8") {
    for (const CatalogState8& cs : s8()) {
      labels.push_back(cs.label.text());
      states.push_back(cs.state);
    }
  } else if (setName == "s24") {
    for (const CatalogState24& cs : s24()) {
      labels.push_back(cs.label.text());
      states.push_back(cs.state);
    }
  } else {
    throw ParseError("unknown catalog set: " + setName);
  }

  const std::filesystem::path dir(outDir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory: " + outDir);
  }

  Json manifestStates = Json::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string file = labels[i] + ".json";
    atomic_write(dir / file, operator_to_json(states[i]).dump(2) + "\n");
    manifestStates.push_back(
        Json{{"label", labels[i]},
             {"file", file},
             {"class", state_class_name(classify_state(states[i], cfg))}});
  }
  Json manifest{{"set", setName},
                {"count", states.size()},
                {"states", std::move(manifestStates)}};
  atomic_write(dir / "manifest.json", manifest.dump(2) + "\n");

  RunReport report;
  report.command = "catalog export";
  report.inputsDigest = fnv1a_hex("catalog:" + setName);
  report.pass = true;
  report.details = Json{{"set", setName},
                        {"dir", outDir},
                        {"files", states.size() + 1}};
  report.wallTimeMs = watch.elapsed_ms();
  emit(report, "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poptlab: verification tools for composite-state cones"};
  app.require_subcommand(1);

  // verify tables
  auto* verify = app.add_subcommand("verify", "Re-check a verification claim");
  verify->require_subcommand(1);
  auto* tables = verify->add_subcommand(
      "tables", "Pairwise distinguishability of a catalog family");
  int which = 1;
  double tablesTol = 1e-9;
  std::string tablesJson;
  tables->add_option("--which", which, "Family table: 1 or 2")
      ->check(CLI::IsMember({1, 2}));
  tables->add_option("--tol", tablesTol, "Per-probability tolerance");
  tables->add_option("--json", tablesJson, "Write the full report to this path");

  // popt-check
  auto* poptCheck =
      app.add_subcommand("popt-check", "Cone membership of a serialized operator");
  std::string poptIn;
  std::string poptJson;
  CommonFlags poptFlags;
  poptCheck->add_option("--in", poptIn, "Operator JSON file")->required();
  poptCheck->add_option("--json", poptJson, "Write the full report to this path");
  add_common_flags(poptCheck, poptFlags);

  // decompose
  auto* decompose = app.add_subcommand(
      "decompose", "Realize a state through a positive unital map");
  std::string decomposeIn;
  std::string decomposeOut;
  std::string decomposeJson;
  bool decomposeVerify = false;
  CommonFlags decomposeFlags;
  decompose->add_option("--in", decomposeIn, "Operator JSON file")->required();
  decompose->add_option("--out", decomposeOut, "Write the realization record here");
  decompose->add_flag("--verify", decomposeVerify,
                      "Re-check the stored record after writing");
  decompose->add_option("--json", decomposeJson, "Write the full report to this path");
  add_common_flags(decompose, decomposeFlags);

  // game run
  auto* game = app.add_subcommand("game", "The pairwise-distinguishability game");
  game->require_subcommand(1);
  auto* gameRun = game->add_subcommand("run", "Score and sample a built-in strategy");
  std::string strategyName = "sepbar8";
  int gameN = 8;
  long long gameRounds = 10000;
  std::string gameJson;
  CommonFlags gameFlags;
  gameRun->add_option("--strategy", strategyName, "sepbar8 or quantum-baseline");
  gameRun->add_option("--n", gameN, "Number of messages");
  gameRun->add_option("--rounds", gameRounds, "Sampled rounds (0 = exact only)");
  gameRun->add_option("--json", gameJson, "Write the full report to this path");
  add_common_flags(gameRun, gameFlags);

  // catalog export
  auto* catalog = app.add_subcommand("catalog", "Named state families");
  catalog->require_subcommand(1);
  auto* catalogExport =
      catalog->add_subcommand("export", "Write one operator JSON per state");
  std::string setName = "s8";
  std::string exportDir;
  CommonFlags catalogFlags;
  catalogExport->add_option("--set", setName, "s8 or s24");
  catalogExport->add_option("--out", exportDir, "Output directory")->required();
  add_common_flags(catalogExport, catalogFlags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (tables->parsed()) return run_verify_tables(which, tablesTol, tablesJson);
    if (poptCheck->parsed()) return run_popt_check(poptIn, poptFlags, poptJson);
    if (decompose->parsed()) {
      return run_decompose(decomposeIn, decomposeOut, decomposeVerify,
                           decomposeFlags, decomposeJson);
    }
    if (gameRun->parsed()) {
      return run_game(strategyName, gameN, gameRounds, gameFlags, gameJson);
    }
    if (catalogExport->parsed()) {
      return run_catalog_export(setName, exportDir, catalogFlags);
    }
  } catch (const ParseError& e) {
    std::cerr << "poptlab: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "poptlab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "poptlab: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "poptlab: no subcommand given\n";
  return 2;
}
