#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tatami/harness.hpp"
#include "tatami/puzzles.hpp"
#include "tatami/zkp.hpp"

namespace {

using namespace tatami;

void write_transcript(const Transcript& transcript, const std::string& path) {
  if (path.empty()) return;
  if (path == "-") {
    transcript.write_jsonl(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  transcript.write_jsonl(out);
}

ProverStrategy strategy_for(const Puzzle& puzzle, const std::string& solution_path,
                            const std::string& attack) {
  if (!attack.empty()) {
    const auto kind = attack_from_string(attack);
    if (!kind) fail(Errc::ValueError, "unknown attack: " + attack);
    return attack_strategy({*kind}, puzzle);
  }
  if (!solution_path.empty()) return honest_strategy(puzzle, load_solution(solution_path));
  const auto solutions = solve(puzzle, 1);
  if (solutions.empty()) fail(Errc::ValueError, "instance has no solution");
  return honest_strategy(puzzle, solutions.front());
}

int report_verdict(const Verdict& verdict) {
  if (verdict.accepted) {
    std::cout << "ACCEPT\n";
    return 0;
  }
  std::cout << "REJECT " << reason_name(verdict.reason) << " at step " << verdict.step << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"card protocol workbench for tatamibari and square jam"};
  app.require_subcommand(1);

  std::string puzzle_path, solution_path, transcript_path, attack;
  uint64_t seed = 1;
  int limit = 1;
  int honest_runs = 200, simulated_runs = 200;
  double alpha = 1e-3;
  bool leaky = false;

  auto* cmd_solve = app.add_subcommand("solve", "search for solutions");
  cmd_solve->add_option("puzzle", puzzle_path)->required();
  cmd_solve->add_option("--limit", limit, "solutions to enumerate");

  auto* cmd_verify = app.add_subcommand("verify", "check a solution file");
  cmd_verify->add_option("puzzle", puzzle_path)->required();
  cmd_verify->add_option("solution", solution_path)->required();

  auto* cmd_prove = app.add_subcommand("prove", "run the interactive proof");
  cmd_prove->add_option("puzzle", puzzle_path)->required();
  cmd_prove->add_option("--solution", solution_path, "solution file (default: solve)");
  cmd_prove->add_option("--attack", attack, "cheat instead of proving honestly");
  cmd_prove->add_option("--seed", seed);
  cmd_prove->add_option("--transcript", transcript_path, "write observer log (- for stdout)");

  auto* cmd_sim = app.add_subcommand("simulate", "emit a transcript from public data only");
  cmd_sim->add_option("puzzle", puzzle_path)->required();
  cmd_sim->add_option("--seed", seed);
  cmd_sim->add_option("--transcript", transcript_path, "write observer log (- for stdout)");

  auto* cmd_attack = app.add_subcommand("attack", "run a cheat on its designated instance");
  cmd_attack->add_option("name", attack)->required();
  cmd_attack->add_option("--puzzle", puzzle_path, "override the instance");
  cmd_attack->add_option("--seed", seed);
  cmd_attack->add_option("--transcript", transcript_path);

  auto* cmd_stats = app.add_subcommand("stats", "compare honest and simulated transcripts");
  cmd_stats->add_option("puzzle", puzzle_path)->required();
  cmd_stats->add_option("--honest", honest_runs, "honest run count");
  cmd_stats->add_option("--simulated", simulated_runs, "simulated run count");
  cmd_stats->add_option("--seed", seed);
  cmd_stats->add_option("--alpha", alpha, "family-wise significance level");
  cmd_stats->add_flag("--leaky", leaky, "cripple the first shuffle of each honest run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_solve->parsed()) {
      const Puzzle puzzle = load_puzzle(puzzle_path);
      const auto solutions = solve(puzzle, limit);
      for (const auto& partition : solutions) std::cout << serialize_solution(partition) << "\n";
      if (solutions.empty()) {
        std::cout << "no solution\n";
        return 1;
      }
      return 0;
    }
    if (cmd_verify->parsed()) {
      const Puzzle puzzle = load_puzzle(puzzle_path);
      const Validation v = validate(puzzle, load_solution(solution_path));
      for (const auto& violation : v.violations) std::cout << violation << "\n";
      std::cout << (v.valid ? "valid" : "invalid") << "\n";
      return v.valid ? 0 : 1;
    }
    if (cmd_prove->parsed()) {
      const Puzzle puzzle = load_puzzle(puzzle_path);
      const ProverStrategy strategy = strategy_for(puzzle, solution_path, attack);
      RandomSource rng(seed);
      const RunResult result = run_protocol(puzzle, strategy, rng);
      write_transcript(result.transcript, transcript_path);
      return report_verdict(result.verdict);
    }
    if (cmd_sim->parsed()) {
      const Puzzle puzzle = load_puzzle(puzzle_path);
      RandomSource rng(seed);
      write_transcript(simulate_transcript(puzzle, rng),
                       transcript_path.empty() ? "-" : transcript_path);
      return 0;
    }
    if (cmd_attack->parsed()) {
      const auto kind = attack_from_string(attack);
      if (!kind) fail(Errc::ValueError, "unknown attack: " + attack);
      const Puzzle puzzle =
          puzzle_path.empty() ? designated_instance(*kind) : load_puzzle(puzzle_path);
      const ProverStrategy strategy = attack_strategy({*kind}, puzzle);
      RandomSource rng(seed);
      const RunResult result = run_protocol(puzzle, strategy, rng);
      write_transcript(result.transcript, transcript_path);
      return report_verdict(result.verdict);
    }
    if (cmd_stats->parsed()) {
      const Puzzle puzzle = load_puzzle(puzzle_path);
      const auto solutions = solve(puzzle, 1);
      if (solutions.empty()) fail(Errc::ValueError, "instance has no solution");
      const ProverStrategy strategy = honest_strategy(puzzle, solutions.front());
      ZkAccumulator acc;
      for (int i = 0; i < honest_runs; ++i) {
        RandomSource rng(seed + uint64_t(i));
        if (leaky) rng.force_zero_at(0);
        const RunResult result = run_protocol(puzzle, strategy, rng);
        if (!result.verdict.accepted) fail(Errc::ValueError, "honest run rejected");
        acc.add_honest(result.transcript);
      }
      for (int i = 0; i < simulated_runs; ++i) {
        RandomSource rng(seed + uint64_t(honest_runs + i));
        acc.add_simulated(simulate_transcript(puzzle, rng));
      }
      const ZkReport report = acc.report(alpha);
      std::cout << report.summary() << "\n" << (report.pass() ? "PASS" : "FAIL") << "\n";
      return report.pass() ? 0 : 1;
    }
  } catch (const tatami::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
