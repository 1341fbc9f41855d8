#include <doctest.h>

#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "tatami/harness.hpp"

using namespace tatami;

namespace {

RunResult run_attack(AttackKind kind, uint64_t seed) {
  const Puzzle puzzle = designated_instance(kind);
  const ProverStrategy strategy = attack_strategy({kind}, puzzle);
  RandomSource rng(seed);
  return run_protocol(puzzle, strategy, rng);
}

}  // namespace

TEST_CASE("attack names round-trip") {
  for (AttackKind k : {AttackKind::Overlap, AttackKind::Corner, AttackKind::Symbol,
                       AttackKind::TemplateTamper, AttackKind::DummyIntrusion, AttackKind::Wrap,
                       AttackKind::Undercover}) {
    auto parsed = attack_from_string(attack_name(k));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == k);
  }
  CHECK_FALSE(attack_from_string("bribe").has_value());
}

TEST_CASE("bundled sample accessors match the data files") {
  const std::string data = TATAMI_DATA_DIR;
  CHECK(Puzzle{sample_tatamibari_6x6()} == load_puzzle(data + "/tatamibari_6x6.tatamibari"));
  CHECK(Puzzle{sample_squarejam_6x6()} == load_puzzle(data + "/squarejam_6x6.squarejam"));
  CHECK(sample_tatamibari_6x6().clues.size() == 14);
}

TEST_CASE("every deviating attack is rejected with its signature reason") {
  const struct {
    AttackKind kind;
    RejectReason reason;
    int step;
  } expected[] = {
      {AttackKind::Overlap, RejectReason::PrintConflict, 1},
      {AttackKind::Corner, RejectReason::CornerOverflow, 2},
      {AttackKind::Symbol, RejectReason::ClueMismatch, 1},
      {AttackKind::TemplateTamper, RejectReason::TemplateCorrupt, 0},
      {AttackKind::DummyIntrusion, RejectReason::DummyNotBlank, 1},
      {AttackKind::Wrap, RejectReason::DummyNotBlank, 1},
  };
  for (const auto& e : expected) {
    CAPTURE(attack_name(e.kind));
    for (uint64_t seed : {1ull, 7ull, 1234ull}) {
      RunResult r = run_attack(e.kind, seed);
      CHECK_FALSE(r.verdict.accepted);
      CHECK(r.verdict.reason == e.reason);
      CHECK(r.verdict.step == e.step);
      CHECK(r.transcript.events().back().kind == EventKind::Verdict);
      CHECK_FALSE(r.transcript.events().back().ok);
    }
  }
}

TEST_CASE("undercover printing is accepted: uncovered real cells go unchecked") {
  // The final reveals check clues and padding only, so a prover who prints
  // fewer regions than a tiling needs still passes. Soundness covers printed
  // material, not coverage.
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    RunResult r = run_attack(AttackKind::Undercover, seed);
    CHECK(r.verdict.accepted);
  }
}

TEST_CASE("attacks refuse puzzles that cannot host them") {
  TatamibariPuzzle tiny;
  tiny.rows = tiny.cols = 2;
  tiny.clues[{0, 0}] = ClueSymbol::Plus;
  CHECK_THROWS_AS(attack_strategy({AttackKind::Overlap}, Puzzle{tiny}), Error);
  CHECK_THROWS_AS(attack_strategy({AttackKind::Corner}, Puzzle{tiny}), Error);

  SquareJamPuzzle unit;
  unit.size = 1;
  CHECK_THROWS_AS(attack_strategy({AttackKind::Corner}, Puzzle{unit}), Error);
  CHECK_THROWS_AS(attack_strategy({AttackKind::Symbol}, Puzzle{unit}), Error);

  TatamibariPuzzle one;
  one.rows = one.cols = 1;
  one.clues[{0, 0}] = ClueSymbol::Plus;
  CHECK_THROWS_AS(attack_strategy({AttackKind::Symbol}, Puzzle{one}), Error);

  TatamibariPuzzle two = tiny;
  two.clues[{1, 1}] = ClueSymbol::Plus;
  CHECK_THROWS_AS(attack_strategy({AttackKind::Undercover}, Puzzle{two}), Error);
  TatamibariPuzzle bar = tiny;
  bar.clues[{0, 0}] = ClueSymbol::HBar;
  CHECK_THROWS_AS(attack_strategy({AttackKind::Undercover}, Puzzle{bar}), Error);
  CHECK_THROWS_AS(attack_strategy({AttackKind::DummyIntrusion}, Puzzle{bar}), Error);

  TatamibariPuzzle clueless;
  clueless.rows = clueless.cols = 2;
  CHECK_THROWS_AS(attack_strategy({AttackKind::Wrap}, Puzzle{clueless}), Error);
}

TEST_CASE("simulated transcripts share the honest skeleton") {
  TatamibariPuzzle tiny;
  tiny.rows = tiny.cols = 2;
  tiny.clues[{0, 0}] = ClueSymbol::Plus;
  const Puzzle puzzle{tiny};
  const RectPartition whole{{Rect{0, 0, 2, 2}}};

  std::vector<Transcript> honest, simulated;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    RandomSource rng(seed);
    RunResult r = run_protocol(puzzle, honest_strategy(puzzle, whole), rng);
    REQUIRE(r.verdict.accepted);
    honest.push_back(std::move(r.transcript));
  }
  for (uint64_t seed = 100; seed < 130; ++seed) {
    RandomSource rng(seed);
    simulated.push_back(simulate_transcript(puzzle, rng));
  }

  ZkReport report = zk_test(honest, simulated);
  CHECK(report.honest_runs == 30);
  CHECK(report.simulated_runs == 30);
  CHECK(report.skeleton_ok);
  CHECK(report.skeleton_mismatches == 0);
  CHECK(report.structural_ok);
  CHECK(report.stream_count == 40);  // one marker group per shuffle
  CHECK(report.tested_streams == 40);
  CHECK(report.per_stream_threshold == doctest::Approx(1e-3 / 40));
  CHECK(report.pass());
  CHECK(report.summary().find("skeleton: identical") != std::string::npos);

  // same number of random draws per run: honest and simulated runs consume
  // the generator in lockstep, one draw per shuffle
  CHECK(honest.front().count(EventKind::Shuffle) ==
        simulated.front().count(EventKind::Shuffle));
}

TEST_CASE("a solution-pinned generator is caught by the uniformity tests") {
  TatamibariPuzzle tiny;
  tiny.rows = tiny.cols = 2;
  tiny.clues[{0, 0}] = ClueSymbol::Plus;
  const Puzzle puzzle{tiny};
  const RectPartition whole{{Rect{0, 0, 2, 2}}};

  ZkAccumulator acc;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    RandomSource rng(seed);
    rng.force_zero_at(0);  // first area shuffle becomes a no-op: the selected
                           // column equals the secret anchor every run
    RunResult r = run_protocol(puzzle, honest_strategy(puzzle, whole), rng);
    REQUIRE(r.verdict.accepted);
    acc.add_honest(r.transcript);
  }
  for (uint64_t seed = 1000; seed < 1300; ++seed) {
    RandomSource rng(seed);
    Transcript t = simulate_transcript(puzzle, rng);
    acc.add_simulated(t);
  }
  ZkReport report = acc.report();
  CHECK(report.skeleton_ok);      // the leak is in positions, not structure
  CHECK_FALSE(report.uniform_ok_honest);
  CHECK(report.uniform_ok_simulated);
  CHECK_FALSE(report.pass());
  CHECK(report.worst_honest.index == 0);  // the pinned stream is the first cut
  CHECK(report.worst_honest.p < report.per_stream_threshold);
}

TEST_CASE("skeleton comparison flags runs of a different shape") {
  TatamibariPuzzle tiny;
  tiny.rows = tiny.cols = 2;
  tiny.clues[{0, 0}] = ClueSymbol::Plus;
  TatamibariPuzzle other = tiny;
  other.clues[{0, 0}] = ClueSymbol::VBar;  // same counts, different clue face

  RandomSource r1(1), r2(2);
  ZkAccumulator acc;
  Transcript a = simulate_transcript(Puzzle{tiny}, r1);
  Transcript b = simulate_transcript(Puzzle{other}, r2);
  acc.add_honest(a);
  acc.add_simulated(b);
  ZkReport report = acc.report();
  CHECK_FALSE(report.skeleton_ok);
  CHECK(report.skeleton_mismatches == 1);
  CHECK(report.first_mismatch.find("expected") != std::string::npos);
  CHECK_FALSE(report.pass());
}

TEST_CASE("structural checks catch off-column reveals and stray rotations") {
  TatamibariPuzzle tiny;
  tiny.rows = tiny.cols = 2;
  tiny.clues[{0, 0}] = ClueSymbol::Plus;

  RandomSource rng(3);
  Transcript good = simulate_transcript(Puzzle{tiny}, rng);

  // divert one print reveal off its selected column
  Transcript off;
  {
    std::ostringstream out;
    good.write_jsonl(out);
    std::istringstream in(out.str());
    off = Transcript::read_jsonl(in);
  }
  bool bent = false;
  for (Event& e : const_cast<std::vector<Event>&>(off.events()))
    if (!bent && e.kind == EventKind::Reveal && e.row == 0 &&
        e.matrix.scope == MatrixId::Scope::MainCut) {
      e.col = int16_t((e.col + 1) % 2);
      bent = true;
    }
  REQUIRE(bent);
  ZkAccumulator acc;
  acc.add_honest(off);
  ZkReport report = acc.report();
  CHECK_FALSE(report.structural_ok);
  CHECK(report.structural_note.find("selected column") != std::string::npos);

  // a rotation with no marker group before it
  Transcript stray;
  stray.log_setup("tatamibari", 2, 2, 4, 1);
  stray.log_rotate(MatrixId::area_cut(), 16, 3);
  ZkAccumulator acc2;
  acc2.add_honest(stray);
  CHECK_FALSE(acc2.report().structural_ok);
}

TEST_CASE("merged accumulators pool their counts") {
  TatamibariPuzzle tiny;
  tiny.rows = tiny.cols = 2;
  tiny.clues[{0, 0}] = ClueSymbol::Plus;
  const Puzzle puzzle{tiny};

  ZkAccumulator a, b;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    RandomSource rng(seed);
    Transcript t = simulate_transcript(puzzle, rng);
    (seed % 2 ? a : b).add_simulated(t);
  }
  a.merge(std::move(b));
  ZkReport report = a.report();
  CHECK(report.simulated_runs == 10);
  CHECK(report.skeleton_ok);
}

TEST_CASE("serialized events expose exactly the public fields") {
  TatamibariPuzzle tiny;
  tiny.rows = tiny.cols = 2;
  tiny.clues[{0, 0}] = ClueSymbol::Plus;
  RandomSource rng(5);
  RunResult r = run_protocol(Puzzle{tiny}, honest_strategy(Puzzle{tiny}, {{Rect{0, 0, 2, 2}}}), rng);
  REQUIRE(r.verdict.accepted);

  std::ostringstream out;
  r.transcript.write_jsonl(out);
  std::istringstream in(out.str());

  const std::map<std::string, std::set<std::string>> allowed = {
      {"setup", {"puzzle", "rows", "cols", "pile", "iterations"}},
      {"shuffle", {"matrix", "cols"}},
      {"reveal", {"matrix", "row", "col", "depth", "face"}},
      {"template_verify", {"count", "ok"}},
      {"rotate", {"matrix", "cols", "offset"}},
      {"verdict", {"ok"}},
  };

  std::string line;
  size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    const nlohmann::json j = nlohmann::json::parse(line);
    std::set<std::string> top;
    for (const auto& [key, value] : j.items()) top.insert(key);
    CHECK(top == std::set<std::string>{"seq", "kind", "detail"});

    const std::string kind = j.at("kind").get<std::string>();
    REQUIRE(allowed.count(kind) == 1);
    std::set<std::string> detail;
    for (const auto& [key, value] : j.at("detail").items()) detail.insert(key);
    CHECK(detail == allowed.at(kind));  // no hidden shift or secret leaks in
  }
  CHECK(lines == r.transcript.size());
}
