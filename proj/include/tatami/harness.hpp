#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tatami/stats.hpp"
#include "tatami/zkp.hpp"

namespace tatami {

// Cheating-prover library. All strategies except Undercover must be rejected
// on every seed; Undercover probes the protocol's final-reveal blind spot
// (printed regions need not cover the real grid) and its outcome is reported,
// not asserted.
enum class AttackKind : uint8_t {
  Overlap,
  Corner,
  Symbol,
  TemplateTamper,
  DummyIntrusion,
  Wrap,
  Undercover,
};

const char* attack_name(AttackKind kind);
std::optional<AttackKind> attack_from_string(std::string_view text);

struct AttackSpec {
  AttackKind kind = AttackKind::Overlap;
};

// Derives the cheating strategy from the puzzle (most deviate from an honest
// brute-forced base). Throws AttackNotApplicable when the puzzle cannot host
// the deviation.
ProverStrategy attack_strategy(const AttackSpec& spec, const Puzzle& puzzle);

// Small instance each attack is demonstrated on.
Puzzle designated_instance(AttackKind kind);

// Bundled 6x6 sample instances (with published solutions in data/).
TatamibariPuzzle sample_tatamibari_6x6();
SquareJamPuzzle sample_squarejam_6x6();

// Emits a transcript with the honest event skeleton and fresh uniform cut
// positions from public data alone; never reads a partition.
Transcript simulate_transcript(const Puzzle& puzzle, RandomSource& rng);

struct StreamStat {
  int index = -1;
  int q = 0;
  double statistic = 0.0;
  double p = 1.0;
};

struct ZkReport {
  size_t honest_runs = 0, simulated_runs = 0;
  size_t stream_count = 0;   // chosen-cut marker reveal groups per run
  size_t tested_streams = 0; // streams with q >= 2
  bool skeleton_ok = true;
  size_t skeleton_mismatches = 0;
  std::string first_mismatch;
  bool structural_ok = true;
  std::string structural_note;
  double alpha = 1e-3;
  double per_stream_threshold = 0.0;  // alpha / tested_streams (family-wise)
  StreamStat worst_honest, worst_simulated, worst_two_sample;
  bool uniform_ok_honest = true, uniform_ok_simulated = true, two_sample_ok = true;

  bool pass() const;
  std::string summary() const;
};

// Streaming aggregator: feeds transcripts one at a time so large populations
// never sit in memory together. The first transcript pins the reference
// skeleton (event sequence with cut positions and rotation offsets masked);
// every later one must match it, and per-stream position counts accumulate.
class ZkAccumulator {
 public:
  void add_honest(const Transcript& t) { add(t, true); }
  void add_simulated(const Transcript& t) { add(t, false); }
  void merge(ZkAccumulator&& other);
  ZkReport report(double alpha = 1e-3) const;

 private:
  struct Atom {
    EventKind kind = EventKind::Setup;
    uint8_t sub = 0;  // reveal class: 0 marker group, 1 payload, 2 plain
    MatrixId matrix{};
    CardFace face{};
    int32_t a = 0, b = 0, c = 0, d = 0;
    bool operator==(const Atom&) const = default;
    std::string str() const;
  };

  struct Stream {
    int q = 0;
    std::vector<uint64_t> honest, simulated;
  };

  void add(const Transcript& t, bool honest);
  void note_mismatch(size_t index, const Atom* expected, const Atom* actual);
  void note_structural(const std::string& what);

  bool have_ref_ = false;
  std::vector<Atom> ref_;
  size_t honest_runs_ = 0, simulated_runs_ = 0;
  size_t skeleton_mismatches_ = 0;
  std::string first_mismatch_;
  bool structural_ok_ = true;
  std::string structural_note_;
  std::vector<Stream> streams_;
};

// Convenience wrapper over the accumulator.
ZkReport zk_test(std::span<const Transcript> honest, std::span<const Transcript> simulated,
                 double alpha = 1e-3);

}  // namespace tatami
