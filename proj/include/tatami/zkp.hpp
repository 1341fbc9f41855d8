#pragma once

#include <optional>

#include "tatami/printer.hpp"
#include "tatami/puzzles.hpp"
#include "tatami/shuffles.hpp"
#include "tatami/transcript.hpp"

namespace tatami {

enum class PuzzleKind : uint8_t { Tatamibari, SquareJam };

PuzzleKind kind_of(const Puzzle& puzzle);

// 2m x 2n board of [counter, counter, main] stacks. The real puzzle occupies
// rows < m, cols < n; the rest is indistinguishable dummy padding. Area
// selection runs over the row-major cyclic sequence of all 4mn stacks.
struct GridState {
  PuzzleKind kind = PuzzleKind::Tatamibari;
  int m = 0, n = 0;
  CardMatrix matrix;

  int rows() const { return 2 * m; }
  int cols() const { return 2 * n; }
  int seq_len() const { return 4 * m * n; }
  int seq_of(int row, int col) const { return row * cols() + col; }
  Cell cell_of(int seq) const { return {seq / cols(), seq % cols()}; }
  bool is_dummy(int row, int col) const { return row >= m || col >= n; }
};

GridState setup_grid(const Puzzle& puzzle, Transcript& transcript);

// Public-order pile of flattened templates plus the expected contents the
// verifier checks it against.
struct TemplatePile {
  int rows = 0, cols = 0;
  std::vector<Template> canonical;
  std::vector<Stack> stacks;

  int size() const { return static_cast<int>(canonical.size()); }
};

// Tatamibari m x n: one template per size h x w ('+' square, '|' taller,
// '-' wider), id (h-1)*n + (w-1). Square Jam: number templates for sides
// 1..n (id s-1) and the blank template last (id n).
TemplatePile canonical_templates(PuzzleKind kind, int m, int n);
int template_id(PuzzleKind kind, int m, int n, int height, int width);

// Reveals the whole pile against its canonical contents; one event.
bool verify_pile(const TemplatePile& pile, Transcript& transcript);

struct Move {
  int anchor_seq = 0;
  int template_id = 0;
};

// Corrupts one corner-layer card (club <-> heart) of the template
// reconstructed after the given iteration's print.
struct TemplateTamper {
  int iteration = 0;
  int corner_cell = 0;  // flat index into the corner layer
};

struct ProverStrategy {
  std::vector<Move> moves;
  std::optional<TemplateTamper> tamper;
};

// Moves derived from a partition in printing order. Too-short move lists are
// padded by repeating the first move (such runs print a conflict and are
// rejected); Square Jam filler iterations print the blank template at
// sequence index 0.
ProverStrategy honest_strategy(const Puzzle& puzzle, const RectPartition& partition);

struct Verdict {
  bool accepted = false;
  RejectReason reason = RejectReason::None;
  int step = -1;  // rejecting iteration, or the iteration count for final checks

  static Verdict accept() { return {true, RejectReason::None, -1}; }
  static Verdict reject(RejectReason reason, int step) { return {false, reason, step}; }
};

struct RunResult {
  Verdict verdict;
  Transcript transcript;
};

RunResult run_tatamibari(const TatamibariPuzzle& puzzle, const ProverStrategy& strategy,
                         RandomSource& rng);
RunResult run_squarejam(const SquareJamPuzzle& puzzle, const ProverStrategy& strategy,
                        RandomSource& rng);
RunResult run_protocol(const Puzzle& puzzle, const ProverStrategy& strategy, RandomSource& rng);

// Chosen cut over the grid sequence. The window cell (r, c) sits at public
// column (selected + r*2n + c) mod 4mn of the session; dishonest anchors wrap
// around the sequence and are representable.
struct AreaSelection {
  ChosenCutSession session;
  int view_rows = 0, view_cols = 0;
  int grid_cols = 0, seq_len = 0;

  AreaView view();
};

AreaSelection select_area(GridState& grid, int anchor_seq, int rows, int cols, RandomSource& rng,
                          Transcript& transcript);
void restore_area(GridState& grid, AreaSelection&& selection, RandomSource& rng,
                  Transcript& transcript);

// Exact shuffle totals for an honest accepting run.
long long shuffle_count(PuzzleKind kind, int m, int n, int k);

// Cards minted for grid plus pile.
long long card_count(PuzzleKind kind, int m, int n);

}  // namespace tatami
