#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tatami/cards.hpp"
#include "tatami/transcript.hpp"

namespace tatami {

// Deterministic seeded entropy source. All protocol randomness flows through
// uniform(), so runs are reproducible bit-for-bit across platforms
// (rejection sampling on mt19937_64; no distribution objects).
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound), bound >= 1.
  uint64_t uniform(uint64_t bound);

  int uniform_shift(int q) { return static_cast<int>(uniform(static_cast<uint64_t>(q))); }

  // Negative-control fixture: the draw with this 0-based ordinal returns 0,
  // turning exactly one shuffle into a no-op. Leak experiments only.
  void force_zero_at(int64_t draw_ordinal) { force_zero_at_ = draw_ordinal; }

 private:
  std::mt19937_64 engine_;
  int64_t force_zero_at_ = -1;
  int64_t draws_ = 0;
};

// Cyclically shifts the matrix columns by a hidden uniform offset and logs a
// shuffle event (matrix id + column count only; the offset never appears).
void pile_shifting_shuffle(CardMatrix& matrix, RandomSource& rng, Transcript& transcript,
                           const MatrixId& id);

// Live chosen-cut over q payload stacks:
//   row 0  payload
//   row 1  face-down selection markers, the 1 under the secret index
//   row 2  restore markers, the 1 placed publicly at column 0
// begin() shuffles and reveals row 1, making the selected column public while
// hiding which payload position it was. end() shuffles again, reveals row 2
// and publicly rotates the 1 back to column 0, restoring original order.
class ChosenCutSession {
 public:
  int size() const { return matrix_.cols(); }
  int selected_col() const { return selected_col_; }
  const MatrixId& id() const { return id_; }

  Stack& stack_at(int public_col);
  Stack& selected() { return stack_at(selected_col_); }

  // Ownership round trip for callers that consume the stack elsewhere; end()
  // refuses to run while a take is outstanding.
  Stack take_selected();
  void return_selected(Stack stack);
  bool selection_outstanding() const { return taken_; }

 private:
  friend ChosenCutSession chosen_cut_begin(std::vector<Stack> payload, int secret_index,
                                           RandomSource& rng, Transcript& transcript,
                                           const MatrixId& id);
  friend std::vector<Stack> chosen_cut_end(ChosenCutSession&& session, RandomSource& rng,
                                           Transcript& transcript);

  CardMatrix matrix_;
  MatrixId id_{};
  int selected_col_ = -1;
  bool taken_ = false;
};

ChosenCutSession chosen_cut_begin(std::vector<Stack> payload, int secret_index, RandomSource& rng,
                                  Transcript& transcript, const MatrixId& id);

// Returns the payload in its original order; removed cards stay removed.
std::vector<Stack> chosen_cut_end(ChosenCutSession&& session, RandomSource& rng,
                                  Transcript& transcript);

}  // namespace tatami
