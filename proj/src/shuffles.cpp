#include "tatami/shuffles.hpp"

#include <limits>

namespace tatami {

uint64_t RandomSource::uniform(uint64_t bound) {
  if (bound == 0) fail(Errc::ValueError, "uniform bound must be positive");
  const int64_t ordinal = draws_++;
  if (ordinal == force_zero_at_) return 0;
  if (bound == 1) return 0;
  // Reject the partial block at the top of the engine range so every residue
  // is equally likely.
  const uint64_t max = std::numeric_limits<uint64_t>::max();
  const uint64_t partial = (max % bound + 1) % bound;
  const uint64_t cap = max - partial;
  uint64_t v = engine_();
  while (v > cap) v = engine_();
  return v % bound;
}

// Shift by s sends column x to (x + s) mod q, so the new order is the old one
// rotated left by q - s.
static void shift_columns(CardMatrix& matrix, int s) {
  const int q = matrix.cols();
  matrix.rotate_left((q - s) % q);
}

void pile_shifting_shuffle(CardMatrix& matrix, RandomSource& rng, Transcript& transcript,
                           const MatrixId& id) {
  if (!matrix.uniform_row_heights())
    fail(Errc::RaggedMatrix, "pile-shifting shuffle needs uniform stack heights per row");
  shift_columns(matrix, rng.uniform_shift(matrix.cols()));
  transcript.log_shuffle(id, matrix.cols());
}

// Same hidden shift and log line, minus the height check: a print removes one
// payload card, and the resulting hole travels inside the opaque column.
static void lenient_shuffle(CardMatrix& matrix, RandomSource& rng, Transcript& transcript,
                            const MatrixId& id) {
  shift_columns(matrix, rng.uniform_shift(matrix.cols()));
  transcript.log_shuffle(id, matrix.cols());
}

static int reveal_marker_row(CardMatrix& matrix, int row, Transcript& transcript,
                             const MatrixId& id) {
  int marked = -1;
  for (int c = 0; c < matrix.cols(); ++c) {
    const CardFace face = reveal(matrix, {row, c, 0}, transcript, id);
    if (face == CardFace::mark_one()) {
      if (marked != -1) fail(Errc::ValueError, "duplicate selection marker");
      marked = c;
    }
  }
  if (marked == -1) fail(Errc::ValueError, "no selection marker");
  return marked;
}

Stack& ChosenCutSession::stack_at(int public_col) {
  if (public_col < 0 || public_col >= matrix_.cols())
    fail(Errc::IndexOutOfRange, "cut column " + std::to_string(public_col));
  return matrix_.at(0, public_col);
}

Stack ChosenCutSession::take_selected() {
  if (taken_) fail(Errc::StackNotReturned, "selected stack already taken");
  taken_ = true;
  return std::move(selected());
}

void ChosenCutSession::return_selected(Stack stack) {
  if (!taken_) fail(Errc::StackNotReturned, "no take outstanding");
  matrix_.at(0, selected_col_) = std::move(stack);
  taken_ = false;
}

ChosenCutSession chosen_cut_begin(std::vector<Stack> payload, int secret_index, RandomSource& rng,
                                  Transcript& transcript, const MatrixId& id) {
  const int q = static_cast<int>(payload.size());
  if (q < 1) fail(Errc::ValueError, "empty chosen cut payload");
  if (secret_index < 0 || secret_index >= q)
    fail(Errc::IndexOutOfRange, "secret index " + std::to_string(secret_index));

  std::vector<std::vector<Stack>> rows(3);
  rows[0] = std::move(payload);
  for (int c = 0; c < q; ++c) {
    rows[1].push_back(Stack::single(
        face_down(c == secret_index ? CardFace::mark_one() : CardFace::mark_zero())));
    rows[2].push_back(
        Stack::single(face_down(c == 0 ? CardFace::mark_one() : CardFace::mark_zero())));
  }

  ChosenCutSession session;
  session.matrix_ = CardMatrix::from_rows(std::move(rows));
  session.id_ = id;
  turn_all(session.matrix_, Orientation::FaceDown);
  pile_shifting_shuffle(session.matrix_, rng, transcript, id);
  session.selected_col_ = reveal_marker_row(session.matrix_, 1, transcript, id);
  return session;
}

std::vector<Stack> chosen_cut_end(ChosenCutSession&& session, RandomSource& rng,
                                  Transcript& transcript) {
  if (session.taken_) fail(Errc::StackNotReturned, "chosen cut ended with stack outstanding");
  CardMatrix& matrix = session.matrix_;
  turn_all(matrix, Orientation::FaceDown);
  lenient_shuffle(matrix, rng, transcript, session.id_);
  const int home = reveal_marker_row(matrix, 2, transcript, session.id_);
  matrix.rotate_left(home);
  transcript.log_rotate(session.id_, matrix.cols(), home);

  std::vector<Stack> cells = matrix.release_cells();
  const size_t q = cells.size() / 3;
  std::vector<Stack> payload(std::make_move_iterator(cells.begin()),
                             std::make_move_iterator(cells.begin() + ptrdiff_t(q)));
  return payload;
}

}  // namespace tatami
