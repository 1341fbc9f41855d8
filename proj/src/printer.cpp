#include "tatami/printer.hpp"

#include <string>

namespace tatami {

Template Template::rectangle(int rows, int cols, int h, int w, CardFace fill) {
  if (rows < 2 || cols < 2) fail(Errc::ValueError, "template needs at least 2x2 cells");
  if (h < 1 || w < 1 || h > rows - 1 || w > cols - 1)
    fail(Errc::BoundsError, "rectangle " + std::to_string(h) + "x" + std::to_string(w) +
                                " does not fit a " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " template");
  Template tmpl;
  tmpl.rows = rows;
  tmpl.cols = cols;
  tmpl.rect_height = h;
  tmpl.rect_width = w;
  tmpl.main.resize(size_t(rows) * cols);
  tmpl.corner.resize(size_t(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const bool inside = r < h && c < w;
      tmpl.main_at(r, c) = face_down(inside ? fill : CardFace::blank());
      const bool corner_pt = (r == 0 || r == h) && (c == 0 || c == w);
      tmpl.corner_at(r, c) = face_down(corner_pt ? CardFace::club() : CardFace::heart());
    }
  return tmpl;
}

Template Template::blank(int rows, int cols) {
  if (rows < 1 || cols < 1) fail(Errc::ValueError, "template needs positive dimensions");
  Template tmpl;
  tmpl.rows = rows;
  tmpl.cols = cols;
  tmpl.main.assign(size_t(rows) * cols, face_down(CardFace::blank()));
  tmpl.corner.assign(size_t(rows) * cols, face_down(CardFace::heart()));
  return tmpl;
}

bool same_faces(const Template& a, const Template& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (size_t i = 0; i < a.main.size(); ++i)
    if (a.main[i].face != b.main[i].face || a.corner[i].face != b.corner[i].face) return false;
  return true;
}

Stack template_to_stack(const Template& tmpl) {
  Stack stack;
  stack.cards.reserve(tmpl.main.size() * 2);
  for (size_t i = 0; i < tmpl.main.size(); ++i) {
    stack.cards.push_back(face_down(tmpl.corner[i].face));
    stack.cards.push_back(face_down(tmpl.main[i].face));
  }
  return stack;
}

// Face content only; the rectangle metadata of a reassembled pile is unknown.
Template template_from_stack(const Stack& stack, int rows, int cols) {
  if (stack.height() != 2 * rows * cols)
    fail(Errc::ValueError, "stack height " + std::to_string(stack.height()) +
                               " does not flatten a " + std::to_string(rows) + "x" +
                               std::to_string(cols) + " template");
  Template tmpl;
  tmpl.rows = rows;
  tmpl.cols = cols;
  tmpl.main.resize(size_t(rows) * cols);
  tmpl.corner.resize(size_t(rows) * cols);
  for (size_t i = 0; i < tmpl.main.size(); ++i) {
    tmpl.corner[i] = stack.cards[2 * i];
    tmpl.main[i] = stack.cards[2 * i + 1];
  }
  return tmpl;
}

AreaView::AreaView(int rows, int cols, std::vector<Stack*> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows_ < 1 || cols_ < 1 || cells_.size() != size_t(rows_) * cols_)
    fail(Errc::ValueError, "area view shape mismatch");
  for (Stack* s : cells_)
    if (!s) fail(Errc::ValueError, "area view holds a null cell");
}

AreaView AreaView::block(CardMatrix& matrix, int top, int left, int rows, int cols) {
  if (top < 0 || left < 0 || top + rows > matrix.rows() || left + cols > matrix.cols())
    fail(Errc::BoundsError, "area block exceeds the matrix");
  std::vector<Stack*> cells;
  cells.reserve(size_t(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) cells.push_back(&matrix.at(top + r, left + c));
  return AreaView(rows, cols, std::move(cells));
}

// Honest removal: take the first card showing the wanted face; with none to
// take, index 0 is surrendered and its reveal convicts the prover.
static int removal_index(const std::vector<Stack>& payload, CardFace want) {
  for (size_t i = 0; i < payload.size(); ++i)
    if (payload[i].cards.front().face == want) return static_cast<int>(i);
  return 0;
}

// One print cut: cut the payload, reveal the selected card, remove it if it
// shows `want`. Survivors come back in original order, merged into one stack.
static bool print_cut(std::vector<Stack> payload, CardFace want, const MatrixId& id,
                      RandomSource& rng, Transcript& transcript, std::vector<Card>& merged) {
  const int secret = removal_index(payload, want);
  ChosenCutSession session = chosen_cut_begin(std::move(payload), secret, rng, transcript, id);
  Stack& picked = session.selected();
  Card& card = picked.cards.front();
  if (card.orientation == Orientation::FaceUp) fail(Errc::AlreadyFaceUp, "print reveal");
  card.orientation = Orientation::FaceUp;
  transcript.log_reveal(id, 0, session.selected_col(), 0, card.face);
  if (card.face != want) return false;
  picked.pop_top();
  std::vector<Stack> survivors = chosen_cut_end(std::move(session), rng, transcript);
  merged.clear();
  for (Stack& s : survivors)
    for (Card& c : s.cards) merged.push_back(c);
  return true;
}

PrintOutcome print_basic(const std::vector<Card>& template_main, int rows, int cols,
                         AreaView& area, RandomSource& rng, Transcript& transcript) {
  if (template_main.size() != size_t(rows) * cols)
    fail(Errc::ValueError, "template size mismatch");
  if (area.rows() != rows || area.cols() != cols)
    fail(Errc::ValueError, "area size mismatch");
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (area.at(r, c).height() != 1)
        fail(Errc::ValueError, "basic print expects single-card cells");

  std::vector<Card> merged;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      std::vector<Stack> payload;
      payload.push_back(Stack::single(face_down(template_main[size_t(r) * cols + c].face)));
      payload.push_back(Stack(std::move(area.at(r, c).cards)));
      if (!print_cut(std::move(payload), CardFace::blank(), MatrixId::main_cut(r, c), rng,
                     transcript, merged))
        return {false, PrintFailure::Conflict, r, c};
      area.at(r, c).cards = merged;
    }
  return {};
}

PrintOutcome tatami_print(const Template& tmpl, AreaView& area, RandomSource& rng,
                          Transcript& transcript) {
  if (tmpl.rows != area.rows() || tmpl.cols != area.cols())
    fail(Errc::ValueError, "template and area sizes differ");

  // Counter pairs come off first so the main pass works on bare symbol cards.
  std::vector<std::pair<Card, Card>> counters(size_t(tmpl.rows) * tmpl.cols);
  for (int r = 0; r < tmpl.rows; ++r)
    for (int c = 0; c < tmpl.cols; ++c) {
      Stack& cell = area.at(r, c);
      if (cell.height() != 3)
        fail(Errc::ValueError, "grid cell is not a counter-counter-main stack");
      Card top = cell.pop_top();
      Card bottom = cell.pop_top();
      counters[size_t(r) * tmpl.cols + c] = {top, bottom};
    }

  std::vector<Card> merged;
  for (int r = 0; r < tmpl.rows; ++r)
    for (int c = 0; c < tmpl.cols; ++c) {
      std::vector<Stack> payload;
      payload.push_back(Stack::single(face_down(tmpl.main_at(r, c).face)));
      payload.push_back(Stack(std::move(area.at(r, c).cards)));
      if (!print_cut(std::move(payload), CardFace::blank(), MatrixId::main_cut(r, c), rng,
                     transcript, merged))
        return {false, PrintFailure::Conflict, r, c};
      area.at(r, c).cards = merged;
    }

  for (int r = 0; r < tmpl.rows; ++r)
    for (int c = 0; c < tmpl.cols; ++c) {
      const auto& [top, bottom] = counters[size_t(r) * tmpl.cols + c];
      std::vector<Stack> payload;
      payload.push_back(Stack::single(face_down(tmpl.corner_at(r, c).face)));
      payload.push_back(Stack::single(face_down(top.face)));
      payload.push_back(Stack::single(face_down(bottom.face)));
      if (!print_cut(std::move(payload), CardFace::heart(), MatrixId::counter_cut(r, c), rng,
                     transcript, merged))
        return {false, PrintFailure::CornerOverflow, r, c};
      Stack& cell = area.at(r, c);
      cell.cards.insert(cell.cards.begin(), merged.begin(), merged.end());
    }
  return {};
}

}  // namespace tatami
