#include "tatami/cards.hpp"

#include <algorithm>
#include <charconv>

#include "tatami/transcript.hpp"

namespace tatami {

CardFace CardFace::num(int v) {
  if (v < 1) fail(Errc::ValueError, "number card value must be >= 1");
  if (v > INT16_MAX) fail(Errc::ValueError, "number card value too large");
  return {FaceKind::Number, static_cast<int16_t>(v)};
}

std::string to_string(const CardFace& face) {
  switch (face.kind) {
    case FaceKind::Blank: return ".";
    case FaceKind::MarkZero: return "m0";
    case FaceKind::MarkOne: return "m1";
    case FaceKind::Club: return "C";
    case FaceKind::Heart: return "H";
    case FaceKind::Plus: return "+";
    case FaceKind::VBar: return "|";
    case FaceKind::HBar: return "-";
    case FaceKind::Number: return std::to_string(face.number);
  }
  fail(Errc::ValueError, "unknown face kind");
}

std::optional<CardFace> face_from_string(std::string_view token) {
  if (token == ".") return CardFace::blank();
  if (token == "m0") return CardFace::mark_zero();
  if (token == "m1") return CardFace::mark_one();
  if (token == "C") return CardFace::club();
  if (token == "H") return CardFace::heart();
  if (token == "+") return CardFace::plus();
  if (token == "|") return CardFace::vbar();
  if (token == "-") return CardFace::hbar();
  int v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec == std::errc{} && ptr == token.data() + token.size() && v >= 1 && v <= INT16_MAX)
    return CardFace::num(v);
  return std::nullopt;
}

Card Stack::pop_top() {
  if (cards.empty()) fail(Errc::AddressOutOfRange, "pop from empty stack");
  Card card = cards.front();
  cards.erase(cards.begin());
  return card;
}

CardMatrix CardMatrix::from_rows(std::vector<std::vector<Stack>> rows) {
  if (rows.empty()) fail(Errc::ValueError, "matrix needs at least one row");
  const size_t cols = rows.front().size();
  if (cols == 0) fail(Errc::ValueError, "matrix needs at least one column");
  CardMatrix matrix(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(Errc::RaggedMatrix, "row widths differ");
    for (size_t c = 0; c < cols; ++c) matrix.cells_[r * cols + c] = std::move(rows[r][c]);
  }
  return matrix;
}

CardMatrix CardMatrix::from_cells(int rows, int cols, std::vector<Stack> cells) {
  if (rows < 1 || cols < 1) fail(Errc::ValueError, "matrix needs positive dimensions");
  if (cells.size() != size_t(rows) * cols) fail(Errc::ValueError, "cell count mismatch");
  CardMatrix matrix(rows, cols);
  matrix.cells_ = std::move(cells);
  return matrix;
}

Stack& CardMatrix::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    fail(Errc::AddressOutOfRange, "matrix cell (" + std::to_string(r) + "," + std::to_string(c) + ")");
  return cells_[size_t(r) * cols_ + c];
}

const Stack& CardMatrix::at(int r, int c) const {
  return const_cast<CardMatrix*>(this)->at(r, c);
}

std::vector<Stack> CardMatrix::release_cells() {
  std::vector<Stack> cells = std::move(cells_);
  cells_.clear();
  rows_ = cols_ = 0;
  return cells;
}

void CardMatrix::rotate_left(int offset) {
  if (cols_ == 0) fail(Errc::ValueError, "rotate on empty matrix");
  offset %= cols_;
  if (offset < 0) offset += cols_;
  if (offset == 0) return;
  for (int r = 0; r < rows_; ++r) {
    auto first = cells_.begin() + ptrdiff_t(r) * cols_;
    std::rotate(first, first + offset, first + cols_);
  }
}

bool CardMatrix::uniform_row_heights() const {
  for (int r = 0; r < rows_; ++r) {
    const int h = cells_[size_t(r) * cols_].height();
    for (int c = 1; c < cols_; ++c)
      if (cells_[size_t(r) * cols_ + c].height() != h) return false;
  }
  return true;
}

void turn_all(CardMatrix& matrix, Orientation orientation) {
  for (int r = 0; r < matrix.rows(); ++r)
    for (int c = 0; c < matrix.cols(); ++c)
      for (Card& card : matrix.at(r, c).cards) card.orientation = orientation;
}

CardFace reveal(CardMatrix& matrix, Position pos, Transcript& transcript, const MatrixId& id) {
  Stack& stack = matrix.at(pos.row, pos.col);
  if (pos.depth < 0 || pos.depth >= stack.height())
    fail(Errc::AddressOutOfRange, "reveal depth " + std::to_string(pos.depth));
  Card& card = stack.cards[size_t(pos.depth)];
  if (card.orientation == Orientation::FaceUp)
    fail(Errc::AlreadyFaceUp, "card is already face up");
  card.orientation = Orientation::FaceUp;
  transcript.log_reveal(id, pos.row, pos.col, pos.depth, card.face);
  return card.face;
}

const std::vector<std::optional<CardFace>>& FaceView::at(int r, int c) const {
  if (r < 0 || r >= rows || c < 0 || c >= cols)
    fail(Errc::AddressOutOfRange, "view cell (" + std::to_string(r) + "," + std::to_string(c) + ")");
  return stacks[size_t(r) * cols + c];
}

FaceView view(const CardMatrix& matrix) {
  FaceView out;
  out.rows = matrix.rows();
  out.cols = matrix.cols();
  out.stacks.reserve(size_t(out.rows) * out.cols);
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) {
      std::vector<std::optional<CardFace>> faces;
      for (const Card& card : matrix.at(r, c).cards)
        faces.push_back(card.orientation == Orientation::FaceUp ? std::optional(card.face)
                                                                : std::nullopt);
      out.stacks.push_back(std::move(faces));
    }
  return out;
}

std::vector<CardFace> face_multiset(const CardMatrix& matrix) {
  std::vector<CardFace> faces;
  for (int r = 0; r < matrix.rows(); ++r)
    for (int c = 0; c < matrix.cols(); ++c)
      for (const Card& card : matrix.at(r, c).cards) faces.push_back(card.face);
  std::sort(faces.begin(), faces.end());
  return faces;
}

}  // namespace tatami
