#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tatami/error.hpp"

namespace tatami {

class Transcript;
struct MatrixId;

enum class Orientation : uint8_t { FaceUp, FaceDown };

// Closed face alphabet. Mark cards (0/1) appear only inside cut machinery;
// number cards carry a value >= 1.
enum class FaceKind : uint8_t { Blank, MarkZero, MarkOne, Club, Heart, Plus, VBar, HBar, Number };

struct CardFace {
  FaceKind kind = FaceKind::Blank;
  int16_t number = 0;  // set iff kind == Number

  static constexpr CardFace blank() { return {FaceKind::Blank, 0}; }
  static constexpr CardFace mark_zero() { return {FaceKind::MarkZero, 0}; }
  static constexpr CardFace mark_one() { return {FaceKind::MarkOne, 0}; }
  static constexpr CardFace club() { return {FaceKind::Club, 0}; }
  static constexpr CardFace heart() { return {FaceKind::Heart, 0}; }
  static constexpr CardFace plus() { return {FaceKind::Plus, 0}; }
  static constexpr CardFace vbar() { return {FaceKind::VBar, 0}; }
  static constexpr CardFace hbar() { return {FaceKind::HBar, 0}; }
  static CardFace num(int v);

  auto operator<=>(const CardFace&) const = default;
};

std::string to_string(const CardFace& face);
std::optional<CardFace> face_from_string(std::string_view token);

struct Card {
  CardFace face{};
  Orientation orientation = Orientation::FaceDown;
};

inline Card face_down(CardFace face) { return {face, Orientation::FaceDown}; }
inline Card face_up(CardFace face) { return {face, Orientation::FaceUp}; }

// Pile of cards; index 0 is the top. The tag is a test-oracle identity label,
// never serialized and never observable through a transcript.
struct Stack {
  std::vector<Card> cards;
  int32_t tag = -1;

  Stack() = default;
  explicit Stack(std::vector<Card> c, int32_t t = -1) : cards(std::move(c)), tag(t) {}
  static Stack single(Card card, int32_t tag = -1) { return Stack({card}, tag); }

  int height() const { return static_cast<int>(cards.size()); }
  bool empty() const { return cards.empty(); }
  Card& top() { return cards.front(); }
  Card pop_top();
  void push_top(Card card) { cards.insert(cards.begin(), card); }
  void push_bottom(Card card) { cards.push_back(card); }
};

struct Position {
  int row = 0;
  int col = 0;
  int depth = 0;  // 0 = top card of the addressed stack
};

// rows x cols grid of stacks. Stacks within one row must share a height for
// the pile-shifting shuffle to treat columns as indistinguishable.
class CardMatrix {
 public:
  CardMatrix() = default;
  CardMatrix(int rows, int cols) : rows_(rows), cols_(cols), cells_(size_t(rows) * cols) {}

  static CardMatrix from_rows(std::vector<std::vector<Stack>> rows);
  static CardMatrix from_cells(int rows, int cols, std::vector<Stack> cells);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Stack& at(int r, int c);
  const Stack& at(int r, int c) const;

  // Moves every stack out in row-major order, leaving the matrix 0x0.
  std::vector<Stack> release_cells();

  // Cyclic column shift: column x moves to (x - offset) mod cols.
  void rotate_left(int offset);

  bool uniform_row_heights() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Stack> cells_;
};

void turn_all(CardMatrix& matrix, Orientation orientation);

// Flips one face-down card face-up and logs the observation.
CardFace reveal(CardMatrix& matrix, Position pos, Transcript& transcript, const MatrixId& id);

// Observer projection: face-down cards are opaque.
struct FaceView {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::optional<CardFace>>> stacks;  // row-major cells

  const std::vector<std::optional<CardFace>>& at(int r, int c) const;
};

FaceView view(const CardMatrix& matrix);

// Sorted multiset of every face in the matrix; conservation-check helper.
std::vector<CardFace> face_multiset(const CardMatrix& matrix);

}  // namespace tatami
