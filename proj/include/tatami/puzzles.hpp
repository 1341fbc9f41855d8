#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tatami/cards.hpp"

namespace tatami {

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

enum class ClueSymbol : uint8_t { Plus, VBar, HBar };

CardFace face_of(ClueSymbol symbol);

// Tatamibari: partition the grid into rectangles, one clue per rectangle,
// '+' square, '|' taller, '-' wider; no four rectangles share a corner point.
struct TatamibariPuzzle {
  int rows = 0, cols = 0;
  std::map<Cell, ClueSymbol> clues;
  bool operator==(const TatamibariPuzzle&) const = default;
};

// Square Jam: partition into squares; a clue fixes its square's side; squares
// without clues are fine; same corner-point rule.
struct SquareJamPuzzle {
  int size = 0;
  std::map<Cell, int> clues;
  bool operator==(const SquareJamPuzzle&) const = default;
};

using Puzzle = std::variant<TatamibariPuzzle, SquareJamPuzzle>;

struct Rect {
  int top = 0, left = 0, height = 0, width = 0;

  int bottom() const { return top + height; }  // exclusive
  int right() const { return left + width; }
  bool contains(Cell cell) const {
    return cell.row >= top && cell.row < bottom() && cell.col >= left && cell.col < right();
  }
  auto operator<=>(const Rect&) const = default;
};

// Ordered region list; the order is the printing order.
struct RectPartition {
  std::vector<Rect> rects;
  bool operator==(const RectPartition&) const = default;
};

// Text format: header "tatamibari <m> <n>" | "squarejam <n>", then one token
// per cell ('.', '+', '|', '-', or a positive integer). '#' starts a comment
// line; blank lines are skipped.
Puzzle parse_puzzle(std::string_view text);
std::string serialize_puzzle(const Puzzle& puzzle);
Puzzle load_puzzle(const std::string& path);

// Solution format: "rect <top> <left> <height> <width>" per region, 0-indexed.
RectPartition parse_solution(std::string_view text);
std::string serialize_solution(const RectPartition& partition);
RectPartition load_solution(const std::string& path);

struct Validation {
  bool valid = true;
  std::vector<std::string> violations;
};

Validation validate_tatamibari(const TatamibariPuzzle& puzzle, const RectPartition& partition);
Validation validate_squarejam(const SquareJamPuzzle& puzzle, const RectPartition& partition);
Validation validate(const Puzzle& puzzle, const RectPartition& partition);

// Per-cell fill induced by a valid partition (symbol class resp. side length).
struct ExtendedSolution {
  int rows = 0, cols = 0;
  std::vector<CardFace> fill;  // row-major
  RectPartition partition;

  const CardFace& at(int r, int c) const { return fill[size_t(r) * cols + c]; }
};

ExtendedSolution extend_solution(const TatamibariPuzzle& puzzle, const RectPartition& partition);
ExtendedSolution extend_solution(const SquareJamPuzzle& puzzle, const RectPartition& partition);

// Exhaustive DFS anchored at the lexicographically first uncovered cell,
// larger regions first; returns up to `limit` partitions in search order.
// Guard: grids beyond 36 cells are refused (SearchBudgetExceeded).
std::vector<RectPartition> brute_force_solve(const TatamibariPuzzle& puzzle, int limit = 1);
std::vector<RectPartition> brute_force_solve(const SquareJamPuzzle& puzzle, int limit = 1);
std::vector<RectPartition> solve(const Puzzle& puzzle, int limit = 1);

// Clue-free enumeration of corner-legal partitions; sweep instance generator.
std::vector<RectPartition> enumerate_partitions(int rows, int cols, bool squares_only, int limit);

}  // namespace tatami
