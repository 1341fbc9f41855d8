#pragma once

#include <vector>

#include "tatami/printer.hpp"
#include "tatami/puzzles.hpp"

namespace tatami::testing {

// Pure-geometry twin of the layered printer, used to cross-check protocol
// outcomes without touching cards. Cell (r, c) of the board tracks the symbol
// printed on it and how many region corners landed on its top-left point.
struct BoardModel {
  int rows = 0, cols = 0;
  std::vector<CardFace> symbol;  // blank when unprinted
  std::vector<int> clubs;

  explicit BoardModel(int rows, int cols)
      : rows(rows), cols(cols), symbol(size_t(rows) * cols, CardFace::blank()),
        clubs(size_t(rows) * cols, 0) {}
};

struct OracleOutcome {
  bool ok = true;
  PrintFailure failure = PrintFailure::Conflict;
  int row = -1, col = -1;  // window cell of the predicted failure
};

// Predicts one print of an h x w rectangle template (window dims
// window_rows x window_cols, window anchored at (top, left) of the board) and
// applies its effects to the model when it succeeds.
OracleOutcome predict_print(BoardModel& board, int top, int left, int window_rows, int window_cols,
                            int rect_height, int rect_width, CardFace fill);

}  // namespace tatami::testing
