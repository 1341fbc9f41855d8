#pragma once

#include <vector>

#include "tatami/cards.hpp"
#include "tatami/shuffles.hpp"
#include "tatami/transcript.hpp"

namespace tatami {

// Two-layer template: a main block of symbol/number cards (blank outside the
// encoded rectangle) plus a corner layer holding a club at each of the
// rectangle's four corner points, hearts elsewhere.
struct Template {
  int rows = 0, cols = 0;
  int rect_height = 0, rect_width = 0;  // 0x0 encodes the blank template
  std::vector<Card> main;               // row-major, rows*cols single cards
  std::vector<Card> corner;

  bool is_blank() const { return rect_height == 0; }

  const Card& main_at(int r, int c) const { return main[size_t(r) * cols + c]; }
  Card& main_at(int r, int c) { return main[size_t(r) * cols + c]; }
  const Card& corner_at(int r, int c) const { return corner[size_t(r) * cols + c]; }
  Card& corner_at(int r, int c) { return corner[size_t(r) * cols + c]; }

  // h x w rectangle anchored at the template's top-left; main cells (r,c) with
  // r < h, c < w carry the fill face, corner clubs sit at (0,0),(0,w),(h,0),(h,w).
  static Template rectangle(int rows, int cols, int h, int w, CardFace fill);
  static Template blank(int rows, int cols);
};

bool same_faces(const Template& a, const Template& b);

// Flattening convention for pile storage: cell-major, corner card above main
// card, so stack index 2*(r*cols+c) is the corner card of cell (r,c).
Stack template_to_stack(const Template& tmpl);
Template template_from_stack(const Stack& stack, int rows, int cols);

// Mutable window over grid stacks; does not own them.
class AreaView {
 public:
  AreaView(int rows, int cols, std::vector<Stack*> cells);

  static AreaView block(CardMatrix& matrix, int top, int left, int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Stack& at(int r, int c) { return *cells_[size_t(r) * cols_ + c]; }

 private:
  int rows_, cols_;
  std::vector<Stack*> cells_;
};

enum class PrintFailure : uint8_t { Conflict, CornerOverflow };

struct PrintOutcome {
  bool ok = true;
  PrintFailure failure = PrintFailure::Conflict;
  int row = -1, col = -1;  // window cell of the failing reveal

  RejectReason reason() const {
    return failure == PrintFailure::Conflict ? RejectReason::PrintConflict
                                             : RejectReason::CornerOverflow;
  }
};

// Baseline printer: template main cards onto an area of single-card stacks.
// Per cell, a chosen cut selects a blank from the [template, area] pair; the
// reveal of a non-blank card is the conflict.
PrintOutcome print_basic(const std::vector<Card>& template_main, int rows, int cols,
                         AreaView& area, RandomSource& rng, Transcript& transcript);

// Layered printer over [counter, counter, main] grid stacks: main pass first
// (select a blank from each pair), then counter pass (select a heart from each
// [template, counter, counter] triple). A heartless triple is the corner
// overflow: some grid point would collect a third club.
PrintOutcome tatami_print(const Template& tmpl, AreaView& area, RandomSource& rng,
                          Transcript& transcript);

}  // namespace tatami
