#include "tatami/zkp.hpp"

#include <string>
#include <utility>

namespace tatami {

PuzzleKind kind_of(const Puzzle& puzzle) {
  return std::holds_alternative<TatamibariPuzzle>(puzzle) ? PuzzleKind::Tatamibari
                                                          : PuzzleKind::SquareJam;
}

namespace {

struct Dims {
  PuzzleKind kind;
  int m, n;          // real board
  int pile;          // template count
  int iterations;
  const char* name;
};

Dims dims_of(const Puzzle& puzzle) {
  if (const auto* t = std::get_if<TatamibariPuzzle>(&puzzle))
    return {PuzzleKind::Tatamibari, t->rows, t->cols, t->rows * t->cols,
            static_cast<int>(t->clues.size()), "tatamibari"};
  const auto& s = std::get<SquareJamPuzzle>(puzzle);
  return {PuzzleKind::SquareJam, s.size, s.size, s.size + 1, s.size * s.size, "squarejam"};
}

}  // namespace

GridState setup_grid(const Puzzle& puzzle, Transcript& transcript) {
  const Dims d = dims_of(puzzle);
  transcript.log_setup(d.name, d.m, d.n, d.pile, d.iterations);

  GridState grid;
  grid.kind = d.kind;
  grid.m = d.m;
  grid.n = d.n;
  std::vector<Stack> cells;
  cells.reserve(size_t(grid.seq_len()));
  for (int seq = 0; seq < grid.seq_len(); ++seq) {
    Stack stack({face_down(CardFace::heart()), face_down(CardFace::heart()),
                 face_down(CardFace::blank())},
                seq);
    cells.push_back(std::move(stack));
  }
  grid.matrix = CardMatrix::from_cells(grid.rows(), grid.cols(), std::move(cells));
  return grid;
}

int template_id(PuzzleKind kind, int m, int n, int height, int width) {
  if (kind == PuzzleKind::Tatamibari) {
    if (height < 1 || height > m || width < 1 || width > n)
      fail(Errc::BoundsError, "no " + std::to_string(height) + "x" + std::to_string(width) +
                                  " template on a " + std::to_string(m) + "x" + std::to_string(n) +
                                  " board");
    return (height - 1) * n + (width - 1);
  }
  if (height == 0 && width == 0) return n;  // blank filler
  if (height != width || height < 1 || height > n)
    fail(Errc::BoundsError, "no " + std::to_string(height) + "x" + std::to_string(width) +
                                " square template on a " + std::to_string(n) + " board");
  return height - 1;
}

TemplatePile canonical_templates(PuzzleKind kind, int m, int n) {
  TemplatePile pile;
  pile.rows = m + 1;
  pile.cols = n + 1;
  if (kind == PuzzleKind::Tatamibari) {
    for (int h = 1; h <= m; ++h)
      for (int w = 1; w <= n; ++w) {
        const CardFace fill = h == w ? CardFace::plus() : h > w ? CardFace::vbar() : CardFace::hbar();
        pile.canonical.push_back(Template::rectangle(pile.rows, pile.cols, h, w, fill));
      }
  } else {
    for (int s = 1; s <= n; ++s)
      pile.canonical.push_back(Template::rectangle(pile.rows, pile.cols, s, s, CardFace::num(s)));
    pile.canonical.push_back(Template::blank(pile.rows, pile.cols));
  }
  for (size_t i = 0; i < pile.canonical.size(); ++i) {
    Stack stack = template_to_stack(pile.canonical[i]);
    stack.tag = static_cast<int32_t>(i);
    pile.stacks.push_back(std::move(stack));
  }
  return pile;
}

bool verify_pile(const TemplatePile& pile, Transcript& transcript) {
  bool ok = pile.stacks.size() == pile.canonical.size();
  for (size_t i = 0; ok && i < pile.stacks.size(); ++i) {
    if (pile.stacks[i].height() != 2 * pile.rows * pile.cols) {
      ok = false;
      break;
    }
    const Template seen = template_from_stack(pile.stacks[i], pile.rows, pile.cols);
    ok = same_faces(seen, pile.canonical[i]);
  }
  transcript.log_template_verify(pile.size(), ok);
  return ok;
}

ProverStrategy honest_strategy(const Puzzle& puzzle, const RectPartition& partition) {
  const Dims d = dims_of(puzzle);
  ProverStrategy strategy;
  for (const Rect& r : partition.rects) {
    const int anchor = r.top * 2 * d.n + r.left;
    strategy.moves.push_back({anchor, template_id(d.kind, d.m, d.n, r.height, r.width)});
  }
  if (d.kind == PuzzleKind::SquareJam) {
    while (static_cast<int>(strategy.moves.size()) < d.iterations)
      strategy.moves.push_back({0, template_id(d.kind, d.m, d.n, 0, 0)});
  } else if (!strategy.moves.empty()) {
    while (static_cast<int>(strategy.moves.size()) < d.iterations)
      strategy.moves.push_back(strategy.moves.front());
  } else if (d.iterations > 0) {
    strategy.moves.assign(size_t(d.iterations), Move{0, 0});
  }
  return strategy;
}

AreaView AreaSelection::view() {
  std::vector<Stack*> cells;
  cells.reserve(size_t(view_rows) * view_cols);
  for (int dr = 0; dr < view_rows; ++dr)
    for (int dc = 0; dc < view_cols; ++dc) {
      const int col = (session.selected_col() + dr * grid_cols + dc) % seq_len;
      cells.push_back(&session.stack_at(col));
    }
  return AreaView(view_rows, view_cols, std::move(cells));
}

AreaSelection select_area(GridState& grid, int anchor_seq, int rows, int cols, RandomSource& rng,
                          Transcript& transcript) {
  if (anchor_seq < 0 || anchor_seq >= grid.seq_len())
    fail(Errc::IndexOutOfRange, "anchor " + std::to_string(anchor_seq));
  std::vector<Stack> payload = grid.matrix.release_cells();
  AreaSelection selection{
      chosen_cut_begin(std::move(payload), anchor_seq, rng, transcript, MatrixId::area_cut()),
      rows, cols, grid.cols(), grid.seq_len()};
  return selection;
}

void restore_area(GridState& grid, AreaSelection&& selection, RandomSource& rng,
                  Transcript& transcript) {
  std::vector<Stack> payload = chosen_cut_end(std::move(selection.session), rng, transcript);
  grid.matrix = CardMatrix::from_cells(grid.rows(), grid.cols(), std::move(payload));
}

namespace {

RunResult run_impl(const Puzzle& puzzle, const ProverStrategy& strategy, RandomSource& rng) {
  const Dims d = dims_of(puzzle);
  if (static_cast<int>(strategy.moves.size()) < d.iterations)
    fail(Errc::ValueError, "strategy has " + std::to_string(strategy.moves.size()) +
                               " moves for " + std::to_string(d.iterations) + " iterations");

  Transcript transcript;
  transcript.reserve(size_t(shuffle_count(d.kind, d.m, d.n, d.iterations)) * 7 + 64);
  GridState grid = setup_grid(puzzle, transcript);
  TemplatePile pile = canonical_templates(d.kind, d.m, d.n);

  const auto reject = [&](RejectReason reason, int step) {
    transcript.log_reject(reason, step);
    return RunResult{Verdict::reject(reason, step), std::move(transcript)};
  };

  if (!verify_pile(pile, transcript)) return reject(RejectReason::TemplateCorrupt, -1);

  for (int it = 0; it < d.iterations; ++it) {
    const Move move = strategy.moves[size_t(it)];
    if (move.template_id < 0 || move.template_id >= pile.size())
      fail(Errc::IndexOutOfRange, "template id " + std::to_string(move.template_id));

    AreaSelection area = select_area(grid, move.anchor_seq, pile.rows, pile.cols, rng, transcript);
    ChosenCutSession tcut = chosen_cut_begin(std::move(pile.stacks), move.template_id, rng,
                                             transcript, MatrixId::template_cut());
    const Stack picked = tcut.take_selected();
    const Template tmpl = template_from_stack(picked, pile.rows, pile.cols);

    AreaView window = area.view();
    const PrintOutcome outcome = tatami_print(tmpl, window, rng, transcript);
    if (!outcome.ok) return reject(outcome.reason(), it);

    // The consumed pile slot is refilled with a fresh copy of the template it
    // held; a tampering prover slips a flipped corner card in here.
    Stack rebuilt = template_to_stack(pile.canonical[size_t(move.template_id)]);
    rebuilt.tag = move.template_id;
    if (strategy.tamper && strategy.tamper->iteration == it) {
      const size_t at = 2 * size_t(strategy.tamper->corner_cell);
      if (at >= rebuilt.cards.size()) fail(Errc::IndexOutOfRange, "tamper corner cell");
      Card& card = rebuilt.cards[at];
      card.face = card.face == CardFace::club() ? CardFace::heart() : CardFace::club();
    }
    tcut.return_selected(std::move(rebuilt));

    restore_area(grid, std::move(area), rng, transcript);
    pile.stacks = chosen_cut_end(std::move(tcut), rng, transcript);
    if (!verify_pile(pile, transcript)) return reject(RejectReason::TemplateCorrupt, it);
  }

  if (const auto* t = std::get_if<TatamibariPuzzle>(&puzzle)) {
    for (const auto& [cell, symbol] : t->clues)
      if (reveal(grid.matrix, {cell.row, cell.col, 2}, transcript, MatrixId::grid()) !=
          face_of(symbol))
        return reject(RejectReason::ClueMismatch, d.iterations);
  } else {
    const auto& s = std::get<SquareJamPuzzle>(puzzle);
    for (const auto& [cell, side] : s.clues)
      if (reveal(grid.matrix, {cell.row, cell.col, 2}, transcript, MatrixId::grid()) !=
          CardFace::num(side))
        return reject(RejectReason::ClueMismatch, d.iterations);
  }
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.is_dummy(r, c)) continue;
      if (reveal(grid.matrix, {r, c, 2}, transcript, MatrixId::grid()) != CardFace::blank())
        return reject(RejectReason::DummyNotBlank, d.iterations);
    }

  transcript.log_accept();
  return {Verdict::accept(), std::move(transcript)};
}

}  // namespace

RunResult run_tatamibari(const TatamibariPuzzle& puzzle, const ProverStrategy& strategy,
                         RandomSource& rng) {
  return run_impl(Puzzle{puzzle}, strategy, rng);
}

RunResult run_squarejam(const SquareJamPuzzle& puzzle, const ProverStrategy& strategy,
                        RandomSource& rng) {
  return run_impl(Puzzle{puzzle}, strategy, rng);
}

RunResult run_protocol(const Puzzle& puzzle, const ProverStrategy& strategy, RandomSource& rng) {
  return run_impl(puzzle, strategy, rng);
}

long long shuffle_count(PuzzleKind kind, int m, int n, int k) {
  const long long per = 4ll * (m + 1) * (n + 1) + 4;
  const long long iterations = kind == PuzzleKind::Tatamibari ? k : 1ll * n * n;
  return iterations * per;
}

long long card_count(PuzzleKind kind, int m, int n) {
  const long long grid = 12ll * m * n;
  const long long per_template = 2ll * (m + 1) * (n + 1);
  const long long pile = kind == PuzzleKind::Tatamibari ? 1ll * m * n : n + 1;
  return grid + pile * per_template;
}

}  // namespace tatami
