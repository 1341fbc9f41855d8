#include "tatami/puzzles.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace tatami {

CardFace face_of(ClueSymbol symbol) {
  switch (symbol) {
    case ClueSymbol::Plus: return CardFace::plus();
    case ClueSymbol::VBar: return CardFace::vbar();
    case ClueSymbol::HBar: return CardFace::hbar();
  }
  fail(Errc::ValueError, "unknown clue symbol");
}

static std::vector<std::vector<std::string>> content_lines(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string token;
    while (ls >> token) {
      if (token.front() == '#') break;  // comment runs to end of line
      tokens.push_back(token);
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

static int parse_int(const std::string& token, int lo, int hi, const char* what) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(token, &used);
  } catch (const std::exception&) {
    fail(Errc::SyntaxError, std::string(what) + ": not a number: " + token);
  }
  if (used != token.size()) fail(Errc::SyntaxError, std::string(what) + ": trailing junk: " + token);
  if (v < lo || v > hi)
    fail(Errc::BoundsError, std::string(what) + " " + token + " outside [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  return v;
}

Puzzle parse_puzzle(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) fail(Errc::SyntaxError, "empty puzzle");
  const auto& header = lines[0];
  if (header[0] == "tatamibari") {
    if (header.size() != 3) fail(Errc::SyntaxError, "header needs: tatamibari <rows> <cols>");
    TatamibariPuzzle puzzle;
    puzzle.rows = parse_int(header[1], 1, 64, "rows");
    puzzle.cols = parse_int(header[2], 1, 64, "cols");
    if (lines.size() != size_t(puzzle.rows) + 1)
      fail(Errc::SyntaxError, "expected " + std::to_string(puzzle.rows) + " grid rows");
    for (int r = 0; r < puzzle.rows; ++r) {
      const auto& row = lines[size_t(r) + 1];
      if (row.size() != size_t(puzzle.cols))
        fail(Errc::SyntaxError, "row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                    " cells, want " + std::to_string(puzzle.cols));
      for (int c = 0; c < puzzle.cols; ++c) {
        const std::string& token = row[size_t(c)];
        if (token == ".") continue;
        if (token == "+") puzzle.clues[{r, c}] = ClueSymbol::Plus;
        else if (token == "|") puzzle.clues[{r, c}] = ClueSymbol::VBar;
        else if (token == "-") puzzle.clues[{r, c}] = ClueSymbol::HBar;
        else fail(Errc::SyntaxError, "bad cell token: " + token);
      }
    }
    return puzzle;
  }
  if (header[0] == "squarejam") {
    if (header.size() != 2) fail(Errc::SyntaxError, "header needs: squarejam <size>");
    SquareJamPuzzle puzzle;
    puzzle.size = parse_int(header[1], 1, 64, "size");
    if (lines.size() != size_t(puzzle.size) + 1)
      fail(Errc::SyntaxError, "expected " + std::to_string(puzzle.size) + " grid rows");
    for (int r = 0; r < puzzle.size; ++r) {
      const auto& row = lines[size_t(r) + 1];
      if (row.size() != size_t(puzzle.size))
        fail(Errc::SyntaxError, "row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                    " cells, want " + std::to_string(puzzle.size));
      for (int c = 0; c < puzzle.size; ++c) {
        const std::string& token = row[size_t(c)];
        if (token == ".") continue;
        puzzle.clues[{r, c}] = parse_int(token, 1, puzzle.size, "clue");
      }
    }
    return puzzle;
  }
  fail(Errc::SyntaxError, "unknown puzzle kind: " + header[0]);
}

std::string serialize_puzzle(const Puzzle& puzzle) {
  std::ostringstream out;
  if (const auto* t = std::get_if<TatamibariPuzzle>(&puzzle)) {
    out << "tatamibari " << t->rows << ' ' << t->cols << '\n';
    for (int r = 0; r < t->rows; ++r) {
      for (int c = 0; c < t->cols; ++c) {
        if (c) out << ' ';
        const auto it = t->clues.find({r, c});
        out << (it == t->clues.end() ? "." : to_string(face_of(it->second)));
      }
      out << '\n';
    }
  } else {
    const auto& s = std::get<SquareJamPuzzle>(puzzle);
    out << "squarejam " << s.size << '\n';
    for (int r = 0; r < s.size; ++r) {
      for (int c = 0; c < s.size; ++c) {
        if (c) out << ' ';
        const auto it = s.clues.find({r, c});
        if (it == s.clues.end()) out << '.';
        else out << it->second;
      }
      out << '\n';
    }
  }
  return out.str();
}

static std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Puzzle load_puzzle(const std::string& path) { return parse_puzzle(read_file(path)); }

RectPartition parse_solution(std::string_view text) {
  RectPartition partition;
  for (const auto& tokens : content_lines(text)) {
    if (tokens.size() != 5 || tokens[0] != "rect")
      fail(Errc::SyntaxError, "want: rect <top> <left> <height> <width>");
    Rect rect;
    rect.top = parse_int(tokens[1], 0, 1 << 20, "top");
    rect.left = parse_int(tokens[2], 0, 1 << 20, "left");
    rect.height = parse_int(tokens[3], 1, 1 << 20, "height");
    rect.width = parse_int(tokens[4], 1, 1 << 20, "width");
    partition.rects.push_back(rect);
  }
  return partition;
}

std::string serialize_solution(const RectPartition& partition) {
  std::ostringstream out;
  for (const Rect& r : partition.rects)
    out << "rect " << r.top << ' ' << r.left << ' ' << r.height << ' ' << r.width << '\n';
  return out.str();
}

RectPartition load_solution(const std::string& path) { return parse_solution(read_file(path)); }

namespace {

struct Board {
  int rows, cols;
  bool in_bounds(const Rect& r) const {
    return r.top >= 0 && r.left >= 0 && r.height >= 1 && r.width >= 1 && r.bottom() <= rows &&
           r.right() <= cols;
  }
};

void check_cover(const Board& board, const RectPartition& partition, Validation& out) {
  std::vector<int> owners(size_t(board.rows) * board.cols, 0);
  for (size_t i = 0; i < partition.rects.size(); ++i) {
    const Rect& r = partition.rects[i];
    if (!board.in_bounds(r)) {
      out.violations.push_back("region " + std::to_string(i) + " leaves the board");
      continue;
    }
    for (int rr = r.top; rr < r.bottom(); ++rr)
      for (int cc = r.left; cc < r.right(); ++cc) ++owners[size_t(rr) * board.cols + cc];
  }
  for (int rr = 0; rr < board.rows; ++rr)
    for (int cc = 0; cc < board.cols; ++cc) {
      const int n = owners[size_t(rr) * board.cols + cc];
      const std::string cell = "(" + std::to_string(rr) + "," + std::to_string(cc) + ")";
      if (n == 0) out.violations.push_back("cell " + cell + " is uncovered");
      else if (n > 1) out.violations.push_back("cell " + cell + " is covered " + std::to_string(n) + " times");
    }
}

// Four regions sharing one point as their corner is the forbidden cross.
void check_corners(const Board& board, const RectPartition& partition, Validation& out) {
  std::vector<int> corners(size_t(board.rows + 1) * (board.cols + 1), 0);
  for (const Rect& r : partition.rects) {
    if (!board.in_bounds(r)) continue;
    for (int pr : {r.top, r.bottom()})
      for (int pc : {r.left, r.right()}) ++corners[size_t(pr) * (board.cols + 1) + pc];
  }
  for (int pr = 1; pr < board.rows; ++pr)
    for (int pc = 1; pc < board.cols; ++pc)
      if (corners[size_t(pr) * (board.cols + 1) + pc] >= 4)
        out.violations.push_back("four regions share corner point (" + std::to_string(pr) + "," +
                                 std::to_string(pc) + ")");
}

}  // namespace

Validation validate_tatamibari(const TatamibariPuzzle& puzzle, const RectPartition& partition) {
  Validation out;
  const Board board{puzzle.rows, puzzle.cols};
  check_cover(board, partition, out);
  check_corners(board, partition, out);
  for (size_t i = 0; i < partition.rects.size(); ++i) {
    const Rect& r = partition.rects[i];
    if (!board.in_bounds(r)) continue;
    int found = 0;
    ClueSymbol symbol{};
    Cell where{};
    for (const auto& [cell, s] : puzzle.clues)
      if (r.contains(cell)) {
        ++found;
        symbol = s;
        where = cell;
      }
    if (found != 1) {
      out.violations.push_back("region " + std::to_string(i) + " holds " + std::to_string(found) +
                               " clues");
      continue;
    }
    const ClueSymbol want = r.height == r.width  ? ClueSymbol::Plus
                            : r.height > r.width ? ClueSymbol::VBar
                                                 : ClueSymbol::HBar;
    if (symbol != want)
      out.violations.push_back("clue at (" + std::to_string(where.row) + "," +
                               std::to_string(where.col) + ") mismatches its region shape");
  }
  out.valid = out.violations.empty();
  return out;
}

Validation validate_squarejam(const SquareJamPuzzle& puzzle, const RectPartition& partition) {
  Validation out;
  const Board board{puzzle.size, puzzle.size};
  check_cover(board, partition, out);
  check_corners(board, partition, out);
  for (size_t i = 0; i < partition.rects.size(); ++i) {
    const Rect& r = partition.rects[i];
    if (!board.in_bounds(r)) continue;
    if (r.height != r.width) {
      out.violations.push_back("region " + std::to_string(i) + " is not square");
      continue;
    }
    for (const auto& [cell, side] : puzzle.clues)
      if (r.contains(cell) && side != r.height)
        out.violations.push_back("clue at (" + std::to_string(cell.row) + "," +
                                 std::to_string(cell.col) + ") wants side " + std::to_string(side) +
                                 ", region has " + std::to_string(r.height));
  }
  out.valid = out.violations.empty();
  return out;
}

Validation validate(const Puzzle& puzzle, const RectPartition& partition) {
  if (const auto* t = std::get_if<TatamibariPuzzle>(&puzzle))
    return validate_tatamibari(*t, partition);
  return validate_squarejam(std::get<SquareJamPuzzle>(puzzle), partition);
}

static ExtendedSolution extend_checked(int rows, int cols, const RectPartition& partition,
                                       const Validation& validation, bool squarejam) {
  if (!validation.valid)
    fail(Errc::InvalidPartition, validation.violations.front());
  ExtendedSolution out;
  out.rows = rows;
  out.cols = cols;
  out.partition = partition;
  out.fill.assign(size_t(rows) * cols, CardFace::blank());
  for (const Rect& r : partition.rects) {
    const CardFace face = squarejam          ? CardFace::num(r.height)
                          : r.height == r.width ? CardFace::plus()
                          : r.height > r.width  ? CardFace::vbar()
                                                : CardFace::hbar();
    for (int rr = r.top; rr < r.bottom(); ++rr)
      for (int cc = r.left; cc < r.right(); ++cc) out.fill[size_t(rr) * cols + cc] = face;
  }
  return out;
}

ExtendedSolution extend_solution(const TatamibariPuzzle& puzzle, const RectPartition& partition) {
  return extend_checked(puzzle.rows, puzzle.cols, partition, validate_tatamibari(puzzle, partition),
                        false);
}

ExtendedSolution extend_solution(const SquareJamPuzzle& puzzle, const RectPartition& partition) {
  return extend_checked(puzzle.size, puzzle.size, partition, validate_squarejam(puzzle, partition),
                        true);
}

namespace {

// Anchored exhaustive cover search. The region covering the first uncovered
// cell must have its top-left there, so each level tries only sizes. Interior
// corner points are pruned at count 3: a third region cornered on a point
// forces a fourth.
struct PartitionSearch {
  int rows, cols;
  bool squares_only;
  int limit;
  std::function<bool(const Rect&)> admit;

  PartitionSearch(int rows, int cols, bool squares_only, int limit,
                  std::function<bool(const Rect&)> admit)
      : rows(rows), cols(cols), squares_only(squares_only), limit(limit), admit(std::move(admit)) {}

  uint64_t mask = 0, full = 0;
  std::vector<int> corners;
  std::vector<Rect> current;
  std::vector<RectPartition> found;

  void run() {
    if (rows * cols > 36) fail(Errc::SearchBudgetExceeded, "grid beyond 36 cells");
    full = (rows * cols == 64) ? ~0ull : (1ull << (rows * cols)) - 1;
    corners.assign(size_t(rows + 1) * (cols + 1), 0);
    dfs();
  }

  bool cells_free(const Rect& r) const {
    for (int rr = r.top; rr < r.bottom(); ++rr)
      for (int cc = r.left; cc < r.right(); ++cc)
        if (mask & (1ull << (rr * cols + cc))) return false;
    return true;
  }

  uint64_t rect_mask(const Rect& r) const {
    uint64_t m = 0;
    for (int rr = r.top; rr < r.bottom(); ++rr)
      for (int cc = r.left; cc < r.right(); ++cc) m |= 1ull << (rr * cols + cc);
    return m;
  }

  bool corner_ok(const Rect& r, int delta) {
    bool ok = true;
    for (int pr : {r.top, r.bottom()})
      for (int pc : {r.left, r.right()}) {
        int& n = corners[size_t(pr) * (cols + 1) + pc];
        n += delta;
        if (delta > 0 && pr > 0 && pr < rows && pc > 0 && pc < cols && n >= 3) ok = false;
      }
    return ok;
  }

  void dfs() {
    if (static_cast<int>(found.size()) >= limit) return;
    if (mask == full) {
      found.push_back(RectPartition{current});
      return;
    }
    int anchor = 0;
    while (mask & (1ull << anchor)) ++anchor;
    const int r0 = anchor / cols, c0 = anchor % cols;
    for (int h = rows - r0; h >= 1; --h)
      for (int w = cols - c0; w >= 1; --w) {
        if (squares_only && h != w) continue;
        const Rect rect{r0, c0, h, w};
        if (!cells_free(rect) || !admit(rect)) continue;
        if (!corner_ok(rect, +1)) {
          corner_ok(rect, -1);
          continue;
        }
        mask |= rect_mask(rect);
        current.push_back(rect);
        dfs();
        current.pop_back();
        mask &= ~rect_mask(rect);
        corner_ok(rect, -1);
        if (static_cast<int>(found.size()) >= limit) return;
      }
  }
};

}  // namespace

std::vector<RectPartition> brute_force_solve(const TatamibariPuzzle& puzzle, int limit) {
  if (limit < 1) fail(Errc::ValueError, "limit must be >= 1");
  PartitionSearch search{puzzle.rows, puzzle.cols, false, limit, nullptr};
  search.admit = [&puzzle](const Rect& r) {
    int found = 0;
    ClueSymbol symbol{};
    for (const auto& [cell, s] : puzzle.clues) {
      if (!r.contains(cell)) continue;
      if (++found > 1) return false;
      symbol = s;
    }
    if (found != 1) return false;
    const ClueSymbol want = r.height == r.width  ? ClueSymbol::Plus
                            : r.height > r.width ? ClueSymbol::VBar
                                                 : ClueSymbol::HBar;
    return symbol == want;
  };
  search.run();
  return std::move(search.found);
}

std::vector<RectPartition> brute_force_solve(const SquareJamPuzzle& puzzle, int limit) {
  if (limit < 1) fail(Errc::ValueError, "limit must be >= 1");
  PartitionSearch search{puzzle.size, puzzle.size, true, limit, nullptr};
  search.admit = [&puzzle](const Rect& r) {
    for (const auto& [cell, side] : puzzle.clues)
      if (r.contains(cell) && side != r.height) return false;
    return true;
  };
  search.run();
  return std::move(search.found);
}

std::vector<RectPartition> solve(const Puzzle& puzzle, int limit) {
  if (const auto* t = std::get_if<TatamibariPuzzle>(&puzzle)) return brute_force_solve(*t, limit);
  return brute_force_solve(std::get<SquareJamPuzzle>(puzzle), limit);
}

std::vector<RectPartition> enumerate_partitions(int rows, int cols, bool squares_only, int limit) {
  if (limit < 1) fail(Errc::ValueError, "limit must be >= 1");
  if (rows < 1 || cols < 1) fail(Errc::ValueError, "grid needs positive dimensions");
  PartitionSearch search{rows, cols, squares_only, limit, [](const Rect&) { return true; }};
  search.run();
  return std::move(search.found);
}

}  // namespace tatami
