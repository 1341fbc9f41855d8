#include "tatami/harness.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tatami {

const char* attack_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::Overlap: return "overlap";
    case AttackKind::Corner: return "corner";
    case AttackKind::Symbol: return "symbol";
    case AttackKind::TemplateTamper: return "template_tamper";
    case AttackKind::DummyIntrusion: return "dummy_intrusion";
    case AttackKind::Wrap: return "wrap";
    case AttackKind::Undercover: return "undercover";
  }
  fail(Errc::ValueError, "unknown attack kind");
}

std::optional<AttackKind> attack_from_string(std::string_view text) {
  for (AttackKind k : {AttackKind::Overlap, AttackKind::Corner, AttackKind::Symbol,
                       AttackKind::TemplateTamper, AttackKind::DummyIntrusion, AttackKind::Wrap,
                       AttackKind::Undercover})
    if (text == attack_name(k)) return k;
  return std::nullopt;
}

TatamibariPuzzle sample_tatamibari_6x6() {
  return std::get<TatamibariPuzzle>(parse_puzzle(R"(tatamibari 6 6
+ . . . . .
| . + . | .
. . - . . .
. - . | | +
. + . . . .
. - . + + |
)"));
}

SquareJamPuzzle sample_squarejam_6x6() {
  return std::get<SquareJamPuzzle>(parse_puzzle(R"(squarejam 6
. . . . . .
. . 1 . . .
. . . . 3 .
. 2 . . . .
. . . 2 . .
. . . . . .
)"));
}

namespace {

struct ProtocolShape {
  PuzzleKind kind;
  int m, n, pile, iterations;
  const char* name;
};

ProtocolShape shape_of(const Puzzle& puzzle) {
  if (const auto* t = std::get_if<TatamibariPuzzle>(&puzzle))
    return {PuzzleKind::Tatamibari, t->rows, t->cols, t->rows * t->cols,
            static_cast<int>(t->clues.size()), "tatamibari"};
  const auto& s = std::get<SquareJamPuzzle>(puzzle);
  return {PuzzleKind::SquareJam, s.size, s.size, s.size + 1, s.size * s.size, "squarejam"};
}

ProverStrategy honest_base(const Puzzle& puzzle, AttackKind kind) {
  const auto solutions = solve(puzzle, 1);
  if (solutions.empty())
    fail(Errc::AttackNotApplicable,
         std::string(attack_name(kind)) + " needs a solvable instance");
  return honest_strategy(puzzle, solutions.front());
}

ProverStrategy overlap_attack(const Puzzle& puzzle) {
  const ProtocolShape s = shape_of(puzzle);
  if (s.iterations < 2) fail(Errc::AttackNotApplicable, "overlap needs two iterations");
  ProverStrategy strategy = honest_base(puzzle, AttackKind::Overlap);
  strategy.moves[1] = strategy.moves[0];
  return strategy;
}

ProverStrategy corner_attack(const Puzzle& puzzle) {
  const auto* sj = std::get_if<SquareJamPuzzle>(&puzzle);
  if (!sj || sj->size < 2)
    fail(Errc::AttackNotApplicable, "corner needs a square-jam board of size >= 2");
  const int n = sj->size;
  const int one = template_id(PuzzleKind::SquareJam, n, n, 1, 1);
  const int blank = template_id(PuzzleKind::SquareJam, n, n, 0, 0);
  // Three unit squares cornered on one point; their third club overflows it.
  ProverStrategy strategy;
  strategy.moves = {{0, one}, {1, one}, {2 * n, one}};
  while (static_cast<int>(strategy.moves.size()) < n * n) strategy.moves.push_back({0, blank});
  return strategy;
}

ProverStrategy symbol_attack(const Puzzle& puzzle) {
  const auto* t = std::get_if<TatamibariPuzzle>(&puzzle);
  if (!t) fail(Errc::AttackNotApplicable, "symbol swap targets tatamibari");
  const auto solutions = solve(puzzle, 1);
  if (solutions.empty()) fail(Errc::AttackNotApplicable, "symbol swap needs a solvable instance");
  const Rect r0 = solutions.front().rects.front();
  // A smaller region of a different symbol class, inside the original, keeps
  // every other check clean and trips only the clue face.
  int h, w;
  if (r0.height == r0.width) {
    if (r0.width < 2) fail(Errc::AttackNotApplicable, "no alternative class fits inside 1x1");
    h = 1;
    w = r0.width;
  } else if (r0.height > r0.width) {
    h = w = r0.width;
  } else {
    h = w = r0.height;
  }
  ProverStrategy strategy = honest_strategy(puzzle, solutions.front());
  strategy.moves[0].template_id = template_id(PuzzleKind::Tatamibari, t->rows, t->cols, h, w);
  return strategy;
}

ProverStrategy tamper_attack(const Puzzle& puzzle) {
  const ProtocolShape s = shape_of(puzzle);
  if (s.iterations < 1) fail(Errc::AttackNotApplicable, "tamper needs an iteration");
  ProverStrategy strategy = honest_base(puzzle, AttackKind::TemplateTamper);
  strategy.tamper = TemplateTamper{0, 0};
  return strategy;
}

ProverStrategy dummy_intrusion_attack(const Puzzle& puzzle) {
  const ProtocolShape s = shape_of(puzzle);
  const auto solutions = solve(puzzle, 1);
  if (solutions.empty())
    fail(Errc::AttackNotApplicable, "dummy intrusion needs a solvable instance");
  ProverStrategy strategy = honest_strategy(puzzle, solutions.front());
  const Rect r0 = solutions.front().rects.front();
  // Slide the first print right until it pokes one column into the padding.
  strategy.moves[0].anchor_seq = r0.top * 2 * s.n + (s.n - r0.width + 1);
  return strategy;
}

ProverStrategy wrap_attack(const Puzzle& puzzle) {
  const ProtocolShape s = shape_of(puzzle);
  if (s.iterations < 1) fail(Errc::AttackNotApplicable, "wrap needs an iteration");
  ProverStrategy strategy = honest_base(puzzle, AttackKind::Wrap);
  strategy.moves[0].anchor_seq = 4 * s.m * s.n - 1;
  return strategy;
}

ProverStrategy undercover_attack(const Puzzle& puzzle) {
  if (const auto* t = std::get_if<TatamibariPuzzle>(&puzzle)) {
    if (t->clues.size() != 1 || t->clues.begin()->second != ClueSymbol::Plus)
      fail(Errc::AttackNotApplicable, "undercover tatamibari wants a single + clue");
    const Cell cell = t->clues.begin()->first;
    ProverStrategy strategy;
    strategy.moves = {{cell.row * 2 * t->cols + cell.col,
                       template_id(PuzzleKind::Tatamibari, t->rows, t->cols, 1, 1)}};
    return strategy;
  }
  const auto& sj = std::get<SquareJamPuzzle>(puzzle);
  const int n = sj.size;
  std::vector<Rect> squares;
  for (const auto& [cell, side] : sj.clues) {
    const Rect r{cell.row, cell.col, side, side};
    if (r.bottom() > n || r.right() > n)
      fail(Errc::AttackNotApplicable, "a clue square leaves the board");
    for (const Rect& other : squares)
      if (r.top < other.bottom() && other.top < r.bottom() && r.left < other.right() &&
          other.left < r.right())
        fail(Errc::AttackNotApplicable, "clue squares collide");
    squares.push_back(r);
  }
  std::map<Cell, int> clubs;
  for (const Rect& r : squares)
    for (int dr : {0, r.height})
      for (int dc : {0, r.width})
        if (++clubs[{r.top + dr, r.left + dc}] > 2)
          fail(Errc::AttackNotApplicable, "clue squares overflow a corner");
  ProverStrategy strategy;
  for (const Rect& r : squares)
    strategy.moves.push_back(
        {r.top * 2 * n + r.left, template_id(PuzzleKind::SquareJam, n, n, r.height, r.width)});
  const int blank = template_id(PuzzleKind::SquareJam, n, n, 0, 0);
  while (static_cast<int>(strategy.moves.size()) < n * n) strategy.moves.push_back({0, blank});
  return strategy;
}

}  // namespace

ProverStrategy attack_strategy(const AttackSpec& spec, const Puzzle& puzzle) {
  switch (spec.kind) {
    case AttackKind::Overlap: return overlap_attack(puzzle);
    case AttackKind::Corner: return corner_attack(puzzle);
    case AttackKind::Symbol: return symbol_attack(puzzle);
    case AttackKind::TemplateTamper: return tamper_attack(puzzle);
    case AttackKind::DummyIntrusion: return dummy_intrusion_attack(puzzle);
    case AttackKind::Wrap: return wrap_attack(puzzle);
    case AttackKind::Undercover: return undercover_attack(puzzle);
  }
  fail(Errc::ValueError, "unknown attack kind");
}

Puzzle designated_instance(AttackKind kind) {
  const auto tiny_plus = [](Cell cell) {
    TatamibariPuzzle p;
    p.rows = p.cols = 2;
    p.clues[cell] = ClueSymbol::Plus;
    return Puzzle{p};
  };
  switch (kind) {
    case AttackKind::Overlap: return Puzzle{sample_tatamibari_6x6()};
    case AttackKind::Corner: return Puzzle{SquareJamPuzzle{2, {}}};
    case AttackKind::Symbol: return tiny_plus({0, 0});
    case AttackKind::TemplateTamper: return tiny_plus({0, 0});
    case AttackKind::DummyIntrusion: return tiny_plus({1, 1});
    case AttackKind::Wrap: return tiny_plus({0, 0});
    case AttackKind::Undercover: return tiny_plus({0, 0});
  }
  fail(Errc::ValueError, "unknown attack kind");
}

Transcript simulate_transcript(const Puzzle& puzzle, RandomSource& rng) {
  const ProtocolShape s = shape_of(puzzle);
  const int q_area = 4 * s.m * s.n;
  const int rows = s.m + 1, cols = s.n + 1;

  Transcript t;
  t.reserve(size_t(shuffle_count(s.kind, s.m, s.n, s.iterations)) * 7 + 64);
  t.log_setup(s.name, s.m, s.n, s.pile, s.iterations);
  t.log_template_verify(s.pile, true);

  const auto cut_begin = [&](const MatrixId& id, int q) {
    t.log_shuffle(id, q);
    const int j = rng.uniform_shift(q);
    for (int c = 0; c < q; ++c)
      t.log_reveal(id, 1, c, 0, c == j ? CardFace::mark_one() : CardFace::mark_zero());
    return j;
  };
  const auto cut_end = [&](const MatrixId& id, int q) {
    t.log_shuffle(id, q);
    const int j = rng.uniform_shift(q);
    for (int c = 0; c < q; ++c)
      t.log_reveal(id, 2, c, 0, c == j ? CardFace::mark_one() : CardFace::mark_zero());
    t.log_rotate(id, q, j);
  };

  for (int it = 0; it < s.iterations; ++it) {
    cut_begin(MatrixId::area_cut(), q_area);
    cut_begin(MatrixId::template_cut(), s.pile);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        const MatrixId id = MatrixId::main_cut(r, c);
        const int j = cut_begin(id, 2);
        t.log_reveal(id, 0, j, 0, CardFace::blank());
        cut_end(id, 2);
      }
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        const MatrixId id = MatrixId::counter_cut(r, c);
        const int j = cut_begin(id, 3);
        t.log_reveal(id, 0, j, 0, CardFace::heart());
        cut_end(id, 3);
      }
    cut_end(MatrixId::area_cut(), q_area);
    cut_end(MatrixId::template_cut(), s.pile);
    t.log_template_verify(s.pile, true);
  }

  if (const auto* tp = std::get_if<TatamibariPuzzle>(&puzzle)) {
    for (const auto& [cell, symbol] : tp->clues)
      t.log_reveal(MatrixId::grid(), cell.row, cell.col, 2, face_of(symbol));
  } else {
    for (const auto& [cell, side] : std::get<SquareJamPuzzle>(puzzle).clues)
      t.log_reveal(MatrixId::grid(), cell.row, cell.col, 2, CardFace::num(side));
  }
  for (int r = 0; r < 2 * s.m; ++r)
    for (int c = 0; c < 2 * s.n; ++c)
      if (r >= s.m || c >= s.n) t.log_reveal(MatrixId::grid(), r, c, 2, CardFace::blank());

  t.log_accept();
  return t;
}

std::string ZkAccumulator::Atom::str() const {
  std::ostringstream out;
  out << kind_name(kind) << "/" << int(sub) << " " << matrix.str() << " face=" << to_string(face)
      << " [" << a << "," << b << "," << c << "," << d << "]";
  return out.str();
}

void ZkAccumulator::note_mismatch(size_t index, const Atom* expected, const Atom* actual) {
  ++skeleton_mismatches_;
  if (!first_mismatch_.empty()) return;
  std::ostringstream out;
  out << "atom " << index << ": expected "
      << (expected ? expected->str() : std::string("<end of skeleton>")) << ", got "
      << (actual ? actual->str() : std::string("<end of run>"));
  first_mismatch_ = out.str();
}

void ZkAccumulator::note_structural(const std::string& what) {
  structural_ok_ = false;
  if (structural_note_.empty()) structural_note_ = what;
}

void ZkAccumulator::add(const Transcript& t, bool honest) {
  ++(honest ? honest_runs_ : simulated_runs_);

  // One linear pass builds the masked skeleton and pulls marker positions out
  // of each shuffle's reveal group.
  std::vector<Atom> atoms;
  std::vector<int> group_qs, group_cols;
  atoms.reserve(t.size());
  std::map<std::string, int> last_begin;
  const auto& ev = t.events();
  size_t i = 0;
  bool ok = true;
  const auto structural = [&](const std::string& what) {
    note_structural("event " + std::to_string(i) + ": " + what);
    ok = false;
  };

  while (ok && i < ev.size()) {
    const Event& e = ev[i];
    switch (e.kind) {
      case EventKind::Setup: {
        Atom atom;
        atom.kind = e.kind;
        atom.sub = e.puzzle == "tatamibari" ? 0 : 1;
        atom.a = e.rows;
        atom.b = e.cols;
        atom.c = e.pile;
        atom.d = e.iterations;
        atoms.push_back(atom);
        ++i;
        break;
      }
      case EventKind::Shuffle: {
        Atom atom;
        atom.kind = e.kind;
        atom.matrix = e.matrix;
        atom.a = e.cols;
        atoms.push_back(atom);
        const int q = e.cols;
        if (i + size_t(q) >= ev.size()) {
          structural("marker group truncated");
          break;
        }
        int row = -1, m1 = -1;
        for (int g = 0; ok && g < q; ++g) {
          const Event& r = ev[i + 1 + size_t(g)];
          if (r.kind != EventKind::Reveal || r.matrix != e.matrix || r.col != g || r.depth != 0) {
            structural("marker group broken at offset " + std::to_string(g));
            break;
          }
          if (g == 0) row = r.row;
          else if (r.row != row) {
            structural("marker group spans rows");
            break;
          }
          if (r.face == CardFace::mark_one()) {
            if (m1 != -1) {
              structural("two selection markers");
              break;
            }
            m1 = g;
          } else if (r.face != CardFace::mark_zero()) {
            structural("non-marker face in marker group");
            break;
          }
        }
        if (!ok) break;
        if ((row != 1 && row != 2) || m1 == -1) {
          structural("marker group malformed");
          break;
        }
        Atom group;
        group.kind = EventKind::Reveal;
        group.sub = 0;
        group.matrix = e.matrix;
        group.a = row;
        group.b = q;
        atoms.push_back(group);
        group_qs.push_back(q);
        group_cols.push_back(m1);
        i += 1 + size_t(q);
        if (row == 1) {
          last_begin[e.matrix.str()] = m1;
        } else {
          if (i >= ev.size()) {
            structural("missing restore rotation");
            break;
          }
          const Event& ro = ev[i];
          if (ro.kind != EventKind::Rotate || ro.matrix != e.matrix || ro.cols != q ||
              ro.offset != m1) {
            structural("restore rotation mismatches its marker");
            break;
          }
          Atom rot;
          rot.kind = EventKind::Rotate;
          rot.matrix = e.matrix;
          rot.a = q;
          atoms.push_back(rot);
          ++i;
        }
        break;
      }
      case EventKind::Reveal: {
        Atom atom;
        atom.kind = e.kind;
        atom.matrix = e.matrix;
        atom.face = e.face;
        if (e.matrix == MatrixId::grid()) {
          atom.sub = 2;
          atom.a = e.row;
          atom.b = e.col;
          atom.c = e.depth;
        } else {
          atom.sub = 1;
          atom.a = e.row;
          const auto it = last_begin.find(e.matrix.str());
          if (e.row != 0 || e.depth != 0 || it == last_begin.end() || it->second != e.col) {
            structural("print reveal off the selected column");
            break;
          }
        }
        atoms.push_back(atom);
        ++i;
        break;
      }
      case EventKind::TemplateVerify: {
        Atom atom;
        atom.kind = e.kind;
        atom.a = e.cols;
        atom.b = e.ok ? 1 : 0;
        atoms.push_back(atom);
        ++i;
        break;
      }
      case EventKind::Rotate:
        structural("rotation outside a cut restore");
        break;
      case EventKind::Verdict: {
        Atom atom;
        atom.kind = e.kind;
        atom.a = e.ok ? 1 : 0;
        atom.b = e.ok ? 0 : e.step;
        atom.c = static_cast<int>(e.reason);
        atoms.push_back(atom);
        ++i;
        break;
      }
    }
  }
  if (!ok) return;

  if (!have_ref_) {
    have_ref_ = true;
    ref_ = atoms;
    streams_.resize(group_qs.size());
    for (size_t g = 0; g < group_qs.size(); ++g) {
      streams_[g].q = group_qs[g];
      streams_[g].honest.assign(size_t(group_qs[g]), 0);
      streams_[g].simulated.assign(size_t(group_qs[g]), 0);
    }
  } else {
    const size_t shared = std::min(atoms.size(), ref_.size());
    for (size_t idx = 0; idx < shared; ++idx)
      if (!(atoms[idx] == ref_[idx])) {
        note_mismatch(idx, &ref_[idx], &atoms[idx]);
        return;
      }
    if (atoms.size() != ref_.size()) {
      note_mismatch(shared, shared < ref_.size() ? &ref_[shared] : nullptr,
                    shared < atoms.size() ? &atoms[shared] : nullptr);
      return;
    }
  }

  for (size_t g = 0; g < group_cols.size(); ++g) {
    auto& bin = honest ? streams_[g].honest : streams_[g].simulated;
    ++bin[size_t(group_cols[g])];
  }
}

void ZkAccumulator::merge(ZkAccumulator&& other) {
  if (!other.have_ref_) return;
  if (!have_ref_) {
    *this = std::move(other);
    return;
  }
  if (ref_ != other.ref_) {
    ++skeleton_mismatches_;
    if (first_mismatch_.empty()) first_mismatch_ = "merged accumulators disagree on the skeleton";
  } else {
    for (size_t g = 0; g < streams_.size(); ++g)
      for (size_t j = 0; j < streams_[g].honest.size(); ++j) {
        streams_[g].honest[j] += other.streams_[g].honest[j];
        streams_[g].simulated[j] += other.streams_[g].simulated[j];
      }
  }
  honest_runs_ += other.honest_runs_;
  simulated_runs_ += other.simulated_runs_;
  skeleton_mismatches_ += other.skeleton_mismatches_;
  if (first_mismatch_.empty()) first_mismatch_ = other.first_mismatch_;
  if (other.structural_ok_ == false) note_structural(other.structural_note_);
}

ZkReport ZkAccumulator::report(double alpha) const {
  ZkReport r;
  r.honest_runs = honest_runs_;
  r.simulated_runs = simulated_runs_;
  r.stream_count = streams_.size();
  r.skeleton_mismatches = skeleton_mismatches_;
  r.skeleton_ok = skeleton_mismatches_ == 0 && have_ref_;
  r.first_mismatch = first_mismatch_;
  r.structural_ok = structural_ok_;
  r.structural_note = structural_note_;
  r.alpha = alpha;

  size_t tested = 0;
  for (const Stream& s : streams_)
    if (s.q >= 2) ++tested;
  r.tested_streams = tested;
  r.per_stream_threshold = tested > 0 ? alpha / static_cast<double>(tested) : alpha;

  r.worst_honest.p = r.worst_simulated.p = r.worst_two_sample.p = 2.0;
  for (size_t g = 0; g < streams_.size(); ++g) {
    const Stream& s = streams_[g];
    if (s.q < 2) continue;
    const UniformityTest uh = uniformity_chi_square(s.honest);
    if (uh.total > 0) {
      if (uh.p < r.worst_honest.p)
        r.worst_honest = {static_cast<int>(g), s.q, uh.statistic, uh.p};
      if (uh.p < r.per_stream_threshold) r.uniform_ok_honest = false;
    }
    const UniformityTest us = uniformity_chi_square(s.simulated);
    if (us.total > 0) {
      if (us.p < r.worst_simulated.p)
        r.worst_simulated = {static_cast<int>(g), s.q, us.statistic, us.p};
      if (us.p < r.per_stream_threshold) r.uniform_ok_simulated = false;
    }
    const TwoSampleTest two = two_sample_chi_square(s.honest, s.simulated);
    if (two.dof > 0) {
      if (two.p < r.worst_two_sample.p)
        r.worst_two_sample = {static_cast<int>(g), s.q, two.statistic, two.p};
      if (two.p < r.per_stream_threshold) r.two_sample_ok = false;
    }
  }
  for (StreamStat* w : {&r.worst_honest, &r.worst_simulated, &r.worst_two_sample})
    if (w->p > 1.0) w->p = 1.0;
  return r;
}

bool ZkReport::pass() const {
  return honest_runs > 0 && simulated_runs > 0 && skeleton_ok && structural_ok &&
         uniform_ok_honest && uniform_ok_simulated && two_sample_ok;
}

std::string ZkReport::summary() const {
  std::ostringstream out;
  out << "runs: " << honest_runs << " honest, " << simulated_runs << " simulated\n";
  out << "streams: " << stream_count << " (" << tested_streams
      << " tested), family alpha " << alpha << ", per-stream threshold " << per_stream_threshold
      << "\n";
  out << "skeleton: " << (skeleton_ok ? "identical" : "MISMATCH") << " (" << skeleton_mismatches
      << " mismatching runs)";
  if (!first_mismatch.empty()) out << "\n  first: " << first_mismatch;
  out << "\nstructure: " << (structural_ok ? "consistent" : "VIOLATED");
  if (!structural_note.empty()) out << "\n  note: " << structural_note;
  const auto line = [&](const char* label, const StreamStat& s, bool ok) {
    out << "\n" << label << ": " << (ok ? "pass" : "FAIL") << ", worst stream " << s.index
        << " (q=" << s.q << ") stat " << s.statistic << " p " << s.p;
  };
  line("honest uniformity", worst_honest, uniform_ok_honest);
  line("simulated uniformity", worst_simulated, uniform_ok_simulated);
  line("two-sample", worst_two_sample, two_sample_ok);
  return out.str();
}

ZkReport zk_test(std::span<const Transcript> honest, std::span<const Transcript> simulated,
                 double alpha) {
  ZkAccumulator acc;
  for (const Transcript& t : honest) acc.add_honest(t);
  for (const Transcript& t : simulated) acc.add_simulated(t);
  return acc.report(alpha);
}

}  // namespace tatami
