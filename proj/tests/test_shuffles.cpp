#include <doctest.h>

#include <set>
#include <vector>

#include "tatami/shuffles.hpp"
#include "tatami/stats.hpp"

using namespace tatami;

namespace {

std::vector<Stack> tagged_payload(int q, int height) {
  std::vector<Stack> payload;
  for (int i = 0; i < q; ++i) {
    Stack s;
    for (int d = 0; d < height; ++d) s.push_bottom(face_down(CardFace::num(i * height + d + 1)));
    s.tag = i;
    payload.push_back(std::move(s));
  }
  return payload;
}

CardMatrix tagged_row(int q) {
  std::vector<Stack> cells;
  for (int i = 0; i < q; ++i) cells.push_back(Stack::single(face_down(CardFace::blank()), i));
  return CardMatrix::from_cells(1, q, std::move(cells));
}

}  // namespace

TEST_CASE("random source is deterministic per seed") {
  RandomSource a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 200; ++i) {
    uint64_t va = a.uniform(1000);
    all_equal = all_equal && va == b.uniform(1000);
    any_diff = any_diff || va != c.uniform(1000);
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CHECK(RandomSource(7).uniform(1) == 0);
  RandomSource z(7);
  CHECK_THROWS_AS(z.uniform(0), Error);
}

TEST_CASE("force_zero_at pins one draw and leaves the stream intact") {
  RandomSource forced(99), plain(99);
  forced.force_zero_at(0);
  CHECK(forced.uniform(1000) == 0);
  // the pinned draw consumed no engine output, so the streams now align
  for (int i = 0; i < 50; ++i) CHECK(forced.uniform(1000) == plain.uniform(1000));

  RandomSource late(99);
  late.force_zero_at(3);
  late.uniform(10);
  late.uniform(10);
  late.uniform(10);
  CHECK(late.uniform(10) == 0);
}

TEST_CASE("pile-shifting shuffle rotates columns and logs only the width") {
  RandomSource rng(5);
  Transcript t;
  CardMatrix m = tagged_row(7);
  pile_shifting_shuffle(m, rng, t, MatrixId::grid());

  int shift = (m.at(0, 0).tag + 7 - 0) % 7;  // column 0 now holds tag q - shift... recover below
  // tag x must sit at column (x + s) mod 7 for a single s
  int s = -1;
  for (int c = 0; c < 7; ++c)
    if (m.at(0, c).tag == 0) s = c;
  REQUIRE(s >= 0);
  for (int c = 0; c < 7; ++c) CHECK(m.at(0, (c + s) % 7).tag == c);
  (void)shift;

  REQUIRE(t.size() == 1);
  const Event& e = t.events().front();
  CHECK(e.kind == EventKind::Shuffle);
  CHECK(e.cols == 7);
  CHECK(e.offset == 0);  // the hidden shift never reaches the transcript
}

TEST_CASE("pile-shifting shuffle refuses ragged rows") {
  RandomSource rng(5);
  Transcript t;
  CardMatrix m = tagged_row(4);
  m.at(0, 2).push_top(face_down(CardFace::club()));
  CHECK_THROWS_AS(pile_shifting_shuffle(m, rng, t, MatrixId::grid()), Error);
}

TEST_CASE("shuffle shifts are uniform") {
  RandomSource rng(1234);
  Transcript t;
  const int q = 5;
  std::vector<uint64_t> counts(q, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    CardMatrix m = tagged_row(q);
    pile_shifting_shuffle(m, rng, t, MatrixId::grid());
    for (int c = 0; c < q; ++c)
      if (m.at(0, c).tag == 0) ++counts[size_t(c)];
  }
  const UniformityTest u = uniformity_chi_square(counts);
  CHECK(u.total == 2000);
  CHECK(u.p > 0.001);
}

TEST_CASE("chosen cut selects the secret stack under a fresh public column") {
  std::set<int> columns_seen;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    RandomSource rng(seed);
    Transcript t;
    auto session = chosen_cut_begin(tagged_payload(5, 2), 2, rng, t, MatrixId::area_cut());
    CHECK(session.selected().tag == 2);
    columns_seen.insert(session.selected_col());
    chosen_cut_end(std::move(session), rng, t);
  }
  CHECK(columns_seen.size() == 5);  // every public column occurs across seeds
}

TEST_CASE("chosen cut transcript shape") {
  RandomSource rng(11);
  Transcript t;
  auto session = chosen_cut_begin(tagged_payload(4, 1), 1, rng, t, MatrixId::template_cut());
  const int j = session.selected_col();

  // begin: one shuffle, then the four selection markers in column order
  REQUIRE(t.size() == 5);
  CHECK(t.events()[0].kind == EventKind::Shuffle);
  CHECK(t.events()[0].cols == 4);
  for (int c = 0; c < 4; ++c) {
    const Event& e = t.events()[size_t(1 + c)];
    CHECK(e.kind == EventKind::Reveal);
    CHECK(e.row == 1);
    CHECK(e.col == c);
    CHECK(e.depth == 0);
    CHECK((e.face == CardFace::mark_one()) == (c == j));
  }

  auto payload = chosen_cut_end(std::move(session), rng, t);
  REQUIRE(t.size() == 11);
  CHECK(t.events()[5].kind == EventKind::Shuffle);
  int home = -1;
  for (int c = 0; c < 4; ++c) {
    const Event& e = t.events()[size_t(6 + c)];
    CHECK(e.kind == EventKind::Reveal);
    CHECK(e.row == 2);
    if (e.face == CardFace::mark_one()) home = e.col;
  }
  const Event& rot = t.events()[10];
  CHECK(rot.kind == EventKind::Rotate);
  CHECK(rot.offset == home);
  CHECK(rot.cols == 4);

  REQUIRE(payload.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(payload[size_t(i)].tag == i);
    for (const Card& card : payload[size_t(i)].cards)
      CHECK(card.orientation == Orientation::FaceDown);
  }
}

TEST_CASE("chosen cut round trip preserves payload order and contents") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    RandomSource rng(seed * 7 + 1);
    Transcript t;
    const int q = int(seed % 6) + 2;
    auto before = tagged_payload(q, 3);
    auto session = chosen_cut_begin(before, int(seed) % q, rng, t, MatrixId::area_cut());
    auto after = chosen_cut_end(std::move(session), rng, t);
    REQUIRE(after.size() == before.size());
    for (size_t i = 0; i < after.size(); ++i) {
      CHECK(after[i].tag == before[i].tag);
      REQUIRE(after[i].height() == before[i].height());
      for (size_t d = 0; d < after[i].cards.size(); ++d)
        CHECK(after[i].cards[d].face == before[i].cards[d].face);
    }
  }
}

TEST_CASE("removing a card from the selected stack survives the restore") {
  RandomSource rng(3);
  Transcript t;
  auto session = chosen_cut_begin(tagged_payload(5, 2), 3, rng, t, MatrixId::area_cut());
  Card taken = session.selected().pop_top();
  CHECK(taken.face == CardFace::num(3 * 2 + 1));
  auto payload = chosen_cut_end(std::move(session), rng, t);
  REQUIRE(payload.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(payload[size_t(i)].tag == i);
    CHECK(payload[size_t(i)].height() == (i == 3 ? 1 : 2));
  }
  CHECK(payload[3].cards[0].face == CardFace::num(3 * 2 + 2));
}

TEST_CASE("take and return guard the session") {
  RandomSource rng(8);
  Transcript t;
  auto session = chosen_cut_begin(tagged_payload(3, 1), 0, rng, t, MatrixId::template_cut());
  CHECK_THROWS_AS(session.return_selected(Stack{}), Error);
  Stack s = session.take_selected();
  CHECK(s.tag == 0);
  CHECK(session.selection_outstanding());
  CHECK_THROWS_AS(session.take_selected(), Error);
  CHECK_THROWS_AS(chosen_cut_end(std::move(session), rng, t), Error);
  session.return_selected(std::move(s));
  auto payload = chosen_cut_end(std::move(session), rng, t);
  CHECK(payload.size() == 3);
}

TEST_CASE("chosen cut rejects bad arguments") {
  RandomSource rng(1);
  Transcript t;
  CHECK_THROWS_AS(chosen_cut_begin({}, 0, rng, t, MatrixId::area_cut()), Error);
  CHECK_THROWS_AS(chosen_cut_begin(tagged_payload(3, 1), 3, rng, t, MatrixId::area_cut()), Error);
  CHECK_THROWS_AS(chosen_cut_begin(tagged_payload(3, 1), -1, rng, t, MatrixId::area_cut()), Error);

  auto ragged = tagged_payload(4, 2);
  ragged[1].pop_top();
  CHECK_THROWS_AS(chosen_cut_begin(std::move(ragged), 0, rng, t, MatrixId::area_cut()), Error);
}

TEST_CASE("selected column and restore offset are uniform") {
  RandomSource rng(2024);
  Transcript t;
  const int q = 5;
  std::vector<uint64_t> selected(q, 0), restored(q, 0);
  for (int trial = 0; trial < 1500; ++trial) {
    t.clear();
    auto session = chosen_cut_begin(tagged_payload(q, 1), 2, rng, t, MatrixId::area_cut());
    ++selected[size_t(session.selected_col())];
    chosen_cut_end(std::move(session), rng, t);
    ++restored[size_t(t.events().back().offset)];
  }
  CHECK(uniformity_chi_square(selected).p > 0.001);
  CHECK(uniformity_chi_square(restored).p > 0.001);
}

TEST_CASE("interleaved sessions stay independent") {
  RandomSource rng(77);
  Transcript t;
  auto a = chosen_cut_begin(tagged_payload(3, 2), 1, rng, t, MatrixId::area_cut());
  auto b = chosen_cut_begin(tagged_payload(4, 1), 2, rng, t, MatrixId::template_cut());
  CHECK(a.selected().tag == 1);
  CHECK(b.selected().tag == 2);
  auto pb = chosen_cut_end(std::move(b), rng, t);
  auto pa = chosen_cut_end(std::move(a), rng, t);
  for (int i = 0; i < 4; ++i) CHECK(pb[size_t(i)].tag == i);
  for (int i = 0; i < 3; ++i) CHECK(pa[size_t(i)].tag == i);
}
