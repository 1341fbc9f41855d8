#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tatami/cards.hpp"

namespace tatami {

enum class EventKind : uint8_t { Setup, Shuffle, Reveal, TemplateVerify, Rotate, Verdict };

const char* kind_name(EventKind kind);

// Names the physical matrix an observable action touched. Cut ids carry the
// window-relative cell for per-cell print cuts; absolute grid coordinates of
// the selected area never appear.
struct MatrixId {
  enum class Scope : uint8_t { Grid, AreaCut, TemplateCut, MainCut, CounterCut };

  Scope scope = Scope::Grid;
  int16_t row = -1;
  int16_t col = -1;

  static MatrixId grid() { return {Scope::Grid, -1, -1}; }
  static MatrixId area_cut() { return {Scope::AreaCut, -1, -1}; }
  static MatrixId template_cut() { return {Scope::TemplateCut, -1, -1}; }
  static MatrixId main_cut(int r, int c) { return {Scope::MainCut, int16_t(r), int16_t(c)}; }
  static MatrixId counter_cut(int r, int c) { return {Scope::CounterCut, int16_t(r), int16_t(c)}; }

  auto operator<=>(const MatrixId&) const = default;

  std::string str() const;
  static std::optional<MatrixId> parse(std::string_view text);
};

enum class RejectReason : uint8_t {
  None,
  PrintConflict,
  CornerOverflow,
  TemplateCorrupt,
  ClueMismatch,
  DummyNotBlank,
};

const char* reason_name(RejectReason reason);
std::optional<RejectReason> reason_from_string(std::string_view text);

struct Event {
  uint32_t seq = 0;
  EventKind kind = EventKind::Setup;
  MatrixId matrix{};
  int16_t row = 0, col = 0, depth = 0;       // Reveal
  CardFace face{};                           // Reveal
  int32_t cols = 0;                          // Shuffle/Rotate width; Setup grid cols; TemplateVerify count
  int32_t rows = 0;                          // Setup grid rows
  int32_t pile = 0;                          // Setup pile size
  int32_t iterations = 0;                    // Setup iteration count
  int32_t offset = 0;                        // Rotate
  bool ok = false;                           // TemplateVerify; Verdict accept flag
  RejectReason reason = RejectReason::None;  // Verdict
  int32_t step = 0;                          // Verdict
  std::string puzzle;                        // Setup: "tatamibari" | "squarejam"
};

// Append-only observer record. Newline-delimited JSON on disk; one event per
// line with fields {seq, kind, detail}. Bit-identical for a fixed seed.
class Transcript {
 public:
  void log_setup(std::string puzzle, int rows, int cols, int pile, int iterations);
  void log_shuffle(const MatrixId& id, int cols);
  void log_reveal(const MatrixId& id, int row, int col, int depth, CardFace face);
  void log_template_verify(int count, bool ok);
  void log_rotate(const MatrixId& id, int cols, int offset);
  void log_accept();
  void log_reject(RejectReason reason, int step);

  const std::vector<Event>& events() const { return events_; }
  size_t size() const { return events_.size(); }
  size_t count(EventKind kind) const;
  void reserve(size_t n) { events_.reserve(n); }
  void clear() { events_.clear(); }

  void write_jsonl(std::ostream& out) const;
  static Transcript read_jsonl(std::istream& in);

 private:
  Event& append(EventKind kind);
  std::vector<Event> events_;
};

}  // namespace tatami
