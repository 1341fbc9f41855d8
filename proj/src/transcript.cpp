#include "tatami/transcript.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace tatami {

using nlohmann::json;

const char* kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Setup: return "setup";
    case EventKind::Shuffle: return "shuffle";
    case EventKind::Reveal: return "reveal";
    case EventKind::TemplateVerify: return "template_verify";
    case EventKind::Rotate: return "rotate";
    case EventKind::Verdict: return "verdict";
  }
  fail(Errc::ValueError, "unknown event kind");
}

static std::optional<EventKind> kind_from_string(std::string_view text) {
  for (EventKind k : {EventKind::Setup, EventKind::Shuffle, EventKind::Reveal,
                      EventKind::TemplateVerify, EventKind::Rotate, EventKind::Verdict})
    if (text == kind_name(k)) return k;
  return std::nullopt;
}

std::string MatrixId::str() const {
  switch (scope) {
    case Scope::Grid: return "grid";
    case Scope::AreaCut: return "cut:area";
    case Scope::TemplateCut: return "cut:tmpl";
    case Scope::MainCut:
      return "cut:main:" + std::to_string(row) + "," + std::to_string(col);
    case Scope::CounterCut:
      return "cut:ctr:" + std::to_string(row) + "," + std::to_string(col);
  }
  fail(Errc::ValueError, "unknown matrix scope");
}

std::optional<MatrixId> MatrixId::parse(std::string_view text) {
  if (text == "grid") return grid();
  if (text == "cut:area") return area_cut();
  if (text == "cut:tmpl") return template_cut();
  const bool is_main = text.starts_with("cut:main:");
  const bool is_ctr = text.starts_with("cut:ctr:");
  if (!is_main && !is_ctr) return std::nullopt;
  const std::string_view coords = text.substr(is_main ? 9 : 8);
  const size_t comma = coords.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  try {
    const int r = std::stoi(std::string(coords.substr(0, comma)));
    const int c = std::stoi(std::string(coords.substr(comma + 1)));
    return is_main ? main_cut(r, c) : counter_cut(r, c);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

const char* reason_name(RejectReason reason) {
  switch (reason) {
    case RejectReason::None: return "none";
    case RejectReason::PrintConflict: return "print_conflict";
    case RejectReason::CornerOverflow: return "corner_overflow";
    case RejectReason::TemplateCorrupt: return "template_corrupt";
    case RejectReason::ClueMismatch: return "clue_mismatch";
    case RejectReason::DummyNotBlank: return "dummy_not_blank";
  }
  fail(Errc::ValueError, "unknown reject reason");
}

std::optional<RejectReason> reason_from_string(std::string_view text) {
  for (RejectReason r :
       {RejectReason::None, RejectReason::PrintConflict, RejectReason::CornerOverflow,
        RejectReason::TemplateCorrupt, RejectReason::ClueMismatch, RejectReason::DummyNotBlank})
    if (text == reason_name(r)) return r;
  return std::nullopt;
}

Event& Transcript::append(EventKind kind) {
  Event& event = events_.emplace_back();
  event.seq = static_cast<uint32_t>(events_.size() - 1);
  event.kind = kind;
  return event;
}

void Transcript::log_setup(std::string puzzle, int rows, int cols, int pile, int iterations) {
  Event& e = append(EventKind::Setup);
  e.puzzle = std::move(puzzle);
  e.rows = rows;
  e.cols = cols;
  e.pile = pile;
  e.iterations = iterations;
}

void Transcript::log_shuffle(const MatrixId& id, int cols) {
  Event& e = append(EventKind::Shuffle);
  e.matrix = id;
  e.cols = cols;
}

void Transcript::log_reveal(const MatrixId& id, int row, int col, int depth, CardFace face) {
  Event& e = append(EventKind::Reveal);
  e.matrix = id;
  e.row = static_cast<int16_t>(row);
  e.col = static_cast<int16_t>(col);
  e.depth = static_cast<int16_t>(depth);
  e.face = face;
}

void Transcript::log_template_verify(int count, bool ok) {
  Event& e = append(EventKind::TemplateVerify);
  e.cols = count;
  e.ok = ok;
}

void Transcript::log_rotate(const MatrixId& id, int cols, int offset) {
  Event& e = append(EventKind::Rotate);
  e.matrix = id;
  e.cols = cols;
  e.offset = offset;
}

void Transcript::log_accept() {
  Event& e = append(EventKind::Verdict);
  e.ok = true;
}

void Transcript::log_reject(RejectReason reason, int step) {
  Event& e = append(EventKind::Verdict);
  e.ok = false;
  e.reason = reason;
  e.step = step;
}

size_t Transcript::count(EventKind kind) const {
  size_t n = 0;
  for (const Event& e : events_)
    if (e.kind == kind) ++n;
  return n;
}

void Transcript::write_jsonl(std::ostream& out) const {
  for (const Event& e : events_) {
    json detail = json::object();
    switch (e.kind) {
      case EventKind::Setup:
        detail = {{"puzzle", e.puzzle}, {"rows", e.rows},      {"cols", e.cols},
                  {"pile", e.pile},     {"iterations", e.iterations}};
        break;
      case EventKind::Shuffle:
        detail = {{"matrix", e.matrix.str()}, {"cols", e.cols}};
        break;
      case EventKind::Reveal:
        detail = {{"matrix", e.matrix.str()},
                  {"row", e.row},
                  {"col", e.col},
                  {"depth", e.depth},
                  {"face", to_string(e.face)}};
        break;
      case EventKind::TemplateVerify:
        detail = {{"count", e.cols}, {"ok", e.ok}};
        break;
      case EventKind::Rotate:
        detail = {{"matrix", e.matrix.str()}, {"cols", e.cols}, {"offset", e.offset}};
        break;
      case EventKind::Verdict:
        if (e.ok)
          detail = {{"ok", true}};
        else
          detail = {{"ok", false}, {"reason", reason_name(e.reason)}, {"step", e.step}};
        break;
    }
    const json line = {{"seq", e.seq}, {"kind", kind_name(e.kind)}, {"detail", detail}};
    out << line.dump() << '\n';
  }
  if (!out) fail(Errc::IoError, "transcript write failed");
}

Transcript Transcript::read_jsonl(std::istream& in) {
  Transcript transcript;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": " + ex.what());
    }
    const auto bad = [&](const std::string& what) {
      fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": " + what);
    };
    if (!j.contains("seq") || !j.contains("kind") || !j.contains("detail"))
      bad("missing seq/kind/detail");
    const auto kind = kind_from_string(j["kind"].get<std::string>());
    if (!kind) bad("unknown kind " + j["kind"].get<std::string>());
    const json& d = j["detail"];
    const auto matrix_of = [&](const json& detail) {
      const auto id = MatrixId::parse(detail.at("matrix").get<std::string>());
      if (!id) bad("bad matrix id");
      return *id;
    };
    try {
      switch (*kind) {
        case EventKind::Setup:
          transcript.log_setup(d.at("puzzle").get<std::string>(), d.at("rows").get<int>(),
                               d.at("cols").get<int>(), d.at("pile").get<int>(),
                               d.at("iterations").get<int>());
          break;
        case EventKind::Shuffle:
          transcript.log_shuffle(matrix_of(d), d.at("cols").get<int>());
          break;
        case EventKind::Reveal: {
          const auto face = face_from_string(d.at("face").get<std::string>());
          if (!face) bad("bad face token");
          transcript.log_reveal(matrix_of(d), d.at("row").get<int>(), d.at("col").get<int>(),
                                d.at("depth").get<int>(), *face);
          break;
        }
        case EventKind::TemplateVerify:
          transcript.log_template_verify(d.at("count").get<int>(), d.at("ok").get<bool>());
          break;
        case EventKind::Rotate:
          transcript.log_rotate(matrix_of(d), d.at("cols").get<int>(), d.at("offset").get<int>());
          break;
        case EventKind::Verdict:
          if (d.at("ok").get<bool>()) {
            transcript.log_accept();
          } else {
            const auto reason = reason_from_string(d.at("reason").get<std::string>());
            if (!reason) bad("bad reject reason");
            transcript.log_reject(*reason, d.at("step").get<int>());
          }
          break;
      }
    } catch (const json::exception& ex) {
      bad(ex.what());
    }
    if (transcript.events_.back().seq != j["seq"].get<uint32_t>())
      bad("seq out of order");
  }
  return transcript;
}

}  // namespace tatami
