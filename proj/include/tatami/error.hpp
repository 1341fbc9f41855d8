#pragma once

#include <stdexcept>
#include <string>

namespace tatami {

enum class Errc {
  AddressOutOfRange,
  AlreadyFaceUp,
  RaggedMatrix,
  IndexOutOfRange,
  StackNotReturned,
  SyntaxError,
  BoundsError,
  ValueError,
  InvalidPartition,
  SearchBudgetExceeded,
  AttackNotApplicable,
  IoError,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::AddressOutOfRange: return "address out of range";
    case Errc::AlreadyFaceUp: return "already face up";
    case Errc::RaggedMatrix: return "ragged matrix";
    case Errc::IndexOutOfRange: return "index out of range";
    case Errc::StackNotReturned: return "stack not returned";
    case Errc::SyntaxError: return "syntax error";
    case Errc::BoundsError: return "bounds error";
    case Errc::ValueError: return "value error";
    case Errc::InvalidPartition: return "invalid partition";
    case Errc::SearchBudgetExceeded: return "search budget exceeded";
    case Errc::AttackNotApplicable: return "attack not applicable";
    case Errc::IoError: return "io error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace tatami
