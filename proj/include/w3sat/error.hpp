#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace w3sat {

enum class Errc {
  EmptyClauseInput,
  VarOutOfRange,
  WidthExceedsN,
  WidthTooLarge,
  MalformedTrace,
  NotRefuted,
  TooLarge,
  IncompleteCover,
  BadConfig,
  BadParams,
  NotACounterexample,
  SyntaxError,
  SoundnessViolation,
  Internal,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can dispatch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace w3sat
