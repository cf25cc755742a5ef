#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bishop {

enum class Errc {
  kInvalidArgument,
  kNotFound,
  kGenerationFailed,
  kEmptyRegion,
  kUndefinedDirection,
  kParse,
  kValidation,
  kAnaphoraUnavailable,
  kCompositionFailed,
  kConflict,
  kIo,
};

std::string_view to_string(Errc code);

/// Every failure raised by the engine. Composition failures inside a parse are
/// caught by the chart parser and simply make the rule not fire.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bishop
