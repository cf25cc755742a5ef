#include "bishop/error.hpp"

namespace bishop {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "invalid_argument";
    case Errc::kNotFound: return "not_found";
    case Errc::kGenerationFailed: return "generation_failed";
    case Errc::kEmptyRegion: return "empty_region";
    case Errc::kUndefinedDirection: return "undefined_direction";
    case Errc::kParse: return "parse_error";
    case Errc::kValidation: return "validation_error";
    case Errc::kAnaphoraUnavailable: return "anaphora_unavailable";
    case Errc::kCompositionFailed: return "composition_failed";
    case Errc::kConflict: return "conflict";
    case Errc::kIo: return "io_error";
  }
  return "unknown";
}

}  // namespace bishop
