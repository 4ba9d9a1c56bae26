#include "reqclone/error.hpp"

namespace reqclone {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::corpus: return "corpus";
    case Stage::normalize: return "normalize";
    case Stage::tailor: return "tailor";
    case Stage::detect: return "detect";
    case Stage::metrics: return "metrics";
    case Stage::report: return "report";
  }
  return "unknown";
}

Error::Error(Stage stage, const std::string& message)
    : std::runtime_error(std::string(to_string(stage)) + ": " + message),
      stage_(stage) {}

}  // namespace reqclone
