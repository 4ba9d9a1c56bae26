#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reqclone {

// Pipeline stage an error originated in; used for CLI diagnostics.
enum class Stage { corpus, normalize, tailor, detect, metrics, report };

std::string_view to_string(Stage stage);

class Error : public std::runtime_error {
 public:
  Error(Stage stage, const std::string& message);

  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

}  // namespace reqclone
