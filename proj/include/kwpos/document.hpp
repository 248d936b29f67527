#pragma once

#include <optional>
#include <string>

namespace kwpos {

// One corpus record. Summarization-style corpora carry a source document;
// story-style corpora generate from control tokens alone.
struct Document {
  std::string id;
  std::optional<std::string> source;
  std::string target;

  friend bool operator==(const Document&, const Document&) = default;
};

}  // namespace kwpos
