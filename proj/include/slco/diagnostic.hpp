#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace slco {

enum class Severity { error, warning };

struct Location {
  int line = 1;
  int column = 1;

  friend bool operator==(const Location&, const Location&) = default;
};

struct Diagnostic {
  Severity severity = Severity::error;
  Location location;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_errors(const Diagnostics& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

inline std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  os << d.location.line << ':' << d.location.column << ": "
     << (d.severity == Severity::error ? "error" : "warning") << ": " << d.message;
  return os;
}

}  // namespace slco
