#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fdl {

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t begin = 0;  // byte offsets into the input
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning, Note };

enum class DiagnosticCode {
  Syntax,
  DegreeOutOfRange,
  UnusedRole,
  NonSimpleRoleInNumberRestriction,
  GciPresent,
  NonUnfoldableTBox,
};

struct Diagnostic {
  Severity severity = Severity::Error;
  DiagnosticCode code = DiagnosticCode::Syntax;
  std::string message;
  std::optional<SourceSpan> span;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

inline std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  if (d.span) os << d.span->line << ":" << d.span->column << ": ";
  switch (d.severity) {
    case Severity::Error: os << "error: "; break;
    case Severity::Warning: os << "warning: "; break;
    case Severity::Note: os << "note: "; break;
  }
  return os << d.message;
}

}  // namespace fdl
