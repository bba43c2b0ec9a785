// Text format for knowledge bases (.fkb).
//
//   define Arm subsumed-by some isPartOf.Body.
//   implies >= 1 R C.
//   trans isPartOf.
//   subrole P R.
//   assert o1 : Arm >= 0.75.
//   assert (o1, o2) : isPartOf >= 0.8.
//   distinct a b.
//
// `=` as a comparison expands to a >= / <= pair. Comments run from `#` to the
// end of the line.
#pragma once

#include "fuzzydl/diagnostics.hpp"
#include "fuzzydl/kb.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdl {

template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return value.has_value(); }
};

Parsed<KnowledgeBase> parse_kb(std::string_view text);
Parsed<Concept> parse_concept(std::string_view text);

// A single assertion as given on the command line. The leading `assert`
// keyword is optional and the individual may be parenthesised. `bounds` is
// empty for a bare subject such as "a : C", and holds two entries for `=`.
struct QueryAssertion {
  Assertion subject;
  std::vector<SignedBound> bounds;
};
Parsed<QueryAssertion> parse_assertion(std::string_view text);

std::string serialize_kb(const KnowledgeBase& kb);

}  // namespace fdl
