// Reasoning services reduced to ABox consistency.
#pragma once

#include "fuzzydl/degree.hpp"
#include "fuzzydl/kb.hpp"
#include "fuzzydl/tableau.hpp"

#include <set>
#include <vector>

namespace fdl {

struct ServiceOptions {
  Mode mode = Mode::Auto;
  SolverOptions solver;
};

bool consistent(const KnowledgeBase& kb, const ServiceOptions& options = {});

// The query carries its own bound.
bool entails(const KnowledgeBase& kb, const Assertion& query, const ServiceOptions& options = {});
// All bounds must be entailed; `= n` is given as a >= / <= pair.
bool entails(const KnowledgeBase& kb, const Assertion& subject, const std::vector<SignedBound>& bounds,
             const ServiceOptions& options = {});

struct BoundResult {
  bool kb_consistent = true;
  Degree value;
};

// Candidate degrees for bound sweeps, ascending.
std::set<Degree> candidate_degrees(const KnowledgeBase& kb, Mode mode);

// The bound of `subject` is ignored.
BoundResult glb(const KnowledgeBase& kb, const Assertion& subject, const ServiceOptions& options = {});
BoundResult lub(const KnowledgeBase& kb, const Assertion& subject, const ServiceOptions& options = {});

bool satisfiable(const KnowledgeBase& kb, const Concept& c, const ServiceOptions& options = {});
bool n_satisfiable(const KnowledgeBase& kb, const Concept& c, const Degree& n, const ServiceOptions& options = {});

// sub ⊑ super with respect to the KB.
bool subsumes(const KnowledgeBase& kb, const Concept& sub, const Concept& super, const ServiceOptions& options = {});

// Individual name not used anywhere in the KB.
std::string fresh_individual(const KnowledgeBase& kb);

}  // namespace fdl
