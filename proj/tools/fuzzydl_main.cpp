// fuzzydl: command-line front end for the reasoning services.
//
// Exit codes: 0 yes/consistent, 1 no/inconsistent, 2 usage or parse error,
// 3 node budget exceeded.

#include "fuzzydl/oracle.hpp"
#include "fuzzydl/parser.hpp"
#include "fuzzydl/services.hpp"
#include "fuzzydl/tableau.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace fdl;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string mode = "auto";
  std::size_t budget = 1'000'000;
  bool oracle = false;
  std::uint64_t seed = 0;
  bool quiet = false;
  bool trace = false;

  Mode parsed_mode() const {
    if (mode == "si") return Mode::SI;
    if (mode == "shin") return Mode::SHIN;
    if (mode == "gci") return Mode::GCI;
    return Mode::Auto;
  }
  ServiceOptions services() const { return {parsed_mode(), {budget, false}}; }
};

void report(const std::string& origin, const std::vector<Diagnostic>& diags, bool quiet) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error || !quiet) std::cerr << origin << ":" << d << "\n";
}

KnowledgeBase load_kb(const std::string& path, const Settings& s) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  auto parsed = parse_kb(text.str());
  report(path, parsed.diagnostics, s.quiet);
  if (!parsed.ok()) throw UsageError("failed to parse " + path);
  return std::move(*parsed.value);
}

QueryAssertion load_assertion(const std::string& text, const Settings& s) {
  auto parsed = parse_assertion(text);
  report("--assert", parsed.diagnostics, s.quiet);
  if (!parsed.ok()) throw UsageError("failed to parse assertion");
  return std::move(*parsed.value);
}

Concept load_concept(const std::string& option, const std::string& text, const Settings& s) {
  auto parsed = parse_concept(text);
  report(option, parsed.diagnostics, s.quiet);
  if (!parsed.ok()) throw UsageError("failed to parse concept");
  return *parsed.value;
}

SolveResult run_solver(const KnowledgeBase& kb, const Settings& s) {
  SolveResult r = solve(kb, s.parsed_mode(), {s.budget, s.trace});
  for (const auto& line : r.trace) std::cerr << "trace: " << line << "\n";
  if (s.oracle) {
    SearchResult o = search_model(kb);
    switch (o.status) {
      case SearchStatus::Found:
        std::cerr << "oracle: model with " << o.model->domain_size() << " elements"
                  << (r.consistent ? "" : "; disagrees with the tableau") << "\n";
        break;
      case SearchStatus::Exhausted:
        std::cerr << "oracle: no model with at most 3 elements\n";
        break;
      case SearchStatus::BudgetExceeded:
        std::cerr << "oracle: search budget exceeded\n";
        break;
    }
  }
  return r;
}

int answer(bool yes, const char* positive, const char* negative) {
  std::cout << (yes ? positive : negative) << "\n";
  return yes ? kYes : kNo;
}

KnowledgeBase with_assertion(KnowledgeBase kb, const Assertion& a) {
  kb.abox.add(a);
  return kb;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reasoner for fuzzy SI and SHIN knowledge bases"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  app.add_option("--mode", s.mode, "Reasoning mode")->check(CLI::IsMember({"auto", "si", "shin", "gci"}));
  app.add_option("--budget-nodes", s.budget, "Maximum number of generated nodes");
  app.add_flag("--oracle", s.oracle, "Cross-check consistency with the finite-model search");
  app.add_option("--seed", s.seed, "Reserved");
  app.add_flag("--quiet", s.quiet, "Suppress warnings and notes");
  app.add_flag("--trace", s.trace, "Print rule applications to stderr");

  std::string kb_path;
  std::string assertion;
  std::string concept_text;
  std::string sub_text;
  std::string super_text;
  std::string degree_text;
  std::string out_path;

  auto* check = app.add_subcommand("check", "Decide KB consistency");
  check->add_option("kb", kb_path)->required();
  auto* entail = app.add_subcommand("entail", "Decide entailment of a fuzzy assertion");
  entail->add_option("kb", kb_path)->required();
  entail->add_option("--assert", assertion)->required();
  auto* glb_cmd = app.add_subcommand("glb", "Greatest entailed lower bound");
  glb_cmd->add_option("kb", kb_path)->required();
  glb_cmd->add_option("--assert", assertion)->required();
  auto* lub_cmd = app.add_subcommand("lub", "Least entailed upper bound");
  lub_cmd->add_option("kb", kb_path)->required();
  lub_cmd->add_option("--assert", assertion)->required();
  auto* sat = app.add_subcommand("sat", "Concept satisfiability");
  sat->add_option("kb", kb_path)->required();
  sat->add_option("--concept", concept_text)->required();
  sat->add_option("--degree", degree_text, "Test n-satisfiability instead");
  auto* subs = app.add_subcommand("subsumes", "Concept subsumption");
  subs->add_option("kb", kb_path)->required();
  subs->add_option("--sub", sub_text)->required();
  subs->add_option("--super", super_text)->required();
  auto* dump = app.add_subcommand("dump-forest", "Print the final or first clashing forest");
  dump->add_option("kb", kb_path)->required();
  dump->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const KnowledgeBase kb = load_kb(kb_path, s);

    if (check->parsed()) return answer(run_solver(kb, s).consistent, "consistent", "inconsistent");

    if (entail->parsed()) {
      QueryAssertion q = load_assertion(assertion, s);
      if (q.bounds.empty()) throw UsageError("--assert needs a bound such as \">= 0.75\"");
      bool entailed = true;
      for (const auto& b : q.bounds) {
        Assertion negated = with_bound(q.subject, {negate(b.ineq), b.degree});
        entailed = entailed && !run_solver(with_assertion(kb, negated), s).consistent;
      }
      return answer(entailed, "entailed", "not-entailed");
    }

    if (glb_cmd->parsed() || lub_cmd->parsed()) {
      QueryAssertion q = load_assertion(assertion, s);
      BoundResult r = glb_cmd->parsed() ? glb(kb, q.subject, s.services()) : lub(kb, q.subject, s.services());
      if (!r.kb_consistent) {
        std::cout << "kb-inconsistent\n";
        return kNo;
      }
      std::cout << r.value.to_string() << "\n";
      return kYes;
    }

    if (sat->parsed()) {
      Concept c = load_concept("--concept", concept_text, s);
      if (degree_text.empty()) return answer(satisfiable(kb, c, s.services()), "satisfiable", "unsatisfiable");
      auto n = Degree::parse(degree_text);
      if (!n || *n < Degree::zero() || *n > Degree::one()) throw UsageError("--degree must lie in [0, 1]");
      return answer(n_satisfiable(kb, c, *n, s.services()), "satisfiable", "unsatisfiable");
    }

    if (subs->parsed()) {
      Concept sub = load_concept("--sub", sub_text, s);
      Concept super = load_concept("--super", super_text, s);
      return answer(subsumes(kb, sub, super, s.services()), "subsumed", "not-subsumed");
    }

    if (dump->parsed()) {
      SolveResult r = run_solver(kb, s);
      std::string text = r.forest.dump();
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!out) throw UsageError("cannot write " + out_path);
        out << text;
      }
      return r.consistent ? kYes : kNo;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const KbError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  }
  return kUsage;
}
