#include "fuzzydl/parser.hpp"

#include <cctype>
#include <sstream>

namespace fdl {

namespace {

enum class Tok {
  Name,
  Number,
  Slash,
  Dot,
  Colon,
  Comma,
  LParen,
  RParen,
  Minus,
  Cmp,
  SubsumedBy,
  Equiv,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

struct SyntaxError {
  std::string message;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run(std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      SourceSpan start = here();
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t b = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        out.push_back(finish(Tok::Name, b, start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t b = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        if (pos_ + 1 < text_.size() && text_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          advance();
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        }
        out.push_back(finish(Tok::Number, b, start));
      } else if (match(">=") || match("<=") || match("\xE2\x89\xA5") || match("\xE2\x89\xA4")) {
        // consumed in match
        out.push_back(finish(Tok::Cmp, start.begin, start));
      } else if (c == '>' || c == '<' || c == '=') {
        advance();
        out.push_back(finish(Tok::Cmp, start.begin, start));
      } else if (match("\xE2\x8A\x91")) {
        out.push_back(finish(Tok::SubsumedBy, start.begin, start));
      } else if (match("\xE2\x89\xA1")) {
        out.push_back(finish(Tok::Equiv, start.begin, start));
      } else {
        Tok kind;
        switch (c) {
          case '/': kind = Tok::Slash; break;
          case '.': kind = Tok::Dot; break;
          case ':': kind = Tok::Colon; break;
          case ',': kind = Tok::Comma; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          case '-': kind = Tok::Minus; break;
          default: {
            advance();
            SourceSpan s = start;
            s.end = pos_;
            diags.push_back({Severity::Error, DiagnosticCode::Syntax,
                             "unexpected character '" + std::string(1, c) + "'", s});
            continue;
          }
        }
        advance();
        out.push_back(finish(kind, start.begin, start));
      }
    }
    Token end;
    end.kind = Tok::End;
    end.span = here();
    end.span.end = end.span.begin;
    out.push_back(end);
    return out;
  }

 private:
  SourceSpan here() const { return {line_, column_, pos_, pos_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }

  bool match(std::string_view s) {
    if (text_.substr(pos_, s.size()) != s) return false;
    for (std::size_t i = 0; i < s.size(); ++i) advance();
    return true;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token finish(Tok kind, std::size_t begin, SourceSpan start) {
    start.end = pos_;
    return {kind, std::string(text_.substr(begin, pos_ - begin)), start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool is_keyword(std::string_view s) {
  return s == "top" || s == "bottom" || s == "not" || s == "and" || s == "or" || s == "some" || s == "all";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags) : toks_(std::move(tokens)), diags_(diags) {}

  KnowledgeBase kb() {
    KnowledgeBase out;
    while (peek().kind != Tok::End) {
      try {
        statement(out);
      } catch (const SyntaxError& e) {
        diags_.push_back({Severity::Error, DiagnosticCode::Syntax, e.message, e.span});
        recover();
      }
    }
    return out;
  }

  Concept standalone_concept() {
    Concept c = concept_expr();
    expect(Tok::End, "end of input");
    return c;
  }

  QueryAssertion standalone_assertion() {
    if (is_word("assert")) next();
    QueryAssertion q = assertion_body(true);
    if (peek().kind == Tok::Dot) next();
    expect(Tok::End, "end of input");
    return q;
  }

  struct Site {
    Concept expr;
    SourceSpan span;
  };
  const std::vector<Site>& concept_sites() const { return sites_; }
  const std::vector<SourceSpan>& role_assertion_spans() const { return role_spans_; }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Name && peek(ahead).text == w;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError{"expected " + expected + ", found " + got, t.span};
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return next();
  }

  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("'" + std::string(w) + "'");
    next();
  }

  void recover() {
    while (peek().kind != Tok::End && peek().kind != Tok::Dot) next();
    if (peek().kind == Tok::Dot) next();
  }

  std::string identifier(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Name || is_keyword(t.text)) fail(what);
    return next().text;
  }

  Role role() {
    std::string name = identifier("role name");
    bool inverted = false;
    if (peek().kind == Tok::Minus) {
      next();
      inverted = true;
    }
    return Role(std::move(name), inverted);
  }

  std::uint32_t cardinality() {
    const Token& t = peek();
    if (t.kind != Tok::Number || t.text.find('.') != std::string::npos) fail("non-negative integer");
    std::uint64_t v = 0;
    for (char c : t.text) {
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > 1'000'000) throw SyntaxError{"cardinality too large", t.span};
    }
    next();
    return static_cast<std::uint32_t>(v);
  }

  Degree degree() {
    const Token& first = peek();
    if (first.kind != Tok::Number) fail("degree");
    SourceSpan span = first.span;
    std::string text = next().text;
    if (peek().kind == Tok::Slash) {
      next();
      const Token& den = peek();
      if (den.kind != Tok::Number || den.text.find('.') != std::string::npos) fail("integer denominator");
      text += "/" + den.text;
      span.end = den.span.end;
      next();
    }
    auto d = Degree::parse(text);
    if (!d) throw SyntaxError{"malformed degree '" + text + "'", span};
    if (*d < Degree::zero() || *d > Degree::one()) {
      diags_.push_back({Severity::Error, DiagnosticCode::DegreeOutOfRange,
                        "degree " + text + " is outside [0,1]", span});
    }
    return *d;
  }

  // Comparison; `=` yields two bounds.
  std::vector<SignedBound> bounds() {
    const Token& t = peek();
    if (t.kind != Tok::Cmp) fail("comparison (>=, >, <=, <, =)");
    std::string op = next().text;
    Degree d = degree();
    if (op == "=") return {{Ineq::Ge, d}, {Ineq::Le, d}};
    if (op == "\xE2\x89\xA5") op = ">=";
    if (op == "\xE2\x89\xA4") op = "<=";
    return {{*parse_ineq(op), d}};
  }

  Concept concept_expr() {
    SourceSpan start = peek().span;
    Concept c = disjunction();
    start.end = toks_[pos_ > 0 ? pos_ - 1 : 0].span.end;
    sites_.push_back({c, start});
    return c;
  }

  Concept disjunction() {
    Concept c = conjunction();
    while (is_word("or")) {
      next();
      c = Concept::disjunction(c, conjunction());
    }
    return c;
  }

  Concept conjunction() {
    Concept c = unary();
    while (is_word("and")) {
      next();
      c = Concept::conjunction(c, unary());
    }
    return c;
  }

  Concept unary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Concept c = disjunction();
      expect(Tok::RParen, "')'");
      return c;
    }
    if (t.kind == Tok::Cmp && (t.text == ">=" || t.text == "<=")) {
      bool at_least = next().text == ">=";
      std::uint32_t n = cardinality();
      Role r = role();
      return at_least ? Concept::at_least(n, r) : Concept::at_most(n, r);
    }
    if (t.kind != Tok::Name) fail("concept");
    if (t.text == "top") {
      next();
      return Concept::top();
    }
    if (t.text == "bottom") {
      next();
      return Concept::bottom();
    }
    if (t.text == "not") {
      next();
      return Concept::negation(unary());
    }
    if (t.text == "some" || t.text == "all") {
      bool some = next().text == "some";
      Role r = role();
      expect(Tok::Dot, "'.' after role");
      Concept filler = unary();
      return some ? Concept::exists(r, filler) : Concept::forall(r, filler);
    }
    return Concept::name(identifier("concept"));
  }

  QueryAssertion assertion_body(bool bounds_optional) {
    SourceSpan start = peek().span;
    QueryAssertion q;
    auto take_bounds = [&] {
      if (bounds_optional && peek().kind != Tok::Cmp) return;
      q.bounds = bounds();
    };
    if (peek().kind == Tok::LParen) {
      next();
      std::string a = identifier("individual");
      if (peek().kind == Tok::Comma) {
        next();
        std::string b = identifier("individual");
        expect(Tok::RParen, "')'");
        expect(Tok::Colon, "':'");
        Role r = role();
        q.subject = RoleAssertion{a, b, r, {}};
        take_bounds();
        start.end = toks_[pos_ - 1].span.end;
        role_spans_.push_back(start);
        return q;
      }
      expect(Tok::RParen, "')'");
      expect(Tok::Colon, "':'");
      q.subject = ConceptAssertion{a, concept_expr(), {}};
      take_bounds();
      return q;
    }
    std::string a = identifier("individual");
    expect(Tok::Colon, "':'");
    q.subject = ConceptAssertion{a, concept_expr(), {}};
    take_bounds();
    return q;
  }

  void statement(KnowledgeBase& kb) {
    const Token& head = peek();
    if (head.kind != Tok::Name) fail("statement keyword");
    std::string kw = next().text;
    if (kw == "define") {
      std::string name = identifier("concept name");
      DefinitionKind kind;
      if (peek().kind == Tok::SubsumedBy) {
        next();
        kind = DefinitionKind::Subsumed;
      } else if (peek().kind == Tok::Equiv) {
        next();
        kind = DefinitionKind::Equivalent;
      } else if (is_word("subsumed") && peek(1).kind == Tok::Minus && is_word("by", 2)) {
        next();
        next();
        next();
        kind = DefinitionKind::Subsumed;
      } else if (is_word("equiv")) {
        next();
        kind = DefinitionKind::Equivalent;
      } else {
        fail("'subsumed-by' or 'equiv'");
      }
      kb.tbox.definitions.push_back({name, kind, concept_expr()});
    } else if (kw == "implies") {
      Concept lhs = concept_expr();
      Concept rhs = concept_expr();
      kb.tbox.gcis.push_back({lhs, rhs});
    } else if (kw == "trans") {
      Role r = role();
      kb.rbox.transitive.push_back(r.name());
    } else if (kw == "subrole") {
      Role sub = role();
      Role super = role();
      kb.rbox.inclusions.push_back({sub, super});
    } else if (kw == "assert") {
      QueryAssertion q = assertion_body(false);
      for (const auto& b : q.bounds) kb.abox.add(with_bound(q.subject, b));
    } else if (kw == "distinct") {
      std::string a = identifier("individual");
      std::string b = identifier("individual");
      kb.abox.inequalities.push_back({a, b});
    } else {
      throw SyntaxError{"unknown statement '" + kw + "'", head.span};
    }
    expect(Tok::Dot, "'.' at end of statement");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
  std::vector<Site> sites_;
  std::vector<SourceSpan> role_spans_;
};

void check_structure(const KnowledgeBase& kb, const Parser& parser, std::vector<Diagnostic>& diags) {
  RoleHierarchy h = hierarchy_closure(kb.rbox, kb.role_names());
  for (const auto& site : parser.concept_sites())
    for (const Concept& bad : non_simple_number_restrictions(site.expr, h)) {
      Diagnostic d = non_simple_diagnostic(bad);
      d.span = site.span;
      diags.push_back(d);
    }

  std::set<std::string> used;
  KnowledgeBase axioms = kb;
  axioms.abox.roles.clear();
  used = axioms.role_names();
  const auto& spans = parser.role_assertion_spans();
  for (std::size_t i = 0; i < kb.abox.roles.size() && i < spans.size(); ++i) {
    const auto& r = kb.abox.roles[i];
    if (!used.count(r.role.name()))
      diags.push_back({Severity::Warning, DiagnosticCode::UnusedRole,
                       "role " + r.role.name() + " is not used by any concept or role axiom", spans[i]});
  }
  for (auto& d : validate(kb))
    if (d.severity == Severity::Note) diags.push_back(std::move(d));
}

}  // namespace

Parsed<KnowledgeBase> parse_kb(std::string_view text) {
  Parsed<KnowledgeBase> out;
  auto tokens = Lexer(text).run(out.diagnostics);
  Parser parser(std::move(tokens), out.diagnostics);
  KnowledgeBase kb = parser.kb();
  check_structure(kb, parser, out.diagnostics);
  if (!has_errors(out.diagnostics)) out.value = std::move(kb);
  return out;
}

Parsed<Concept> parse_concept(std::string_view text) {
  Parsed<Concept> out;
  auto tokens = Lexer(text).run(out.diagnostics);
  Parser parser(std::move(tokens), out.diagnostics);
  try {
    Concept c = parser.standalone_concept();
    if (!has_errors(out.diagnostics)) out.value = c;
  } catch (const SyntaxError& e) {
    out.diagnostics.push_back({Severity::Error, DiagnosticCode::Syntax, e.message, e.span});
  }
  return out;
}

Parsed<QueryAssertion> parse_assertion(std::string_view text) {
  Parsed<QueryAssertion> out;
  auto tokens = Lexer(text).run(out.diagnostics);
  Parser parser(std::move(tokens), out.diagnostics);
  try {
    QueryAssertion q = parser.standalone_assertion();
    if (!has_errors(out.diagnostics)) out.value = std::move(q);
  } catch (const SyntaxError& e) {
    out.diagnostics.push_back({Severity::Error, DiagnosticCode::Syntax, e.message, e.span});
  }
  return out;
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::ostringstream os;
  for (const auto& d : kb.tbox.definitions)
    os << "define " << d.name << (d.kind == DefinitionKind::Subsumed ? " subsumed-by " : " equiv ")
       << d.body.to_string() << ".\n";
  for (const auto& g : kb.tbox.gcis) os << "implies " << g.lhs.to_string() << " " << g.rhs.to_string() << ".\n";
  for (const auto& t : kb.rbox.transitive) os << "trans " << t << ".\n";
  for (const auto& i : kb.rbox.inclusions) os << "subrole " << i.sub.to_string() << " " << i.super.to_string() << ".\n";
  for (const auto& a : kb.abox.concepts) os << "assert " << to_string(Assertion(a)) << ".\n";
  for (const auto& a : kb.abox.roles) os << "assert " << to_string(Assertion(a)) << ".\n";
  for (const auto& i : kb.abox.inequalities) os << "distinct " << i.first << " " << i.second << ".\n";
  return os.str();
}

}  // namespace fdl
