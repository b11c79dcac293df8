#include "ndl/core_parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <vector>

namespace ndl::core {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

enum class Tok { Lower, Upper, Number, LParen, RParen, Question, Equals, Let, In, Fail, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of line";
    default: return "'" + t.text + "'";
  }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view text, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line;
  std::size_t line_start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t col = i - line_start + 1;
    if (c == '\n') {
      ++line;
      line_start = ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::Upper : Tok::Lower;
      if (word == "let") kind = Tok::Let;
      else if (word == "in") kind = Tok::In;
      else if (word == "fail") kind = Tok::Fail;
      out.push_back({kind, std::move(word), line, col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), line, col});
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '?': kind = Tok::Question; break;
      case '=': kind = Tok::Equals; break;
      default:
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), line, col});
    ++i;
  }
  out.push_back({Tok::End, "", line, text.size() - line_start + 1});
  return out;
}

// Unresolved expression: identifiers are classified in a second pass, once
// every function head in the program is known.
struct Raw {
  enum class Kind { App, Num, Choice, Fail, Let };
  Kind kind = Kind::App;
  std::string name;
  std::uint64_t number = 0;
  std::vector<Raw> kids;
  std::size_t line = 0;
  std::size_t col = 0;
};

struct RawRule {
  Token head;
  std::vector<Pattern> params;
  Raw rhs;
};

class LineParser {
 public:
  explicit LineParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  RawRule rule() {
    RawRule r;
    r.head = expect(Tok::Lower, "a function name");
    std::set<std::string> seen;
    while (peek().kind != Tok::Equals) {
      if (peek().kind == Tok::End) fail_at(peek(), "expected '=' in rule");
      r.params.push_back(pattern_atom(seen));
    }
    next();
    r.rhs = expr();
    expect(Tok::End, "end of rule");
    return r;
  }

  Raw whole_expr() {
    Raw e = expr();
    expect(Tok::End, "end of expression");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail_at(peek(), "expected " + what + ", found " + describe(peek()));
    return next();
  }

  static std::uint64_t number_of(const Token& t) {
    std::uint64_t n = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
    if (ec != std::errc{} || n > 100000) fail_at(t, "numeral out of range");
    return n;
  }

  static Pattern numeral_pattern(std::uint64_t k) {
    Pattern p = Pattern::ctor("Z");
    for (std::uint64_t i = 0; i < k; ++i) p = Pattern::ctor("S", {std::move(p)});
    return p;
  }

  Pattern pattern_atom(std::set<std::string>& seen) {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Lower:
        if (!seen.insert(t.text).second)
          fail_at(t, "non-linear pattern: variable '" + t.text + "' occurs more than once");
        return Pattern::var(t.text);
      case Tok::Upper: return Pattern::ctor(t.text);
      case Tok::Number: return numeral_pattern(number_of(t));
      case Tok::LParen: {
        Pattern p;
        if (peek().kind == Tok::Upper) {
          p = Pattern::ctor(next().text);
          while (peek().kind != Tok::RParen) {
            if (peek().kind == Tok::End) fail_at(peek(), "unclosed '(' in pattern");
            p.args.push_back(pattern_atom(seen));
          }
        } else {
          p = pattern_atom(seen);
        }
        expect(Tok::RParen, "')'");
        return p;
      }
      default: fail_at(t, "expected a pattern, found " + describe(t));
    }
  }

  Raw expr() {
    if (peek().kind == Tok::Let) {
      const Token& kw = next();
      Raw r;
      r.kind = Raw::Kind::Let;
      r.line = kw.line;
      r.col = kw.col;
      r.name = expect(Tok::Lower, "a variable after 'let'").text;
      expect(Tok::Equals, "'='");
      r.kids.push_back(expr());
      expect(Tok::In, "'in'");
      r.kids.push_back(expr());
      return r;
    }
    Raw left = app();
    if (peek().kind != Tok::Question) return left;
    const Token& q = next();
    Raw r;
    r.kind = Raw::Kind::Choice;
    r.line = q.line;
    r.col = q.col;
    r.kids.push_back(std::move(left));
    r.kids.push_back(expr());
    return r;
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Lower:
      case Tok::Upper:
      case Tok::Number:
      case Tok::Fail:
      case Tok::LParen: return true;
      default: return false;
    }
  }

  Raw app() {
    const Token& head = peek();
    if (head.kind == Tok::Lower || head.kind == Tok::Upper) {
      next();
      Raw r;
      r.kind = Raw::Kind::App;
      r.name = head.text;
      r.line = head.line;
      r.col = head.col;
      while (starts_atom()) r.kids.push_back(atom());
      return r;
    }
    Raw r = atom();
    if (starts_atom()) fail_at(peek(), "only functions and constructors can be applied");
    return r;
  }

  Raw atom() {
    const Token& t = next();
    Raw r;
    r.line = t.line;
    r.col = t.col;
    switch (t.kind) {
      case Tok::Lower:
      case Tok::Upper:
        r.kind = Raw::Kind::App;
        r.name = t.text;
        return r;
      case Tok::Number:
        r.kind = Raw::Kind::Num;
        r.number = number_of(t);
        return r;
      case Tok::Fail: r.kind = Raw::Kind::Fail; return r;
      case Tok::LParen: {
        Raw inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default: fail_at(t, "expected an expression, found " + describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

class Resolver {
 public:
  explicit Resolver(Program& prog) : prog_(prog) {}

  void note_ctor(const std::string& name, std::size_t arity, std::size_t line, std::size_t col) {
    auto [it, inserted] = prog_.constructors.emplace(name, arity);
    if (!inserted && it->second != arity)
      throw ParseError(line, col,
                       "constructor '" + name + "' used with " + std::to_string(arity) +
                           " argument(s) but has arity " + std::to_string(it->second));
  }

  void note_pattern(const Pattern& p, std::size_t line, std::size_t col) {
    if (p.kind == Pattern::Kind::Var) return;
    note_ctor(p.name, p.args.size(), line, col);
    for (const auto& a : p.args) note_pattern(a, line, col);
  }

  ExprPtr resolve(const Raw& r, std::vector<std::string>& scope) {
    switch (r.kind) {
      case Raw::Kind::Num:
        if (r.number > 0) note_ctor("S", 1, r.line, r.col);
        note_ctor("Z", 0, r.line, r.col);
        return make_numeral(r.number);
      case Raw::Kind::Fail: return make_fail();
      case Raw::Kind::Choice: {
        auto l = resolve(r.kids[0], scope);
        auto rr = resolve(r.kids[1], scope);
        return make_choice(std::move(l), std::move(rr));
      }
      case Raw::Kind::Let: {
        auto bound = resolve(r.kids[0], scope);
        scope.push_back(r.name);
        auto body = resolve(r.kids[1], scope);
        scope.pop_back();
        return make_let(r.name, std::move(bound), std::move(body));
      }
      case Raw::Kind::App: break;
    }
    std::vector<ExprPtr> args;
    args.reserve(r.kids.size());
    for (const auto& k : r.kids) args.push_back(resolve(k, scope));
    if (std::isupper(static_cast<unsigned char>(r.name[0]))) {
      note_ctor(r.name, args.size(), r.line, r.col);
      return make_ctor(r.name, std::move(args));
    }
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (*it != r.name) continue;
      if (!args.empty())
        throw ParseError(r.line, r.col, "variable '" + r.name + "' cannot be applied");
      return make_var(r.name);
    }
    const FunctionDecl* f = prog_.find_function(r.name);
    if (!f) throw ParseError(r.line, r.col, "unbound identifier '" + r.name + "'");
    if (f->arity != args.size())
      throw ParseError(r.line, r.col,
                       "function '" + r.name + "' expects " + std::to_string(f->arity) +
                           " argument(s), got " + std::to_string(args.size()));
    return make_call(r.name, std::move(args));
  }

 private:
  Program& prog_;
};

void pattern_vars(const Pattern& p, std::vector<std::string>& out) {
  if (p.kind == Pattern::Kind::Var) {
    out.push_back(p.name);
    return;
  }
  for (const auto& a : p.args) pattern_vars(a, out);
}

}  // namespace

Program parse_program(std::string_view text) {
  std::vector<RawRule> raw;
  std::size_t line_no = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto toks = lex(text.substr(start, end - start), line_no);
    if (toks.size() > 1) raw.push_back(LineParser(std::move(toks)).rule());
    ++line_no;
    start = end + 1;
  }

  Program prog;
  // Function heads and constructor arities from the left-hand sides first,
  // so right-hand sides may refer to functions defined further down.
  for (const auto& r : raw) {
    auto [it, inserted] = prog.functions.emplace(r.head.text, FunctionDecl{r.params.size(), {}});
    if (!inserted && it->second.arity != r.params.size())
      throw ParseError(r.head.line, r.head.col,
                       "rule for '" + r.head.text + "' has " + std::to_string(r.params.size()) +
                           " pattern(s) but earlier rules have " +
                           std::to_string(it->second.arity));
  }
  Resolver resolver(prog);
  for (const auto& r : raw)
    for (const auto& p : r.params) resolver.note_pattern(p, r.head.line, r.head.col);

  for (const auto& r : raw) {
    std::vector<std::string> scope;
    for (const auto& p : r.params) pattern_vars(p, scope);
    ExprPtr rhs = resolver.resolve(r.rhs, scope);
    prog.functions.at(r.head.text).rules.push_back(Rule{r.head.text, r.params, rhs, r.head.line});
  }
  return prog;
}

ExprPtr parse_expression(const Program& program, std::string_view text) {
  auto toks = lex(text, 1);
  Raw raw = LineParser(std::move(toks)).whole_expr();
  Program scratch = program;
  Resolver resolver(scratch);
  std::vector<std::string> scope;
  return resolver.resolve(raw, scope);
}

}  // namespace ndl::core
