#include "condlog/parser.hpp"

#include <cctype>
#include <optional>
#include <set>

namespace condlog {

namespace {

enum class Tok {
  End,
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Not,
  And,
  Or,
  Implies,
  Cond,
  Iff,
  Equals,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(text.substr(i, len)), {i, i + len}});
    i += len;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (text.substr(i, 3) == "<->") {
      push(Tok::Iff, 3);
      continue;
    }
    if (text.substr(i, 2) == "->") {
      push(Tok::Implies, 2);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case '~': push(Tok::Not, 1); continue;
      case '&': push(Tok::And, 1); continue;
      case '|': push(Tok::Or, 1); continue;
      case '>': push(Tok::Cond, 1); continue;
      case '=': push(Tok::Equals, 1); continue;
      default:
        throw ParseError({i, i + 1}, std::string("unexpected character '") + c +
                                         "', expected a connective, identifier or parenthesis");
    }
  }
  out.push_back({Tok::End, "", {text.size(), text.size()}});
  return out;
}

bool is_keyword(std::string_view s) {
  return s == "forall" || s == "exists" || s == "box" || s == "dia" ||
         s == "top" || s == "bot";
}

enum class Mode { L, LE, LEq, Pattern };

class Parser {
 public:
  Parser(std::string_view text, Mode mode) : tokens_(lex(text)), mode_(mode) {
    std::set<Variable> used;
    for (const Token& t : tokens_)
      if (t.kind == Tok::Ident)
        if (auto v = parse_variable_name(t.text)) used.insert(*v);
    existence_witness_ = fresh_variable(used);
  }

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End)
      throw ParseError(peek().span, "expected end of formula or a binary connective, found " +
                                        describe(peek()));
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k))
      throw ParseError(peek().span, std::string("expected ") + what + ", found " + describe(peek()));
  }
  bool peek_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  Formula parse_iff() {
    Formula lhs = parse_impl();
    while (accept(Tok::Iff)) {
      Formula rhs = parse_impl();
      lhs = iff(lhs, rhs);
    }
    return lhs;
  }

  Formula parse_impl() {
    Formula lhs = parse_or();
    if (accept(Tok::Implies)) return Formula::implies(lhs, parse_impl());
    if (accept(Tok::Cond)) {
      Formula rhs = parse_or();
      if (peek().kind == Tok::Cond || peek().kind == Tok::Implies)
        throw ParseError(peek().span,
                         "'>' is non-associative; expected parentheses around the nested "
                         "conditional, found " + describe(peek()));
      return Formula::cond(lhs, rhs);
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept(Tok::Or)) lhs = disj(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept(Tok::And)) lhs = conj(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return Formula::negation(parse_unary());
    if (peek_keyword("box")) {
      next();
      return box(parse_unary());
    }
    if (peek_keyword("dia")) {
      next();
      return dia(parse_unary());
    }
    if (peek_keyword("forall") || peek_keyword("exists")) {
      const bool universal = next().text == "forall";
      Variable v = parse_variable("variable after quantifier");
      accept(Tok::Dot);
      Formula body = parse_iff();
      return universal ? Formula::forall(v, body) : exists(v, body);
    }
    return parse_atomic();
  }

  Variable parse_variable(const char* what) {
    const Token& t = peek();
    if (t.kind == Tok::Ident && !is_keyword(t.text))
      if (auto v = parse_variable_name(t.text)) {
        next();
        return *v;
      }
    throw ParseError(t.span, std::string("expected ") + what + ", found " + describe(t));
  }

  Formula parse_atomic() {
    const Token& t = peek();
    if (accept(Tok::LParen)) {
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident)
      throw ParseError(t.span, "expected formula, found " + describe(t));
    if (t.text == "top") {
      next();
      return top();
    }
    if (t.text == "bot") {
      next();
      return Formula::bottom();
    }
    if (is_keyword(t.text))
      throw ParseError(t.span, "expected formula, found " + describe(t));
    if (auto v = parse_variable_name(t.text)) {
      const SourceSpan start = t.span;
      next();
      const Token& eq = peek();
      expect(Tok::Equals, "'=' after variable");
      Variable rhs = parse_variable("variable after '='");
      if (mode_ == Mode::L || mode_ == Mode::LE)
        throw ParseError({start.start, eq.span.end}, "identity '=' requires language L=");
      return Formula::equals(*v, rhs);
    }
    if (t.text == "E") {
      const SourceSpan start = t.span;
      next();
      expect(Tok::LParen, "'(' after E");
      Variable v = parse_variable("variable argument of E");
      expect(Tok::RParen, "')'");
      switch (mode_) {
        case Mode::L:
          throw ParseError(start, "existence predicate E requires language LE or L=");
        case Mode::LEq:
          return exists(existence_witness_, Formula::equals(v, existence_witness_));
        default: return Formula::existence(v);
      }
    }
    if (auto index = parse_predicate_index(t.text)) {
      next();
      std::vector<Variable> args;
      if (accept(Tok::LParen)) {
        if (peek().kind != Tok::RParen) {
          args.push_back(parse_variable("variable argument"));
          while (accept(Tok::Comma)) args.push_back(parse_variable("variable argument"));
        }
        expect(Tok::RParen, "')' or ','");
      }
      const auto arity = static_cast<std::uint32_t>(args.size());
      return Formula::atom(Predicate{*index, arity}, std::move(args));
    }
    throw ParseError(t.span, "expected predicate (uppercase) or variable (x, y, z, u, v, w "
                             "with optional index), found " + describe(t));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Mode mode_;
  Variable existence_witness_;
};

Mode mode_of(Language lang) {
  switch (lang) {
    case Language::L: return Mode::L;
    case Language::LE: return Mode::LE;
    case Language::LEq: return Mode::LEq;
  }
  return Mode::L;
}

// --- printer -----------------------------------------------------------------

constexpr int kImplPrec = 2;
constexpr int kOrPrec = 3;
constexpr int kAndPrec = 4;
constexpr int kUnaryPrec = 5;

class Printer {
 public:
  std::string run(const Formula& f) {
    emit(f, 0, true);
    return std::move(out_);
  }

 private:
  void emit(const Formula& f, int min_prec, bool right_open) {
    // Sugar recognition.
    if (f.kind() == Kind::Not) {
      const Formula& s = f.sub();
      if (s.kind() == Kind::Bottom) {
        out_ += "top";
        return;
      }
      if (s.kind() == Kind::Implies && s.right().kind() == Kind::Not) {
        binary(s.left(), " & ", s.right().sub(), kAndPrec, kAndPrec, kUnaryPrec, min_prec,
               right_open);
        return;
      }
      if (s.kind() == Kind::Forall && s.body().kind() == Kind::Not) {
        binder("exists ", s.var(), s.body().sub(), right_open);
        return;
      }
      if (s.kind() == Kind::Cond && s.right().kind() == Kind::Bottom) {
        unary("dia ", s.left(), min_prec, right_open);
        return;
      }
      unary("~", s, min_prec, right_open);
      return;
    }
    switch (f.kind()) {
      case Kind::Bottom: out_ += "bot"; return;
      case Kind::Atom: {
        out_ += predicate_name(f.predicate());
        if (!f.vars().empty()) {
          out_ += '(';
          for (std::size_t i = 0; i < f.vars().size(); ++i) {
            if (i) out_ += ',';
            out_ += variable_name(f.vars()[i]);
          }
          out_ += ')';
        }
        return;
      }
      case Kind::Equals:
        out_ += variable_name(f.vars()[0]) + " = " + variable_name(f.vars()[1]);
        return;
      case Kind::Existence: out_ += "E(" + variable_name(f.var()) + ")"; return;
      case Kind::Implies:
        if (f.left().kind() == Kind::Not) {
          binary(f.left().sub(), " | ", f.right(), kOrPrec, kOrPrec, kAndPrec, min_prec,
                 right_open);
        } else {
          binary(f.left(), " -> ", f.right(), kImplPrec, kOrPrec, kImplPrec, min_prec,
                 right_open);
        }
        return;
      case Kind::Cond:
        if (f.left().kind() == Kind::Not && f.right().kind() == Kind::Bottom) {
          unary("box ", f.left().sub(), min_prec, right_open);
        } else {
          binary(f.left(), " > ", f.right(), kImplPrec, kOrPrec, kOrPrec, min_prec, right_open);
        }
        return;
      case Kind::Forall: binder("forall ", f.var(), f.body(), right_open); return;
      case Kind::Not: return;
    }
  }

  void binary(const Formula& l, const char* op, const Formula& r, int prec, int left_min,
              int right_min, int min_prec, bool right_open) {
    const bool paren = prec < min_prec;
    if (paren) out_ += '(';
    emit(l, left_min, false);
    out_ += op;
    emit(r, right_min, paren || right_open);
    if (paren) out_ += ')';
  }

  void unary(const char* op, const Formula& sub, int min_prec, bool right_open) {
    const bool paren = kUnaryPrec < min_prec;
    if (paren) out_ += '(';
    out_ += op;
    emit(sub, kUnaryPrec, paren || right_open);
    if (paren) out_ += ')';
  }

  void binder(const char* q, Variable v, const Formula& body, bool right_open) {
    if (!right_open) out_ += '(';
    out_ += q;
    out_ += variable_name(v);
    out_ += ". ";
    emit(body, 0, true);
    if (!right_open) out_ += ')';
  }

  std::string out_;
};

}  // namespace

Formula parse_formula(std::string_view text, Language lang) {
  return Parser(text, mode_of(lang)).parse_all();
}

Formula parse_pattern(std::string_view text) { return Parser(text, Mode::Pattern).parse_all(); }

std::vector<Formula> parse_formula_lines(std::string_view text, Language lang) {
  std::vector<Formula> out;
  std::size_t line_start = 0;
  std::size_t line_no = 1;
  while (line_start <= text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(line_start, end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.push_back(parse_formula(line, lang));
      } catch (const ParseError& e) {
        SourceSpan s = e.span();
        throw ParseError({line_start + s.start, line_start + s.end},
                         "line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    line_start = end + 1;
    ++line_no;
  }
  return out;
}

std::string print_formula(const Formula& f) { return Printer().run(f); }

}  // namespace condlog
