#include <cctype>
#include <optional>

#include "muipc/formula.hpp"

namespace muipc {

namespace {

enum class Tok : std::uint8_t { Ident, Top, Bot, And, Or, Imp, Mu, Nu, Dot, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view input) : in_(input) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= in_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    char c = in_[pos_];
    if (c == '(') { ++pos_; current_ = {Tok::LParen, "(", start}; return; }
    if (c == ')') { ++pos_; current_ = {Tok::RParen, ")", start}; return; }
    if (c == '.') { ++pos_; current_ = {Tok::Dot, ".", start}; return; }
    if (c == '/') {
      if (pos_ + 1 < in_.size() && in_[pos_ + 1] == '\\') {
        pos_ += 2;
        current_ = {Tok::And, "/\\", start};
        return;
      }
      throw ParseError("expected '/\\'", start);
    }
    if (c == '\\') {
      if (pos_ + 1 < in_.size() && in_[pos_ + 1] == '/') {
        pos_ += 2;
        current_ = {Tok::Or, "\\/", start};
        return;
      }
      throw ParseError("expected '\\/'", start);
    }
    if (c == '-') {
      if (pos_ + 1 < in_.size() && in_[pos_ + 1] == '>') {
        pos_ += 2;
        current_ = {Tok::Imp, "->", start};
        return;
      }
      throw ParseError("expected '->'", start);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_ + 1;
      while (end < in_.size() &&
             (std::isalnum(static_cast<unsigned char>(in_[end])) || in_[end] == '_'))
        ++end;
      std::string word(in_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "T") current_ = {Tok::Top, word, start};
      else if (word == "F") current_ = {Tok::Bot, word, start};
      else if (word == "mu") current_ = {Tok::Mu, word, start};
      else if (word == "nu") current_ = {Tok::Nu, word, start};
      else current_ = {Tok::Ident, word, start};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, "", 0};
};

class Parser {
 public:
  explicit Parser(std::string_view input) : lex_(input) {}

  Formula parse_all() {
    Formula f = parse_imp();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    return f;
  }

 private:
  Formula parse_imp() {
    Formula lhs = parse_or();
    if (lex_.peek().kind == Tok::Imp) {
      lex_.take();
      return Formula::imp(std::move(lhs), parse_imp());  // right-associative
    }
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (lex_.peek().kind == Tok::Or) {
      lex_.take();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? parts[0] : Formula::disj(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_unary()};
    while (lex_.peek().kind == Tok::And) {
      lex_.take();
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? parts[0] : Formula::conj(std::move(parts));
  }

  Formula parse_unary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Top:
        return Formula::top();
      case Tok::Bot:
        return Formula::bot();
      case Tok::Ident:
        return Formula::var(t.text);
      case Tok::LParen: {
        Formula f = parse_imp();
        if (lex_.peek().kind != Tok::RParen)
          throw ParseError("expected ')'", lex_.peek().pos);
        lex_.take();
        return f;
      }
      case Tok::Mu:
      case Tok::Nu: {
        Token v = lex_.take();
        if (v.kind != Tok::Ident)
          throw ParseError("expected a variable after binder", v.pos);
        Token dot = lex_.take();
        if (dot.kind != Tok::Dot)
          throw ParseError("expected '.' after binder variable", dot.pos);
        // The binder scope extends to the end of the enclosing scope.
        Formula body = parse_imp();
        try {
          return t.kind == Tok::Mu ? Formula::mu(v.text, std::move(body))
                                   : Formula::nu(v.text, std::move(body));
        } catch (const PositivityError& e) {
          throw ParseError(e.what(), t.pos);
        }
      }
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }

  Lexer lex_;
};

// Renames bound variables so that they are distinct from each other and from
// every free variable.
Formula rename_bound_apart(const Formula& f, std::set<std::string>& used) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& k : f.children()) kids.push_back(rename_bound_apart(k, used));
      return f.is(Kind::And) ? Formula::conj(std::move(kids))
                             : Formula::disj(std::move(kids));
    }
    case Kind::Imp:
      return Formula::imp(rename_bound_apart(f.antecedent(), used),
                          rename_bound_apart(f.consequent(), used));
    case Kind::Mu:
    case Kind::Nu: {
      std::string binder = f.name();
      Formula body = f.body();
      if (used.count(binder)) {
        std::string renamed = fresh_var(binder, used);
        body = substitute(body, binder, Formula::var(renamed));
        binder = renamed;
      }
      used.insert(binder);
      body = rename_bound_apart(body, used);
      return f.is(Kind::Mu) ? Formula::mu(binder, std::move(body))
                            : Formula::nu(binder, std::move(body));
    }
  }
  return f;
}

}  // namespace

Formula parse(std::string_view text) {
  Formula f = Parser(text).parse_all();
  std::set<std::string> used(f.free_vars().begin(), f.free_vars().end());
  return rename_bound_apart(f, used);
}

}  // namespace muipc
