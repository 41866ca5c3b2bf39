#include <cctype>
#include <charconv>

#include "cfworld/error.hpp"
#include "cfworld/formula.hpp"

namespace cfw {

namespace {

enum class Tok {
  Ident, Number, True, False, Not, And, Or, Implies, Iff, Cf, Assign, Eq,
  LBracket, RBracket, LParen, RParen, Semi, LAngle, RAngle, End
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, {}, i_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  bool ahead(std::string_view t) const { return s_.substr(i_, t.size()) == t; }

  Token take(Tok k, std::size_t n) {
    Token t{k, s_.substr(i_, n), i_};
    i_ += n;
    return t;
  }

  [[noreturn]] void unknown(std::size_t n) const {
    throw Error(Errc::UnknownOperator, "unknown operator '" + std::string(s_.substr(i_, n)) + "' at position " +
                                           std::to_string(i_),
                i_);
  }

  Token next() {
    const char c = s_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      const auto word = s_.substr(i_, j - i_);
      if (word == "true") return take(Tok::True, j - i_);
      if (word == "false") return take(Tok::False, j - i_);
      return take(Tok::Ident, j - i_);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
      std::size_t j = i_ + 1;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      return take(Tok::Number, j - i_);
    }
    if (ahead("<->")) return take(Tok::Iff, 3);
    if (ahead("<-")) return take(Tok::Assign, 2);
    if (ahead("->")) return take(Tok::Implies, 2);
    if (ahead("~>")) return take(Tok::Cf, 2);
    if (ahead("=>") || ahead("&&") || ahead("||") || ahead("<=") || ahead("==")) unknown(2);
    switch (c) {
      case '!': return take(Tok::Not, 1);
      case '&': return take(Tok::And, 1);
      case '|': return take(Tok::Or, 1);
      case '=': return take(Tok::Eq, 1);
      case '[': return take(Tok::LBracket, 1);
      case ']': return take(Tok::RBracket, 1);
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      case ';': return take(Tok::Semi, 1);
      case '<': return take(Tok::LAngle, 1);
      case '>': return take(Tok::RAngle, 1);
      default: break;
    }
    unknown(1);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "value";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Cf: return "'~>'";
    case Tok::Assign: return "'<-'";
    case Tok::Eq: return "'='";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

// Recursive descent, one function per grammar level:
//   formula := bool ("~>" bool)?
//   bool    := or (("->" | "<->") or)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "!" unary | "[" bindings? "]" unary | "<" bindings? ">" unary | atom
//   atom    := IDENT "=" VALUE | "true" | "false" | "(" formula ")"
class Parser {
 public:
  Parser(std::vector<Token> toks, ParseOptions opts) : toks_(std::move(toks)), opts_(opts) {}

  Formula run() {
    Formula f = formula();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++i_;
    return true;
  }
  const Token& expect(Tok k) {
    if (peek().kind != k) fail(std::string("expected ") + describe(k));
    return toks_[i_++];
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw Error(Errc::SyntaxError,
                what + " but found " + describe(t.kind) + " at position " + std::to_string(t.pos), t.pos);
  }

  Formula formula() {
    Formula a = boolean();
    if (accept(Tok::Cf)) return Formula::cf(a, boolean());
    return a;
  }

  Formula boolean() {
    Formula a = disjunction();
    if (accept(Tok::Implies)) return Formula::implies(a, disjunction());
    if (accept(Tok::Iff)) return Formula::iff(a, disjunction());
    return a;
  }

  Formula disjunction() {
    Formula a = conjunction();
    while (accept(Tok::Or)) a = Formula::disj(a, conjunction());
    return a;
  }

  Formula conjunction() {
    Formula a = unary();
    while (accept(Tok::And)) a = Formula::conj(a, unary());
    return a;
  }

  std::vector<std::pair<std::string, Value>> bindings(Tok close) {
    std::vector<std::pair<std::string, Value>> out;
    if (peek().kind == close) return out;
    do {
      const auto& var = expect(Tok::Ident);
      expect(Tok::Assign);
      out.emplace_back(std::string(var.text), number());
    } while (accept(Tok::Semi));
    return out;
  }

  Value number() {
    const Token& t = expect(Tok::Number);
    Value v = 0;
    const auto* first = t.text.data();
    auto [p, ec] = std::from_chars(first, first + t.text.size(), v);
    if (ec != std::errc() || p != first + t.text.size())
      throw Error(Errc::SyntaxError, "value out of range at position " + std::to_string(t.pos), t.pos);
    return v;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (accept(Tok::LBracket)) {
      auto bs = bindings(Tok::RBracket);
      expect(Tok::RBracket);
      return Formula::intervention(bs, unary());
    }
    if (accept(Tok::LAngle)) {
      auto bs = bindings(Tok::RAngle);
      expect(Tok::RAngle);
      return Formula::diamond(bs, unary());
    }
    return atom();
  }

  Formula atom() {
    if (accept(Tok::True)) return Formula::truth();
    if (accept(Tok::False)) return Formula::falsity();
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen);
      return f;
    }
    if (peek().kind == Tok::Ident) {
      const Token& id = toks_[i_++];
      if (opts_.allow_meta && peek().kind != Tok::Eq) return Formula::meta(std::string(id.text));
      expect(Tok::Eq);
      return Formula::atom(std::string(id.text), number());
    }
    fail("expected a formula");
  }

  std::vector<Token> toks_;
  ParseOptions opts_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, ParseOptions opts) {
  return Parser(Lexer(text).run(), opts).run();
}

}  // namespace cfw
