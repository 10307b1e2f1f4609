#include "ltlnrm/ltl/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "ltlnrm/core/error.hpp"

namespace ltlnrm::ltl {
namespace {

enum class Tok { End, Ident, True, False, Not, And, Or, Next, Until, Eventually, Globally, LParen, RParen };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c >= 'a' && c <= 'z') {
      while (i < src.size() && ((src[i] >= 'a' && src[i] <= 'z') || (src[i] >= '0' && src[i] <= '9') || src[i] == '_')) {
        ++i;
      }
      const std::string_view word = src.substr(start, i - start);
      Tok kind = Tok::Ident;
      if (word == "true") kind = Tok::True;
      if (word == "false") kind = Tok::False;
      out.push_back({kind, start, word});
      continue;
    }
    Tok kind;
    switch (c) {
      case '!': kind = Tok::Not; break;
      case '&': kind = Tok::And; break;
      case '|': kind = Tok::Or; break;
      case 'X': kind = Tok::Next; break;
      case 'U': kind = Tok::Until; break;
      case 'F': kind = Tok::Eventually; break;
      case 'G': kind = Tok::Globally; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    ++i;
    out.push_back({kind, start, src.substr(start, 1)});
  }
  out.push_back({Tok::End, src.size(), {}});
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const Alphabet& alphabet) : tokens_(lex(src)), alphabet_(alphabet) {}

  Formula parse_all() {
    Formula f = disjunction();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + std::string(peek().text) + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  Formula disjunction() {
    std::vector<Formula> ops{conjunction()};
    while (peek().kind == Tok::Or) {
      advance();
      ops.push_back(conjunction());
    }
    return ops.size() == 1 ? ops.front() : Formula::disjunction(std::move(ops));
  }

  Formula conjunction() {
    std::vector<Formula> ops{until()};
    while (peek().kind == Tok::And) {
      advance();
      ops.push_back(until());
    }
    return ops.size() == 1 ? ops.front() : Formula::conjunction(std::move(ops));
  }

  Formula until() {
    Formula lhs = unary();
    if (peek().kind != Tok::Until) return lhs;
    advance();
    return Formula::until(std::move(lhs), until());
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: advance(); return Formula::negation(unary());
      case Tok::Next: advance(); return Formula::next(unary());
      case Tok::Eventually: advance(); return Formula::eventually(unary());
      case Tok::Globally: advance(); return Formula::globally(unary());
      default: return primary();
    }
  }

  Formula primary() {
    const Token& t = advance();
    switch (t.kind) {
      case Tok::True:
        return Formula::top();
      case Tok::False:
        return Formula::bottom();
      case Tok::Ident: {
        const auto id = alphabet_.find(t.text);
        if (!id) throw UnknownIdentifierError(std::string(t.text), t.pos);
        return Formula::atom(Symbol{*id, std::string(t.text)});
      }
      case Tok::LParen: {
        Formula inner = disjunction();
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        advance();
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Alphabet& alphabet_;
};

}  // namespace

Formula parse_verbatim(std::string_view text, const Alphabet& alphabet) {
  return Parser(text, alphabet).parse_all();
}

Formula parse(std::string_view text, const Alphabet& alphabet) {
  return canonicalize(parse_verbatim(text, alphabet));
}

}  // namespace ltlnrm::ltl
