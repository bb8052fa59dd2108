#pragma once

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "amalgam/presentation.hpp"
#include "amalgam/word.hpp"

namespace amalgam {

// Raised on malformed DSL input; pos is a byte offset into the source.
struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::size_t p, const std::string& msg)
      : std::runtime_error("parse error at offset " + std::to_string(p) + ": " + msg),
        pos(p) {}
};

namespace detail {

struct Token {
  enum class Kind { Name, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;      // Name
  long long value = 0;   // Int
  char punct = 0;        // one of ; , = ^ ( ) [ ]
  std::size_t pos = 0;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Token::Kind::Name;
      t.text = src.substr(i, j - i);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      t.kind = Token::Kind::Int;
      t.value = std::strtoll(src.substr(i, j - i).c_str(), nullptr, 10);
      i = j;
    } else if (c == ';' || c == ',' || c == '=' || c == '^' || c == '(' ||
               c == ')' || c == '[' || c == ']') {
      t.kind = Token::Kind::Punct;
      t.punct = c;
      ++i;
    } else {
      throw ParseError(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = src.size();
  out.push_back(end);
  return out;
}

class PresentationParser {
 public:
  explicit PresentationParser(const std::string& src) : toks_(lex(src)) {}

  Presentation parse_file() {
    expect_keyword("gens");
    Presentation p;
    p.generators = parse_namelist();
    if (p.generators.empty())
      throw ParseError(peek().pos, "empty generator list");
    gens_ = &p.generators;
    expect_punct(';');
    expect_keyword("rels");
    while (true) {
      parse_relchain(p);
      if (!at_punct(';')) break;
      next();
      if (peek().kind == Token::Kind::End) break;  // trailing semicolon
    }
    if (peek().kind != Token::Kind::End)
      throw ParseError(peek().pos, "trailing input after relators");
    p.validate();
    return p;
  }

  // A single expression over the given generators (used for subgroup words).
  Word parse_single_expr(const std::vector<std::string>& gens) {
    gens_ = &gens;
    Expr e = parse_expr();
    if (peek().kind != Token::Kind::End)
      throw ParseError(peek().pos, "trailing input after expression");
    return expand_sugar(e);
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_++]; }

  bool at_punct(char c) const {
    return peek().kind == Token::Kind::Punct && peek().punct == c;
  }
  void expect_punct(char c) {
    if (!at_punct(c))
      throw ParseError(peek().pos, std::string("expected '") + c + "'");
    next();
  }
  void expect_keyword(const std::string& kw) {
    if (peek().kind != Token::Kind::Name || peek().text != kw)
      throw ParseError(peek().pos, "expected keyword '" + kw + "'");
    next();
  }

  std::vector<std::string> parse_namelist() {
    std::vector<std::string> names;
    while (peek().kind == Token::Kind::Name) {
      names.push_back(next().text);
      if (at_punct(','))
        next();
      else
        break;
    }
    return names;
  }

  // relchain := expr { "=" expr }.  A chain e1 = ... = en is read with the
  // last member as anchor: it contributes the relators e_i * en^-1 for i < n.
  // A lone expr is itself a relator.
  void parse_relchain(Presentation& p) {
    std::vector<Expr> members;
    members.push_back(parse_expr());
    while (at_punct('=')) {
      next();
      members.push_back(parse_expr());
    }
    if (members.size() == 1) {
      p.relators.push_back(expand_sugar(members[0]));
    } else {
      Word anchor_inv = word_inverse(expand_sugar(members.back()));
      for (std::size_t i = 0; i + 1 < members.size(); ++i)
        p.relators.push_back(word_mul(expand_sugar(members[i]), anchor_inv));
    }
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Token::Kind::Name) return true;
    if (t.kind == Token::Kind::Int && t.value == 1) return true;
    if (t.kind == Token::Kind::Punct && (t.punct == '(' || t.punct == '['))
      return true;
    return false;
  }

  Expr parse_expr() {
    std::vector<Expr> terms;
    terms.push_back(parse_term());
    while (starts_atom()) terms.push_back(parse_term());
    if (terms.size() == 1) return std::move(terms[0]);
    return Expr::product(std::move(terms));
  }

  // term := atom [ "^" ( int | atom ) ]; ^int is a power, ^atom conjugation.
  Expr parse_term() {
    Expr base = parse_atom();
    if (at_punct('^')) {
      next();
      if (peek().kind == Token::Kind::Int) {
        long long n = next().value;
        return Expr::power(std::move(base), n);
      }
      Expr by = parse_atom();
      return Expr::conj(std::move(base), std::move(by));
    }
    return base;
  }

  int lookup_gen(const std::string& name) const {
    for (std::size_t i = 0; i < gens_->size(); ++i)
      if ((*gens_)[i] == name) return static_cast<int>(i) + 1;
    return 0;
  }

  Expr parse_atom() {
    const Token& t = peek();
    Expr e;
    if (t.kind == Token::Kind::Name) {
      // A name token is either one declared generator or, failing that, a
      // juxtaposed run of single-character generators ("pq" = p q).
      int idx = lookup_gen(t.text);
      if (idx != 0) {
        e = Expr::generator(idx);
      } else {
        std::vector<Expr> parts;
        for (char ch : t.text) {
          int gi = lookup_gen(std::string(1, ch));
          if (gi == 0)
            throw ParseError(t.pos, "undeclared generator '" + t.text + "'");
          parts.push_back(Expr::generator(gi));
        }
        e = parts.size() == 1 ? std::move(parts[0]) : Expr::product(std::move(parts));
      }
      next();
    } else if (t.kind == Token::Kind::Int && t.value == 1) {
      next();
      e = Expr::one();
    } else if (t.kind == Token::Kind::Punct && t.punct == '(') {
      next();
      e = parse_expr();
      expect_punct(')');
    } else if (t.kind == Token::Kind::Punct && t.punct == '[') {
      next();
      Expr x = parse_expr();
      expect_punct(',');
      Expr y = parse_expr();
      expect_punct(']');
      e = Expr::comm(std::move(x), std::move(y));
    } else {
      throw ParseError(t.pos, "expected generator, '(', '[' or 1");
    }
    // Suffix "-1" inverts the atom, as in a-1 or [a,b]-1.
    while (peek().kind == Token::Kind::Int && peek().value == -1) {
      next();
      e = Expr::inverse(std::move(e));
    }
    return e;
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  const std::vector<std::string>* gens_ = nullptr;
};

}  // namespace detail

inline Presentation parse_presentation(const std::string& source) {
  return detail::PresentationParser(source).parse_file();
}

inline Word parse_word(const std::string& source,
                       const std::vector<std::string>& generators) {
  return detail::PresentationParser(source).parse_single_expr(generators);
}

}  // namespace amalgam
