#pragma once

#include <cctype>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcgroup/word.hpp"

// Reader and writer for the presentation file format:
//
//   # an example
//   prime 5
//   generators a, b
//   a^5
//   b^5
//   [b,a,b]
//   [b,a]^5 = [b,a,a,a,b]
//
// A relator is a product of factors joined by "*"; a factor is a generator
// or a left-normed commutator bracket, optionally raised to a nonzero
// integer power.  A line "w1 = w2" records the relator w1 * w2^-1.
// Whitespace and newlines carry no meaning; "#" comments run to the end of
// the line; relators may optionally be separated by ";".

namespace pcg {

struct ParseError : std::runtime_error {
  std::size_t line;
  std::size_t column;
  ParseError(std::size_t line_, std::size_t column_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ": " + what),
        line(line_),
        column(column_) {}
};

namespace detail {

struct Token {
  enum class Kind {
    name,
    number,
    star,
    caret,
    equals,
    lbracket,
    rbracket,
    comma,
    semicolon,
    end
  };
  Kind kind = Kind::end;
  std::string text;      // name tokens
  long long value = 0;   // number tokens
  std::size_t line = 1;
  std::size_t column = 1;
};

inline const char* token_label(Token::Kind k) {
  switch (k) {
    case Token::Kind::name: return "name";
    case Token::Kind::number: return "number";
    case Token::Kind::star: return "'*'";
    case Token::Kind::caret: return "'^'";
    case Token::Kind::equals: return "'='";
    case Token::Kind::lbracket: return "'['";
    case Token::Kind::rbracket: return "']'";
    case Token::Kind::comma: return "','";
    case Token::Kind::semicolon: return "';'";
    case Token::Kind::end: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { next(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  void next() {
    skip_blank();
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = column_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::end;
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        word += take_char();
      tok_.kind = Token::Kind::name;
      tok_.text = std::move(word);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      const bool negative = c == '-';
      if (negative) take_char();
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError(tok_.line, tok_.column, "expected digits after '-'");
      long long v = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (take_char() - '0');
        if (v > (1LL << 40))
          throw ParseError(tok_.line, tok_.column, "exponent out of range");
      }
      tok_.kind = Token::Kind::number;
      tok_.value = negative ? -v : v;
      return;
    }
    switch (c) {
      case '*': tok_.kind = Token::Kind::star; break;
      case '^': tok_.kind = Token::Kind::caret; break;
      case '=': tok_.kind = Token::Kind::equals; break;
      case '[': tok_.kind = Token::Kind::lbracket; break;
      case ']': tok_.kind = Token::Kind::rbracket; break;
      case ',': tok_.kind = Token::Kind::comma; break;
      case ';': tok_.kind = Token::Kind::semicolon; break;
      default:
        throw ParseError(line_, column_,
                         std::string("unexpected character '") + c + "'");
    }
    take_char();
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take_char();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take_char();
      } else {
        return;
      }
    }
  }

  char take_char() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token tok_;
};

class PresentationParser {
 public:
  explicit PresentationParser(const std::string& text) : lex_(text) {}

  FpPresentation run() {
    FpPresentation pres;
    expect_keyword("prime");
    const Token p = expect(Token::Kind::number);
    if (p.value < 2)
      throw ParseError(p.line, p.column, "prime must be at least 2");
    pres.prime = static_cast<unsigned>(p.value);

    expect_keyword("generators");
    while (true) {
      const Token n = expect(Token::Kind::name);
      for (const std::string& seen : pres.generators)
        if (seen == n.text)
          throw ParseError(n.line, n.column,
                           "duplicate generator '" + n.text + "'");
      pres.generators.push_back(n.text);
      if (lex_.peek().kind != Token::Kind::comma) break;
      lex_.take();
    }
    names_ = &pres.generators;

    while (lex_.peek().kind != Token::Kind::end) {
      if (lex_.peek().kind == Token::Kind::semicolon) {
        lex_.take();
        continue;
      }
      FreeWord w = product();
      if (lex_.peek().kind == Token::Kind::equals) {
        lex_.take();
        const FreeWord rhs = product();
        const FreeWord inv = inverse(rhs);
        w.factors.insert(w.factors.end(), inv.factors.begin(),
                         inv.factors.end());
      }
      pres.relators.push_back(std::move(w));
    }
    return pres;
  }

 private:
  FreeWord product() {
    FreeWord w;
    w.factors.push_back(factor());
    while (lex_.peek().kind == Token::Kind::star) {
      lex_.take();
      w.factors.push_back(factor());
    }
    return w;
  }

  FreeFactor factor() {
    FreeFactor f = atom();
    if (lex_.peek().kind == Token::Kind::caret) {
      lex_.take();
      const Token e = expect(Token::Kind::number);
      if (e.value == 0)
        throw ParseError(e.line, e.column, "zero exponent");
      f.exponent = e.value;
    }
    return f;
  }

  FreeFactor atom() {
    const Token t = lex_.take();
    if (t.kind == Token::Kind::name) {
      FreeFactor f;
      f.generator = generator_index(t);
      return f;
    }
    if (t.kind == Token::Kind::lbracket) {
      FreeFactor f;
      f.generator = -1;
      f.args.push_back(product());
      while (lex_.peek().kind == Token::Kind::comma) {
        lex_.take();
        f.args.push_back(product());
      }
      const Token close = expect(Token::Kind::rbracket);
      if (f.args.size() < 2)
        throw ParseError(close.line, close.column,
                         "commutator bracket needs at least two arguments");
      return f;
    }
    throw ParseError(t.line, t.column,
                     std::string("expected a generator or '[', got ") +
                         token_label(t.kind));
  }

  int generator_index(const Token& t) {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == t.text) return static_cast<int>(i);
    throw ParseError(t.line, t.column, "unknown generator '" + t.text + "'");
  }

  Token expect(Token::Kind kind) {
    const Token t = lex_.take();
    if (t.kind != kind)
      throw ParseError(t.line, t.column,
                       std::string("expected ") + token_label(kind) +
                           ", got " + token_label(t.kind));
    return t;
  }

  void expect_keyword(const std::string& word) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::name || t.text != word)
      throw ParseError(t.line, t.column, "expected keyword '" + word + "'");
  }

  Lexer lex_;
  const std::vector<std::string>* names_ = nullptr;
};

}  // namespace detail

inline FpPresentation parse_presentation(const std::string& text,
                                         std::string name = {}) {
  detail::PresentationParser parser(text);
  FpPresentation pres = parser.run();
  pres.name = std::move(name);
  return pres;
}

// ---------------------------------------------------------------------------
// rendering back to the file format

namespace detail {

inline void format_word(std::ostream& out, const FreeWord& w,
                        const std::vector<std::string>& names);

inline void format_factor(std::ostream& out, const FreeFactor& f,
                          const std::vector<std::string>& names) {
  if (f.generator >= 0) {
    out << names.at(static_cast<std::size_t>(f.generator));
  } else {
    out << '[';
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      if (i > 0) out << ',';
      format_word(out, f.args[i], names);
    }
    out << ']';
  }
  if (f.exponent != 1) out << '^' << f.exponent;
}

inline void format_word(std::ostream& out, const FreeWord& w,
                        const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    if (i > 0) out << " * ";
    format_factor(out, w.factors[i], names);
  }
}

}  // namespace detail

inline std::string format_presentation(const FpPresentation& pres) {
  std::ostringstream out;
  if (!pres.name.empty()) out << "# " << pres.name << "\n";
  out << "prime " << pres.prime << "\n";
  out << "generators ";
  for (std::size_t i = 0; i < pres.generators.size(); ++i) {
    if (i > 0) out << ", ";
    out << pres.generators[i];
  }
  out << "\n";
  for (const FreeWord& r : pres.relators) {
    detail::format_word(out, r, pres.generators);
    out << "\n";
  }
  return out.str();
}

}  // namespace pcg
