#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace sparqlog {

/// Token-level scanner for SPARQL query text.
///
/// Identifiers are returned verbatim; keyword recognition is the parser's
/// job (keywords are case-insensitive except 'a'). A '<' is lexed as an
/// IRI reference only when the following characters form a valid IRIREF,
/// otherwise it is the comparison operator.
class Lexer {
 public:
  enum class TokenType {
    End,
    Identifier,   // bare name (keyword candidate or 'a' or 'true')
    IriRef,       // <...> (value = inner text, unresolved)
    PrefixedName, // value = "prefix:local" with local-escape sequences removed
    BlankLabel,   // _:label (value = label)
    Variable,     // ?x or $x (value = name)
    String,       // value = cooked content
    Integer,
    Decimal,
    Double,
    LangTag,      // @tag (value = tag)
    // punctuation / operators
    LBrace, RBrace, LParen, RParen, LBracket, RBracket,
    Dot, Comma, Semicolon,
    Eq, NotEq, Less, LessEq, Greater, GreaterEq,
    AndAnd, OrOr, Bang,
    Plus, Minus, Star, Slash, Pipe, Caret, CaretCaret, Question,
    Error
  };

  struct Token {
    TokenType type = TokenType::End;
    std::string value;       // cooked value where applicable
    std::size_t offset = 0;  // byte offset of the first character
  };

  explicit Lexer(std::string_view input) : input_(input) {}

  Token next();

  std::size_t offset() const { return pos_; }

 private:
  void skip_layout();
  Token make(TokenType t, std::size_t start, std::string value = {}) const;
  Token lex_iri_or_less(std::size_t start);
  Token lex_string(std::size_t start);
  Token lex_number(std::size_t start);
  Token lex_name(std::size_t start);

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < input_.size() ? input_[pos_ + ahead] : '\0';
  }
  bool eof() const { return pos_ >= input_.size(); }

  std::string_view input_;
  std::size_t pos_ = 0;
};

const char* token_type_name(Lexer::TokenType t);

}  // namespace sparqlog
