#include "sparqlog/lexer.hpp"

#include <cctype>

namespace sparqlog {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f'; }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Multi-byte UTF-8 lead/continuation bytes are accepted as name characters.
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }

bool is_name_start(char c) { return is_alpha(c) || c == '_' || is_high(c); }
bool is_name_char(char c) { return is_name_start(c) || is_digit(c); }

// Characters forbidden inside an IRIREF per the grammar.
bool iri_char_ok(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  if (u <= 0x20) return false;
  switch (c) {
    case '<': case '>': case '"': case '{': case '}': case '|':
    case '^': case '`': case '\\':
      return false;
    default:
      return true;
  }
}

bool pn_local_extra(char c) {
  // PN_LOCAL also allows ':' and '.' (not trailing) and '%'-triplets.
  return is_name_char(c) || c == '-' || c == ':' || c == '%';
}

bool pn_local_esc(char c) {
  switch (c) {
    case '_': case '~': case '.': case '-': case '!': case '$': case '&':
    case '\'': case '(': case ')': case '*': case '+': case ',': case ';':
    case '=': case '/': case '?': case '#': case '@': case '%':
      return true;
    default:
      return false;
  }
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void Lexer::skip_layout() {
  while (!eof()) {
    char c = peek();
    if (is_ws(c)) {
      ++pos_;
    } else if (c == '#') {
      while (!eof() && peek() != '\n') ++pos_;
    } else {
      break;
    }
  }
}

Lexer::Token Lexer::make(TokenType t, std::size_t start, std::string value) const {
  return Token{t, std::move(value), start};
}

Lexer::Token Lexer::lex_iri_or_less(std::size_t start) {
  // Try the IRIREF interpretation first; fall back to '<' / '<='.
  std::size_t i = pos_ + 1;
  while (i < input_.size() && iri_char_ok(input_[i])) ++i;
  if (i < input_.size() && input_[i] == '>') {
    std::string inner(input_.substr(pos_ + 1, i - pos_ - 1));
    pos_ = i + 1;
    return make(TokenType::IriRef, start, std::move(inner));
  }
  ++pos_;
  if (peek() == '=') {
    ++pos_;
    return make(TokenType::LessEq, start);
  }
  return make(TokenType::Less, start);
}

Lexer::Token Lexer::lex_string(std::size_t start) {
  char quote = peek();
  bool long_form = peek(1) == quote && peek(2) == quote;
  pos_ += long_form ? 3 : 1;

  std::string out;
  while (!eof()) {
    char c = peek();
    if (c == '\\') {
      char e = peek(1);
      pos_ += 2;
      switch (e) {
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 'f': out.push_back('\f'); break;
        case '"': out.push_back('"'); break;
        case '\'': out.push_back('\''); break;
        case '\\': out.push_back('\\'); break;
        case 'u':
        case 'U': {
          int digits = e == 'u' ? 4 : 8;
          std::uint32_t cp = 0;
          for (int k = 0; k < digits; ++k) {
            int h = hex_value(peek());
            if (h < 0) return make(TokenType::Error, start, "bad \\u escape in string");
            cp = cp * 16 + static_cast<std::uint32_t>(h);
            ++pos_;
          }
          append_utf8(out, cp);
          break;
        }
        default:
          return make(TokenType::Error, start, "unknown escape in string");
      }
      continue;
    }
    if (long_form) {
      if (c == quote && peek(1) == quote && peek(2) == quote) {
        pos_ += 3;
        return make(TokenType::String, start, std::move(out));
      }
      out.push_back(c);
      ++pos_;
    } else {
      if (c == quote) {
        ++pos_;
        return make(TokenType::String, start, std::move(out));
      }
      if (c == '\n' || c == '\r') break;
      out.push_back(c);
      ++pos_;
    }
  }
  return make(TokenType::Error, start, "unterminated string literal");
}

Lexer::Token Lexer::lex_number(std::size_t start) {
  std::size_t i = pos_;
  bool saw_dot = false;
  bool saw_exp = false;
  while (i < input_.size()) {
    char c = input_[i];
    if (is_digit(c)) {
      ++i;
    } else if (c == '.' && !saw_dot && !saw_exp && i + 1 < input_.size() && is_digit(input_[i + 1])) {
      saw_dot = true;
      ++i;
    } else if ((c == 'e' || c == 'E') && !saw_exp && i + 1 < input_.size() &&
               (is_digit(input_[i + 1]) ||
                ((input_[i + 1] == '+' || input_[i + 1] == '-') && i + 2 < input_.size() &&
                 is_digit(input_[i + 2])))) {
      saw_exp = true;
      i += (input_[i + 1] == '+' || input_[i + 1] == '-') ? 2 : 1;
    } else {
      break;
    }
  }
  std::string text(input_.substr(pos_, i - pos_));
  pos_ = i;
  TokenType t = saw_exp ? TokenType::Double : (saw_dot ? TokenType::Decimal : TokenType::Integer);
  return make(t, start, std::move(text));
}

Lexer::Token Lexer::lex_name(std::size_t start) {
  std::size_t i = pos_;
  while (i < input_.size() && (is_name_char(input_[i]) || input_[i] == '-')) ++i;
  // '-' is only valid in the middle of prefix labels; be permissive and let
  // the parser reject bad names.
  std::string_view head = input_.substr(pos_, i - pos_);

  if (i < input_.size() && input_[i] == ':') {
    // PNAME_NS or PNAME_LN
    std::string value(head);
    value.push_back(':');
    std::size_t j = i + 1;
    std::string local;
    while (j < input_.size()) {
      char c = input_[j];
      if (c == '\\' && j + 1 < input_.size() && pn_local_esc(input_[j + 1])) {
        local.push_back(input_[j + 1]);
        j += 2;
      } else if (c == '%' && j + 2 < input_.size() && hex_value(input_[j + 1]) >= 0 &&
                 hex_value(input_[j + 2]) >= 0) {
        local.append(input_.substr(j, 3));
        j += 3;
      } else if (pn_local_extra(c)) {
        local.push_back(c);
        ++j;
      } else if (c == '.') {
        local.push_back(c);
        ++j;
      } else {
        break;
      }
    }
    // A trailing run of dots belongs to the surrounding triple block.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --j;
    }
    value += local;
    pos_ = j;
    return make(TokenType::PrefixedName, start, std::move(value));
  }

  pos_ = i;
  return make(TokenType::Identifier, start, std::string(head));
}

Lexer::Token Lexer::next() {
  skip_layout();
  std::size_t start = pos_;
  if (eof()) return make(TokenType::End, start);

  char c = peek();

  if (c == '<') return lex_iri_or_less(start);
  if (c == '"' || c == '\'') return lex_string(start);
  if (is_digit(c)) return lex_number(start);
  if (c == '.') {
    if (is_digit(peek(1))) return lex_number(start);
    ++pos_;
    return make(TokenType::Dot, start);
  }

  if (c == '?' || c == '$') {
    if (is_name_char(peek(1))) {
      ++pos_;
      std::size_t i = pos_;
      while (i < input_.size() && is_name_char(input_[i])) ++i;
      std::string name(input_.substr(pos_, i - pos_));
      pos_ = i;
      return make(TokenType::Variable, start, std::move(name));
    }
    if (c == '?') {
      ++pos_;
      return make(TokenType::Question, start);
    }
    ++pos_;
    return make(TokenType::Error, start, "stray '$'");
  }

  if (c == '_' && peek(1) == ':') {
    pos_ += 2;
    std::size_t i = pos_;
    while (i < input_.size() && (is_name_char(input_[i]) || input_[i] == '-' || input_[i] == '.')) ++i;
    while (i > pos_ && input_[i - 1] == '.') --i;
    if (i == pos_) return make(TokenType::Error, start, "empty blank node label");
    std::string label(input_.substr(pos_, i - pos_));
    pos_ = i;
    return make(TokenType::BlankLabel, start, std::move(label));
  }

  if (c == '@') {
    ++pos_;
    std::size_t i = pos_;
    while (i < input_.size() && (is_alpha(input_[i]) || is_digit(input_[i]) || input_[i] == '-')) ++i;
    if (i == pos_) return make(TokenType::Error, start, "empty language tag");
    std::string tag(input_.substr(pos_, i - pos_));
    pos_ = i;
    return make(TokenType::LangTag, start, std::move(tag));
  }

  if (is_name_start(c) || c == ':') return lex_name(start);

  ++pos_;
  switch (c) {
    case '{': return make(TokenType::LBrace, start);
    case '}': return make(TokenType::RBrace, start);
    case '(': return make(TokenType::LParen, start);
    case ')': return make(TokenType::RParen, start);
    case '[': return make(TokenType::LBracket, start);
    case ']': return make(TokenType::RBracket, start);
    case ',': return make(TokenType::Comma, start);
    case ';': return make(TokenType::Semicolon, start);
    case '=': return make(TokenType::Eq, start);
    case '!':
      if (peek() == '=') { ++pos_; return make(TokenType::NotEq, start); }
      return make(TokenType::Bang, start);
    case '>':
      if (peek() == '=') { ++pos_; return make(TokenType::GreaterEq, start); }
      return make(TokenType::Greater, start);
    case '&':
      if (peek() == '&') { ++pos_; return make(TokenType::AndAnd, start); }
      return make(TokenType::Error, start, "stray '&'");
    case '|':
      if (peek() == '|') { ++pos_; return make(TokenType::OrOr, start); }
      return make(TokenType::Pipe, start);
    case '^':
      if (peek() == '^') { ++pos_; return make(TokenType::CaretCaret, start); }
      return make(TokenType::Caret, start);
    case '+': return make(TokenType::Plus, start);
    case '-': return make(TokenType::Minus, start);
    case '*': return make(TokenType::Star, start);
    case '/': return make(TokenType::Slash, start);
    default: break;
  }
  return make(TokenType::Error, start, std::string("unexpected character '") + c + "'");
}

const char* token_type_name(Lexer::TokenType t) {
  using T = Lexer::TokenType;
  switch (t) {
    case T::End: return "end of input";
    case T::Identifier: return "identifier";
    case T::IriRef: return "IRI";
    case T::PrefixedName: return "prefixed name";
    case T::BlankLabel: return "blank node label";
    case T::Variable: return "variable";
    case T::String: return "string";
    case T::Integer: return "integer";
    case T::Decimal: return "decimal";
    case T::Double: return "double";
    case T::LangTag: return "language tag";
    case T::LBrace: return "'{'";
    case T::RBrace: return "'}'";
    case T::LParen: return "'('";
    case T::RParen: return "')'";
    case T::LBracket: return "'['";
    case T::RBracket: return "']'";
    case T::Dot: return "'.'";
    case T::Comma: return "','";
    case T::Semicolon: return "';'";
    case T::Eq: return "'='";
    case T::NotEq: return "'!='";
    case T::Less: return "'<'";
    case T::LessEq: return "'<='";
    case T::Greater: return "'>'";
    case T::GreaterEq: return "'>='";
    case T::AndAnd: return "'&&'";
    case T::OrOr: return "'||'";
    case T::Bang: return "'!'";
    case T::Plus: return "'+'";
    case T::Minus: return "'-'";
    case T::Star: return "'*'";
    case T::Slash: return "'/'";
    case T::Pipe: return "'|'";
    case T::Caret: return "'^'";
    case T::CaretCaret: return "'^^'";
    case T::Question: return "'?'";
    case T::Error: return "invalid token";
  }
  return "token";
}

}  // namespace sparqlog
