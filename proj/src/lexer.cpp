// Copyright 2026 The quadgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lexer.h"

#include <cctype>
#include <cstdint>

namespace quadgate::detail {

namespace {

bool isNameStart(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '_' || u >= 0x80;
}

bool isNameChar(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || u >= 0x80;
}

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skipSpaceAndComments();
      Token token;
      token.line = line_;
      token.column = column_;
      if (pos_ >= text_.size()) {
        token.kind = TokenKind::End;
        tokens.push_back(token);
        return tokens;
      }
      lexOne(token);
      tokens.push_back(std::move(token));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  [[noreturn]] void error(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  void skipSpaceAndComments() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::uint32_t readHex(int digits) {
    std::uint32_t value = 0;
    for (int i = 0; i < digits; ++i) {
      char c = peek();
      if (!std::isxdigit(static_cast<unsigned char>(c))) {
        error("invalid unicode escape");
      }
      advance();
      value = value * 16 +
              static_cast<std::uint32_t>(std::isdigit(c) ? c - '0'
                                                         : (std::tolower(c) - 'a' + 10));
    }
    return value;
  }

  void lexOne(Token& token) {
    char c = peek();
    if (c == '<' && tryIri(token)) return;
    if (c == '"' || c == '\'') return lexString(token);
    if ((c == '?' || c == '$') && isNameChar(peek(1))) {
      advance();
      token.kind = TokenKind::Var;
      while (isNameChar(peek())) token.text += advance();
      return;
    }
    if (c == '@' && std::isalpha(static_cast<unsigned char>(peek(1)))) {
      advance();
      token.kind = TokenKind::LangTag;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-') {
        token.text += advance();
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '+' || c == '-') &&
         std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return lexNumber(token);
    }
    if (c == '_' && peek(1) == ':') {
      advance();
      advance();
      token.kind = TokenKind::BlankNode;
      while (isNameChar(peek()) || peek() == '.') token.text += advance();
      return;
    }
    if (isNameStart(c) || c == ':') return lexName(token);
    lexPunct(token);
  }

  bool tryIri(Token& token) {
    std::size_t end = pos_ + 1;
    while (end < text_.size()) {
      char c = text_[end];
      if (c == '>') break;
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' ||
          c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        return false;
      }
      ++end;
    }
    if (end >= text_.size()) return false;
    advance();
    token.kind = TokenKind::Iri;
    while (peek() != '>') {
      if (peek() == '\\') {
        advance();
        char e = advance();
        if (e == 'u') {
          appendUtf8(token.text, readHex(4));
        } else if (e == 'U') {
          appendUtf8(token.text, readHex(8));
        } else {
          error("invalid escape in IRI");
        }
      } else {
        token.text += advance();
      }
    }
    advance();
    return true;
  }

  void lexString(Token& token) {
    token.kind = TokenKind::String;
    char quote = advance();
    bool isLong = peek() == quote && peek(1) == quote;
    if (isLong) {
      advance();
      advance();
    }
    while (true) {
      if (pos_ >= text_.size()) error("unterminated string literal");
      char c = peek();
      if (isLong) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          advance();
          advance();
          advance();
          return;
        }
      } else if (c == quote) {
        advance();
        return;
      } else if (c == '\n') {
        error("newline in string literal");
      }
      if (c == '\\') {
        advance();
        char e = advance();
        switch (e) {
          case 't':
            token.text += '\t';
            break;
          case 'b':
            token.text += '\b';
            break;
          case 'n':
            token.text += '\n';
            break;
          case 'r':
            token.text += '\r';
            break;
          case 'f':
            token.text += '\f';
            break;
          case '"':
          case '\'':
          case '\\':
            token.text += e;
            break;
          case 'u':
            appendUtf8(token.text, readHex(4));
            break;
          case 'U':
            appendUtf8(token.text, readHex(8));
            break;
          default:
            error(std::string("invalid escape \\") + e);
        }
        continue;
      }
      token.text += advance();
    }
  }

  void lexNumber(Token& token) {
    token.kind = TokenKind::Integer;
    if (peek() == '+' || peek() == '-') token.text += advance();
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      token.text += advance();
    }
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      token.kind = TokenKind::Decimal;
      token.text += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        token.text += advance();
      }
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_;
      std::size_t offset = 1;
      if (peek(1) == '+' || peek(1) == '-') offset = 2;
      if (std::isdigit(static_cast<unsigned char>(peek(offset)))) {
        token.kind = TokenKind::Double;
        for (std::size_t i = 0; i < offset; ++i) token.text += advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          token.text += advance();
        }
      } else {
        pos_ = save;
      }
    }
  }

  void lexName(Token& token) {
    std::string prefix;
    while (isNameChar(peek()) || (peek() == '.' && isNameChar(peek(1)))) {
      prefix += advance();
    }
    if (peek() != ':') {
      token.kind = TokenKind::Word;
      token.text = std::move(prefix);
      return;
    }
    advance();
    token.kind = TokenKind::PName;
    token.text = std::move(prefix);
    while (true) {
      char c = peek();
      if (isNameChar(c) || c == ':' || c == '%') {
        token.local += advance();
      } else if (c == '.' && (isNameChar(peek(1)) || peek(1) == ':')) {
        token.local += advance();
      } else if (c == '\\' && peek(1) != '\0') {
        advance();
        token.local += advance();
      } else {
        break;
      }
    }
  }

  void lexPunct(Token& token) {
    token.kind = TokenKind::Punct;
    static constexpr std::string_view kTwo[] = {"^^", "&&", "||", "!=", "<=",
                                                ">="};
    for (auto op : kTwo) {
      if (text_.substr(pos_, 2) == op) {
        advance();
        advance();
        token.text = std::string(op);
        return;
      }
    }
    static constexpr std::string_view kOne = "{}()[].;,*=<>!+-/|^?@";
    char c = peek();
    if (kOne.find(c) == std::string_view::npos) {
      error(std::string("unexpected character '") + c + "'");
    }
    token.text = std::string(1, advance());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

bool Token::isWord(std::string_view keyword) const {
  if (kind != TokenKind::Word || text.size() != keyword.size()) return false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(text[i])) !=
        std::toupper(static_cast<unsigned char>(keyword[i]))) {
      return false;
    }
  }
  return true;
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::Iri:
      return "<" + token.text + ">";
    case TokenKind::PName:
      return token.text + ":" + token.local;
    case TokenKind::Var:
      return "?" + token.text;
    case TokenKind::String:
      return "\"" + token.text + "\"";
    case TokenKind::LangTag:
      return "@" + token.text;
    case TokenKind::BlankNode:
      return "_:" + token.text;
    case TokenKind::End:
      return "end of input";
    default:
      return "'" + token.text + "'";
  }
}

}  // namespace quadgate::detail
