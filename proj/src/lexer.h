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

#pragma once

// Tokenizer shared by the TriG/N-Quads reader, the policy reader and the
// SPARQL parser. Internal to the library.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "quadgate/errors.h"

namespace quadgate::detail {

enum class TokenKind {
  Iri,         // text = IRI without brackets, escapes resolved
  PName,       // text = prefix (without ':'), local = local part
  Var,         // text = name without '?' / '$'
  String,      // text = unescaped value
  LangTag,     // text = tag without '@'
  Integer,     // text = lexical form (may be signed)
  Decimal,     // text = lexical form
  Double,      // text = lexical form
  Word,        // bare identifier: keywords, 'a', true/false
  BlankNode,   // text = label
  Punct,       // text = operator / punctuation
  End
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::string local;
  std::size_t line = 1;
  std::size_t column = 1;

  bool isPunct(std::string_view p) const {
    return kind == TokenKind::Punct && text == p;
  }
  // Case-insensitive keyword test.
  bool isWord(std::string_view keyword) const;
};

std::vector<Token> tokenize(std::string_view text);

std::string describe(const Token& token);

[[noreturn]] inline void fail(const Token& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

}  // namespace quadgate::detail
