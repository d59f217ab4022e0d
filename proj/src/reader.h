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

// Token cursor with prefix resolution and RDF term reading, shared by the
// dataset, policy and SPARQL readers.

#include <string>
#include <string_view>
#include <vector>

#include "lexer.h"
#include "quadgate/sparql_ast.h"
#include "quadgate/term.h"

namespace quadgate::detail {

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : tokens_(tokenize(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool atEnd() const { return peek().kind == TokenKind::End; }

  bool acceptPunct(std::string_view p) {
    if (!peek().isPunct(p)) return false;
    next();
    return true;
  }
  bool acceptWord(std::string_view w) {
    if (!peek().isWord(w)) return false;
    next();
    return true;
  }
  void expectPunct(std::string_view p) {
    if (!acceptPunct(p)) {
      fail(peek(), "expected '" + std::string(p) + "' but found " +
                       describe(peek()));
    }
  }
  void expectWord(std::string_view w) {
    if (!acceptWord(w)) {
      fail(peek(), "expected " + std::string(w) + " but found " +
                       describe(peek()));
    }
  }

  // PREFIX / @prefix handling.
  void declarePrefix(const std::string& prefix, const std::string& iri);
  const PrefixMap& prefixes() const { return prefixes_; }
  // Reads `pname: <iri>` after the PREFIX keyword.
  void readPrefixDeclaration();

  bool atIri() const {
    return peek().kind == TokenKind::Iri || peek().kind == TokenKind::PName;
  }
  // Reads an IRI or prefixed name.
  std::string readIri();
  // Reads an IRI, prefixed name, 'a' (when allowA), or literal.
  Term readTerm(bool allowA = false);
  bool atLiteral() const;
  Term readLiteral();

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  PrefixMap prefixes_;
};

}  // namespace quadgate::detail
