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

#include "reader.h"

#include "quadgate/errors.h"

namespace quadgate::detail {

void TokenStream::declarePrefix(const std::string& prefix,
                                const std::string& iri) {
  for (auto& entry : prefixes_) {
    if (entry.first == prefix) {
      entry.second = iri;
      return;
    }
  }
  prefixes_.emplace_back(prefix, iri);
}

void TokenStream::readPrefixDeclaration() {
  const Token& name = next();
  if (name.kind != TokenKind::PName || !name.local.empty()) {
    fail(name, "expected a prefix name but found " + describe(name));
  }
  const Token& iri = next();
  if (iri.kind != TokenKind::Iri) {
    fail(iri, "expected an IRI but found " + describe(iri));
  }
  declarePrefix(name.text, iri.text);
}

std::string TokenStream::readIri() {
  const Token& t = next();
  std::string iri;
  if (t.kind == TokenKind::Iri) {
    iri = t.text;
  } else if (t.kind == TokenKind::PName) {
    bool found = false;
    for (const auto& [prefix, expansion] : prefixes_) {
      if (prefix == t.text) {
        iri = expansion + t.local;
        found = true;
        break;
      }
    }
    if (!found) fail(t, "undeclared prefix '" + t.text + ":'");
  } else {
    fail(t, "expected an IRI but found " + describe(t));
  }
  if (!isAbsoluteIri(iri)) fail(t, "not an absolute IRI: <" + iri + ">");
  return iri;
}

bool TokenStream::atLiteral() const {
  const Token& t = peek();
  switch (t.kind) {
    case TokenKind::String:
    case TokenKind::Integer:
    case TokenKind::Decimal:
    case TokenKind::Double:
      return true;
    case TokenKind::Word:
      return t.isWord("true") || t.isWord("false");
    default:
      return false;
  }
}

Term TokenStream::readLiteral() {
  const Token& t = next();
  try {
    switch (t.kind) {
      case TokenKind::Integer:
        return Term::integer(t.text);
      case TokenKind::Decimal:
        return Term::decimal(t.text);
      case TokenKind::Double:
        throw UnsupportedError("xsd:double literal");
      case TokenKind::Word:
        if (t.isWord("true")) return Term::boolean(true);
        if (t.isWord("false")) return Term::boolean(false);
        break;
      case TokenKind::String: {
        std::string value = t.text;
        if (peek().kind == TokenKind::LangTag) {
          return Term::langString(value, next().text);
        }
        if (acceptPunct("^^")) {
          const Token& at = peek();
          std::string datatype = readIri();
          try {
            return Term::typedLiteral(value, datatype);
          } catch (const InvalidArgument& e) {
            fail(at, e.what());
          }
        }
        return Term::string(value);
      }
      default:
        break;
    }
  } catch (const InvalidArgument& e) {
    fail(t, e.what());
  }
  fail(t, "expected a literal but found " + describe(t));
}

Term TokenStream::readTerm(bool allowA) {
  const Token& t = peek();
  if (t.kind == TokenKind::BlankNode || t.isPunct("[")) {
    throw UnsupportedError("blank node");
  }
  if (t.isPunct("(")) throw UnsupportedError("RDF collection");
  if (allowA && t.kind == TokenKind::Word && t.text == "a") {
    next();
    return Term::iri(kRdfType);
  }
  if (atIri()) return Term::iri(readIri());
  if (atLiteral()) return readLiteral();
  fail(t, "expected an RDF term but found " + describe(t));
}

}  // namespace quadgate::detail
