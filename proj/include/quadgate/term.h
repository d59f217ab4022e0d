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

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace quadgate {

inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

enum class TermKind : std::uint8_t { Iri, Literal, Variable };

// Literal datatypes. LangString is rdf:langString (a string with a language
// tag); None is used for IRIs and variables.
enum class Datatype : std::uint8_t {
  None,
  String,
  LangString,
  Integer,
  Decimal,
  Boolean
};

// An RDF term or a query variable. Blank nodes are not representable.
//
// Terms are immutable and cheap to copy (the payload is shared). Numeric and
// boolean literals are stored in canonical lexical form, so two literals are
// the same term iff datatype, lexical form and language tag coincide.
class Term {
 public:
  static Term iri(std::string_view iri);
  static Term variable(std::string_view name);
  static Term string(std::string_view value);
  static Term langString(std::string_view value, std::string_view language);
  static Term integer(std::string_view lexical);
  static Term integer(std::int64_t value);
  static Term decimal(std::string_view lexical);
  static Term decimal(long double value);
  static Term boolean(bool value);
  // Dispatches on the datatype IRI; throws InvalidArgument for datatypes
  // outside string/integer/decimal/boolean.
  static Term typedLiteral(std::string_view lexical,
                           std::string_view datatypeIri);

  TermKind kind() const { return impl_->kind; }
  bool isIri() const { return kind() == TermKind::Iri; }
  bool isLiteral() const { return kind() == TermKind::Literal; }
  bool isVariable() const { return kind() == TermKind::Variable; }

  // IRI string, variable name (without '?') or literal lexical form.
  const std::string& value() const { return impl_->lexical; }
  Datatype datatype() const { return impl_->datatype; }
  const std::string& language() const { return impl_->language; }
  std::string datatypeIri() const;

  bool isNumeric() const {
    return datatype() == Datatype::Integer || datatype() == Datatype::Decimal;
  }
  std::optional<long double> numericValue() const;
  std::optional<bool> booleanValue() const;

  // N-Triples / SPARQL surface form: <iri>, "lex"^^<dt>, "lex"@lang, ?var.
  // Plain strings are written without a datatype.
  std::string toString() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Impl {
    TermKind kind;
    Datatype datatype;
    std::string lexical;
    std::string language;
  };

  explicit Term(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static Term make(TermKind kind, Datatype datatype, std::string lexical,
                   std::string language = {});

  std::shared_ptr<const Impl> impl_;
};

// True for strings of the form scheme ":" rest with no whitespace or
// characters forbidden in IRIREF.
bool isAbsoluteIri(std::string_view iri);

// Canonical lexical forms; throw InvalidArgument when not parseable.
std::string canonicalInteger(std::string_view lexical);
std::string canonicalDecimal(std::string_view lexical);

// Escapes a string for use inside "..." in N-Triples/SPARQL.
std::string escapeString(std::string_view value);

}  // namespace quadgate
