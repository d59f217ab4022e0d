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

#include "quadgate/term.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "quadgate/errors.h"

namespace quadgate {

namespace {

bool isDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string stripLeadingZeros(std::string_view digits) {
  std::size_t i = 0;
  while (i + 1 < digits.size() && digits[i] == '0') ++i;
  return std::string(digits.substr(i));
}

}  // namespace

bool isAbsoluteIri(std::string_view iri) {
  auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = iri[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  for (char c : iri) {
    if (static_cast<unsigned char>(c) <= 0x20) return false;
    switch (c) {
      case '<':
      case '>':
      case '"':
      case '{':
      case '}':
      case '|':
      case '^':
      case '`':
      case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

std::string canonicalInteger(std::string_view lexical) {
  std::string_view s = lexical;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!isDigits(s)) {
    throw InvalidArgument("not an integer: '" + std::string(lexical) + "'");
  }
  std::string digits = stripLeadingZeros(s);
  if (digits == "0") return digits;
  return negative ? "-" + digits : digits;
}

std::string canonicalDecimal(std::string_view lexical) {
  std::string_view s = lexical;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string_view intPart = s.substr(0, dot);
  std::string_view fracPart =
      dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if ((intPart.empty() && fracPart.empty()) ||
      (!intPart.empty() && !isDigits(intPart)) ||
      (!fracPart.empty() && !isDigits(fracPart))) {
    throw InvalidArgument("not a decimal: '" + std::string(lexical) + "'");
  }
  std::string whole = intPart.empty() ? "0" : stripLeadingZeros(intPart);
  std::string frac(fracPart);
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  if (frac.empty()) frac = "0";
  bool zero = whole == "0" && frac == "0";
  return (negative && !zero ? "-" : "") + whole + "." + frac;
}

std::string escapeString(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out;
}

Term Term::make(TermKind kind, Datatype datatype, std::string lexical,
                std::string language) {
  return Term(std::make_shared<const Impl>(
      Impl{kind, datatype, std::move(lexical), std::move(language)}));
}

Term Term::iri(std::string_view iri) {
  if (!isAbsoluteIri(iri)) {
    throw InvalidArgument("not an absolute IRI: '" + std::string(iri) + "'");
  }
  return make(TermKind::Iri, Datatype::None, std::string(iri));
}

Term Term::variable(std::string_view name) {
  if (name.empty()) throw InvalidArgument("empty variable name");
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw InvalidArgument("variable name contains whitespace");
    }
  }
  return make(TermKind::Variable, Datatype::None, std::string(name));
}

Term Term::string(std::string_view value) {
  return make(TermKind::Literal, Datatype::String, std::string(value));
}

Term Term::langString(std::string_view value, std::string_view language) {
  if (language.empty()) return string(value);
  std::string lang(language);
  for (char& c : lang) c = static_cast<char>(std::tolower(c));
  return make(TermKind::Literal, Datatype::LangString, std::string(value),
              std::move(lang));
}

Term Term::integer(std::string_view lexical) {
  return make(TermKind::Literal, Datatype::Integer, canonicalInteger(lexical));
}

Term Term::integer(std::int64_t value) {
  return make(TermKind::Literal, Datatype::Integer, std::to_string(value));
}

Term Term::decimal(std::string_view lexical) {
  return make(TermKind::Literal, Datatype::Decimal, canonicalDecimal(lexical));
}

Term Term::decimal(long double value) {
  if (!std::isfinite(value)) {
    throw InvalidArgument("decimal value is not finite");
  }
  char buffer[128];
  std::snprintf(buffer, sizeof(buffer), "%.18Lf", value);
  return decimal(std::string_view(buffer));
}

Term Term::boolean(bool value) {
  return make(TermKind::Literal, Datatype::Boolean, value ? "true" : "false");
}

Term Term::typedLiteral(std::string_view lexical,
                        std::string_view datatypeIri) {
  if (datatypeIri.substr(0, kXsd.size()) == kXsd) {
    std::string_view local = datatypeIri.substr(kXsd.size());
    if (local == "string") return string(lexical);
    if (local == "integer") return integer(lexical);
    if (local == "decimal") return decimal(lexical);
    if (local == "boolean") {
      if (lexical == "true" || lexical == "1") return boolean(true);
      if (lexical == "false" || lexical == "0") return boolean(false);
      throw InvalidArgument("not a boolean: '" + std::string(lexical) + "'");
    }
  }
  throw InvalidArgument("unsupported literal datatype <" +
                        std::string(datatypeIri) + ">");
}

std::string Term::datatypeIri() const {
  switch (datatype()) {
    case Datatype::String:
      return std::string(kXsd) + "string";
    case Datatype::LangString:
      return std::string(kRdf) + "langString";
    case Datatype::Integer:
      return std::string(kXsd) + "integer";
    case Datatype::Decimal:
      return std::string(kXsd) + "decimal";
    case Datatype::Boolean:
      return std::string(kXsd) + "boolean";
    case Datatype::None:
      break;
  }
  return {};
}

std::optional<long double> Term::numericValue() const {
  if (!isNumeric()) return std::nullopt;
  return std::strtold(value().c_str(), nullptr);
}

std::optional<bool> Term::booleanValue() const {
  if (datatype() != Datatype::Boolean) return std::nullopt;
  return value() == "true";
}

std::string Term::toString() const {
  switch (kind()) {
    case TermKind::Iri:
      return "<" + value() + ">";
    case TermKind::Variable:
      return "?" + value();
    case TermKind::Literal:
      break;
  }
  std::string out = "\"" + escapeString(value()) + "\"";
  switch (datatype()) {
    case Datatype::String:
      return out;
    case Datatype::LangString:
      return out + "@" + language();
    default:
      return out + "^^<" + datatypeIri() + ">";
  }
}

bool operator==(const Term& a, const Term& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->kind == b.impl_->kind &&
         a.impl_->datatype == b.impl_->datatype &&
         a.impl_->lexical == b.impl_->lexical &&
         a.impl_->language == b.impl_->language;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.impl_ == b.impl_) return std::strong_ordering::equal;
  const auto& x = *a.impl_;
  const auto& y = *b.impl_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.datatype <=> y.datatype; c != 0) return c;
  if (auto c = x.lexical.compare(y.lexical); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  int c = x.language.compare(y.language);
  if (c == 0) return std::strong_ordering::equal;
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace quadgate
