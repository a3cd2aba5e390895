// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file state_expression.hpp
 * @brief Text form of Fock kets.
 *
 *   state  := sign? term (('+'|'-') term)*
 *   term   := coeff? '|' bits (';' order)? '>' (';' 'order'? order)?
 *   coeff  := integer | integer '/' integer | decimal
 *   order  := letter+
 *   bits   := ('0'|'1')+
 *
 * Whitespace between tokens is ignored. Every term must end up with the same
 * order; terms without one use the order written elsewhere in the text, then
 * the caller's default, then the first N letters of the alphabet.
 *
 * Coefficients are kept as exact rationals so render() followed by parse
 * reproduces the terms bit for bit.
 */

#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carfock/errors.hpp"
#include "carfock/fock.hpp"

namespace carfock {

/// Exact rational coefficient num/den with den > 0 and gcd(num, den) = 1.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {  // NOLINT
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  Coefficient negated() const { return Coefficient(-num_, den_); }

  /// Magnitude as "3", "1/2".
  std::string magnitude_text() const {
    const std::int64_t a = num_ < 0 ? -num_ : num_;
    return den_ == 1 ? std::to_string(a) : std::to_string(a) + "/" + std::to_string(den_);
  }

  friend bool operator==(const Coefficient&, const Coefficient&) = default;

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
};

struct ExpressionTerm {
  Coefficient coefficient;
  OccupationString bits;

  friend bool operator==(const ExpressionTerm&, const ExpressionTerm&) = default;
};

/// Parsed text before merging and normalization.
struct StateExpression {
  ModeOrder order;
  std::vector<ExpressionTerm> terms;

  friend bool operator==(const StateExpression&, const StateExpression&) = default;
};

namespace detail {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  StateExpression parse(const std::optional<ModeOrder>& default_order) {
    skip_space();
    if (at_end()) fail("empty state expression");

    std::vector<PendingTerm> pending;
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = take() == '-';
      skip_space();
    }
    pending.push_back(term(negative));
    for (;;) {
      skip_space();
      if (at_end()) break;
      const char ch = peek();
      if (ch != '+' && ch != '-') fail(std::string("expected '+' or '-', found '") + ch + "'");
      take();
      skip_space();
      pending.push_back(term(ch == '-'));
    }
    return resolve(std::move(pending), default_order);
  }

 private:
  struct Position {
    std::size_t line;
    std::size_t column;
  };

  struct PendingTerm {
    Coefficient coefficient;
    std::string bits;
    Position where;
  };

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char take() {
    const char ch = text_[pos_++];
    if (ch == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return ch;
  }

  Position here() const { return {line_, column_}; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) take();
  }

  void expect(char ch) {
    skip_space();
    if (at_end()) fail(std::string("expected '") + ch + "', found end of input");
    if (peek() != ch) fail(std::string("expected '") + ch + "', found '" + peek() + "'");
    take();
  }

  std::int64_t integer() {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
    std::int64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const int digit = take() - '0';
      if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10)
        fail("coefficient overflows 64-bit range");
      value = value * 10 + digit;
    }
    return value;
  }

  Coefficient coefficient() {
    const Position start = here();
    std::int64_t whole = 0;
    if (peek() != '.') whole = integer();
    skip_space();
    if (!at_end() && peek() == '/') {
      take();
      skip_space();
      const std::int64_t den = integer();
      if (den == 0) throw ParseError("zero denominator", start.line, start.column);
      return Coefficient(whole, den);
    }
    if (!at_end() && peek() == '.') {
      take();
      std::int64_t num = whole;
      std::int64_t den = 1;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected digits after decimal point");
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        const int digit = take() - '0';
        if (den > std::numeric_limits<std::int64_t>::max() / 10 ||
            num > (std::numeric_limits<std::int64_t>::max() - digit) / 10)
          throw ParseError("decimal has too many digits", start.line, start.column);
        num = num * 10 + digit;
        den *= 10;
      }
      return Coefficient(num, den);
    }
    return Coefficient(whole);
  }

  std::string order_letters() {
    skip_space();
    std::string letters;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) letters += take();
    if (letters.empty()) fail("expected mode letters");
    return letters;
  }

  /// After ';': optional keyword "order", then letters.
  void order_spec() {
    const Position start = here();
    std::string letters = order_letters();
    if (letters == "order") {
      skip_space();
      if (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) letters = order_letters();
    }
    record_order(letters, start);
  }

  void record_order(const std::string& letters, Position where) {
    if (explicit_order_ && *explicit_order_ != letters)
      throw WidthError(std::to_string(where.line) + ":" + std::to_string(where.column) +
                       ": order '" + letters + "' conflicts with earlier order '" +
                       *explicit_order_ + "'");
    explicit_order_ = letters;
  }

  PendingTerm term(bool negative) {
    PendingTerm t{Coefficient(1), {}, here()};
    if (at_end()) fail("expected a term");
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      t.coefficient = coefficient();
      skip_space();
    }
    if (negative) t.coefficient = t.coefficient.negated();
    expect('|');
    skip_space();
    const Position bits_at = here();
    while (!at_end() && (peek() == '0' || peek() == '1')) t.bits += take();
    if (t.bits.empty()) throw ParseError("expected occupation bits", bits_at.line, bits_at.column);
    skip_space();
    if (!at_end() && peek() == ';') {
      take();
      order_spec();
    }
    expect('>');
    skip_space();
    if (!at_end() && peek() == ';') {
      take();
      order_spec();
    }
    return t;
  }

  StateExpression resolve(std::vector<PendingTerm> pending,
                          const std::optional<ModeOrder>& default_order) {
    ModeOrder order;
    if (explicit_order_) {
      order = ModeOrder::parse(*explicit_order_);
    } else if (default_order) {
      order = *default_order;
    } else {
      order = ModeOrder::alphabet(pending.front().bits.size());
    }
    StateExpression out{order, {}};
    for (auto& t : pending) {
      if (t.bits.size() != order.size())
        throw WidthError(std::to_string(t.where.line) + ":" + std::to_string(t.where.column) +
                         ": |" + t.bits + "> has " + std::to_string(t.bits.size()) +
                         " slots but order " + order.to_string() + " has " +
                         std::to_string(order.size()));
      out.terms.push_back({t.coefficient, OccupationString::parse(t.bits)});
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::optional<std::string> explicit_order_;
};

}  // namespace detail

inline StateExpression parse_expression(std::string_view text,
                                        const std::optional<ModeOrder>& default_order = {}) {
  return detail::ExpressionParser(text).parse(default_order);
}

/// "1/2|100;abc> - 1/2|011;abc>"
inline std::string render(const StateExpression& e) {
  std::string out;
  const std::string order = e.order.to_string();
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const auto& t = e.terms[i];
    const bool negative = t.coefficient.numerator() < 0;
    if (i == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (t.coefficient.magnitude_text() != "1") out += t.coefficient.magnitude_text();
    out += "|" + t.bits.to_string() + ";" + order + ">";
  }
  return out;
}

struct ParseOptions {
  std::optional<ModeOrder> order;
  bool raw = false;  ///< skip normalization
};

struct ParsedState {
  FockKet ket;
  StateExpression expression;
  std::vector<std::string> diagnostics;
};

/// Parses, merges duplicate strings and (unless raw) normalizes.
inline ParsedState parse_state(std::string_view text, const ParseOptions& options = {}) {
  StateExpression e = parse_expression(text, options.order);
  std::vector<std::pair<OccupationString, Amplitude>> terms;
  std::vector<std::string> diagnostics;
  std::map<OccupationString, int> seen;
  for (const auto& t : e.terms) {
    terms.emplace_back(t.bits, t.coefficient.value());
    if (++seen[t.bits] == 2) diagnostics.push_back("merged duplicate terms on |" + t.bits.to_string() + ">");
  }
  FockKet ket = make_ket(e.order, terms, false);
  const double n2 = ket.squared_norm();
  if (!options.raw && std::abs(n2 - 1.0) > 1e-12) {
    ket = ket.normalized();
    diagnostics.push_back("normalized: squared norm " + std::to_string(n2) + " rescaled to 1");
  }
  return {std::move(ket), std::move(e), std::move(diagnostics)};
}

}  // namespace carfock
