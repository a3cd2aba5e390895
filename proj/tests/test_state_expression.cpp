// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <string>

#include "catch_amalgamated.hpp"
#include "test_support.hpp"

using namespace carfock;
using Catch::Matchers::WithinAbs;

TEST_CASE("parses the worked state", "[parser]") {
  const auto parsed = parse_state("1/2|100> + 1/2|010> + 1/2|101> + 1/2|011> ; order abc");
  CHECK(parsed.ket == make_ket(ModeOrder::parse("abc"), {{"100", 0.5}, {"010", 0.5}, {"101", 0.5}, {"011", 0.5}}));
  CHECK(parsed.diagnostics.empty());
}

TEST_CASE("default coefficient is one", "[parser]") {
  const auto parsed = parse_state("|00>;ab");
  CHECK(parsed.ket == make_ket(ModeOrder::parse("ab"), {{"00", 1.0}}));
  CHECK(parsed.expression.terms.front().coefficient == Coefficient(1));
}

TEST_CASE("render uses the in-ket order form", "[parser]") {
  const auto e = parse_expression("1/2|100> - 1/2|011> ;abc");
  CHECK(render(e) == "1/2|100;abc> - 1/2|011;abc>");
  CHECK(parse_expression(render(e)) == e);
  CHECK(render(parse_expression("-|01>")) == "-|01;ab>");
}

TEST_CASE("order placement variants agree", "[parser]") {
  const auto a = parse_expression("|10> + |01> ; order ba");
  const auto b = parse_expression("|10;ba> + |01;ba>");
  const auto c = parse_expression("|10>+|01>;ba");
  CHECK(a == b);
  CHECK(b == c);
  CHECK(a.order == ModeOrder::parse("ba"));
}

TEST_CASE("order falls back to the caller default, then the alphabet", "[parser]") {
  CHECK(parse_expression("|101>", ModeOrder::parse("xyz")).order == ModeOrder::parse("xyz"));
  CHECK(parse_expression("|101>").order == ModeOrder::parse("abc"));
  CHECK(parse_expression("|10;ba>", ModeOrder::parse("ab")).order == ModeOrder::parse("ba"));
}

TEST_CASE("coefficient forms", "[parser]") {
  const auto e = parse_expression("3|0> + 2/4|1>");
  CHECK(e.terms[0].coefficient == Coefficient(3));
  CHECK(e.terms[1].coefficient == Coefficient(1, 2));
  CHECK(parse_expression("0.25|0>").terms[0].coefficient == Coefficient(1, 4));
  CHECK(parse_expression(".5|0>").terms[0].coefficient == Coefficient(1, 2));
  CHECK(parse_expression("- 1.5|0>").terms[0].coefficient == Coefficient(-3, 2));
}

TEST_CASE("normalization and duplicates", "[parser]") {
  const auto parsed = parse_state("|00> + |11>");
  CHECK(parsed.ket.is_normalized());
  CHECK_THAT(parsed.ket.amplitude(OccupationString::parse("11")).real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK(parsed.diagnostics.size() == 1);

  const auto raw = parse_state("|00> + |11>", {.order = std::nullopt, .raw = true});
  CHECK(raw.ket.squared_norm() == 2.0);

  const auto merged = parse_state("|1> + |1>", {.order = std::nullopt, .raw = true});
  CHECK(merged.ket.amplitude(OccupationString::parse("1")) == Complex(2.0));
  CHECK(merged.diagnostics.size() == 1);
}

TEST_CASE("syntax errors carry line and column", "[parser][errors]") {
  try {
    parse_expression("|10> +\n  2|1x0>");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 6);
  }
  CHECK_THROWS_AS(parse_expression(""), ParseError);
  CHECK_THROWS_AS(parse_expression("   "), ParseError);
  CHECK_THROWS_AS(parse_expression("|10"), ParseError);
  CHECK_THROWS_AS(parse_expression("|>"), ParseError);
  CHECK_THROWS_AS(parse_expression("1/0|1>"), ParseError);
  CHECK_THROWS_AS(parse_expression("|10> * |01>"), ParseError);
  CHECK_THROWS_AS(parse_expression("|10>;"), ParseError);
  CHECK_THROWS_AS(parse_expression("1.|1>"), ParseError);
}

TEST_CASE("inconsistent widths and orders", "[parser][errors]") {
  CHECK_THROWS_AS(parse_expression("|10> + |011>"), WidthError);
  CHECK_THROWS_AS(parse_expression("|10;ab> + |01;ba>"), WidthError);
  CHECK_THROWS_AS(parse_expression("|101> ; order ab"), WidthError);
  CHECK_THROWS_AS(parse_state("|10> - |10>"), ZeroStateError);
}

TEST_CASE("generated corpus round-trips", "[parser][property]") {
  std::mt19937_64 rng(4242);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  auto space = [&] { return std::string(static_cast<std::size_t>(pick(3)), ' '); };
  int checked = 0;
  for (int c = 0; c < 100; ++c) {
    const int width = 1 + pick(6);
    std::string order;
    for (int i = 0; i < width; ++i) order += static_cast<char>('a' + i);
    std::shuffle(order.begin(), order.end(), rng);
    const int placement = pick(3);  // 0: trailing "; order", 1: in-ket, 2: none
    std::string text;
    const int terms = 1 + pick(5);
    for (int t = 0; t < terms; ++t) {
      if (t > 0) text += space() + (pick(2) ? "+" : "-") + space();
      else if (pick(4) == 0) text += "-";
      switch (pick(4)) {
        case 0: break;
        case 1: text += std::to_string(1 + pick(9)); break;
        case 2: text += std::to_string(1 + pick(9)) + space() + "/" + space() + std::to_string(1 + pick(12)); break;
        default: text += std::to_string(pick(4)) + "." + std::to_string(1 + pick(999)); break;
      }
      text += space() + "|";
      for (int i = 0; i < width; ++i) text += pick(2) ? '1' : '0';
      if (placement == 1) text += ";" + order;
      text += ">";
    }
    if (placement == 0) text += space() + ";" + space() + (pick(2) ? "order " : "") + order;

    INFO(text);
    const StateExpression first = parse_expression(text);
    const std::string rendered = render(first);
    const StateExpression second = parse_expression(rendered);
    CHECK(second == first);
    CHECK(render(second) == rendered);
    ++checked;
  }
  CHECK(checked == 100);
}
