// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "catch_amalgamated.hpp"
#include "test_support.hpp"

using namespace carfock;
using Catch::Matchers::WithinAbs;

namespace {

FockKet phi() {
  return make_ket(ModeOrder::parse("abc"), {{"100", 0.5}, {"010", 0.5}, {"101", 0.5}, {"011", 0.5}});
}

const SweepRecord& record(const SweepReport& r, std::string_view ordering, TraceConvention c) {
  for (const auto& rec : r.records)
    if (rec.ordering.to_string() == ordering && rec.convention == c) return rec;
  throw std::runtime_error("record not found");
}

const ConventionSummary& summary(const SweepReport& r, TraceConvention c) {
  for (const auto& s : r.summary)
    if (s.convention == c) return s;
  throw std::runtime_error("summary not found");
}

}  // namespace

TEST_CASE("convention names parse with aliases", "[report]") {
  CHECK(parse_convention("canonical") == TraceConvention::CanonicalOracle);
  CHECK(parse_convention("fermionic") == TraceConvention::CanonicalOracle);
  CHECK(parse_convention("literal") == TraceConvention::PaperLiteral);
  CHECK(parse_convention("paper-literal") == TraceConvention::PaperLiteral);
  CHECK(parse_convention("naive") == TraceConvention::Naive);
  CHECK_THROWS_AS(parse_convention("bosonic"), ParseError);
}

TEST_CASE("all orderings are enumerated lexicographically", "[report]") {
  const auto orders = all_orderings(ModeOrder::parse("cab"));
  REQUIRE(orders.size() == 6);
  CHECK(orders.front().to_string() == "abc");
  CHECK(orders[1].to_string() == "acb");
  CHECK(orders.back().to_string() == "cba");
}

TEST_CASE("fermionic sweep of the worked state", "[report][sweep]") {
  const SweepReport r = sweep(phi(), {{"a", "b"}, {TraceConvention::CanonicalOracle, TraceConvention::PaperLiteral}});
  CHECK(r.records.size() == 12);
  for (const auto& rec : r.records) {
    CHECK_THAT(rec.diagnostics.entropy_bits, WithinAbs(0.0, 1e-10));
    REQUIRE(rec.diagnostics.negativity.has_value());
    CHECK_THAT(*rec.diagnostics.negativity, WithinAbs(0.5, 1e-10));
  }
  for (auto c : {TraceConvention::CanonicalOracle, TraceConvention::PaperLiteral}) {
    CHECK(summary(r, c).invariant_under_reordering);
    CHECK(summary(r, c).distinct_results == 1);
    CHECK(summary(r, c).max_pairwise_distance == 0.0);
  }
  CHECK(r.fermionic_invariant());
  CHECK(r.input_ssr.violates());
}

TEST_CASE("naive sweep of the worked state is not invariant", "[report][sweep][naive]") {
  const SweepReport r = sweep(phi(), {{"a", "b"}, {TraceConvention::Naive}});
  const auto& abc = record(r, "abc", TraceConvention::Naive);
  CHECK_THAT(*abc.diagnostics.negativity, WithinAbs(0.5, 1e-10));
  CHECK_THAT(abc.diagnostics.purity, WithinAbs(1.0, 1e-10));
  const auto& acb = record(r, "acb", TraceConvention::Naive);
  CHECK_THAT(*acb.diagnostics.negativity, WithinAbs(0.0, 1e-10));
  CHECK_THAT(acb.diagnostics.purity, WithinAbs(0.5, 1e-10));
  CHECK_THAT(acb.diagnostics.entropy_bits, WithinAbs(1.0, 1e-10));
  CHECK_FALSE(summary(r, TraceConvention::Naive).invariant_under_reordering);
  CHECK_THAT(summary(r, TraceConvention::Naive).max_pairwise_distance, WithinAbs(0.5, 1e-12));
  // Naive is not a fermionic convention, so the report as a whole stays consistent.
  CHECK(r.fermionic_invariant());
}

TEST_CASE("Bell pair sweep under both conventions", "[report][sweep]") {
  const FockKet bell = make_ket(ModeOrder::parse("ab"), {{"00", 1.0}, {"11", 1.0}}, true);
  const SweepReport r = sweep(bell, {{"a"}, {TraceConvention::CanonicalOracle, TraceConvention::Naive}});
  for (const auto& rec : r.records) {
    CHECK_THAT(rec.diagnostics.entropy_bits, WithinAbs(1.0, 1e-12));
    CHECK_FALSE(rec.diagnostics.negativity.has_value());
  }
  for (const auto& s : r.summary) CHECK(s.invariant_under_reordering);
  CHECK(r.input_ssr.status == SsrStatus::Pure);
}

TEST_CASE("fermionic sweeps are invariant on random inputs", "[report][sweep][property]") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    const FockKet k = testing_support::random_ket(rng, 2 + trial % 3);
    for (const auto& keep : testing_support::proper_subsets(k.order())) {
      const SweepReport r = sweep(k, {keep, {TraceConvention::CanonicalOracle, TraceConvention::PaperLiteral}});
      CHECK(r.fermionic_invariant());
    }
  }
}

TEST_CASE("sweep errors", "[report][sweep][errors]") {
  CHECK_THROWS_AS(sweep(make_ket(ModeOrder::alphabet(9), {{"000000000", 1.0}}), {{"a"}, {TraceConvention::Naive}}),
                  SizeError);
  CHECK_THROWS_AS(sweep(phi(), {{"a", "b"}, {TraceConvention::CanonicalOracle}, true}), SsrError);
  CHECK_NOTHROW(sweep(make_ket(ModeOrder::parse("ab"), {{"00", 1.0}, {"11", 1.0}}, true),
                      {{"a"}, {TraceConvention::CanonicalOracle}, true}));
  CHECK_THROWS_AS(sweep(phi(), {{"a", "b", "c"}, {TraceConvention::CanonicalOracle}}), KeepSetError);
}

TEST_CASE("empty conventions give an empty records array", "[report][json]") {
  const SweepReport r = sweep(phi(), {{"a", "b"}, {}});
  const Json j = Json::parse(render_report(r));
  CHECK(j.at("schema") == "car-fock/1");
  CHECK(j.at("records").is_array());
  CHECK(j.at("records").empty());
  CHECK(j.at("summary").empty());
}

TEST_CASE("reduced matrix serializes by occupation strings", "[report][json]") {
  const DensityMatrix reduced = partial_trace(density_matrix(phi()), {"a", "b"}, TraceConvention::CanonicalOracle);
  const Json j = to_json(reduced);
  CHECK(j.at("order") == "ab");
  CHECK(j.at("matrix").at("10").at("01") == Json::array({0.5, 0.0}));
  CHECK(j.at("matrix").at("00").at("00") == Json::array({0.0, 0.0}));
  CHECK(density_matrix_from_json(j).entries() == reduced.entries());
}

TEST_CASE("report key order is stable", "[report][json]") {
  const SweepReport r = sweep(phi(), {{"a", "b"}, {TraceConvention::CanonicalOracle}}, "worked");
  const Json j = Json::parse(render_report(r));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema", "kind", "expression", "input", "keep", "conventions", "input_ssr",
                                         "records", "summary"});
  std::vector<std::string> record_keys;
  for (const auto& [k, v] : j.at("records")[0].items()) record_keys.push_back(k);
  CHECK(record_keys ==
        std::vector<std::string>{"ordering", "convention", "reduced", "entropy_bits", "purity", "negativity", "ssr"});
}

TEST_CASE("report round-trips through JSON", "[report][json]") {
  const FockKet k = make_ket(ModeOrder::parse("abc"), {{"100", Complex(0.5, 0.1)}, {"011", 0.3}, {"111", -0.2}}, true);
  const SweepReport r =
      sweep(k, {{"a", "c"}, {TraceConvention::CanonicalOracle, TraceConvention::PaperLiteral, TraceConvention::Naive}},
            "complex input");
  const std::string text = render_report(r);
  const SweepReport back = parse_report(text);
  CHECK(render_report(back) == text);
  CHECK(back.input == r.input);
  CHECK(back.keep == r.keep);
  REQUIRE(back.records.size() == r.records.size());
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    CHECK(back.records[i].reduced.entries() == r.records[i].reduced.entries());
    CHECK(back.records[i].diagnostics.entropy_bits == r.records[i].diagnostics.entropy_bits);
    CHECK(back.records[i].diagnostics.ssr.status == r.records[i].diagnostics.ssr.status);
  }
  CHECK_THROWS_AS(parse_report(R"({"schema":"car-fock/0"})"), ParseError);
}
