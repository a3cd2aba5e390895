// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file report.hpp
 * @brief Ordering sweeps and their "car-fock/1" JSON form.
 *
 * A sweep re-presents one state in every ordering of its modes, reduces it
 * under each requested trace convention and compares the reduced states
 * after bringing them to the canonical order of the kept modes.
 */

#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "carfock/car.hpp"
#include "carfock/fock.hpp"
#include "carfock/reduction.hpp"
#include "carfock/state_expression.hpp"
#include "carfock/superselection.hpp"

namespace carfock {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "car-fock/1";
inline constexpr std::size_t kMaxSweepModes = 8;
/// Reduced matrices closer than this (max entry) count as the same result.
inline constexpr double kInvarianceTolerance = 1e-12;

inline TraceConvention parse_convention(const std::string& name) {
  if (name == "canonical" || name == "fermionic" || name == "oracle")
    return TraceConvention::CanonicalOracle;
  if (name == "literal" || name == "paper-literal") return TraceConvention::PaperLiteral;
  if (name == "naive") return TraceConvention::Naive;
  throw ParseError("unknown trace convention '" + name + "'", 1, 1);
}

inline bool is_fermionic(TraceConvention c) { return c != TraceConvention::Naive; }

struct Diagnostics {
  double entropy_bits = 0.0;
  double purity = 0.0;
  std::optional<double> negativity;  ///< first kept mode vs the rest; empty for one mode
  SsrVerdict ssr{SsrStatus::Pure, ParitySector::Even, 1.0, 0.0};
};

inline Diagnostics diagnose(const DensityMatrix& dm) {
  Diagnostics d;
  d.entropy_bits = von_neumann_entropy(dm);
  d.purity = purity(dm);
  const DensityMatrix c = canonicalize(dm);
  if (c.modes() >= 2) {
    const std::set<ModeLabel> first{c.order()[0]};
    const std::set<ModeLabel> rest(c.order().begin() + 1, c.order().end());
    d.negativity = negativity(c, first, rest);
  }
  d.ssr = validate_dm(dm);
  return d;
}

/**
 * Reduces `ket` presented in `ordering` under one convention and returns the
 * result in the canonical order of the kept modes.
 *
 * The state itself is always re-presented with fermionic signs; the Naive arm
 * differs only in building and tracing the matrix as if the slots were qubits,
 * and in relabeling the result without signs.
 */
inline DensityMatrix reduce_in_ordering(const FockKet& ket, const ModeOrder& ordering,
                                        const std::set<ModeLabel>& keep,
                                        TraceConvention convention) {
  const DensityMatrix presented = outer_product(reorder(ket, ordering, ExchangePhase::fermionic()));
  DensityMatrix reduced = partial_trace(presented, keep, convention);
  const ModeOrder target = reduced.order().canonical();
  if (convention == TraceConvention::Naive) return reorder(reduced, target, ExchangePhase::naive());
  return canonicalize(reduced);
}

struct SweepRecord {
  ModeOrder ordering;
  TraceConvention convention;
  DensityMatrix reduced;
  Diagnostics diagnostics;
};

struct ConventionSummary {
  TraceConvention convention;
  bool invariant_under_reordering;
  double max_pairwise_distance;
  std::size_t distinct_results;
};

struct SweepReport {
  std::string expression;
  FockKet input;
  std::set<ModeLabel> keep;
  std::vector<TraceConvention> conventions;
  SsrVerdict input_ssr;
  std::vector<SweepRecord> records;
  std::vector<ConventionSummary> summary;

  /// False if any fermionic convention saw the reduced state change.
  bool fermionic_invariant() const {
    return std::all_of(summary.begin(), summary.end(), [](const ConventionSummary& s) {
      return !is_fermionic(s.convention) || s.invariant_under_reordering;
    });
  }
};

/// Every ordering of the modes, lexicographic, starting from the canonical one.
inline std::vector<ModeOrder> all_orderings(const ModeOrder& order) {
  std::vector<ModeLabel> labels = order.canonical().labels();
  std::vector<ModeOrder> out;
  do {
    out.emplace_back(labels);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

struct SweepOptions {
  std::set<ModeLabel> keep;
  std::vector<TraceConvention> conventions;
  bool enforce_ssr = false;
};

/// Throws SizeError above 8 modes and SsrError when enforce_ssr rejects the input.
inline SweepReport sweep(const FockKet& ket, const SweepOptions& options,
                         std::string expression = {}) {
  if (ket.order().size() > kMaxSweepModes)
    throw SizeError("ordering sweeps are capped at 8 modes");
  const SsrVerdict verdict = validate_ket(ket);
  if (options.enforce_ssr && verdict.violates())
    throw SsrError("input state mixes even and odd fermion parity");

  SweepReport report{std::move(expression), ket, options.keep, options.conventions, verdict, {}, {}};
  const auto orderings = all_orderings(ket.order());

  for (TraceConvention convention : options.conventions) {
    std::vector<DensityMatrix> distinct;
    std::vector<Diagnostics> diagnostics;
    std::vector<std::size_t> which;
    for (const auto& ordering : orderings) {
      DensityMatrix reduced = reduce_in_ordering(ket, ordering, options.keep, convention);
      std::size_t index = 0;
      while (index < distinct.size() &&
             max_abs_diff(distinct[index].entries(), reduced.entries()) > kInvarianceTolerance)
        ++index;
      if (index == distinct.size()) {
        diagnostics.push_back(diagnose(reduced));
        distinct.push_back(std::move(reduced));
      }
      which.push_back(index);
    }

    double widest = 0.0;
    for (std::size_t i = 0; i < distinct.size(); ++i)
      for (std::size_t j = i + 1; j < distinct.size(); ++j)
        widest = std::max(widest, max_abs_diff(distinct[i].entries(), distinct[j].entries()));

    for (std::size_t k = 0; k < orderings.size(); ++k)
      report.records.push_back(
          {orderings[k], convention, distinct[which[k]], diagnostics[which[k]]});
    report.summary.push_back({convention, distinct.size() == 1, widest, distinct.size()});
  }
  return report;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

/// {"order": "ab", "matrix": {"10": {"01": [re, im], ...}, ...}}
inline Json to_json(const DensityMatrix& dm) {
  Json matrix = Json::object();
  const std::size_t n = dm.modes();
  for (std::uint64_t r = 0; r < dm.dimension(); ++r) {
    Json row = Json::object();
    for (std::uint64_t c = 0; c < dm.dimension(); ++c)
      row[OccupationString(c, n).to_string()] = to_json(dm.entries()(r, c));
    matrix[OccupationString(r, n).to_string()] = std::move(row);
  }
  return Json{{"order", dm.order().to_string()}, {"matrix", std::move(matrix)}};
}

inline DensityMatrix density_matrix_from_json(const Json& j) {
  ModeOrder order = ModeOrder::parse(j.at("order").get<std::string>());
  CMatrix m = CMatrix::zeros(std::size_t{1} << order.size());
  for (const auto& [row_key, row] : j.at("matrix").items())
    for (const auto& [col_key, value] : row.items())
      m(OccupationString::parse(row_key).bits(), OccupationString::parse(col_key).bits()) =
          complex_from_json(value);
  return DensityMatrix(std::move(order), std::move(m));
}

inline Json to_json(const FockKet& ket) {
  Json terms = Json::object();
  for (const auto& [s, amp] : ket.terms()) terms[s.to_string()] = to_json(amp);
  return Json{{"order", ket.order().to_string()}, {"terms", std::move(terms)}};
}

inline FockKet ket_from_json(const Json& j) {
  ModeOrder order = ModeOrder::parse(j.at("order").get<std::string>());
  FockKet::TermMap terms;
  for (const auto& [key, value] : j.at("terms").items())
    terms.emplace(OccupationString::parse(key), complex_from_json(value));
  return FockKet(std::move(order), std::move(terms));
}

inline Json to_json(const SsrVerdict& v) {
  return Json{{"status", to_string(v.status)},
              {"sector", v.sector ? Json(to_string(*v.sector)) : Json(nullptr)},
              {"even_weight", v.even_weight},
              {"odd_weight", v.odd_weight}};
}

inline SsrVerdict ssr_from_json(const Json& j) {
  const auto status = j.at("status").get<std::string>();
  SsrVerdict v{SsrStatus::Violation, std::nullopt, j.at("even_weight").get<double>(),
               j.at("odd_weight").get<double>()};
  if (status == "pure") v.status = SsrStatus::Pure;
  if (status == "mixture") v.status = SsrStatus::Mixture;
  if (!j.at("sector").is_null())
    v.sector = j.at("sector").get<std::string>() == "even" ? ParitySector::Even : ParitySector::Odd;
  return v;
}

inline Json to_json(const Diagnostics& d) {
  return Json{{"entropy_bits", d.entropy_bits},
              {"purity", d.purity},
              {"negativity", d.negativity ? Json(*d.negativity) : Json(nullptr)},
              {"ssr", to_json(d.ssr)}};
}

inline Diagnostics diagnostics_from_json(const Json& j) {
  Diagnostics d;
  d.entropy_bits = j.at("entropy_bits").get<double>();
  d.purity = j.at("purity").get<double>();
  if (!j.at("negativity").is_null()) d.negativity = j.at("negativity").get<double>();
  d.ssr = ssr_from_json(j.at("ssr"));
  return d;
}

inline std::string render_report(const SweepReport& report, int indent = 2) {
  Json keep = Json::array();
  for (const auto& label : report.keep) keep.push_back(label.name());
  Json conventions = Json::array();
  for (auto c : report.conventions) conventions.push_back(to_string(c));

  Json records = Json::array();
  for (const auto& r : report.records) {
    Json rec{{"ordering", r.ordering.to_string()},
             {"convention", to_string(r.convention)},
             {"reduced", to_json(r.reduced)}};
    const Json diag = to_json(r.diagnostics);
    for (const auto& [k, v] : diag.items()) rec[k] = v;
    records.push_back(std::move(rec));
  }

  Json summary = Json::object();
  for (const auto& s : report.summary)
    summary[to_string(s.convention)] = Json{{"invariant_under_reordering", s.invariant_under_reordering},
                                            {"max_pairwise_distance", s.max_pairwise_distance},
                                            {"distinct_results", s.distinct_results}};

  const Json out{{"schema", kSchema},
                 {"kind", "sweep"},
                 {"expression", report.expression},
                 {"input", to_json(report.input)},
                 {"keep", std::move(keep)},
                 {"conventions", std::move(conventions)},
                 {"input_ssr", to_json(report.input_ssr)},
                 {"records", std::move(records)},
                 {"summary", std::move(summary)}};
  return out.dump(indent);
}

inline SweepReport parse_report(const std::string& text) {
  const Json j = Json::parse(text);
  if (j.at("schema").get<std::string>() != kSchema)
    throw ParseError("unsupported report schema '" + j.at("schema").get<std::string>() + "'", 1, 1);

  SweepReport report{j.at("expression").get<std::string>(), ket_from_json(j.at("input")), {}, {},
                     ssr_from_json(j.at("input_ssr")), {}, {}};
  for (const auto& label : j.at("keep")) report.keep.emplace(label.get<std::string>());
  for (const auto& c : j.at("conventions")) report.conventions.push_back(parse_convention(c));
  for (const auto& r : j.at("records"))
    report.records.push_back({ModeOrder::parse(r.at("ordering").get<std::string>()),
                              parse_convention(r.at("convention").get<std::string>()),
                              density_matrix_from_json(r.at("reduced")), diagnostics_from_json(r)});
  for (const auto& [name, s] : j.at("summary").items())
    report.summary.push_back({parse_convention(name), s.at("invariant_under_reordering").get<bool>(),
                              s.at("max_pairwise_distance").get<double>(),
                              s.at("distinct_results").get<std::size_t>()});
  return report;
}

}  // namespace carfock
