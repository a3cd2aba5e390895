// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file demo.hpp
 * @brief Worked-example reproduction and the CAR relation suite.
 *
 * Both drivers run against a Kernel: the handful of sign-carrying routines
 * (adjoint, reorder, slot-by-slot trace, ladder matrices). Kernel::standard()
 * wires in the library; Kernel::with_fault() swaps one routine for a
 * sign-dropping variant so the checks can be shown to catch it.
 */

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "carfock/car.hpp"
#include "carfock/fock.hpp"
#include "carfock/reduction.hpp"
#include "carfock/report.hpp"
#include "carfock/superselection.hpp"

namespace carfock {

enum class Fault { None, NaiveAdjoint, UnsignedReorder, UnsignedTrace, DropJordanWigner };

inline Fault parse_fault(const std::string& name) {
  if (name == "none") return Fault::None;
  if (name == "naive-adjoint") return Fault::NaiveAdjoint;
  if (name == "unsigned-reorder") return Fault::UnsignedReorder;
  if (name == "unsigned-trace") return Fault::UnsignedTrace;
  if (name == "drop-jw-sign") return Fault::DropJordanWigner;
  throw ParseError("unknown fault '" + name + "'", 1, 1);
}

struct Kernel {
  std::function<BraidedBra(const FockKet&)> adjoint;
  std::function<FockKet(const FockKet&, const ModeOrder&)> reorder;
  std::function<DensityMatrix(const DensityMatrix&, const std::set<ModeLabel>&)> literal_trace;
  std::function<CMatrix(const LadderLetter&, const ModeOrder&)> ladder_matrix;

  static Kernel standard() {
    return {
        [](const FockKet& k) { return braided_adjoint(k); },
        [](const FockKet& k, const ModeOrder& o) {
          return carfock::reorder(k, o, ExchangePhase::fermionic());
        },
        [](const DensityMatrix& dm, const std::set<ModeLabel>& keep) {
          return partial_trace(dm, keep, TraceConvention::PaperLiteral);
        },
        [](const LadderLetter& l, const ModeOrder& o) { return operator_matrix(l, o); },
    };
  }

  static Kernel with_fault(Fault fault) {
    Kernel k = standard();
    switch (fault) {
      case Fault::None: break;
      case Fault::NaiveAdjoint:
        k.adjoint = [](const FockKet& ket) { return braided_adjoint(ket, ExchangePhase::naive()); };
        break;
      case Fault::UnsignedReorder:
        k.reorder = [](const FockKet& ket, const ModeOrder& o) {
          return carfock::reorder(ket, o, ExchangePhase::naive());
        };
        break;
      case Fault::UnsignedTrace:
        k.literal_trace = [](const DensityMatrix& dm, const std::set<ModeLabel>& keep) {
          return detail::paper_literal_trace(dm, keep, false);
        };
        break;
      case Fault::DropJordanWigner:
        k.ladder_matrix = [](const LadderLetter& l, const ModeOrder& o) {
          return detail::operator_matrix_impl(l, o, false);
        };
        break;
    }
    return k;
  }
};

struct CheckResult {
  std::string id;
  std::string relation;  ///< the identity being verified, written out
  bool passed = false;
  double deviation = 0.0;
  Json values = Json::object();
};

struct DemoTranscript {
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

inline constexpr double kDemoTolerance = 1e-10;

namespace detail {

inline double ket_distance(const FockKet& x, const FockKet& y) {
  if (x.order() != y.order()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& [s, a] : x.terms()) worst = std::max(worst, std::abs(a - y.amplitude(s)));
  for (const auto& [s, a] : y.terms()) worst = std::max(worst, std::abs(a - x.amplitude(s)));
  return worst;
}

inline double bra_distance(const BraidedBra& bra, const FockKet& expected) {
  return ket_distance(FockKet(bra.order, bra.terms), expected);
}

inline CMatrix bell_pair_projector() {
  // 1/2 (|10> + |01>)(<10| + <01|) over two modes.
  CMatrix m = CMatrix::zeros(4);
  for (std::size_t r : {1u, 2u})
    for (std::size_t c : {1u, 2u}) m(r, c) = 0.5;
  return m;
}

inline CheckResult finish(CheckResult r, double deviation) {
  r.deviation = deviation;
  r.passed = deviation <= kDemoTolerance;
  return r;
}

}  // namespace detail

/// The four-term state 1/2(|100> + |010> + |101> + |011>) over abc.
inline FockKet phi_state() {
  return make_ket(ModeOrder{"a", "b", "c"},
                  {{"100", 0.5}, {"010", 0.5}, {"101", 0.5}, {"011", 0.5}});
}

/// The same state written in order acb.
inline FockKet phi_prime_state() {
  return make_ket(ModeOrder{"a", "c", "b"},
                  {{"100", 0.5}, {"001", 0.5}, {"110", 0.5}, {"011", -0.5}});
}

/// 1/2(|00> + |01> + |10> + |11>) over ab.
inline FockKet psi_state() {
  return make_ket(ModeOrder{"a", "b"}, {{"00", 0.5}, {"01", 0.5}, {"10", 0.5}, {"11", 0.5}});
}

inline DemoTranscript run_demo(const Kernel& kernel = Kernel::standard()) {
  DemoTranscript t;
  const ModeOrder ab{"a", "b"};
  const ModeOrder ba{"b", "a"};
  const std::set<ModeLabel> keep_ab{"a", "b"};

  {
    CheckResult r{"operator-order", "a+ b+ |vac> = |11>_ab, b+ a+ |vac> = -|11>_ab = |11>_ba"};
    const FockKet vac = make_ket(ab, {{"00", 1.0}});
    const FockKet plus = make_ket(ab, {{"11", 1.0}});
    const FockKet minus = make_ket(ab, {{"11", -1.0}});
    const FockKet ab_product = apply_ladder({LadderLetter::create("a"), LadderLetter::create("b")}, vac);
    const FockKet ba_product = apply_ladder({LadderLetter::create("b"), LadderLetter::create("a")}, vac);
    const FockKet ba_presented = kernel.reorder(make_ket(ba, {{"11", 1.0}}), ab);
    r.values = Json{{"a+b+|vac>", to_json(ab_product)},
                    {"b+a+|vac>", to_json(ba_product)},
                    {"|11>_ba in ab", to_json(ba_presented)}};
    t.checks.push_back(detail::finish(
        r, std::max({detail::ket_distance(ab_product, plus), detail::ket_distance(ba_product, minus),
                     detail::ket_distance(ba_presented, minus)})));
  }

  {
    CheckResult r{"braided-pairing", "-<11|_ab |11>_ab = <11|_ba |11>_ab = 1"};
    const OccupationString both = OccupationString::parse("11");
    const double same_order = -braided_pairing(both, both);
    const BraidedBra swapped{ba, {{both, 1.0}}};
    const double cross_order = pair(swapped, make_ket(ab, {{"11", 1.0}})).real();
    r.values = Json{{"-<11|_ab|11>_ab", same_order}, {"<11|_ba|11>_ab", cross_order}};
    t.checks.push_back(
        detail::finish(r, std::max(std::abs(same_order - 1.0), std::abs(cross_order - 1.0))));
  }

  {
    CheckResult r{"superselection",
                  "|Psi> = 1/2(|00>+|01>+|10>+|11>) mixes parities: violation, weights (1/2, 1/2)"};
    const SsrVerdict v = validate_ket(psi_state());
    r.values = to_json(v);
    double dev = std::max(std::abs(v.even_weight - 0.5), std::abs(v.odd_weight - 0.5));
    if (!v.violates()) dev = 1.0;
    t.checks.push_back(detail::finish(r, dev));
  }

  const FockKet phi = phi_state();
  {
    CheckResult r{"braided-adjoint",
                  "<Phi| = 1/2(<100|+<010|-<101|-<011|), <11|_ab = -(a b)|vac>, <Phi|Phi> = 1"};
    const BraidedBra bra = kernel.adjoint(phi);
    const FockKet expected = make_ket(phi.order(),
                                      {{"100", 0.5}, {"010", 0.5}, {"101", -0.5}, {"011", -0.5}});
    const FockKet pair_ket = make_ket(ab, {{"11", 1.0}});
    const BraidedBra pair_bra = kernel.adjoint(pair_ket);
    const double norm_phi = pair(bra, phi).real();
    const double norm_pair = pair(pair_bra, pair_ket).real();
    r.values = Json{{"bra", to_json(FockKet(bra.order, bra.terms))},
                    {"<Phi|Phi>", norm_phi},
                    {"<11|11>", norm_pair}};
    t.checks.push_back(detail::finish(
        r, std::max({detail::bra_distance(bra, expected),
                     detail::bra_distance(pair_bra, make_ket(ab, {{"11", -1.0}})),
                     std::abs(norm_phi - 1.0), std::abs(norm_pair - 1.0)})));
  }

  const CMatrix bell = detail::bell_pair_projector();
  {
    CheckResult r{"trace-over-c", "Tr_c |Phi><Phi| = 1/2(|10>+|01>)_ab(<10|+<01|)_ab"};
    const DensityMatrix reduced = kernel.literal_trace(outer_product(phi), keep_ab);
    const DensityMatrix oracle = partial_trace(density_matrix(phi), keep_ab,
                                               TraceConvention::CanonicalOracle);
    r.values = Json{{"literal", to_json(reduced)}, {"oracle", to_json(oracle)}};
    double dev = 1.0;
    if (reduced.order() == ab)
      dev = std::max(max_abs_diff(reduced.entries(), bell), max_abs_diff(oracle.entries(), bell));
    t.checks.push_back(detail::finish(r, dev));
  }

  {
    CheckResult r{"reordered-trace",
                  "|Phi'>_acb = 1/2(|100>+|001>+|110>-|011>), Tr_c |Phi'><Phi'| = 1/2(|10>+|01>)(<10|+<01|)"};
    const FockKet phi_prime = kernel.reorder(phi, ModeOrder{"a", "c", "b"});
    const DensityMatrix reduced = kernel.literal_trace(outer_product(phi_prime), keep_ab);
    const DensityMatrix oracle = partial_trace(outer_product(phi_prime), keep_ab,
                                               TraceConvention::CanonicalOracle);
    r.values = Json{{"Phi'", to_json(phi_prime)},
                    {"literal", to_json(reduced)},
                    {"oracle", to_json(oracle)}};
    double dev = detail::ket_distance(phi_prime, phi_prime_state());
    if (reduced.order() == ab)
      dev = std::max({dev, max_abs_diff(reduced.entries(), bell), max_abs_diff(oracle.entries(), bell)});
    else
      dev = 1.0;
    t.checks.push_back(detail::finish(r, dev));
  }

  {
    CheckResult r{"naive-ambiguity",
                  "qubit-style trace: abc gives (negativity, purity) = (1/2, 1), acb gives (0, 1/2)"};
    const std::set<ModeLabel> a{"a"};
    const std::set<ModeLabel> b{"b"};
    const DensityMatrix in_abc = partial_trace(outer_product(phi), keep_ab, TraceConvention::Naive);
    const DensityMatrix in_acb = partial_trace(outer_product(kernel.reorder(phi, ModeOrder{"a", "c", "b"})),
                                               keep_ab, TraceConvention::Naive);
    const double neg_abc = negativity(in_abc, a, b);
    const double pur_abc = purity(in_abc);
    const double neg_acb = negativity(in_acb, a, b);
    const double pur_acb = purity(in_acb);
    const double spread = max_abs_diff(in_abc.entries(), in_acb.entries());
    r.values = Json{{"abc", {{"negativity", neg_abc}, {"purity", pur_abc}}},
                    {"acb", {{"negativity", neg_acb}, {"purity", pur_acb}}},
                    {"max_entry_difference", spread}};
    double dev = std::max({std::abs(neg_abc - 0.5), std::abs(pur_abc - 1.0), std::abs(neg_acb),
                           std::abs(pur_acb - 0.5)});
    if (spread <= 0.1) dev = std::max(dev, 1.0);
    t.checks.push_back(detail::finish(r, dev));
  }
  return t;
}

inline Json to_json(const DemoTranscript& t) {
  Json checks = Json::array();
  for (const auto& c : t.checks)
    checks.push_back(Json{{"id", c.id},
                          {"relation", c.relation},
                          {"passed", c.passed},
                          {"deviation", c.deviation},
                          {"values", c.values}});
  const CheckResult* failed = t.first_failure();
  return Json{{"schema", kSchema},
              {"kind", "demo"},
              {"passed", t.passed()},
              {"first_failure", failed ? Json(failed->id) : Json(nullptr)},
              {"checks", std::move(checks)}};
}

inline DemoTranscript demo_transcript_from_json(const Json& j) {
  DemoTranscript t;
  for (const auto& c : j.at("checks"))
    t.checks.push_back({c.at("id").get<std::string>(), c.at("relation").get<std::string>(),
                        c.at("passed").get<bool>(), c.at("deviation").get<double>(),
                        c.at("values")});
  return t;
}

/// Throws DemoFailure naming the first failed check.
inline void require_passed(const DemoTranscript& t) {
  if (const CheckResult* failed = t.first_failure())
    throw DemoFailure(failed->id, failed->relation + " (deviation " +
                                      std::to_string(failed->deviation) + ")");
}

inline constexpr std::size_t kMaxCarCheckModes = 6;

struct CarCheckReport {
  std::size_t modes = 0;
  std::size_t relations_checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/**
 * {c_i, c_j^dag} = delta_ij I and {c_i, c_j} = {c_i^dag, c_j^dag} = 0 for all
 * pairs over the first N letters, compared exactly.
 */
inline CarCheckReport check_car(std::size_t modes, const Kernel& kernel = Kernel::standard()) {
  if (modes == 0 || modes > kMaxCarCheckModes)
    throw SizeError("check-car supports 1 to 6 modes");
  const ModeOrder order = ModeOrder::alphabet(modes);
  const std::size_t dim = std::size_t{1} << modes;
  const CMatrix identity = CMatrix::identity(dim);
  const CMatrix zero = CMatrix::zeros(dim);

  std::vector<CMatrix> annihilators;
  std::vector<CMatrix> creators;
  for (const auto& label : order) {
    annihilators.push_back(kernel.ladder_matrix(LadderLetter::annihilate(label), order));
    creators.push_back(kernel.ladder_matrix(LadderLetter::create(label), order));
  }
  auto anti = [](const CMatrix& x, const CMatrix& y) { return x * y + y * x; };

  CarCheckReport report{modes, 0, {}};
  for (std::size_t i = 0; i < modes; ++i)
    for (std::size_t j = 0; j < modes; ++j) {
      const std::string ai = order[i].name();
      const std::string aj = order[j].name();
      const auto record = [&](const std::string& name, const CMatrix& got, const CMatrix& want) {
        ++report.relations_checked;
        if (!(got == want)) report.failures.push_back(name);
      };
      record("{" + ai + ", " + aj + "+} = " + (i == j ? "1" : "0"),
             anti(annihilators[i], creators[j]), i == j ? identity : zero);
      record("{" + ai + ", " + aj + "} = 0", anti(annihilators[i], annihilators[j]), zero);
      record("{" + ai + "+, " + aj + "+} = 0", anti(creators[i], creators[j]), zero);
    }
  return report;
}

inline Json to_json(const CarCheckReport& r) {
  return Json{{"schema", kSchema},
              {"kind", "check-car"},
              {"modes", r.modes},
              {"relations_checked", r.relations_checked},
              {"passed", r.passed()},
              {"failures", r.failures}};
}

}  // namespace carfock
