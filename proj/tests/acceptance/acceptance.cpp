// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "test_support.hpp"

using namespace carfock;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

const auto abc = ModeOrder::parse("abc");

FockKet phi() { return make_ket(abc, {{"100", 0.5}, {"010", 0.5}, {"101", 0.5}, {"011", 0.5}}); }
FockKet phi_prime() {
  return make_ket(ModeOrder::parse("acb"), {{"100", 0.5}, {"001", 0.5}, {"110", 0.5}, {"011", -0.5}});
}

CMatrix bell_projector() {
  CMatrix m = CMatrix::zeros(4);
  m(0b01, 0b01) = m(0b01, 0b10) = m(0b10, 0b01) = m(0b10, 0b10) = 0.5;
  return m;
}

CMatrix to_cmatrix(const oracle::Dense& d) {
  CMatrix m = CMatrix::zeros(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) m(i, j) = d[i][j];
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const DensityMatrix reduced = partial_trace(density_matrix(phi()), {"a", "b"}, TraceConvention::CanonicalOracle);
  const double dev = max_abs_diff(reduced.entries(), bell_projector());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {dev <= 1e-12 && secs < 1.0, "max deviation " + fmt(dev) + ", " + fmt(secs) + " s"};
}

Outcome criterion2() {
  const DensityMatrix rho = outer_product(phi_prime());
  const double oracle_dev =
      max_abs_diff(partial_trace(rho, {"a", "b"}, TraceConvention::CanonicalOracle).entries(), bell_projector());
  const double literal_dev = max_abs_diff(
      canonicalize(partial_trace(rho, {"a", "b"}, TraceConvention::PaperLiteral)).entries(), bell_projector());
  return {oracle_dev <= 1e-12 && literal_dev <= 1e-12,
          "canonical " + fmt(oracle_dev) + ", literal " + fmt(literal_dev)};
}

/// Negativity from characteristic-polynomial roots of the qubit partial transpose on slot 1.
double oracle_negativity(const CMatrix& rho) {
  CMatrix pt = CMatrix::zeros(4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      const std::size_t swap = (r ^ c) & 1u;
      pt(r ^ swap, c ^ swap) = rho(r, c);
    }
  double total = 0.0;
  for (double root : oracle::real_roots(oracle::characteristic_polynomial(pt)))
    if (root < 0.0) total -= root;
  return total;
}

Outcome criterion3() {
  const SweepReport report = sweep(phi(), {{"a", "b"}, {TraceConvention::Naive}});
  const std::vector<std::tuple<std::string, double, double>> expected{{"abc", 0.5, 1.0}, {"acb", 0.0, 0.5}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, want_neg, want_purity] : expected) {
    const ModeOrder ordering = ModeOrder::parse(name);
    // Oracle: qubit trace of the signed presentation, read as a plain bit vector.
    const FockKet presented = reorder(phi(), ordering, ExchangePhase::fermionic());
    oracle::Vec qubits(8);
    for (const auto& [s, amp] : presented.terms()) qubits[s.bits()] = amp;
    const CMatrix brute = to_cmatrix(oracle::naive_reduced(qubits, 3, {ordering.require_slot("c")}));
    double brute_purity = 0.0;
    for (const auto& z : brute.data()) brute_purity += std::norm(z);
    const double brute_neg = oracle_negativity(brute);

    const SweepRecord* rec = nullptr;
    for (const auto& r : report.records)
      if (r.ordering == ordering) rec = &r;
    if (rec == nullptr || !rec->diagnostics.negativity) return {false, "missing record for " + name};
    const double neg = *rec->diagnostics.negativity;
    const double pur = rec->diagnostics.purity;
    ok = ok && std::abs(neg - brute_neg) <= 1e-10 && std::abs(pur - brute_purity) <= 1e-10 &&
         std::abs(neg - want_neg) <= 1e-10 && std::abs(pur - want_purity) <= 1e-10;
    detail += name + " (negativity, purity) = (" + fmt(neg) + ", " + fmt(pur) + ") ";
  }
  return {ok, detail + "vs oracle within 1e-10"};
}

Outcome criterion4() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = 6;
  const auto order = ModeOrder::alphabet(n);
  const std::size_t dim = std::size_t{1} << n;
  std::size_t checked = 0;
  std::size_t failures = 0;
  auto integral = [](const CMatrix& m) {
    for (const auto& z : m.data())
      if (z.imag() != 0.0 || z.real() != std::round(z.real())) return false;
    return true;
  };
  for (const auto& x : order)
    for (const auto& y : order) {
      const CMatrix cross = anticommutator(LadderLetter::annihilate(x), LadderLetter::create(y), order);
      const CMatrix aa = anticommutator(LadderLetter::annihilate(x), LadderLetter::annihilate(y), order);
      const CMatrix cc = anticommutator(LadderLetter::create(x), LadderLetter::create(y), order);
      failures += !(cross == (x == y ? CMatrix::identity(dim) : CMatrix::zeros(dim))) || !integral(cross);
      failures += !(aa == CMatrix::zeros(dim));
      failures += !(cc == CMatrix::zeros(dim));
      checked += 3;
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && secs < 10.0,
          std::to_string(checked) + " relations on 64x64, " + std::to_string(failures) + " failures, " + fmt(secs) + " s"};
}

Outcome criterion5() {
  const BraidedBra bra = braided_adjoint(phi());
  const std::vector<std::pair<std::string, double>> want{{"100", 0.5}, {"010", 0.5}, {"101", -0.5}, {"011", -0.5}};
  bool exact = bra.terms.size() == want.size();
  for (const auto& [s, c] : want) exact = exact && bra.coefficient(OccupationString::parse(s)) == Complex(c);
  const double norm = braided_norm(phi());
  return {exact && std::abs(norm - 1.0) <= 1e-12, std::string("bra coefficients ") + (exact ? "exact" : "WRONG") +
                                                      ", braided norm " + fmt(norm)};
}

Outcome criterion6() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(6);
  std::size_t comparisons = 0;
  std::size_t counterexamples = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i) % 4;
    const FockKet k = testing_support::random_ket(rng, n, i % 2 == 0);
    const auto orderings = all_orderings(k.order());
    for (const auto& keep : testing_support::proper_subsets(k.order())) {
      const CMatrix reference = partial_trace(density_matrix(k), keep, TraceConvention::CanonicalOracle).entries();
      for (const auto& sigma : orderings) {
        const DensityMatrix rho = outer_product(reorder(k, sigma, ExchangePhase::fermionic()));
        for (auto c : {TraceConvention::CanonicalOracle, TraceConvention::PaperLiteral}) {
          const double d = max_abs_diff(canonicalize(partial_trace(rho, keep, c)).entries(), reference);
          worst = std::max(worst, d);
          counterexamples += d > 1e-12;
          ++comparisons;
        }
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {counterexamples == 0 && secs < 60.0,
          std::to_string(comparisons) + " comparisons, " + std::to_string(counterexamples) +
              " counterexamples, worst " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Outcome criterion7() {
  const auto psi = validate_ket(make_ket(ModeOrder::parse("ab"), {{"00", 0.5}, {"01", 0.5}, {"10", 0.5}, {"11", 0.5}}));
  const auto ph = validate_ket(phi());
  const auto bell = validate_ket(make_ket(ModeOrder::parse("ab"), {{"00", 1.0}, {"11", 1.0}}, true));
  auto halves = [](const SsrVerdict& v) {
    return v.status == SsrStatus::Violation && std::abs(v.even_weight - 0.5) <= 1e-12 &&
           std::abs(v.odd_weight - 0.5) <= 1e-12;
  };
  const bool ok = halves(psi) && halves(ph) && bell.status == SsrStatus::Pure && bell.sector == ParitySector::Even;
  return {ok, "Psi " + to_string(psi.status) + ", Phi " + to_string(ph.status) + ", Bell " + to_string(bell.status) +
                  (bell.sector ? " (" + to_string(*bell.sector) + ")" : "")};
}

Outcome criterion8() {
  std::mt19937_64 rng(8);
  double worst = 0.0;
  for (std::size_t n : {2u, 4u})
    for (int i = 0; i < 100; ++i) {
      const CMatrix m = testing_support::random_hermitian(rng, n);
      const auto roots = oracle::real_roots(oracle::characteristic_polynomial(m));
      const auto eig = eig_hermitian(m).eigenvalues;
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(roots[k] - eig[k]));
    }
  const double s = von_neumann_entropy(DensityMatrix(ModeOrder::parse("a"), CMatrix::identity(2) * 0.5));
  return {worst <= 1e-9 && std::abs(s - 1.0) <= 1e-12,
          "worst eigenvalue deviation " + fmt(worst) + ", S(I/2) = " + fmt(s) + " bit"};
}

std::pair<int, std::string> run_binary(const std::string& args) {
  const std::string cmd = std::string(CAR_FOCK_BINARY) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

Outcome criterion9() {
  const auto [ok_status, ok_out] = run_binary("demo-paper");
  bool ok = ok_status == 0;
  std::string detail = "correct build exit " + std::to_string(ok_status);
  const std::vector<std::pair<std::string, std::string>> faults{
      {"naive-adjoint", "braided-adjoint"}, {"unsigned-reorder", "operator-order"}, {"unsigned-trace", "trace-over-c"}};
  for (const auto& [fault, id] : faults) {
    const auto [status, out] = run_binary("demo-paper --inject-fault " + fault);
    const bool named = out.find("DemoFailure at " + id + ":") != std::string::npos;
    ok = ok && status == 4 && named;
    detail += "; " + fault + " exit " + std::to_string(status) + (named ? " at " + id : " (check not named)");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"fermionic trace over c reproduces the Bell projector", criterion1},
      {"reordered state gives the same reduced matrix (canonical and literal)", criterion2},
      {"naive trace ambiguity matches the brute-force oracle", criterion3},
      {"CAR relations exact over 6 modes", criterion4},
      {"braided adjoint signs and norm", criterion5},
      {"randomized ordering invariance", criterion6},
      {"superselection verdicts", criterion7},
      {"Jacobi eigensolver versus characteristic polynomial", criterion8},
      {"demo-paper exit codes under injected faults", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, {}};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- "
              << o.detail << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
