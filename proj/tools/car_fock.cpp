// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

// car-fock: command-line driver for the fermionic Fock-space library.
//
// Exit codes: 0 success, 1 other error, 2 parse/width error,
// 3 superselection abort, 4 demo or check failure.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "carfock/carfock.hpp"

namespace {

using namespace carfock;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitSsr = 3;
constexpr int kExitFailure = 4;

struct GlobalOptions {
  std::string order;
  std::string keep;
  std::string conventions = "canonical,literal,naive";
  bool enforce_ssr = false;
  bool raw = false;
  bool json = false;
  std::string state;
  std::string file;
  std::string fault = "none";
  std::size_t modes = 6;
};

std::string read_state_text(const GlobalOptions& g) {
  if (!g.state.empty() && g.state != "-") return g.state;
  if (!g.file.empty()) {
    std::ifstream in(g.file);
    if (!in) throw std::runtime_error("cannot open " + g.file);
    return {std::istreambuf_iterator<char>(in), {}};
  }
  return {std::istreambuf_iterator<char>(std::cin), {}};
}

ParsedState load_state(const GlobalOptions& g) {
  ParseOptions options;
  if (!g.order.empty()) options.order = ModeOrder::parse(g.order);
  options.raw = g.raw;
  ParsedState parsed = parse_state(read_state_text(g), options);
  for (const auto& d : parsed.diagnostics) std::cerr << "note: " << d << "\n";
  return parsed;
}

std::set<ModeLabel> parse_keep(const std::string& text) {
  std::set<ModeLabel> keep;
  if (text.empty()) return keep;
  for (const auto& label : ModeOrder::parse(text)) keep.insert(label);
  return keep;
}

std::vector<TraceConvention> parse_conventions(const std::string& text) {
  std::vector<TraceConvention> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(parse_convention(item));
  return out;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << (std::abs(x) < 1e-15 ? 0.0 : x);
  return s.str();
}

void print_matrix(const DensityMatrix& dm, std::ostream& out) {
  const std::size_t n = dm.modes();
  out << "  order " << dm.order().to_string() << "\n";
  for (std::uint64_t r = 0; r < dm.dimension(); ++r) {
    out << "  " << OccupationString(r, n).to_string() << " |";
    for (std::uint64_t c = 0; c < dm.dimension(); ++c) {
      const Complex z = dm.entries()(r, c);
      out << " " << std::setw(8) << fmt(z.real());
      if (std::abs(z.imag()) > 1e-15) out << (z.imag() < 0 ? "-" : "+") << fmt(std::abs(z.imag())) << "i";
    }
    out << "\n";
  }
}

void print_verdict(const SsrVerdict& v, std::ostream& out) {
  out << "superselection: " << to_string(v.status);
  if (v.sector) out << " (" << to_string(*v.sector) << ")";
  out << ", even weight " << fmt(v.even_weight) << ", odd weight " << fmt(v.odd_weight) << "\n";
}

int abort_on_ssr(const SsrVerdict& v, const GlobalOptions& g) {
  if (g.json) {
    std::cout << Json{{"schema", kSchema}, {"kind", "ssr-abort"}, {"verdict", to_json(v)}}.dump(2)
              << "\n";
  } else {
    std::cout << "aborted: input violates parity superselection\n";
    print_verdict(v, std::cout);
  }
  return kExitSsr;
}

int run_check_car(const GlobalOptions& g) {
  const CarCheckReport report = check_car(g.modes, Kernel::with_fault(parse_fault(g.fault)));
  if (g.json) {
    std::cout << to_json(report).dump(2) << "\n";
  } else {
    std::cout << "CAR relations over " << report.modes << " modes: " << report.relations_checked
              << " checked, " << report.failures.size() << " failed\n";
    for (const auto& f : report.failures) std::cout << "  FAIL " << f << "\n";
  }
  return report.passed() ? kExitOk : kExitFailure;
}

int run_demo_paper(const GlobalOptions& g) {
  const DemoTranscript t = run_demo(Kernel::with_fault(parse_fault(g.fault)));
  if (g.json) {
    std::cout << to_json(t).dump(2) << "\n";
  } else {
    for (const auto& c : t.checks)
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.id << ": " << c.relation << "\n";
  }
  try {
    require_passed(t);
  } catch (const DemoFailure& e) {
    std::cerr << "DemoFailure at " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int run_validate_ssr(const GlobalOptions& g) {
  const ParsedState s = load_state(g);
  const SsrVerdict v = validate_ket(s.ket);
  if (g.enforce_ssr && v.violates()) return abort_on_ssr(v, g);
  if (g.json) {
    std::cout << Json{{"schema", kSchema},
                      {"kind", "validate-ssr"},
                      {"expression", render(s.expression)},
                      {"verdict", to_json(v)}}
                     .dump(2)
              << "\n";
  } else {
    print_verdict(v, std::cout);
  }
  return kExitOk;
}

int run_trace(const GlobalOptions& g) {
  const ParsedState s = load_state(g);
  if (g.enforce_ssr) {
    if (const SsrVerdict v = validate_ket(s.ket); v.violates()) return abort_on_ssr(v, g);
  }
  const std::set<ModeLabel> keep = parse_keep(g.keep);
  Json results = Json::array();
  for (TraceConvention c : parse_conventions(g.conventions)) {
    const DensityMatrix reduced = partial_trace(outer_product(s.ket), keep, c);
    if (g.json) {
      results.push_back(Json{{"convention", to_string(c)}, {"reduced", to_json(reduced)}});
    } else {
      std::cout << to_string(c) << ":\n";
      print_matrix(reduced, std::cout);
    }
  }
  if (g.json)
    std::cout << Json{{"schema", kSchema},
                      {"kind", "trace"},
                      {"expression", render(s.expression)},
                      {"results", std::move(results)}}
                     .dump(2)
              << "\n";
  return kExitOk;
}

int run_entropy(const GlobalOptions& g) {
  const ParsedState s = load_state(g);
  if (g.enforce_ssr) {
    if (const SsrVerdict v = validate_ket(s.ket); v.violates()) return abort_on_ssr(v, g);
  }
  DensityMatrix dm = density_matrix(s.ket);
  const std::set<ModeLabel> keep = parse_keep(g.keep);
  if (!keep.empty()) dm = partial_trace(dm, keep, TraceConvention::CanonicalOracle);
  const Diagnostics d = diagnose(dm);
  if (g.json) {
    Json out{{"schema", kSchema}, {"kind", "entropy"}, {"expression", render(s.expression)},
             {"reduced", to_json(dm)}};
    const Json diag = to_json(d);
    for (const auto& [k, v] : diag.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "entropy " << fmt(d.entropy_bits) << " bits, purity " << fmt(d.purity);
    if (d.negativity) std::cout << ", negativity " << fmt(*d.negativity);
    std::cout << "\n";
    print_verdict(d.ssr, std::cout);
  }
  return kExitOk;
}

int run_sweep(const GlobalOptions& g) {
  const ParsedState s = load_state(g);
  SweepOptions options{parse_keep(g.keep), parse_conventions(g.conventions), g.enforce_ssr};
  if (options.enforce_ssr) {
    if (const SsrVerdict v = validate_ket(s.ket); v.violates()) return abort_on_ssr(v, g);
  }
  const SweepReport report = sweep(s.ket, options, render(s.expression));
  if (g.json) {
    std::cout << render_report(report) << "\n";
  } else {
    print_verdict(report.input_ssr, std::cout);
    for (const auto& r : report.records) {
      std::cout << std::left << std::setw(10) << r.ordering.to_string() << std::setw(10)
                << to_string(r.convention) << " entropy " << fmt(r.diagnostics.entropy_bits)
                << "  purity " << fmt(r.diagnostics.purity) << "  negativity "
                << (r.diagnostics.negativity ? fmt(*r.diagnostics.negativity) : "-") << "\n";
    }
    for (const auto& sum : report.summary)
      std::cout << to_string(sum.convention) << ": invariant_under_reordering="
                << (sum.invariant_under_reordering ? "true" : "false")
                << " max_pairwise_distance=" << fmt(sum.max_pairwise_distance) << "\n";
  }
  if (!report.fermionic_invariant()) {
    std::cerr << "fermionic reduced state changed under reordering\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermionic Fock-space algebra: CAR checks, braided reordering, partial traces"};
  app.require_subcommand(1);
  GlobalOptions g;

  app.add_option("--order", g.order, "Default mode order for state expressions (e.g. abc)");
  app.add_option("--keep", g.keep, "Modes kept by partial traces (e.g. ab)");
  app.add_option("--conventions", g.conventions,
                 "Comma list of trace conventions: canonical, literal, naive");
  app.add_flag("--enforce-ssr", g.enforce_ssr, "Abort on parity-superselection violations");
  app.add_flag("--raw", g.raw, "Do not normalize parsed states");
  app.add_flag("--json", g.json, "Emit car-fock/1 JSON");

  auto add_state_input = [&](CLI::App* sub) {
    sub->add_option("state", g.state, "State expression ('-' or omitted reads stdin)");
    sub->add_option("--file", g.file, "Read the state expression from a file");
  };
  auto add_fault = [&](CLI::App* sub) {
    // Test fixture: swaps one sign-carrying routine for a broken variant.
    sub->add_option("--inject-fault", g.fault)->group("");
  };

  auto* check = app.add_subcommand("check-car", "Verify the anticommutation relations");
  check->add_option("--modes", g.modes, "Number of modes (1-6)");
  add_fault(check);

  auto* sweep_cmd = app.add_subcommand("sweep", "Reduce a state in every mode ordering");
  add_state_input(sweep_cmd);

  auto* demo = app.add_subcommand("demo-paper", "Reproduce the worked three-mode example");
  add_fault(demo);

  auto* ssr = app.add_subcommand("validate-ssr", "Parity superselection verdict for a state");
  add_state_input(ssr);

  auto* trace = app.add_subcommand("trace", "Partial trace of a state");
  add_state_input(trace);

  auto* entropy = app.add_subcommand("entropy", "Entropy, purity and negativity of a state");
  add_state_input(entropy);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (check->parsed()) return run_check_car(g);
    if (sweep_cmd->parsed()) return run_sweep(g);
    if (demo->parsed()) return run_demo_paper(g);
    if (ssr->parsed()) return run_validate_ssr(g);
    if (trace->parsed()) return run_trace(g);
    if (entropy->parsed()) return run_entropy(g);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const WidthError& e) {
    std::cerr << "width error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ZeroStateError& e) {
    std::cerr << "zero state: " << e.what() << "\n";
    return kExitParse;
  } catch (const SsrError& e) {
    std::cerr << "superselection: " << e.what() << "\n";
    return kExitSsr;
  } catch (const DemoFailure& e) {
    std::cerr << "DemoFailure at " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
