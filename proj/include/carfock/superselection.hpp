// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file superselection.hpp
 * @brief Fermion-parity sectors and superselection checks.
 *
 * The fermionic Fock space is the direct sum of its even- and odd-weight
 * sectors. Coherent superpositions across the two are unphysical; classical
 * mixtures of the two are allowed.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "carfock/fock.hpp"
#include "carfock/reduction.hpp"

namespace carfock {

enum class ParitySector { Even, Odd };

inline std::string to_string(ParitySector p) { return p == ParitySector::Even ? "even" : "odd"; }

inline ParitySector parity(const OccupationString& s) noexcept {
  return (s.weight() % 2 == 0) ? ParitySector::Even : ParitySector::Odd;
}

enum class SsrStatus {
  Pure,       ///< support in a single sector
  Mixture,    ///< both sectors populated, no coherence between them
  Violation,  ///< coherent superposition across sectors
};

inline std::string to_string(SsrStatus s) {
  switch (s) {
    case SsrStatus::Pure: return "pure";
    case SsrStatus::Mixture: return "mixture";
    case SsrStatus::Violation: return "violation";
  }
  return "?";
}

struct SsrVerdict {
  SsrStatus status;
  std::optional<ParitySector> sector;  ///< set iff status == Pure
  double even_weight;
  double odd_weight;

  bool violates() const noexcept { return status == SsrStatus::Violation; }
};

inline constexpr double kSectorTolerance = 1e-12;

namespace detail {

inline std::optional<ParitySector> single_sector(double even, double odd) {
  if (std::min(even, odd) >= kSectorTolerance) return std::nullopt;
  return even >= odd ? ParitySector::Even : ParitySector::Odd;
}

}  // namespace detail

/// A normalized ket violates the rule whenever it has weight in both sectors.
inline SsrVerdict validate_ket(const FockKet& ket) {
  if (!ket.is_normalized()) throw NormError("validate_ket needs a normalized ket");
  double even = 0.0;
  double odd = 0.0;
  for (const auto& [s, amp] : ket.terms())
    (parity(s) == ParitySector::Even ? even : odd) += std::norm(amp);
  if (auto sector = detail::single_sector(even, odd))
    return {SsrStatus::Pure, sector, even, odd};
  return {SsrStatus::Violation, std::nullopt, even, odd};
}

/// Violation iff some even-odd coherence exceeds 1e-12 in modulus.
inline SsrVerdict validate_dm(const DensityMatrix& dm) {
  const std::size_t n = dm.modes();
  const std::size_t dim = dm.dimension();
  double even = 0.0;
  double odd = 0.0;
  bool coherent = false;
  for (std::uint64_t r = 0; r < dim; ++r) {
    const ParitySector pr = parity(OccupationString(r, n));
    (pr == ParitySector::Even ? even : odd) += dm.entries()(r, r).real();
    for (std::uint64_t c = 0; c < dim && !coherent; ++c)
      if (parity(OccupationString(c, n)) != pr && std::abs(dm.entries()(r, c)) > kSectorTolerance)
        coherent = true;
  }
  if (coherent) return {SsrStatus::Violation, std::nullopt, even, odd};
  if (auto sector = detail::single_sector(even, odd)) return {SsrStatus::Pure, sector, even, odd};
  return {SsrStatus::Mixture, std::nullopt, even, odd};
}

/// Terms of the requested parity only; not renormalized, possibly zero.
inline FockKet project_sector(const FockKet& ket, ParitySector sector) {
  FockKet::TermMap kept;
  for (const auto& [s, amp] : ket.terms())
    if (parity(s) == sector) kept.emplace(s, amp);
  return FockKet(ket.order(), std::move(kept));
}

}  // namespace carfock
