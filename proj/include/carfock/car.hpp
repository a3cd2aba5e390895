// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file car.hpp
 * @brief Ladder operators, anticommutators, braided reordering and the
 *        braided adjoint.
 *
 * Ladder operators act in the canonical mode order with the Jordan-Wigner
 * sign: c_i picks up (-1)^(occupied slots left of i). In that representation
 * the operators satisfy {c_i, c_j^dag} = delta_ij and {c_i, c_j} = 0 exactly.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carfock/fock.hpp"
#include "carfock/matrix.hpp"

namespace carfock {

enum class LadderKind { Create, Annihilate };

struct LadderLetter {
  ModeLabel mode;
  LadderKind kind;

  static LadderLetter create(ModeLabel mode) { return {std::move(mode), LadderKind::Create}; }
  static LadderLetter annihilate(ModeLabel mode) {
    return {std::move(mode), LadderKind::Annihilate};
  }

  LadderLetter adjoint() const {
    return {mode, kind == LadderKind::Create ? LadderKind::Annihilate : LadderKind::Create};
  }

  std::string to_string() const {
    return mode.name() + (kind == LadderKind::Create ? "+" : "");
  }

  friend bool operator==(const LadderLetter&, const LadderLetter&) = default;
};

/// Product of ladder letters; the rightmost letter acts on a ket first.
using LadderWord = std::vector<LadderLetter>;

/// Exchange phase phi of the braided tensor product: |1>_a|1>_b = e^{i phi}|1>_b|1>_a.
class ExchangePhase {
 public:
  constexpr explicit ExchangePhase(double radians) : radians_(radians) {}

  static constexpr ExchangePhase fermionic() { return ExchangePhase(std::numbers::pi); }
  static constexpr ExchangePhase naive() { return ExchangePhase(0.0); }

  constexpr double radians() const noexcept { return radians_; }
  constexpr bool is_fermionic() const noexcept { return radians_ == std::numbers::pi; }
  constexpr bool is_naive() const noexcept { return radians_ == 0.0; }

  /// e^{i phi k}; exact for phi in {0, pi}.
  Amplitude power(std::size_t k) const {
    if (is_naive() || k == 0) return 1.0;
    if (is_fermionic()) return detail::fermion_sign(k);
    return std::polar(1.0, radians_ * static_cast<double>(k));
  }

 private:
  double radians_;
};

/// Bra-side coefficients with the adjoint's reordering signs folded in.
struct BraidedBra {
  ModeOrder order;
  FockKet::TermMap terms;

  Amplitude coefficient(const OccupationString& s) const {
    const auto it = terms.find(s);
    return it == terms.end() ? Amplitude{} : it->second;
  }
};

namespace detail {

struct LadderResult {
  OccupationString string;
  double sign;
};

/// One ladder letter on one basis string at `slot`. Empty when the result vanishes.
inline std::optional<LadderResult> ladder_action(const OccupationString& s, std::size_t slot,
                                                 LadderKind kind, bool jordan_wigner = true) {
  const bool occupied = s.occupied(slot);
  if ((kind == LadderKind::Annihilate) != occupied) return std::nullopt;
  const double sign = jordan_wigner ? fermion_sign(s.occupied_before(slot)) : 1.0;
  return LadderResult{s.with(slot, !occupied), sign};
}

inline constexpr std::size_t kMaxMatrixModes = 12;

inline CMatrix operator_matrix_impl(const LadderLetter& letter, const ModeOrder& order,
                                    bool jordan_wigner) {
  if (order.size() > kMaxMatrixModes)
    throw SizeError("operator matrices are limited to 12 modes");
  const std::size_t slot = order.require_slot(letter.mode);
  const std::size_t n = order.size();
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m = CMatrix::zeros(dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    if (auto r = ladder_action(OccupationString(col, n), slot, letter.kind, jordan_wigner))
      m(r->string.bits(), col) = r->sign;
  }
  return m;
}

}  // namespace detail

/// Applies the word right-to-left. The ket is canonicalized first; the result
/// is canonical and may be the zero state.
inline FockKet apply_ladder(const LadderWord& word, const FockKet& ket) {
  FockKet current = canonicalize(ket);
  const ModeOrder& order = current.order();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const std::size_t slot = order.require_slot(it->mode);
    FockKet::TermMap next;
    for (const auto& [s, amp] : current.terms())
      if (auto r = detail::ladder_action(s, slot, it->kind)) next[r->string] += r->sign * amp;
    current = FockKet(order, std::move(next));
  }
  return current;
}

/// Matrix of a ladder letter on the 2^N basis of `order`; column = input string.
inline CMatrix operator_matrix(const LadderLetter& letter, const ModeOrder& order) {
  return detail::operator_matrix_impl(letter, order, true);
}

/// XY + YX as matrices over `order`.
inline CMatrix anticommutator(const LadderLetter& x, const LadderLetter& y,
                              const ModeOrder& order) {
  const CMatrix mx = operator_matrix(x, order);
  const CMatrix my = operator_matrix(y, order);
  return mx * my + my * mx;
}

/**
 * Re-presents the ket in `target` order. Each term is multiplied by
 * e^{i phi k}, k being the number of occupied mode pairs whose relative order
 * flips. phi = pi is the fermionic sign; phi = 0 only permutes bits.
 */
inline FockKet reorder(const FockKet& ket, const ModeOrder& target, ExchangePhase phase) {
  return detail::relabel(ket, target, [&](std::size_t k) { return phase.power(k); });
}

/**
 * Adjoint of a ket as a same-order bra. The fermionic adjoint reverses the
 * creation-operator product, giving conj(amplitude) * (-1)^(w(w-1)/2) on a
 * weight-w string. phi = 0 gives the plain qubit adjoint; any other phase
 * throws PhaseError.
 */
inline BraidedBra braided_adjoint(const FockKet& ket,
                                  ExchangePhase phase = ExchangePhase::fermionic()) {
  if (!phase.is_fermionic() && !phase.is_naive())
    throw PhaseError("adjoint is defined only for phi = pi (fermions) or phi = 0");
  BraidedBra bra{ket.order(), {}};
  for (const auto& [s, amp] : ket.terms()) {
    const double sign = phase.is_fermionic() ? reversal_sign(s.weight()) : 1.0;
    bra.terms.emplace(s, std::conj(amp) * sign);
  }
  return bra;
}

/// <bra|ket> with the braided pairing; the bra is re-presented in the ket's order.
inline Amplitude pair(const BraidedBra& bra, const FockKet& ket,
                      ExchangePhase phase = ExchangePhase::fermionic()) {
  const Relabeling map(bra.order, ket.order());
  Amplitude total = 0.0;
  for (const auto& [s, coeff] : bra.terms) {
    const OccupationString t = map.apply(s);
    const double sign = phase.is_fermionic() ? detail::fermion_sign(map.occupied_inversions(s))
                                             : 1.0;
    const double pairing = phase.is_fermionic() ? braided_pairing(t, t) : 1.0;
    total += sign * coeff * pairing * ket.amplitude(t);
  }
  return total;
}

/// <psi|psi> through the braided adjoint and braided pairing.
inline double braided_norm(const FockKet& ket,
                           ExchangePhase phase = ExchangePhase::fermionic()) {
  return pair(braided_adjoint(ket, phase), ket, phase).real();
}

}  // namespace carfock
