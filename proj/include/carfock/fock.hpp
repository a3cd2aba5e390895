// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Mode labels, occupation strings and sparse fermionic Fock kets.
 *
 * A ket is always presented relative to a ModeOrder: the occupation string
 * |n_1 n_2 ... n_N> stands for (c_1^dag)^{n_1} ... (c_N^dag)^{n_N} |vac> with
 * c_i the i-th mode of the order. Two presentations of one physical vector
 * differ by the sign of the permutation restricted to the occupied modes, so
 * every cross-presentation comparison goes through canonicalize().
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carfock/errors.hpp"

namespace carfock {

using Amplitude = std::complex<double>;

/// Amplitudes with modulus below this are dropped from kets.
inline constexpr double kPruneTolerance = 1e-12;

/// Name of a single fermionic mode. Ordered lexicographically.
class ModeLabel {
 public:
  ModeLabel(std::string name) : name_(std::move(name)) {  // NOLINT: implicit by intent
    if (name_.empty()) throw ModeSetError("mode label must be non-empty");
    for (char ch : name_)
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == ';' || ch == ',' ||
          ch == '|' || ch == '>')
        throw ModeSetError("mode label '" + name_ + "' contains a reserved character");
  }
  ModeLabel(const char* name) : ModeLabel(std::string(name)) {}  // NOLINT

  const std::string& name() const noexcept { return name_; }

  friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
  friend bool operator==(const ModeLabel&, const ModeLabel&) = default;

 private:
  std::string name_;
};

/// Ordered list of distinct modes: the operator-product order of a presentation.
class ModeOrder {
 public:
  ModeOrder() = default;

  explicit ModeOrder(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
    auto sorted = modes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ModeSetError("duplicate mode label in order");
  }

  ModeOrder(std::initializer_list<ModeLabel> modes)
      : ModeOrder(std::vector<ModeLabel>(modes)) {}

  /// "abc" -> (a, b, c); "up,down" -> (up, down).
  static ModeOrder parse(std::string_view text) {
    std::vector<ModeLabel> modes;
    if (text.find(',') != std::string_view::npos) {
      std::size_t start = 0;
      while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        modes.emplace_back(std::string(text.substr(start, end - start)));
        start = end + 1;
      }
    } else {
      for (char ch : text) modes.emplace_back(std::string(1, ch));
    }
    return ModeOrder(std::move(modes));
  }

  /// First n letters of the alphabet, a..z.
  static ModeOrder alphabet(std::size_t n) {
    if (n > 26) throw SizeError("default alphabet order covers at most 26 modes");
    std::vector<ModeLabel> modes;
    for (std::size_t i = 0; i < n; ++i)
      modes.emplace_back(std::string(1, static_cast<char>('a' + i)));
    return ModeOrder(std::move(modes));
  }

  std::size_t size() const noexcept { return modes_.size(); }
  bool empty() const noexcept { return modes_.empty(); }
  const ModeLabel& operator[](std::size_t slot) const { return modes_[slot]; }
  auto begin() const noexcept { return modes_.begin(); }
  auto end() const noexcept { return modes_.end(); }
  const std::vector<ModeLabel>& labels() const noexcept { return modes_; }

  std::optional<std::size_t> slot_of(const ModeLabel& label) const {
    const auto it = std::find(modes_.begin(), modes_.end(), label);
    if (it == modes_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - modes_.begin());
  }

  std::size_t require_slot(const ModeLabel& label) const {
    if (auto slot = slot_of(label)) return *slot;
    throw ModeSetError("mode '" + label.name() + "' is not in order " + to_string());
  }

  bool contains(const ModeLabel& label) const { return slot_of(label).has_value(); }

  /// Same labels, any order.
  bool same_modes(const ModeOrder& other) const {
    return canonical() == other.canonical();
  }

  ModeOrder canonical() const {
    auto sorted = modes_;
    std::sort(sorted.begin(), sorted.end());
    ModeOrder out;
    out.modes_ = std::move(sorted);
    return out;
  }

  bool is_canonical() const { return std::is_sorted(modes_.begin(), modes_.end()); }

  /// Single-letter labels concatenate ("acb"); anything longer is comma-joined.
  std::string to_string() const {
    const bool letters = std::all_of(modes_.begin(), modes_.end(),
                                     [](const ModeLabel& m) { return m.name().size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      if (!letters && i > 0) out += ',';
      out += modes_[i].name();
    }
    return out;
  }

  friend bool operator==(const ModeOrder&, const ModeOrder&) = default;

 private:
  std::vector<ModeLabel> modes_;
};

/**
 * Per-slot occupations relative to some ModeOrder.
 *
 * Slot 0 is the most significant bit, so the integer value of the string
 * reads the same as the ket |n_1 n_2 ... n_N>.
 */
class OccupationString {
 public:
  static constexpr std::size_t kMaxWidth = 64;

  constexpr OccupationString() = default;
  OccupationString(std::uint64_t bits, std::size_t width) : bits_(bits), width_(width) {
    if (width > kMaxWidth) throw WidthError("occupation strings hold at most 64 slots");
    if (width < kMaxWidth && (bits >> width) != 0)
      throw WidthError("occupation bits exceed width " + std::to_string(width));
  }

  /// Parses "0110"; throws WidthError on characters other than 0/1.
  static OccupationString parse(std::string_view text) {
    if (text.size() > kMaxWidth) throw WidthError("occupation strings hold at most 64 slots");
    std::uint64_t bits = 0;
    for (char ch : text) {
      if (ch != '0' && ch != '1')
        throw WidthError("occupation string '" + std::string(text) + "' is not binary");
      bits = (bits << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return OccupationString(bits, text.size());
  }

  std::uint64_t bits() const noexcept { return bits_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t weight() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

  bool occupied(std::size_t slot) const noexcept { return (bits_ >> (width_ - 1 - slot)) & 1u; }

  OccupationString with(std::size_t slot, bool value) const {
    const std::uint64_t mask = std::uint64_t{1} << (width_ - 1 - slot);
    return OccupationString(value ? (bits_ | mask) : (bits_ & ~mask), width_);
  }

  /// Occupied slots strictly left of `slot`.
  std::size_t occupied_before(std::size_t slot) const noexcept {
    const std::size_t shift = width_ - slot;
    return shift >= 64 ? 0 : static_cast<std::size_t>(std::popcount(bits_ >> shift));
  }

  /// Occupied slots strictly right of `slot`.
  std::size_t occupied_after(std::size_t slot) const noexcept {
    const std::size_t low = width_ - 1 - slot;
    const std::uint64_t mask = low == 0 ? 0 : ((std::uint64_t{1} << low) - 1);
    return static_cast<std::size_t>(std::popcount(bits_ & mask));
  }

  /// Removes a slot, narrowing the string by one.
  OccupationString erase(std::size_t slot) const {
    const std::size_t low = width_ - 1 - slot;
    const std::uint64_t low_mask = low == 0 ? 0 : ((std::uint64_t{1} << low) - 1);
    const std::uint64_t high = low + 1 >= 64 ? 0 : (bits_ >> (low + 1));
    return OccupationString((high << low) | (bits_ & low_mask), width_ - 1);
  }

  std::string to_string() const {
    std::string out(width_, '0');
    for (std::size_t i = 0; i < width_; ++i)
      if (occupied(i)) out[i] = '1';
    return out;
  }

  friend auto operator<=>(const OccupationString&, const OccupationString&) = default;
  friend bool operator==(const OccupationString&, const OccupationString&) = default;

 private:
  std::uint64_t bits_ = 0;
  std::size_t width_ = 0;
};

/// Sparse fermionic ket: amplitudes on occupation strings of a fixed order.
class FockKet {
 public:
  using TermMap = std::map<OccupationString, Amplitude>;

  /// Validates widths and finiteness, prunes near-zero amplitudes.
  /// The zero state (no terms) is a valid value.
  FockKet(ModeOrder order, TermMap terms) : order_(std::move(order)) {
    for (auto& [s, amp] : terms) {
      if (s.width() != order_.size())
        throw WidthError("string " + s.to_string() + " has width " + std::to_string(s.width()) +
                         ", order " + order_.to_string() + " has " +
                         std::to_string(order_.size()) + " modes");
      if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
        throw NonFiniteError("non-finite amplitude on " + s.to_string());
      if (std::abs(amp) >= kPruneTolerance) terms_.emplace(s, amp);
    }
  }

  const ModeOrder& order() const noexcept { return order_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Amplitude amplitude(const OccupationString& s) const {
    const auto it = terms_.find(s);
    return it == terms_.end() ? Amplitude{} : it->second;
  }

  double squared_norm() const {
    double total = 0.0;
    for (const auto& [s, amp] : terms_) total += std::norm(amp);
    return total;
  }

  bool is_normalized(double tol = 1e-12) const { return std::abs(squared_norm() - 1.0) <= tol; }

  FockKet normalized() const {
    const double n2 = squared_norm();
    if (n2 == 0.0) throw ZeroStateError("cannot normalize the zero state");
    const double scale = 1.0 / std::sqrt(n2);
    TermMap scaled;
    for (const auto& [s, amp] : terms_) scaled.emplace(s, amp * scale);
    return FockKet(order_, std::move(scaled));
  }

  friend bool operator==(const FockKet&, const FockKet&) = default;

 private:
  ModeOrder order_;
  TermMap terms_;
};

/// Builds a ket from a term list, merging duplicate strings additively.
inline FockKet make_ket(const ModeOrder& order,
                        std::span<const std::pair<OccupationString, Amplitude>> terms,
                        bool normalize = false) {
  if (terms.empty()) throw ZeroStateError("ket needs at least one term");
  FockKet::TermMap merged;
  for (const auto& [s, amp] : terms) {
    if (s.width() != order.size())
      throw WidthError("string " + s.to_string() + " does not match order " + order.to_string());
    merged[s] += amp;
  }
  FockKet ket(order, std::move(merged));
  if (ket.is_zero()) throw ZeroStateError("all amplitudes pruned to zero");
  return normalize ? ket.normalized() : ket;
}

inline FockKet make_ket(const ModeOrder& order,
                        std::initializer_list<std::pair<std::string_view, Amplitude>> terms,
                        bool normalize = false) {
  std::vector<std::pair<OccupationString, Amplitude>> parsed;
  for (const auto& [text, amp] : terms) parsed.emplace_back(OccupationString::parse(text), amp);
  return make_ket(order, parsed, normalize);
}

/**
 * Slot map between two presentations of the same mode set.
 *
 * occupied_inversions(s) counts pairs of modes occupied in s whose relative
 * order differs between the two presentations; the fermionic reordering sign
 * is (-1) raised to that count. It depends only on the permutation, not on
 * how the permutation is decomposed into swaps.
 */
class Relabeling {
 public:
  Relabeling(const ModeOrder& from, const ModeOrder& to) {
    if (from.size() != to.size() || !from.same_modes(to))
      throw ModeSetError("order " + to.to_string() + " is not a permutation of " +
                         from.to_string());
    target_slot_.reserve(from.size());
    for (const auto& label : from) target_slot_.push_back(to.require_slot(label));
  }

  std::size_t width() const noexcept { return target_slot_.size(); }
  std::size_t target_slot(std::size_t source_slot) const { return target_slot_[source_slot]; }

  OccupationString apply(const OccupationString& s) const {
    const std::size_t n = width();
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (s.occupied(i)) bits |= std::uint64_t{1} << (n - 1 - target_slot_[i]);
    return OccupationString(bits, n);
  }

  std::size_t occupied_inversions(const OccupationString& s) const {
    const std::size_t n = width();
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.occupied(i)) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if (s.occupied(j) && target_slot_[i] > target_slot_[j]) ++count;
    }
    return count;
  }

 private:
  std::vector<std::size_t> target_slot_;
};

namespace detail {

/// Re-presents a ket in `target`, scaling each term by phase(inversions).
template <typename PhaseFn>
FockKet relabel(const FockKet& ket, const ModeOrder& target, PhaseFn&& phase) {
  const Relabeling map(ket.order(), target);
  FockKet::TermMap out;
  for (const auto& [s, amp] : ket.terms())
    out.emplace(map.apply(s), amp * phase(map.occupied_inversions(s)));
  return FockKet(target, std::move(out));
}

inline double fermion_sign(std::size_t count) { return (count & 1u) ? -1.0 : 1.0; }

}  // namespace detail

/// Presents the ket in sorted-label order with fermionic reordering signs.
inline FockKet canonicalize(const FockKet& ket) {
  if (ket.order().is_canonical()) return ket;
  return detail::relabel(ket, ket.order().canonical(),
                         [](std::size_t k) { return Amplitude(detail::fermion_sign(k)); });
}

/// <x|y>, antilinear in x. Orders may differ; mode sets must agree.
inline Amplitude inner_product(const FockKet& x, const FockKet& y) {
  if (!x.order().same_modes(y.order()))
    throw ModeSetError("inner product of kets over " + x.order().to_string() + " and " +
                       y.order().to_string());
  const FockKet cx = canonicalize(x);
  const FockKet cy = canonicalize(y);
  Amplitude total = 0.0;
  for (const auto& [s, amp] : cx.terms()) total += std::conj(amp) * cy.amplitude(s);
  return total;
}

/// (-1)^(w(w-1)/2): reversing w creation operators.
inline int reversal_sign(std::size_t weight) noexcept {
  return ((weight * (weight - 1) / 2) & 1u) ? -1 : 1;
}

/**
 * Pairing of a same-order braided bra <s| with the ket |t>.
 *
 * The bra of |s> = c_1^dag ... c_w^dag |vac> written in the same order is
 * <vac| c_1 ... c_w, which contracts against the ket to (-1)^(w(w-1)/2).
 */
inline int braided_pairing(const OccupationString& bra, const OccupationString& ket) noexcept {
  if (bra != ket) return 0;
  return reversal_sign(bra.weight());
}

}  // namespace carfock
