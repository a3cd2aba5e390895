// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file reduction.hpp
 * @brief Density matrices, fermionic partial traces and entropic diagnostics.
 *
 * Three partial-trace pipelines are provided:
 *
 *   CanonicalOracle  re-present the state so the traced modes sit rightmost
 *                    (fermionic signs), then sum the ordinary diagonal.
 *   PaperLiteral     trace one slot at a time in the given presentation,
 *                    flipping the sign whenever the traced occupied mode has
 *                    to skip occupied modes on its right, on the braided-bra
 *                    form of the matrix.
 *   Naive            qubit-style slot sum with no signs at all.
 *
 * The first two agree for every input and every presentation; the third is
 * presentation dependent once the state carries reordering signs.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "carfock/car.hpp"
#include "carfock/fock.hpp"
#include "carfock/matrix.hpp"

namespace carfock {

inline constexpr std::size_t kMaxDensityModes = 12;

/// Hermitian matrix over the occupation basis of `order` (index = string bits).
class DensityMatrix {
 public:
  DensityMatrix(ModeOrder order, CMatrix entries)
      : order_(std::move(order)), entries_(std::move(entries)) {
    if (order_.size() > kMaxDensityModes)
      throw SizeError("density matrices are limited to 12 modes");
    const std::size_t dim = std::size_t{1} << order_.size();
    if (entries_.rows() != dim || entries_.cols() != dim)
      throw WidthError("density matrix over " + order_.to_string() + " must be " +
                       std::to_string(dim) + "x" + std::to_string(dim));
    if (const double d = entries_.hermiticity_defect(); d > 1e-10)
      throw HermiticityError("density matrix is not Hermitian (defect " + std::to_string(d) +
                             ")");
  }

  const ModeOrder& order() const noexcept { return order_; }
  const CMatrix& entries() const noexcept { return entries_; }
  std::size_t dimension() const noexcept { return entries_.rows(); }
  std::size_t modes() const noexcept { return order_.size(); }
  double trace() const { return entries_.trace().real(); }

  Complex at(const OccupationString& ket, const OccupationString& bra) const {
    if (ket.width() != modes() || bra.width() != modes())
      throw WidthError("string width does not match density matrix order");
    return entries_(ket.bits(), bra.bits());
  }

 private:
  ModeOrder order_;
  CMatrix entries_;
};

enum class TraceConvention { CanonicalOracle, PaperLiteral, Naive };

inline std::string to_string(TraceConvention c) {
  switch (c) {
    case TraceConvention::CanonicalOracle: return "canonical";
    case TraceConvention::PaperLiteral: return "literal";
    case TraceConvention::Naive: return "naive";
  }
  return "?";
}

/// |psi><psi| in the canonical basis. Requires a unit-norm ket.
inline DensityMatrix outer_product(const FockKet& ket);

inline DensityMatrix density_matrix(const FockKet& ket) {
  if (!ket.is_normalized()) throw NormError("density_matrix needs a normalized ket");
  return outer_product(canonicalize(ket));
}

/// |psi><psi| in the ket's own presentation order (no canonicalization).
inline DensityMatrix outer_product(const FockKet& ket) {
  if (!ket.is_normalized()) throw NormError("outer_product needs a normalized ket");
  if (ket.order().size() > kMaxDensityModes)
    throw SizeError("density matrices are limited to 12 modes");
  CMatrix m = CMatrix::zeros(std::size_t{1} << ket.order().size());
  for (const auto& [r, ar] : ket.terms())
    for (const auto& [s, as] : ket.terms()) m(r.bits(), s.bits()) = ar * std::conj(as);
  return DensityMatrix(ket.order(), std::move(m));
}

/// Re-presents a density matrix in `target`: rho -> P rho P^dag with P the
/// reorder map of the given exchange phase.
inline DensityMatrix reorder(const DensityMatrix& dm, const ModeOrder& target,
                             ExchangePhase phase) {
  const Relabeling map(dm.order(), target);
  const std::size_t n = dm.modes();
  const std::size_t dim = dm.dimension();
  std::vector<std::uint64_t> image(dim);
  std::vector<Amplitude> factor(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    const OccupationString s(i, n);
    image[i] = map.apply(s).bits();
    factor[i] = phase.power(map.occupied_inversions(s));
  }
  CMatrix out = CMatrix::zeros(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      out(image[r], image[c]) = factor[r] * dm.entries()(r, c) * std::conj(factor[c]);
  return DensityMatrix(target, std::move(out));
}

inline DensityMatrix canonicalize(const DensityMatrix& dm) {
  if (dm.order().is_canonical()) return dm;
  return reorder(dm, dm.order().canonical(), ExchangePhase::fermionic());
}

namespace detail {

inline std::vector<ModeLabel> validated_traced(const ModeOrder& order,
                                               const std::set<ModeLabel>& keep) {
  if (keep.empty()) throw KeepSetError("keep set is empty");
  for (const auto& label : keep)
    if (!order.contains(label))
      throw ModeSetError("kept mode '" + label.name() + "' is not in " + order.to_string());
  if (keep.size() == order.size()) throw KeepSetError("keep set covers every mode");
  std::vector<ModeLabel> traced;
  for (const auto& label : order)
    if (!keep.contains(label)) traced.push_back(label);
  return traced;
}

/// Sums rho[(k,t),(b,t)] over the last `traced` slots.
inline CMatrix trace_trailing(const CMatrix& m, std::size_t modes, std::size_t traced) {
  const std::size_t kept_dim = std::size_t{1} << (modes - traced);
  const std::size_t traced_dim = std::size_t{1} << traced;
  CMatrix out = CMatrix::zeros(kept_dim);
  for (std::size_t r = 0; r < kept_dim; ++r)
    for (std::size_t c = 0; c < kept_dim; ++c) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t)
        sum += m((r << traced) | t, (c << traced) | t);
      out(r, c) = sum;
    }
  return out;
}

/// Removes one slot of a (ket, bra)-indexed matrix. `factor(ket, bra)` scales
/// each surviving pair whose strings agree at the slot.
template <typename Factor>
CMatrix eliminate_slot(const CMatrix& m, std::size_t width, std::size_t slot, Factor&& factor) {
  const std::size_t out_dim = std::size_t{1} << (width - 1);
  CMatrix out = CMatrix::zeros(out_dim);
  const std::size_t dim = m.rows();
  for (std::uint64_t r = 0; r < dim; ++r) {
    const OccupationString ket(r, width);
    const OccupationString ket_rest = ket.erase(slot);
    for (std::uint64_t c = 0; c < dim; ++c) {
      const OccupationString bra(c, width);
      if (ket.occupied(slot) != bra.occupied(slot)) continue;
      const Complex v = m(r, c);
      if (v == Complex{}) continue;
      out(ket_rest.bits(), bra.erase(slot).bits()) += factor(ket, bra) * v;
    }
  }
  return out;
}

/**
 * Slot-by-slot trace in the given presentation.
 *
 * The matrix is first written against the braided bra, whose coefficients
 * carry (-1)^(w(w-1)/2). Tracing an occupied slot p then contributes
 * (-1)^(r_ket + r_bra + w_bra - 1), r counting occupied slots right of p: the
 * skip signs for moving the traced mode to the end on each side, plus the
 * change of the bra's reversal sign when its weight drops by one. With
 * skip_signs = false the occupied-slot factor is forced to +1.
 */
inline DensityMatrix paper_literal_trace(const DensityMatrix& dm, const std::set<ModeLabel>& keep,
                                         bool skip_signs = true) {
  const auto traced = validated_traced(dm.order(), keep);
  std::vector<ModeLabel> remaining = dm.order().labels();
  const std::size_t dim = dm.dimension();

  CMatrix m = dm.entries();
  for (std::size_t c = 0; c < dim; ++c) {
    const double sign = reversal_sign(static_cast<std::size_t>(std::popcount(c)));
    for (std::size_t r = 0; r < dim; ++r) m(r, c) *= sign;
  }

  for (const auto& label : traced) {
    const std::size_t width = remaining.size();
    const std::size_t slot = ModeOrder(remaining).require_slot(label);
    m = eliminate_slot(m, width, slot, [&](const OccupationString& ket,
                                           const OccupationString& bra) -> double {
      if (!ket.occupied(slot) || !skip_signs) return 1.0;
      return fermion_sign(ket.occupied_after(slot) + bra.occupied_after(slot) + bra.weight() - 1);
    });
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
  }

  for (std::size_t c = 0; c < m.cols(); ++c) {
    const double sign = reversal_sign(static_cast<std::size_t>(std::popcount(c)));
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) *= sign;
  }
  return DensityMatrix(ModeOrder(std::move(remaining)), std::move(m));
}

inline DensityMatrix canonical_oracle_trace(const DensityMatrix& dm,
                                            const std::set<ModeLabel>& keep) {
  const auto traced = validated_traced(dm.order(), keep);
  std::vector<ModeLabel> kept(keep.begin(), keep.end());  // std::set is sorted
  std::vector<ModeLabel> layout = kept;
  layout.insert(layout.end(), traced.begin(), traced.end());
  std::sort(layout.begin() + static_cast<std::ptrdiff_t>(kept.size()), layout.end());
  const DensityMatrix moved = reorder(dm, ModeOrder(layout), ExchangePhase::fermionic());
  return DensityMatrix(ModeOrder(std::move(kept)),
                       trace_trailing(moved.entries(), dm.modes(), traced.size()));
}

inline DensityMatrix naive_trace(const DensityMatrix& dm, const std::set<ModeLabel>& keep) {
  const auto traced = validated_traced(dm.order(), keep);
  std::vector<ModeLabel> remaining = dm.order().labels();
  CMatrix m = dm.entries();
  for (const auto& label : traced) {
    const std::size_t slot = ModeOrder(remaining).require_slot(label);
    m = eliminate_slot(m, remaining.size(), slot,
                       [](const OccupationString&, const OccupationString&) { return 1.0; });
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
  }
  return DensityMatrix(ModeOrder(std::move(remaining)), std::move(m));
}

}  // namespace detail

/**
 * Reduced density matrix on `keep`.
 *
 * CanonicalOracle returns the kept modes in canonical order; PaperLiteral and
 * Naive keep the input's presentation order. Throws KeepSetError for an empty
 * or full keep set and ModeSetError for unknown labels.
 */
inline DensityMatrix partial_trace(const DensityMatrix& dm, const std::set<ModeLabel>& keep,
                                   TraceConvention convention) {
  switch (convention) {
    case TraceConvention::CanonicalOracle: return detail::canonical_oracle_trace(dm, keep);
    case TraceConvention::PaperLiteral: return detail::paper_literal_trace(dm, keep);
    case TraceConvention::Naive: return detail::naive_trace(dm, keep);
  }
  throw KeepSetError("unknown trace convention");
}

/// Tr(rho^2).
inline double purity(const DensityMatrix& dm) {
  double total = 0.0;
  for (const auto& z : dm.entries().data()) total += std::norm(z);
  return total;
}

/// Von Neumann entropy in bits. Eigenvalues in [-1e-10, 0) count as zero.
inline double von_neumann_entropy(const DensityMatrix& dm) {
  const Spectrum spectrum = eig_hermitian(dm.entries());
  double s = 0.0;
  for (double lambda : spectrum.eigenvalues) {
    if (lambda < -1e-10)
      throw PositivityError("density matrix has eigenvalue " + std::to_string(lambda));
    if (lambda <= 0.0) continue;
    s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

/**
 * Sum of |negative eigenvalues| of the qubit partial transpose over `second`,
 * taken in the canonical occupation basis. `first` and `second` must be
 * disjoint, non-empty and cover the matrix's modes.
 */
inline double negativity(const DensityMatrix& dm, const std::set<ModeLabel>& first,
                         const std::set<ModeLabel>& second) {
  if (first.empty() || second.empty()) throw PartitionError("partition parts must be non-empty");
  for (const auto& label : first)
    if (second.contains(label))
      throw PartitionError("mode '" + label.name() + "' appears in both parts");
  if (first.size() + second.size() != dm.modes())
    throw PartitionError("partition does not cover the density matrix modes");
  for (const auto& part : {first, second})
    for (const auto& label : part)
      if (!dm.order().contains(label))
        throw PartitionError("mode '" + label.name() + "' is not in " + dm.order().to_string());

  const DensityMatrix c = canonicalize(dm);
  const std::size_t n = c.modes();
  std::uint64_t mask = 0;
  for (const auto& label : second) mask |= std::uint64_t{1} << (n - 1 - c.order().require_slot(label));

  const std::size_t dim = c.dimension();
  CMatrix pt = CMatrix::zeros(dim);
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t col = 0; col < dim; ++col) {
      const std::uint64_t swap = (r ^ col) & mask;
      pt(r ^ swap, col ^ swap) = c.entries()(r, col);
    }
  double total = 0.0;
  for (double lambda : eig_hermitian(pt).eigenvalues)
    if (lambda < 0.0) total -= lambda;
  return total;
}

}  // namespace carfock
