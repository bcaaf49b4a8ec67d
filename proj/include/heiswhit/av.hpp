#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "heiswhit/divdiff.hpp"
#include "heiswhit/heisenberg.hpp"
#include "heiswhit/profile.hpp"

namespace heiswhit {

/// Area discrepancy A, velocity V and their ratio for one pair of nodes.
struct AVPair {
  double A = 0.0;
  double V = 0.0;
  double ratio = 0.0;
};

/**
 * Raw area discrepancy A(gamma; a, b) from the order-m Taylor polynomials of
 * the f and g jets at a:
 *
 *   h(b) - h(a) - 2 int_a^b ((T_a F)' T_a G - (T_a G)' T_a F)
 *        + 2 f(a) (g(b) - T_a G(b)) - 2 g(a) (f(b) - T_a F(b)).
 *
 * Any a != b is accepted, which is what swap tests need; av_pair enforces a < b.
 */
double area_discrepancy(const CurveJets& jets, std::size_t ia, std::size_t ib, int m);

/// A and V(gamma; a, b) = (b-a)^{2m} + (b-a)^m int_a^b (|(T_a F)'| + |(T_a G)'|).
/// Throws NodeNotFound, OrderViolation (a >= b) or OrderMismatch (m > jet order).
AVPair av_pair(const CurveJets& jets, double a, double b, int m);
AVPair av_pair_at(const CurveJets& jets, std::size_t ia, std::size_t ib, int m);

/// Discrete A[X] and V[X] built from the Newton interpolants P(X; f) and
/// P(X; g). X holds m+1 node indices; a and b are indices in X with a < b.
AVPair discrete_av_pair(const SampledCurve& curve, std::span<const std::size_t> subset, std::size_t ia,
                        std::size_t ib, int m);
/// Same, addressing nodes by value. Throws BadSubset.
AVPair discrete_av_pair(const SampledCurve& curve, std::span<const double> subset, double a, double b, int m);

/// sup |A/V| over node pairs a < b of a common window with b - a <= delta.
RatioProfile av_profile(const CurveJets& jets, int m, const ScanOptions& opts = {});
/// sup |A[X]/V[X]| over (m+1)-subsets X of a window with diam(X) <= delta and
/// all a < b in X.
RatioProfile discrete_av_profile(const SampledCurve& curve, int m, const ScanOptions& opts = {});

/// The m+1 nodes used to compare A/V at a pair (a, b) with a discrete ratio:
/// a, b and the m-1 other nodes nearest to either of them (ties to smaller t).
std::vector<std::size_t> comparison_subset(std::span<const double> nodes, std::size_t ia, std::size_t ib, int m);

/// Gap between the continuous and the discrete ratios in both directions.
struct EquivalenceReport {
  /// sup over windowed X and a < b in X of |A/V - A[X]/V[X]|, by diam(X).
  RatioProfile forward;
  double forward_max = 0.0;
  /// sup over windowed pairs a < b of the same gap using comparison_subset,
  /// by b - a.
  RatioProfile reverse;
  double reverse_max = 0.0;
  /// Largest diam(X) / (b - a) produced by comparison_subset.
  double max_diameter_factor = 0.0;
};

/// `jets` and `curve` must share nodes and values.
EquivalenceReport av_equivalence(const CurveJets& jets, const SampledCurve& curve, int m,
                                 const ScanOptions& opts = {});

}  // namespace heiswhit
