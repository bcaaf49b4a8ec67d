#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "heiswhit/heisenberg.hpp"
#include "heiswhit/poly.hpp"
#include "heiswhit/profile.hpp"

namespace heiswhit {

/// Finite samples gamma(t) = (f, g, h)(t) on a strictly increasing node list.
class SampledCurve {
 public:
  SampledCurve(std::vector<double> nodes, std::vector<HPoint> values);
  /// Sorts the rows by t. Repeated t throws DuplicateNodes.
  static SampledCurve from_unsorted(std::vector<double> nodes, std::vector<HPoint> values);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<HPoint>& values() const { return values_; }
  /// Component 0 = f (x), 1 = g (y), 2 = h (z).
  const std::vector<double>& component(int c) const { return components_.at(static_cast<std::size_t>(c)); }
  double diameter() const { return nodes_.back() - nodes_.front(); }
  /// 1 + max |coordinate|; the reference magnitude for verdict thresholds.
  double scale() const;

 private:
  std::vector<double> nodes_;
  std::vector<HPoint> values_;
  std::array<std::vector<double>, 3> components_;
};

/// Pointwise left translation p * gamma.
SampledCurve left_translate(const HPoint& p, const SampledCurve& curve);

/// f[x_0, ..., x_k] by the recursive table over the nodes sorted ascending.
double divided_difference(std::span<const double> values, std::span<const double> nodes);

/// The same divided difference as an integral of the k-th derivative over the
/// standard simplex (k = nodes.size() - 1), by nested adaptive Gauss-Kronrod
/// quadrature. Nodes may repeat.
double hermite_genocchi(const std::function<double(double)>& kth_derivative, std::span<const double> nodes,
                        double tol = 1e-12);

/// Newton interpolation polynomial through (nodes, values), returned in the
/// variable (x - origin).
Poly newton_interp(std::span<const double> nodes, std::span<const double> values, double origin = 0.0);

/// Uniform-convergence profile of the m-th divided differences of one
/// component: eps(delta) = sup |f[X] - f[Y]| over (m+1)-subsets X, Y of a
/// common window with diam(X u Y) <= delta.
DecayProfile dd_profile(std::span<const double> nodes, std::span<const double> values, int m,
                        const ScanOptions& opts = {});
/// dd_profile for f, g and h.
std::array<DecayProfile, 3> dd_profile(const SampledCurve& curve, int m, const ScanOptions& opts = {});

}  // namespace heiswhit
