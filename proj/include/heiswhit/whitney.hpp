#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "heiswhit/piecewise.hpp"
#include "heiswhit/poly.hpp"
#include "heiswhit/profile.hpp"

namespace heiswhit {

/// Jets (F^0, ..., F^m) of one real function on a strictly increasing node list.
class WhitneyField {
 public:
  WhitneyField() = default;
  WhitneyField(std::vector<double> nodes, std::vector<std::vector<double>> jets);

  std::size_t size() const { return nodes_.size(); }
  int order() const { return order_; }
  const std::vector<double>& nodes() const { return nodes_; }
  std::span<const double> jet(std::size_t i) const { return jets_[i]; }
  const std::vector<std::vector<double>>& jets() const { return jets_; }

  /// Pointwise alpha * this + beta * other on the same nodes.
  WhitneyField combine(double alpha, const WhitneyField& other, double beta) const;

 private:
  std::vector<double> nodes_;
  std::vector<std::vector<double>> jets_;
  int order_ = 0;
};

/// Modulus of continuity: c * t^s (0 < s <= 1) or a piecewise-linear table
/// through (0, 0) and the given knots.
class ModulusFn {
 public:
  static ModulusFn power(double c, double s);
  /// Knots must have increasing t > 0 and nondecreasing values >= 0.
  static ModulusFn tabulated(std::vector<double> t, std::vector<double> values);

  double operator()(double t) const;
  /// sup over 0 < t <= diam of t / omega(t).
  double rate_bound(double diam) const;

  bool is_power() const { return table_t_.empty(); }
  double c() const { return c_; }
  double s() const { return s_; }

 private:
  double c_ = 1.0;
  double s_ = 1.0;
  std::vector<double> table_t_, table_v_;
};

struct FieldValidation {
  /// remainder[k] = sup of R_k over ordered pairs with |b - a| <= delta.
  std::vector<DecayProfile> remainder;
  /// Largest R_k over all pairs, per k.
  std::vector<double> max_remainder;
  /// Smallest C_k with R_k <= C_k omega(|b - a|); filled only when a modulus
  /// is supplied.
  std::vector<double> omega_constant;
};

/// R_k(a, b) = |F^k(b) - T_a^{m-k} F^k (b)| / |b - a|^{m-k} over all ordered
/// pairs. Diagnostics only; never rejects a field.
FieldValidation validate_field(const WhitneyField& field, const std::optional<ModulusFn>& omega = std::nullopt,
                               const ScanOptions& opts = {});

/// Jets from raw samples: F^k(a) is the k-th derivative at a of the Newton
/// interpolant through the m+1 nodes nearest a (ties to smaller t), and
/// F^0(a) is the sample itself.
WhitneyField jets_from_samples(std::span<const double> nodes, std::span<const double> values, int m);

/// Degree 2m+1 polynomial with S(0) = 0, S(1) = 1 and S^(j)(0) = S^(j)(1) = 0
/// for 1 <= j <= m.
Poly transition_poly(int m);

/// Linear C^m extension: T_a + S((x-a)/(b-a)) (T_b - T_a) on each bounded gap
/// and the end Taylor polynomials outside the hull.
PiecewiseCm extend(const WhitneyField& field, int m);

/// Jets of a piecewise function at the given nodes, orders 0..m.
WhitneyField field_of(const PiecewiseCm& fn, std::span<const double> nodes, int m);

}  // namespace heiswhit
